// Star and plaquette groups of the k x k torus, the ladder operators and the
// ground-state degeneracy.
//
// `cargo run --example torus_lattice`

use toric_entropy::entropy::{ground_degeneracy, independent_generator_count, is_closed_string_net};
use toric_entropy::Lattice;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in 2..=6 {
        let lat = Lattice::torus(k)?;
        let (w1, w2) = lat.ladder_operators()?;
        let stars = lat.star_group();
        println!(
            "k={k}: {} links, star rank {}, plaquette rank {}, independent {}, degeneracy {}",
            lat.n_links(),
            stars.rank(),
            lat.plaquette_group().rank(),
            independent_generator_count(&lat),
            ground_degeneracy(&lat)?
        );
        // ladders commute with every plaquette but are not star products
        assert!(is_closed_string_net(&lat, &w1)? && is_closed_string_net(&lat, &w2)?);
        assert!(!stars.contains(&w1)? && !stars.contains(&w2)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
