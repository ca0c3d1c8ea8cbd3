// Disk regions on a large torus: entropy against boundary counts and the
// linear bounds in the boundary length.
//
// `cargo run --example boundary_law`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_entropy::entropy::{boundary_bounds, entropy_equal_superposition, geometric_entropy};
use toric_entropy::lattice::region::{random_disk, random_rect};
use toric_entropy::Lattice;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::torus(12)?;
    let g = lat.star_group();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let (x, y, w, h, rect) = random_rect(&lat, &mut rng)?;
    let s = entropy_equal_superposition(&g, &rect.partition)?.s_bits;
    println!("rect {w}x{h} at ({x},{y}): L={} S={s}", rect.stats.l_boundary);

    println!("{:>4} {:>4} {:>4} {:>4} {:>4} {:>10} {:>10}", "L", "n2", "n3", "S", "geom", "lower", "upper");
    for _ in 0..10 {
        let d = random_disk(&lat, 30, &mut rng)?;
        let s = entropy_equal_superposition(&g, &d.partition)?.s_bits;
        let b = boundary_bounds(&d.stats, s);
        println!(
            "{:>4} {:>4} {:>4} {:>4} {:>4} {:>10.3} {:>10.3}",
            d.stats.l_boundary,
            d.stats.n2,
            d.stats.n3,
            s,
            geometric_entropy(&d.stats)?,
            b.lower,
            b.upper
        );
        assert!(b.within);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
