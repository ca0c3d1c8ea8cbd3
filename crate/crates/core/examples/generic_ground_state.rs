// A random superposition of the four ground states: chain and ladder
// entropies, and the ladder spectrum.
//
// `cargo run --example generic_ground_state`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_entropy::lattice::NamedPartition;
use toric_entropy::oracle::{build_ground_state, entanglement_entropy, reduced_density_matrix};
use toric_entropy::toric::{alpha, closed_form_entropy, p_param, TableRow, ToricState};
use toric_entropy::{GroundStateCoeffs, Lattice};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = 3;
    let lat = Lattice::torus(k)?;
    let c = GroundStateCoeffs::random(&mut ChaCha8Rng::seed_from_u64(11));
    println!("alpha = {:.6}, p = {:.6}", alpha(&c), p_param(&c));
    let psi = build_ground_state(&lat, &c)?;

    for n in [NamedPartition::Chain, NamedPartition::Ladder] {
        let p = n.build(&lat)?;
        let closed = closed_form_entropy(TableRow::Named(n), k, &ToricState::Generic(c))?;
        let oracle = entanglement_entropy(&psi, &p)?;
        println!("{:>7}: closed form {closed}, oracle {oracle:.12}", n.name());
    }

    let rho = reduced_density_matrix(&psi, &NamedPartition::Ladder.build(&lat)?)?;
    let mut ev = rho.eigenvalues()?;
    ev.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let p = p_param(&c);
    println!("ladder eigenvalues {ev:.6?}");
    println!("expected 2^-k(1 +- p) = {:.6}, {:.6}", (1.0 + p) / 8.0, (1.0 - p) / 8.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
