// Two-spin concurrence in the toric ground state: each spin is maximally
// entangled with the rest, yet no pair is entangled with each other.
//
// `cargo run --example concurrence`

use toric_entropy::oracle::{basis_ground_state, concurrence, entanglement_entropy, reduced_density_matrix};
use toric_entropy::{Lattice, Partition};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::torus(2)?;
    let psi = basis_ground_state(&lat, 0, 0)?;
    let n = lat.n_links();
    println!("single spin entropy: {:.12}", entanglement_entropy(&psi, &Partition::new(n, &[0])?)?);
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            let rho = reduced_density_matrix(&psi, &Partition::new(n, &[a, b])?)?;
            worst = worst.max(concurrence(&rho)?);
        }
    }
    println!("largest pair concurrence over {} pairs: {worst:.3e}", n * (n - 1) / 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
