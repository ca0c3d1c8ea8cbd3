// Minimum entropy over all bipartitions: the toric code has no unentangled
// cut, while the full flip group gives a product state.
//
// `cargo run --example absolute_entanglement`

use toric_entropy::entropy::{absolute_entanglement_scan, ScanMode};
use toric_entropy::{Gf2Matrix, Lattice};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::torus(2)?;
    let out = absolute_entanglement_scan(&lat.star_group(), ScanMode::Exhaustive)?;
    println!(
        "toric k=2: min S = {} over {} partitions ({})",
        out.min_s_bits,
        out.partitions_checked,
        out.argmin.descriptor()
    );

    let all = Gf2Matrix::identity(lat.n_links());
    let out = absolute_entanglement_scan(&all, ScanMode::Exhaustive)?;
    println!("all flips: min S = {}", out.min_s_bits);

    let big = Lattice::torus(5)?;
    let out = absolute_entanglement_scan(&big.star_group(), ScanMode::Sampled { count: 2000, seed: 1 })?;
    println!("toric k=5, 2000 samples: min S = {}", out.min_s_bits);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
