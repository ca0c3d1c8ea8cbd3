// Statevector cross-check of the rank formula on every bipartition of the
// 2x2 torus.
//
// `cargo run --example oracle_verify`

use toric_entropy::gf2::FlipVector;
use toric_entropy::oracle::{verify_partitions, StateVector};
use toric_entropy::{Lattice, Partition};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = Lattice::torus(2)?;
    let g = lat.star_group();
    let state = StateVector::equal_superposition(&g)?;
    let n = lat.n_links();
    let cases: Vec<_> = (1..(1u64 << n) - 1)
        .map(|m| {
            let p = Partition::from_mask(FlipVector::from_u64(n, m));
            (p.descriptor(), p)
        })
        .collect();
    let results = verify_partitions(&state, &g, &cases)?;
    let worst = results.iter().max_by(|a, b| a.deviation.total_cmp(&b.deviation)).unwrap();
    println!(
        "{} partitions, {} failures, worst deviation {:.2e} at {}",
        results.len(),
        results.iter().filter(|r| !r.pass).count(),
        worst.deviation,
        worst.label
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
