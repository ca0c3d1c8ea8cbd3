// Bit-packed GF(2) rank queries on a small generator set.
//
// `cargo run --example gf2_ranks`

use toric_entropy::{FlipVector, Gf2Matrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // the four stars of the 2x2 torus; any three determine the fourth
    let stars = [[0, 1, 4, 6], [0, 1, 5, 7], [2, 3, 4, 6], [2, 3, 5, 7]];
    let rows = stars
        .iter()
        .map(|s| FlipVector::from_indices(8, s))
        .collect::<Result<Vec<_>, _>>()?;
    let g = Gf2Matrix::from_rows(8, rows)?;
    println!("rank {} of {} rows", g.rank(), g.n_rows());

    let a = [0, 4];
    println!("restricted to links {a:?}: rank {}", g.restricted_rank(&a)?);
    println!("elements trivial on {a:?}: 2^{}", g.trivial_on_dimension(&a)?);

    let sum = &g.rows()[0] ^ &g.rows()[1];
    println!("row0 + row1 = {:?} in span: {}", sum.indices().collect::<Vec<_>>(), g.contains(&sum)?);

    let elems: Vec<_> = g.enumerate_row_space()?.collect();
    println!("{} group elements", elems.len());
    assert_eq!(elems.len(), 1 << g.rank());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
