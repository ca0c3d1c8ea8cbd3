// Lattices from text documents: a genus-0 cube and an open patch.
//
// `cargo run --example load_document`

use std::path::Path;

use toric_entropy::entropy::{entropy_equal_superposition, ground_degeneracy};
use toric_entropy::lattice::document::{load_lattice, parse_lattice, write_lattice};
use toric_entropy::Partition;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let cube = load_lattice(&data.join("cube.lattice"))?;
    println!(
        "cube: {} sites, {} links, {} faces, genus {:?}, degeneracy {}",
        cube.n_sites(),
        cube.n_links(),
        cube.n_plaquettes(),
        cube.genus(),
        ground_degeneracy(&cube)?
    );

    let patch = load_lattice(&data.join("patch_2x2.lattice"))?;
    let corner = Partition::new(patch.n_links(), &[0, 6])?;
    let r = entropy_equal_superposition(&patch.star_group(), &corner)?;
    println!("open patch, corner links: S = {} bits", r.s_bits);
    println!("degeneracy on an open surface: {}", ground_degeneracy(&patch).map_or("n/a".into(), |d| d.to_string()));

    // documents round-trip
    let again = parse_lattice(&write_lattice(&cube))?;
    assert_eq!(again.links(), cube.links());

    match parse_lattice("lattice v1\nSITES 2\nLINKS 1\n0 x\nPLAQUETTES 0\n") {
        Err(e) => println!("malformed document: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
