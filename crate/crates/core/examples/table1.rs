// Engine entropies of the named torus partitions against their closed forms
// in the `xi00` ground state.
//
// `cargo run --example table1`

use toric_entropy::entropy::entropy_equal_superposition;
use toric_entropy::lattice::NamedPartition;
use toric_entropy::toric::{closed_form_entropy, TableRow, ToricState};
use toric_entropy::Lattice;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    print!("{:>12}", "k");
    for n in NamedPartition::ALL {
        print!("{:>16}", n.name());
    }
    println!();
    for k in 2..=6 {
        let lat = Lattice::torus(k)?;
        let g = lat.star_group();
        print!("{k:>12}");
        for n in NamedPartition::ALL {
            let s = entropy_equal_superposition(&g, &n.build(&lat)?)?.s_bits;
            let closed = closed_form_entropy(TableRow::Named(n), k, &ToricState::Xi(0, 0))?;
            let flag = if closed.value() == Some(s as f64) { "" } else { "*" };
            print!("{:>16}", format!("{s} ({closed}){flag}"));
        }
        println!();
    }
    println!("engine (closed form); * marks a disagreement");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
