mod gf2_ranks {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gf2_ranks.rs"));
}

#[test]
fn gf2_ranks_example_runs() {
    gf2_ranks::run_example().expect("gf2_ranks example should run");
}

mod torus_lattice {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/torus_lattice.rs"));
}

#[test]
fn torus_lattice_example_runs() {
    torus_lattice::run_example().expect("torus_lattice example should run");
}

mod load_document {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/load_document.rs"));
}

#[test]
fn load_document_example_runs() {
    load_document::run_example().expect("load_document example should run");
}

mod table1 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/table1.rs"));
}

#[test]
fn table1_example_runs() {
    table1::run_example().expect("table1 example should run");
}

mod boundary_law {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/boundary_law.rs"));
}

#[test]
fn boundary_law_example_runs() {
    boundary_law::run_example().expect("boundary_law example should run");
}

mod oracle_verify {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracle_verify.rs"));
}

#[test]
fn oracle_verify_example_runs() {
    oracle_verify::run_example().expect("oracle_verify example should run");
}

mod generic_ground_state {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generic_ground_state.rs"));
}

#[test]
fn generic_ground_state_example_runs() {
    generic_ground_state::run_example().expect("generic_ground_state example should run");
}

mod absolute_entanglement {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/absolute_entanglement.rs"));
}

#[test]
fn absolute_entanglement_example_runs() {
    absolute_entanglement::run_example().expect("absolute_entanglement example should run");
}

mod concurrence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/concurrence.rs"));
}

#[test]
fn concurrence_example_runs() {
    concurrence::run_example().expect("concurrence example should run");
}
