//! Entanglement entropy of spin-flip stabilizer states on lattices.
//!
//! States that are an equal superposition of a group `G` of spin flips acting
//! on `|0…0⟩` have an entanglement entropy fixed by three group orders, all
//! computable as ranks over GF(2). This crate provides that arithmetic
//! ([`gf2`]), lattices with star/plaquette incidence ([`lattice`]), the exact
//! entropy machinery ([`entropy`]), toric-code ground states and their closed
//! forms ([`toric`]), and a dense statevector oracle for cross-checking at
//! small sizes ([`oracle`]). The [`cli`] module backs the `toric-entropy`
//! binary.

pub mod cli;
pub mod entropy;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod oracle;
pub mod toric;

pub use entropy::{entropy_equal_superposition, EntropyReport};
pub use error::{Error, Result};
pub use gf2::{FlipVector, Gf2Matrix};
pub use lattice::{Lattice, Partition};
pub use toric::GroundStateCoeffs;
