//! Dense statevector ground truth for small lattices.
//!
//! States are stored as `2^n` complex amplitudes. Basis index bit `l` is the
//! state of link `l` (link 0 is the least significant bit). Reduced density
//! matrices order their basis the same way, restricted to the links of `A` in
//! ascending order.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf2::{FlipVector, Gf2Matrix, DEFAULT_ENUMERATION_CAP};
use crate::lattice::{Lattice, Partition};
use crate::toric::GroundStateCoeffs;

/// Largest number of spins for a dense state.
pub const MAX_STATE_SPINS: usize = 26;
/// Largest subsystem for a dense reduced density matrix.
pub const MAX_SUBSYSTEM_SPINS: usize = 14;

const EIGEN_NEGATIVITY_TOLERANCE: f64 = 1e-10;
const EIGEN_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    n: usize,
}

fn mask_u64(v: &FlipVector) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::resource(format!("{} spins exceed the dense-state cap", v.len())))
}

fn check_spins(n: usize) -> Result<()> {
    if n > MAX_STATE_SPINS {
        return Err(Error::resource(format!(
            "{n} spins exceed the dense-state cap of {MAX_STATE_SPINS}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: u64) -> Result<Self> {
        check_spins(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, n })
    }

    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_spins(n)?;
        if amplitudes.len() != 1usize << n {
            return Err(Error::input(format!(
                "{} amplitudes for {n} spins",
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes, n })
    }

    /// `|G|^{-1/2} Σ_{g∈G} g|0…0⟩` for the row space of `g`.
    pub fn equal_superposition(g: &Gf2Matrix) -> Result<Self> {
        check_spins(g.n_cols())?;
        let n = g.n_cols();
        let elems = g.enumerate_row_space_capped(DEFAULT_ENUMERATION_CAP)?;
        let amp = Complex64::new((elems.total() as f64).sqrt().recip(), 0.0);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << n];
        for e in elems {
            amplitudes[mask_u64(&e)? as usize] += amp;
        }
        Ok(Self { amplitudes, n })
    }

    pub fn n_spins(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Applies `Π_{l∈v} σ^x_l`.
    pub fn apply_flip(&self, v: &FlipVector) -> Result<Self> {
        let m = mask_u64(v)? as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            out[i ^ m] = *a;
        }
        Ok(Self {
            amplitudes: out,
            n: self.n,
        })
    }

    /// Applies `Π_{l∈v} σ^z_l`.
    pub fn apply_phase(&self, v: &FlipVector) -> Result<Self> {
        let m = mask_u64(v)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if (i as u64 & m).count_ones() % 2 == 1 {
                    -a
                } else {
                    *a
                }
            })
            .collect();
        Ok(Self {
            amplitudes,
            n: self.n,
        })
    }

    /// Largest amplitude difference between `self` and `other`.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Whether every star (σ^x) and plaquette (σ^z) generator fixes the state.
    pub fn is_stabilized_by(&self, lat: &Lattice, tol: f64) -> Result<bool> {
        for s in 0..lat.n_sites() {
            if self.apply_flip(&lat.star_vector(s))?.max_deviation(self) > tol {
                return Ok(false);
            }
        }
        for p in 0..lat.n_plaquettes() {
            if self.apply_phase(&lat.plaquette_vector(p))?.max_deviation(self) > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn nonzero_count(&self, tol: f64) -> usize {
        self.amplitudes.iter().filter(|a| a.norm() > tol).count()
    }
}

/// Toric ground state `Σ a_ij w1^j w2^i |ξ00⟩` on a torus.
pub fn build_ground_state(lat: &Lattice, c: &GroundStateCoeffs) -> Result<StateVector> {
    check_spins(lat.n_links())?;
    let (w1, w2) = lat.ladder_operators()?;
    let (w1, w2) = (mask_u64(&w1)? as usize, mask_u64(&w2)? as usize);
    let stars = lat.star_group();
    let elems = stars.enumerate_row_space_capped(DEFAULT_ENUMERATION_CAP)?;
    let norm = (elems.total() as f64).sqrt().recip();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << lat.n_links()];
    let shifts = [
        (0, c.a00),
        (w1, c.a01),
        (w2, c.a10),
        (w1 ^ w2, c.a11),
    ];
    for g in elems {
        let g = mask_u64(&g)? as usize;
        for &(shift, a) in &shifts {
            if a != Complex64::new(0.0, 0.0) {
                amplitudes[g ^ shift] += a * norm;
            }
        }
    }
    StateVector::from_amplitudes(lat.n_links(), amplitudes)
}

/// `ξ_ij`: `i` powers `w2`, `j` powers `w1`.
pub fn basis_ground_state(lat: &Lattice, i: usize, j: usize) -> Result<StateVector> {
    build_ground_state(lat, &GroundStateCoeffs::basis(i, j)?)
}

/// A reduced density matrix over `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
}

/// Gathers the bits of `index` at `positions` into a compact integer.
fn gather(index: u64, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0usize, |acc, (t, &p)| acc | ((((index >> p) & 1) as usize) << t))
}

/// `ρ_A = Tr_B |ψ⟩⟨ψ|`.
pub fn reduced_density_matrix(state: &StateVector, p: &Partition) -> Result<DensityMatrix> {
    if p.n_links() != state.n_spins() {
        return Err(Error::input(format!(
            "partition over {} spins for a state of {}",
            p.n_links(),
            state.n_spins()
        )));
    }
    if p.len() > MAX_SUBSYSTEM_SPINS {
        return Err(Error::resource(format!(
            "subsystem of {} spins exceeds the cap of {MAX_SUBSYSTEM_SPINS}",
            p.len()
        )));
    }
    let a_links = p.links();
    let b_links: Vec<usize> = p.mask().complement().indices().collect();
    let mut entries: Vec<(usize, usize, Complex64)> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(i, a)| (gather(i as u64, &b_links), gather(i as u64, a_links), *a))
        .collect();
    entries.sort_unstable_by_key(|&(b, a, _)| (b, a));

    let dim = 1usize << a_links.len();
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for group in entries.chunk_by(|x, y| x.0 == y.0) {
        for &(_, a, amp) in group {
            for &(_, a2, amp2) in group {
                rho[(a, a2)] += amp * amp2.conj();
            }
        }
    }
    Ok(DensityMatrix { matrix: rho })
}

impl DensityMatrix {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::input("density matrix must be square"));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if self.hermiticity_error() > 1e-10 {
            return Err(Error::Internal(format!(
                "density matrix is not Hermitian (error {:.3e})",
                self.hermiticity_error()
            )));
        }
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev)
    }

    /// Sum of `|ρ_ij|` over `i ≠ j`.
    pub fn off_diagonal_mass(&self) -> f64 {
        let d = self.dim();
        let mut total = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    total += self.matrix[(i, j)].norm();
                }
            }
        }
        total
    }

    /// `eigenvalue` rows, one per eigenvalue, descending.
    pub fn spectrum_csv(&self) -> Result<String> {
        let mut out = String::from("index,eigenvalue\n");
        for (i, ev) in self.eigenvalues()?.iter().enumerate() {
            writeln!(out, "{i},{ev:.17e}").unwrap();
        }
        Ok(out)
    }
}

pub fn off_diagonal_mass(rho: &DensityMatrix) -> f64 {
    rho.off_diagonal_mass()
}

fn clamp_spectrum(ev: &[f64]) -> Result<Vec<f64>> {
    ev.iter()
        .map(|&x| {
            if x < -EIGEN_NEGATIVITY_TOLERANCE {
                Err(Error::Internal(format!(
                    "density matrix has eigenvalue {x:.3e} below zero"
                )))
            } else {
                Ok(x.clamp(0.0, 1.0))
            }
        })
        .collect()
}

/// `−Tr ρ log2 ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ev = clamp_spectrum(&rho.eigenvalues()?)?;
    Ok(ev
        .iter()
        .filter(|&&x| x > EIGEN_ZERO)
        .map(|&x| -x * x.log2())
        .sum())
}

/// Entropy of `A` for a pure state, tracing out whichever side is smaller.
pub fn entanglement_entropy(state: &StateVector, p: &Partition) -> Result<f64> {
    let side = if p.len() <= state.n_spins() - p.len() {
        p.clone()
    } else {
        p.swapped()
    };
    von_neumann_entropy(&reduced_density_matrix(state, &side)?)
}

fn hermitian_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = m.clone().symmetric_eigen();
    let roots = eig
        .eigenvalues
        .map(|x| Complex64::new(x.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}

/// Wootters concurrence of a two-spin state.
///
/// Uses the Hermitian form `√ρ ρ̃ √ρ`, whose eigenvalues equal those of `ρ ρ̃`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::input(format!(
            "concurrence needs a two-spin (4x4) matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let r = |x: f64| Complex64::new(x, 0.0);
    #[rustfmt::skip]
    let yy = DMatrix::from_row_slice(4, 4, &[
        r(0.0), r(0.0), r(0.0), r(-1.0),
        r(0.0), r(0.0), r(1.0), r(0.0),
        r(0.0), r(1.0), r(0.0), r(0.0),
        r(-1.0), r(0.0), r(0.0), r(0.0),
    ]);
    let m = rho.matrix();
    let tilde = &yy * m.map(|z| z.conj()) * &yy;
    let root = hermitian_sqrt(m);
    let mut h = &root * tilde * &root;
    // symmetrize away rounding before the Hermitian solve
    h = (&h + h.adjoint()) * r(0.5);
    let mut lambdas: Vec<f64> = h
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Agreement threshold between engine and oracle entropies.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// One engine-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyCase {
    pub label: String,
    pub engine_s: usize,
    pub oracle_s: f64,
    pub deviation: f64,
    pub pass: bool,
}

/// Engine entropy under `engine_group` against the oracle entropy of `state`,
/// for each labelled partition.
pub fn verify_partitions(
    state: &StateVector,
    engine_group: &Gf2Matrix,
    cases: &[(String, Partition)],
) -> Result<Vec<VerifyCase>> {
    use rayon::prelude::*;
    cases
        .par_iter()
        .map(|(label, p)| {
            let engine_s = crate::entropy::entropy_equal_superposition(engine_group, p)?.s_bits;
            let oracle_s = entanglement_entropy(state, p)?;
            let deviation = (oracle_s - engine_s as f64).abs();
            Ok(VerifyCase {
                label: label.clone(),
                engine_s,
                oracle_s,
                deviation,
                pass: deviation < VERIFY_TOLERANCE,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::NamedPartition;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn xi00_k2_amplitudes() {
        let lat = Lattice::torus(2).unwrap();
        let s = basis_ground_state(&lat, 0, 0).unwrap();
        assert_eq!(s.nonzero_count(1e-12), 8);
        let expected = 8f64.sqrt().recip();
        for a in s.amplitudes().iter().filter(|a| a.norm() > 1e-12) {
            assert!((a.re - expected).abs() < 1e-15 && a.im == 0.0);
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn basis_states_orthonormal_and_stabilized() {
        let lat = Lattice::torus(2).unwrap();
        let states: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(i, j)| basis_ground_state(&lat, i, j).unwrap())
            .collect();
        for (x, a) in states.iter().enumerate() {
            assert!(a.is_stabilized_by(&lat, 1e-12).unwrap());
            for (y, b) in states.iter().enumerate() {
                let ip = a.inner(b).norm();
                let want = if x == y { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rdm_of_everything_is_the_projector() {
        let lat = Lattice::torus(2).unwrap();
        let s = basis_ground_state(&lat, 0, 1).unwrap();
        let all: Vec<usize> = (0..8).collect();
        let rho = reduced_density_matrix(&s, &Partition::new(8, &all).unwrap()).unwrap();
        for i in 0..256 {
            for j in 0..256 {
                let want = s.amplitudes()[i] * s.amplitudes()[j].conj();
                assert!((rho.matrix()[(i, j)] - want).norm() < 1e-15);
            }
        }
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-9);
    }

    #[test]
    fn single_spin_is_maximally_mixed() {
        let lat = Lattice::torus(2).unwrap();
        let s = basis_ground_state(&lat, 0, 0).unwrap();
        let rho = reduced_density_matrix(&s, &Partition::new(8, &[3]).unwrap()).unwrap();
        assert!((rho.matrix()[(0, 0)] - c(0.5)).norm() < 1e-12);
        assert!((rho.matrix()[(1, 1)] - c(0.5)).norm() < 1e-12);
        assert!(rho.off_diagonal_mass() < 1e-12);
    }

    #[test]
    fn ladder_k2_is_identity_over_four() {
        let lat = Lattice::torus(2).unwrap();
        let s = basis_ground_state(&lat, 0, 0).unwrap();
        let p = NamedPartition::Ladder.build(&lat).unwrap();
        let rho = reduced_density_matrix(&s, &p).unwrap();
        let want = DMatrix::<Complex64>::identity(4, 4) * c(0.25);
        assert!((rho.matrix() - want).norm() < 1e-12);
    }

    #[test]
    fn entropy_of_reference_matrices() {
        let mut pure = DMatrix::<Complex64>::zeros(4, 4);
        pure[(2, 2)] = c(1.0);
        let rho = DensityMatrix::from_matrix(pure).unwrap();
        assert!(von_neumann_entropy(&rho).unwrap().abs() < 1e-12);
        for m in 1..=4 {
            let d = 1 << m;
            let mixed = DMatrix::<Complex64>::identity(d, d) * c(1.0 / d as f64);
            let rho = DensityMatrix::from_matrix(mixed).unwrap();
            assert!((von_neumann_entropy(&rho).unwrap() - m as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = DMatrix::<Complex64>::identity(2, 2) * c(0.5);
        m[(0, 1)] = c(0.3);
        let rho = DensityMatrix::from_matrix(m).unwrap();
        assert!(matches!(von_neumann_entropy(&rho), Err(Error::Internal(_))));
    }

    #[test]
    fn concurrence_benchmarks() {
        // Bell state (|00> + |11>)/sqrt2
        let h = 0.5;
        let mut bell = DMatrix::<Complex64>::zeros(4, 4);
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(i, j)] = c(h);
        }
        let bell = DensityMatrix::from_matrix(bell).unwrap();
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-9);

        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.1),
            c(0.2),
            c(0.3),
            c(0.4),
        ]));
        let diag = DensityMatrix::from_matrix(diag).unwrap();
        assert!(concurrence(&diag).unwrap() < 1e-12);

        let wrong = DensityMatrix::from_matrix(DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(concurrence(&wrong), Err(Error::Input(_))));
    }

    #[test]
    fn caps_enforced() {
        let lat = Lattice::torus(4).unwrap();
        assert!(matches!(
            basis_ground_state(&lat, 0, 0),
            Err(Error::Resource(_))
        ));
        let lat = Lattice::torus(3).unwrap();
        let s = basis_ground_state(&lat, 0, 0).unwrap();
        let big: Vec<usize> = (0..15).collect();
        assert!(matches!(
            reduced_density_matrix(&s, &Partition::new(18, &big).unwrap()),
            Err(Error::Resource(_))
        ));
        // the wrapper traces out the larger side instead
        assert!(entanglement_entropy(&s, &Partition::new(18, &big).unwrap()).is_ok());
    }

    #[test]
    fn spectrum_dump() {
        let rho = DensityMatrix::from_matrix(DMatrix::identity(2, 2) * c(0.5)).unwrap();
        let csv = rho.spectrum_csv().unwrap();
        assert!(csv.starts_with("index,eigenvalue\n0,5.0"));
        assert_eq!(csv.lines().count(), 3);
    }
}
