//! Toric-code ground states and their closed-form entropies.
//!
//! A generic ground state is `Σ a_ij |ξ_ij⟩` with `|ξ_ij⟩ = w1^j w2^i |ξ00⟩`.
//! Two combinations of the coefficients control the entropies:
//! `α = |a00|² + |a10|²` and `p = 2 Re(a00·conj(a10) + a01·conj(a11))`.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BoundaryStats, Lattice, NamedPartition, Partition};
use crate::oracle;

const NORM_TOLERANCE: f64 = 1e-12;
const H2_EDGE: f64 = 1e-12;

/// Amplitudes of a toric ground state in the `ξ_ij` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateCoeffs {
    pub a00: Complex64,
    pub a01: Complex64,
    pub a10: Complex64,
    pub a11: Complex64,
}

impl GroundStateCoeffs {
    /// Fails unless `Σ |a_ij|² = 1` within `1e-12`.
    pub fn new(a00: Complex64, a01: Complex64, a10: Complex64, a11: Complex64) -> Result<Self> {
        let c = Self { a00, a01, a10, a11 };
        let n = c.norm_sqr();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::input(format!(
                "coefficients have squared norm {n}, expected 1"
            )));
        }
        Ok(c)
    }

    pub fn from_real(a00: f64, a01: f64, a10: f64, a11: f64) -> Result<Self> {
        let r = |x| Complex64::new(x, 0.0);
        Self::new(r(a00), r(a01), r(a10), r(a11))
    }

    /// `ξ_ij` itself.
    pub fn basis(i: usize, j: usize) -> Result<Self> {
        if i > 1 || j > 1 {
            return Err(Error::input(format!("xi indices must be 0 or 1, got ({i},{j})")));
        }
        let mut a = [Complex64::new(0.0, 0.0); 4];
        a[2 * i + j] = Complex64::new(1.0, 0.0);
        Ok(Self::from_array(a))
    }

    /// Rescales to unit norm when the input norm is within `tolerance` of 1;
    /// returns the coefficients and whether they were rescaled.
    pub fn normalized(values: [Complex64; 4], tolerance: f64) -> Result<(Self, bool)> {
        let raw = Self::from_array(values);
        let n = raw.norm_sqr().sqrt();
        if (n - 1.0).abs() > tolerance {
            return Err(Error::input(format!(
                "coefficient norm {n} deviates from 1 by more than {tolerance}"
            )));
        }
        let scaled = Self::from_array(values.map(|a| a / n));
        Ok((scaled, (n - 1.0).abs() > 0.0))
    }

    /// Uniformly random unit vector in `C^4`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let a = [draw(), draw(), draw(), draw()];
        let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Self::from_array(a.map(|z| z / n))
    }

    fn from_array(a: [Complex64; 4]) -> Self {
        Self {
            a00: a[0],
            a01: a[1],
            a10: a[2],
            a11: a[3],
        }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.a00, self.a01, self.a10, self.a11]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by the same unit phase.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let ph = Complex64::from_polar(1.0, theta);
        Self::from_array(self.as_array().map(|a| a * ph))
    }
}

/// Weight of the even-parity chain configurations, `|a00|² + |a10|²`.
pub fn alpha(c: &GroundStateCoeffs) -> f64 {
    c.a00.norm_sqr() + c.a10.norm_sqr()
}

/// `2 Re(a00·conj(a10) + a01·conj(a11))`.
pub fn p_param(c: &GroundStateCoeffs) -> f64 {
    2.0 * (c.a00 * c.a10.conj() + c.a01 * c.a11.conj()).re
}

/// Binary entropy `H2(x)` in bits, with `H2(0) = H2(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-H2_EDGE..=1.0 + H2_EDGE).contains(&x) || x.is_nan() {
        return Err(Error::input(format!("binary entropy argument {x} outside [0, 1]")));
    }
    if x <= H2_EDGE || x >= 1.0 - H2_EDGE {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// Which ground state a closed form is asked for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToricState {
    Xi(usize, usize),
    Generic(GroundStateCoeffs),
}

impl ToricState {
    pub fn coeffs(&self) -> Result<GroundStateCoeffs> {
        match self {
            ToricState::Xi(i, j) => GroundStateCoeffs::basis(*i, *j),
            ToricState::Generic(c) => Ok(*c),
        }
    }
}

/// Table partitions, including the disk with its boundary counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableRow {
    Named(NamedPartition),
    Disk(BoundaryStats),
}

/// A closed-form entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ClosedForm {
    /// Exact integer number of bits.
    Bits(usize),
    /// Contains a binary-entropy term.
    Real(f64),
    /// No closed form is known for this state (table entry "--").
    Undefined,
}

impl ClosedForm {
    pub fn value(&self) -> Option<f64> {
        match self {
            ClosedForm::Bits(b) => Some(*b as f64),
            ClosedForm::Real(x) => Some(*x),
            ClosedForm::Undefined => None,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Bits(b) => write!(f, "{b}"),
            ClosedForm::Real(x) => write!(f, "{x}"),
            ClosedForm::Undefined => write!(f, "--"),
        }
    }
}

/// Tabulated entropy for the named partitions and the disk.
pub fn closed_form_entropy(row: TableRow, k: usize, state: &ToricState) -> Result<ClosedForm> {
    if k < 2 {
        return Err(Error::input(format!("torus needs k >= 2, got {k}")));
    }
    if let ToricState::Xi(i, j) = state {
        GroundStateCoeffs::basis(*i, *j)?;
    }
    let generic = match state {
        ToricState::Xi(..) => None,
        ToricState::Generic(c) => Some(c),
    };
    Ok(match (row, generic) {
        (TableRow::Named(NamedPartition::SingleSpin), _) => ClosedForm::Bits(1),
        (TableRow::Named(NamedPartition::Chain), None) => ClosedForm::Bits(k - 1),
        (TableRow::Named(NamedPartition::Chain), Some(c)) => {
            ClosedForm::Real((k - 1) as f64 + binary_entropy(alpha(c))?)
        }
        (TableRow::Named(NamedPartition::Ladder), None) => ClosedForm::Bits(k),
        (TableRow::Named(NamedPartition::Ladder), Some(c)) => {
            ClosedForm::Real((k - 1) as f64 + binary_entropy((1.0 + p_param(c)) / 2.0)?)
        }
        (TableRow::Named(NamedPartition::Cross), None) => ClosedForm::Bits(2 * k - 1),
        (TableRow::Named(NamedPartition::Vertical), None) => ClosedForm::Bits(k * k - 1),
        (TableRow::Named(NamedPartition::Cross | NamedPartition::Vertical), Some(_)) => {
            ClosedForm::Undefined
        }
        (TableRow::Disk(stats), _) => {
            let s = stats.l_boundary as isize - stats.n2 as isize - 2 * stats.n3 as isize - 1;
            if s < 0 {
                return Err(Error::input(format!("boundary counts {stats:?} are not a disk")));
            }
            ClosedForm::Bits(s as usize)
        }
    })
}

/// One row of the entropy table for a given `k`.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormRow {
    pub partition: &'static str,
    pub s_xi00: Option<usize>,
    /// Formula for a generic ground state, or `None` where the table has "--".
    pub s_generic: Option<&'static str>,
}

/// The table rows with exact `ξ00` values; the disk row depends on its
/// boundary and is therefore formula-only.
pub fn table1_rows(k: usize) -> Vec<ClosedFormRow> {
    vec![
        ClosedFormRow {
            partition: "single_spin",
            s_xi00: Some(1),
            s_generic: Some("1"),
        },
        ClosedFormRow {
            partition: "two_spins (concurrence)",
            s_xi00: Some(0),
            s_generic: Some("C = 0"),
        },
        ClosedFormRow {
            partition: "chain",
            s_xi00: Some(k - 1),
            s_generic: Some("k-1+H2(alpha)"),
        },
        ClosedFormRow {
            partition: "ladder",
            s_xi00: Some(k),
            s_generic: Some("k-1+H2((1+p)/2)"),
        },
        ClosedFormRow {
            partition: "cross",
            s_xi00: Some(2 * k - 1),
            s_generic: None,
        },
        ClosedFormRow {
            partition: "vertical",
            s_xi00: Some(k * k - 1),
            s_generic: None,
        },
        ClosedFormRow {
            partition: "disk",
            s_xi00: None,
            s_generic: Some("L-n2-2n3-1"),
        },
    ]
}

/// Oracle check that the four `ξ_ij` give the same entropy on `p` (within `1e-9`).
pub fn basis_state_entropy_invariance(lat: &Lattice, p: &Partition) -> Result<bool> {
    let values = basis_state_entropies(lat, p)?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(hi - lo < 1e-9)
}

/// Oracle entropies of `ξ00, ξ01, ξ10, ξ11`.
pub fn basis_state_entropies(lat: &Lattice, p: &Partition) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (idx, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        let state = oracle::basis_ground_state(lat, i, j)?;
        out[idx] = oracle::entanglement_entropy(&state, p)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn alpha_values() {
        assert!(close(alpha(&GroundStateCoeffs::basis(0, 0).unwrap()), 1.0));
        assert!(close(alpha(&GroundStateCoeffs::basis(0, 1).unwrap()), 0.0));
        let half = GroundStateCoeffs::from_real(0.5, 0.5, 0.5, 0.5).unwrap();
        assert!(close(alpha(&half), 0.5));
    }

    #[test]
    fn p_values() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(p_param(&GroundStateCoeffs::basis(0, 0).unwrap()), 0.0));
        assert!(close(p_param(&GroundStateCoeffs::from_real(r, 0.0, r, 0.0).unwrap()), 1.0));
        assert!(close(p_param(&GroundStateCoeffs::from_real(r, 0.0, -r, 0.0).unwrap()), -1.0));
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap(), 0.0);
        assert!(close(binary_entropy(0.5).unwrap(), 1.0));
        // 2 - (3/4) log2 3
        assert!(close(binary_entropy(0.25).unwrap(), 0.811_278_124_459_132_8));
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn unnormalized_rejected() {
        assert!(GroundStateCoeffs::from_real(1.0, 1.0, 0.0, 0.0).is_err());
        let z = Complex64::new(0.5, 0.0);
        let (c, rescaled) = GroundStateCoeffs::normalized([z * 1.0000001, z, z, z], 1e-6).unwrap();
        assert!(rescaled);
        assert!(close(c.norm_sqr(), 1.0));
        assert!(GroundStateCoeffs::normalized([z * 1.1, z, z, z], 1e-6).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let xi = ToricState::Xi(0, 0);
        let row = |n| TableRow::Named(n);
        assert_eq!(closed_form_entropy(row(NamedPartition::Chain), 5, &xi).unwrap(), ClosedForm::Bits(4));
        assert_eq!(closed_form_entropy(row(NamedPartition::Cross), 4, &xi).unwrap(), ClosedForm::Bits(7));

        let p0 = GroundStateCoeffs::basis(0, 0).unwrap();
        assert!(close(p_param(&p0), 0.0));
        let ladder = closed_form_entropy(row(NamedPartition::Ladder), 3, &ToricState::Generic(p0)).unwrap();
        assert!(close(ladder.value().unwrap(), 3.0));

        let chain = closed_form_entropy(row(NamedPartition::Chain), 3, &ToricState::Generic(p0)).unwrap();
        assert!(close(chain.value().unwrap(), 2.0));

        let g = ToricState::Generic(GroundStateCoeffs::from_real(0.5, 0.5, 0.5, 0.5).unwrap());
        assert_eq!(closed_form_entropy(row(NamedPartition::Cross), 3, &g).unwrap(), ClosedForm::Undefined);
        assert_eq!(closed_form_entropy(row(NamedPartition::Vertical), 3, &g).unwrap(), ClosedForm::Undefined);
    }

    #[test]
    fn xi_values_independent_of_index() {
        for n in NamedPartition::ALL {
            let base = closed_form_entropy(TableRow::Named(n), 4, &ToricState::Xi(0, 0)).unwrap();
            for (i, j) in [(0, 1), (1, 0), (1, 1)] {
                let v = closed_form_entropy(TableRow::Named(n), 4, &ToricState::Xi(i, j)).unwrap();
                assert_eq!(v, base);
            }
        }
        assert!(closed_form_entropy(TableRow::Named(NamedPartition::Chain), 4, &ToricState::Xi(2, 0)).is_err());
    }

    #[test]
    fn disk_row() {
        let stats = BoundaryStats {
            l_boundary: 12,
            n2: 1,
            n3: 1,
            ..Default::default()
        };
        assert_eq!(
            closed_form_entropy(TableRow::Disk(stats), 6, &ToricState::Xi(0, 0)).unwrap(),
            ClosedForm::Bits(8)
        );
    }

    #[test]
    fn table_rows_k6() {
        let rows = table1_rows(6);
        let get = |name: &str| rows.iter().find(|r| r.partition == name).unwrap().s_xi00;
        assert_eq!(get("chain"), Some(5));
        assert_eq!(get("ladder"), Some(6));
        assert_eq!(get("cross"), Some(11));
        assert_eq!(get("vertical"), Some(35));
    }

    #[test]
    fn invariance_k2() {
        let lat = Lattice::torus(2).unwrap();
        let chain = NamedPartition::Chain.build(&lat).unwrap();
        let values = basis_state_entropies(&lat, &chain).unwrap();
        for v in values {
            assert!((v - 1.0).abs() < 1e-9);
        }
        let spin = Partition::new(8, &[5]).unwrap();
        assert!(basis_state_entropy_invariance(&lat, &spin).unwrap());
    }
}
