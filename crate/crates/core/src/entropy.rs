//! Exact entanglement entropy of equal-superposition spin-flip states.
//!
//! For `|ψ⟩ = |G|^{-1/2} Σ_{g∈G} g|0…0⟩` and a bipartition `(A, B)`, the
//! entropy in bits is `log2|G| − log2 d_A − log2 d_B`, where `d_A` (`d_B`) is
//! the order of the subgroup of `G` acting trivially on `B` (`A`). With `G`
//! given by generators these are all ranks over GF(2), so every quantity here
//! is an exact integer.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{FlipVector, Gf2Matrix};
use crate::lattice::{BoundaryStats, Lattice, Partition};

/// Largest lattice (in links) accepted by the exhaustive partition scan.
pub const EXHAUSTIVE_SCAN_CAP: usize = 24;

/// Group-order bookkeeping for one bipartition. All values are `log2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EntropyReport {
    pub s_bits: usize,
    pub log2_g: usize,
    pub log2_da: usize,
    pub log2_db: usize,
    /// Elements of `G` acting freely on `A`, `|G| / d_B`.
    pub log2_f: usize,
    /// `ρ_A` is diagonal in the computational basis.
    pub diagonal: bool,
}

impl EntropyReport {
    fn from_ranks(rank: usize, rank_on_a: usize, rank_on_b: usize) -> Self {
        let log2_da = rank - rank_on_b;
        let log2_db = rank - rank_on_a;
        Self {
            s_bits: rank - log2_da - log2_db,
            log2_g: rank,
            log2_da,
            log2_db,
            log2_f: rank_on_a,
            diagonal: log2_da == 0,
        }
    }
}

fn check_columns(g: &Gf2Matrix, p: &Partition) -> Result<()> {
    if g.n_cols() != p.n_links() {
        return Err(Error::input(format!(
            "group acts on {} spins but the partition covers {}",
            g.n_cols(),
            p.n_links()
        )));
    }
    Ok(())
}

/// Entropy of the equal superposition over the row space of `g`.
pub fn entropy_equal_superposition(g: &Gf2Matrix, p: &Partition) -> Result<EntropyReport> {
    check_columns(g, p)?;
    p.require_proper()?;
    Ok(report_unchecked(g, p.mask()))
}

fn report_unchecked(g: &Gf2Matrix, a_mask: &FlipVector) -> EntropyReport {
    let rank = g.rank();
    let on_a = g.restricted_rank_mask(a_mask);
    let on_b = g.restricted_rank_mask(&a_mask.complement());
    EntropyReport::from_ranks(rank, on_a, on_b)
}

/// No nontrivial group element is supported inside `A`.
pub fn is_diagonal(g: &Gf2Matrix, p: &Partition) -> Result<bool> {
    check_columns(g, p)?;
    Ok(g.trivial_on_dimension_mask(p.mask()) == 0)
}

/// Disk entropy from boundary counting, in its two equivalent forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeometricEntropy {
    /// `Σ_AB − 1`.
    pub from_straddling_sites: usize,
    /// `L − n2 − 2·n3 − 1`.
    pub from_perimeter: usize,
}

pub fn geometric_entropy(stats: &BoundaryStats) -> Result<usize> {
    Ok(geometric_entropy_forms(stats)?.from_straddling_sites)
}

pub fn geometric_entropy_forms(stats: &BoundaryStats) -> Result<GeometricEntropy> {
    if stats.sigma_ab == 0 || stats.n_over != 0 {
        return Err(Error::Internal(format!(
            "boundary statistics do not describe a disk: {stats:?}"
        )));
    }
    let from_sites = stats.sigma_ab - 1;
    let from_perimeter =
        stats.l_boundary as isize - stats.n2 as isize - 2 * stats.n3 as isize - 1;
    if from_perimeter != from_sites as isize {
        return Err(Error::Internal(format!(
            "inconsistent boundary statistics: Σ_AB − 1 = {from_sites} but L − n2 − 2n3 − 1 = {from_perimeter}"
        )));
    }
    Ok(GeometricEntropy {
        from_straddling_sites: from_sites,
        from_perimeter: from_sites,
    })
}

/// Linear bounds `L/3 − 1 ≤ S ≤ 7L/6 − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryBounds {
    pub lower: f64,
    pub upper: f64,
    pub within: bool,
}

pub fn boundary_bounds(stats: &BoundaryStats, s_bits: usize) -> BoundaryBounds {
    let l = stats.l_boundary;
    let s1 = s_bits + 1;
    BoundaryBounds {
        lower: l as f64 / 3.0 - 1.0,
        upper: 7.0 * l as f64 / 6.0 - 1.0,
        // exact integer comparison: 3(S+1) >= L and 6(S+1) <= 7L
        within: 3 * s1 >= l && 6 * s1 <= 7 * l,
    }
}

pub fn boundary_bounds_check(stats: &BoundaryStats, s_bits: usize) -> bool {
    boundary_bounds(stats, s_bits).within
}

/// Star generators in the X half and plaquette generators in the Z half of a
/// `2n`-column symplectic layout.
pub fn combined_generators(lat: &Lattice) -> Gf2Matrix {
    let n = lat.n_links();
    let mut m = Gf2Matrix::new(2 * n);
    for s in 0..lat.n_sites() {
        let v = FlipVector::from_indices(2 * n, lat.star_links(s)).expect("in range");
        m.push_row(v).expect("width matches");
    }
    for p in 0..lat.n_plaquettes() {
        let shifted: Vec<usize> = lat.plaquette_links(p).iter().map(|l| l + n).collect();
        let v = FlipVector::from_indices(2 * n, &shifted).expect("in range");
        m.push_row(v).expect("width matches");
    }
    m
}

/// Number of independent stabilizer generators.
pub fn independent_generator_count(lat: &Lattice) -> usize {
    combined_generators(lat).rank()
}

/// Dimension of the protected subspace, `2^(n − #independent generators)`.
pub fn ground_degeneracy(lat: &Lattice) -> Result<u128> {
    if !lat.is_closed() {
        return Err(Error::Unsupported(
            "ground-state degeneracy needs a closed surface".into(),
        ));
    }
    let free = lat.n_links() - independent_generator_count(lat);
    if free >= 128 {
        return Err(Error::resource(format!("degeneracy 2^{free} does not fit")));
    }
    Ok(1u128 << free)
}

/// An x-string net commutes with every plaquette.
pub fn is_closed_string_net(lat: &Lattice, v: &FlipVector) -> Result<bool> {
    if v.len() != lat.n_links() {
        return Err(Error::input(format!(
            "flip vector of length {} on a lattice with {} links",
            v.len(),
            lat.n_links()
        )));
    }
    Ok((0..lat.n_plaquettes()).all(|p| v.commutes_with(&lat.plaquette_vector(p))))
}

/// How [`absolute_entanglement_scan`] picks partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Every proper subset `A` (`2^n − 2` of them).
    Exhaustive,
    /// `count` partitions; `|A|` uniform in `1..n`, then `A` uniform of that size.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub min_s_bits: usize,
    pub argmin: Partition,
    pub partitions_checked: u64,
}

/// Draws the partitions of a sampled scan; deterministic in `seed`.
pub fn sample_partitions(n_links: usize, count: usize, seed: u64) -> Result<Vec<Partition>> {
    if n_links < 2 {
        return Err(Error::input("need at least two spins to bipartition"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let size = rng.random_range(1..n_links);
            let picked: Vec<usize> = sample(&mut rng, n_links, size).into_vec();
            Partition::new(n_links, &picked).expect("sampled indices in range")
        })
        .collect())
}

/// Minimum entropy over proper bipartitions.
///
/// Work is split into independent chunks and merged by `(S, mask)` so the
/// argmin does not depend on thread scheduling.
pub fn absolute_entanglement_scan(g: &Gf2Matrix, mode: ScanMode) -> Result<ScanOutcome> {
    let n = g.n_cols();
    if n < 2 {
        return Err(Error::input("need at least two spins to bipartition"));
    }
    match mode {
        ScanMode::Exhaustive => {
            if n > EXHAUSTIVE_SCAN_CAP {
                return Err(Error::resource(format!(
                    "exhaustive scan over {n} spins exceeds the cap of {EXHAUSTIVE_SCAN_CAP}"
                )));
            }
            let last = (1u64 << n) - 1;
            let (s, mask) = (1..last)
                .into_par_iter()
                .map(|mask| {
                    let a = FlipVector::from_u64(n, mask);
                    (report_unchecked(g, &a).s_bits, mask)
                })
                .min()
                .expect("at least one proper partition");
            Ok(ScanOutcome {
                min_s_bits: s,
                argmin: Partition::from_mask(FlipVector::from_u64(n, mask)),
                partitions_checked: last - 1,
            })
        }
        ScanMode::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::input("sampled scan needs a positive count"));
            }
            let parts = sample_partitions(n, count, seed)?;
            let (s, idx) = parts
                .par_iter()
                .enumerate()
                .map(|(i, p)| (report_unchecked(g, p.mask()).s_bits, i))
                .min()
                .expect("count > 0");
            Ok(ScanOutcome {
                min_s_bits: s,
                argmin: parts[idx].clone(),
                partitions_checked: count as u64,
            })
        }
    }
}
