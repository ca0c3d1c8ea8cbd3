// Acceptance checks, one line per criterion. Runs without the libtest harness
// so every line is printed; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_entropy::entropy::{
    absolute_entanglement_scan, boundary_bounds_check, entropy_equal_superposition, ground_degeneracy,
    independent_generator_count, is_diagonal, ScanMode,
};
use toric_entropy::lattice::region::{random_disk, random_rect};
use toric_entropy::lattice::{DiskRegion, NamedPartition};
use toric_entropy::oracle::{
    basis_ground_state, build_ground_state, concurrence, entanglement_entropy, reduced_density_matrix,
    StateVector,
};
use toric_entropy::toric::{basis_state_entropies, closed_form_entropy, p_param, TableRow, ToricState};
use toric_entropy::{FlipVector, Gf2Matrix, GroundStateCoeffs, Lattice, Partition};

type Check = Result<String, String>;
type Res<T> = Result<T, Box<dyn std::error::Error>>;
type Criterion = (&'static str, Option<Duration>, fn() -> Check);

const TOL: f64 = 1e-9;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    match (out, limit) {
        (Ok(msg), Some(lim)) if dt >= lim => Err(format!("{msg}; took {dt:.2?}, limit {lim:?}")),
        (Ok(msg), _) => Ok(format!("{msg}; {dt:.2?}")),
        (Err(msg), _) => Err(format!("{msg}; {dt:.2?}")),
    }
}

fn all_partitions(n: usize) -> Vec<Partition> {
    (1..(1u64 << n) - 1)
        .map(|m| Partition::from_mask(FlipVector::from_u64(n, m)))
        .collect()
}

fn c1_table() -> Check {
    let mut bad = Vec::new();
    for k in 2..=6 {
        let lat = Lattice::torus(k).map_err(err)?;
        let g = lat.star_group();
        for n in NamedPartition::ALL {
            let s = entropy_equal_superposition(&g, &n.build(&lat).map_err(err)?)
                .map_err(err)?
                .s_bits;
            let want = closed_form_entropy(TableRow::Named(n), k, &ToricState::Xi(0, 0)).map_err(err)?;
            if want.value() != Some(s as f64) {
                bad.push(format!("k={k} {}: engine {s}, table {want}", n.name()));
            }
        }
    }
    if bad.is_empty() {
        Ok("25 rows exact".into())
    } else {
        Err(format!("{} of 25 rows differ: {}", bad.len(), bad.join(", ")))
    }
}

fn oracle_vs_engine(lat: &Lattice, cases: &[(String, Partition)]) -> Check {
    let g = lat.star_group();
    let psi = basis_ground_state(lat, 0, 0).map_err(err)?;
    let mut worst: (f64, &str) = (0.0, "");
    for (label, p) in cases {
        let s = entropy_equal_superposition(&g, p).map_err(err)?.s_bits as f64;
        let o = entanglement_entropy(&psi, p).map_err(err)?;
        if (o - s).abs() > worst.0 {
            worst = ((o - s).abs(), label);
        }
    }
    if worst.0 < TOL {
        Ok(format!("{} partitions, max deviation {:.1e}", cases.len(), worst.0))
    } else {
        Err(format!("deviation {:.3e} at {}", worst.0, worst.1))
    }
}

fn c2_k2_oracle() -> Check {
    let lat = Lattice::torus(2).map_err(err)?;
    let cases: Vec<_> = all_partitions(8).into_iter().map(|p| (p.descriptor(), p)).collect();
    if cases.len() != 254 {
        return Err(format!("{} partitions", cases.len()));
    }
    oracle_vs_engine(&lat, &cases)
}

fn c3_k3_oracle() -> Check {
    let lat = Lattice::torus(3).map_err(err)?;
    let mut cases = Vec::new();
    for n in [
        NamedPartition::Chain,
        NamedPartition::Ladder,
        NamedPartition::Cross,
        NamedPartition::SingleSpin,
    ] {
        cases.push((n.name().to_string(), n.build(&lat).map_err(err)?));
    }
    cases.push(("disk 1x1".into(), DiskRegion::rect(&lat, 1, 1, 1, 1).map_err(err)?.partition));
    oracle_vs_engine(&lat, &cases)
}

fn c4_basis_invariance() -> Check {
    let mut worst: f64 = 0.0;
    for k in [2, 3] {
        let lat = Lattice::torus(k).map_err(err)?;
        for n in [NamedPartition::Chain, NamedPartition::Ladder] {
            let s = basis_state_entropies(&lat, &n.build(&lat).map_err(err)?).map_err(err)?;
            let spread = s.iter().cloned().fold(f64::MIN, f64::max) - s.iter().cloned().fold(f64::MAX, f64::min);
            worst = worst.max(spread);
        }
    }
    if worst < TOL {
        Ok(format!("max spread {worst:.1e}"))
    } else {
        Err(format!("spread {worst:.3e}"))
    }
}

fn c5_generic() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut draws = 0;
    for k in [2usize, 3] {
        let lat = Lattice::torus(k).map_err(err)?;
        let chain = NamedPartition::Chain.build(&lat).map_err(err)?;
        let ladder = NamedPartition::Ladder.build(&lat).map_err(err)?;
        for _ in 0..50 {
            let c = GroundStateCoeffs::random(&mut rng);
            let st = ToricState::Generic(c);
            let psi = build_ground_state(&lat, &c).map_err(err)?;
            for (row, p) in [(NamedPartition::Chain, &chain), (NamedPartition::Ladder, &ladder)] {
                let want = closed_form_entropy(TableRow::Named(row), k, &st)
                    .map_err(err)?
                    .value()
                    .ok_or("no closed form")?;
                worst = worst.max((entanglement_entropy(&psi, p).map_err(err)? - want).abs());
            }
            let ev = reduced_density_matrix(&psi, &ladder).map_err(err)?.eigenvalues().map_err(err)?;
            let pp = p_param(&c);
            let scale = (1u64 << k) as f64;
            let near = |x: f64| ev.iter().filter(|&&e| (e - x).abs() < TOL).count();
            let half = 1usize << (k - 1);
            let (hi, lo) = (near((1.0 + pp) / scale), near((1.0 - pp) / scale));
            let ok = if pp.abs() < TOL { hi == 2 * half } else { hi == half && lo == half };
            if !ok {
                return Err(format!("k={k} p={pp}: multiplicities {hi}, {lo}"));
            }
            draws += 1;
        }
    }
    if worst < TOL {
        Ok(format!("{draws} draws, max deviation {worst:.1e}, ladder multiplicities 2^(k-1)"))
    } else {
        Err(format!("deviation {worst:.3e}"))
    }
}

fn c6_concurrence() -> Check {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    let lat = Lattice::torus(2).map_err(err)?;
    let psi = basis_ground_state(&lat, 0, 0).map_err(err)?;
    for a in 0..8 {
        for b in a + 1..8 {
            let rho = reduced_density_matrix(&psi, &Partition::new(8, &[a, b]).map_err(err)?).map_err(err)?;
            worst = worst.max(concurrence(&rho).map_err(err)?);
            pairs += 1;
        }
    }
    let lat = Lattice::torus(3).map_err(err)?;
    let psi = basis_ground_state(&lat, 0, 0).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let ab = sample(&mut rng, 18, 2).into_vec();
        let rho = reduced_density_matrix(&psi, &Partition::new(18, &ab).map_err(err)?).map_err(err)?;
        worst = worst.max(concurrence(&rho).map_err(err)?);
        pairs += 1;
    }
    if worst < TOL {
        Ok(format!("{pairs} pairs, max C {worst:.1e}"))
    } else {
        Err(format!("C = {worst:.3e}"))
    }
}

fn c7_degeneracy() -> Check {
    for k in 2..=6 {
        let lat = Lattice::torus(k).map_err(err)?;
        let d = ground_degeneracy(&lat).map_err(err)?;
        let n = independent_generator_count(&lat);
        if d != 4 || n != 2 * k * k - 2 {
            return Err(format!("k={k}: degeneracy {d}, independent generators {n}"));
        }
    }
    Ok("k=2..6: degeneracy 4, 2k^2-2 generators".into())
}

fn c8_boundary_law() -> Check {
    let lat = Lattice::torus(12).map_err(err)?;
    let g = lat.star_group();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let (x, y, w, h, d) = random_rect(&lat, &mut rng).map_err(err)?;
        let s = entropy_equal_superposition(&g, &d.partition).map_err(err)?.s_bits;
        if s + 1 != d.stats.l_boundary {
            return Err(format!("rect {x},{y},{w},{h}: S={s}, L={}", d.stats.l_boundary));
        }
    }
    let mut cornered = 0;
    for _ in 0..200 {
        let d = random_disk(&lat, 40, &mut rng).map_err(err)?;
        let st = d.stats;
        let s = entropy_equal_superposition(&g, &d.partition).map_err(err)?.s_bits;
        let want = st.l_boundary as isize - st.n2 as isize - 2 * st.n3 as isize - 1;
        if s as isize != want || !boundary_bounds_check(&st, s) {
            return Err(format!("{}: S={s}, stats {st:?}", d.dual_loop.descriptor()));
        }
        if st.n2 + st.n3 > 0 {
            cornered += 1;
        }
    }
    Ok(format!("100 rectangles, 200 loops ({cornered} with n2 or n3 > 0)"))
}

fn c9_absolute() -> Check {
    let lat = Lattice::torus(2).map_err(err)?;
    let toric = absolute_entanglement_scan(&lat.star_group(), ScanMode::Exhaustive).map_err(err)?;
    let full = absolute_entanglement_scan(&Gf2Matrix::identity(8), ScanMode::Exhaustive).map_err(err)?;
    if toric.min_s_bits == 1 && full.min_s_bits == 0 {
        Ok(format!("toric min {} over {}, G=N min 0", toric.min_s_bits, toric.partitions_checked))
    } else {
        Err(format!("toric min {}, G=N min {}", toric.min_s_bits, full.min_s_bits))
    }
}

fn c10_diagonal() -> Check {
    let lat = Lattice::torus(2).map_err(err)?;
    let g = lat.star_group();
    let psi: StateVector = basis_ground_state(&lat, 0, 0).map_err(err)?;
    let mut n_diag = 0;
    for p in all_partitions(8) {
        let mass = reduced_density_matrix(&psi, &p).map_err(err)?.off_diagonal_mass();
        let diag = is_diagonal(&g, &p).map_err(err)?;
        if (mass < 1e-12) != diag {
            return Err(format!("{}: mass {mass:.3e}, predicate {diag}", p.descriptor()));
        }
        n_diag += diag as usize;
    }
    Ok(format!("254 partitions agree ({n_diag} diagonal)"))
}

fn main() -> Res<()> {
    let criteria: [Criterion; 10] = [
        ("table entropies k=2..6", Some(Duration::from_secs(1)), c1_table),
        ("oracle equivalence k=2", Some(Duration::from_secs(10)), c2_k2_oracle),
        ("oracle equivalence k=3", Some(Duration::from_secs(60)), c3_k3_oracle),
        ("ground-basis invariance", None, c4_basis_invariance),
        ("generic-state formulas", None, c5_generic),
        ("pair concurrence", None, c6_concurrence),
        ("degeneracy and generator count", None, c7_degeneracy),
        ("boundary law k=12", None, c8_boundary_law),
        ("absolute entanglement", None, c9_absolute),
        ("diagonality", None, c10_diagonal),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        match timed(*limit, f) {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
