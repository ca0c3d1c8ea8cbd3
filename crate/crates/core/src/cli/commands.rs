use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::report::{render, Format, Row};
use super::specs::load_generators;
use super::{Cli, EntropyArgs, LatticeArgs, Outcome, ScanArgs, ScanMode, VerifyArgs, VERIFY_MAX_SPINS};
use crate::entropy::{
    boundary_bounds_check, entropy_equal_superposition, ground_degeneracy, independent_generator_count,
    sample_partitions,
};
use crate::error::{Error, Result};
use crate::gf2::{FlipVector, Gf2Matrix};
use crate::lattice::partition::PartitionSpec;
use crate::lattice::region::{random_disk, random_rect};
use crate::lattice::{BoundaryStats, DiskRegion, Lattice, NamedPartition, Partition};
use crate::oracle::{
    build_ground_state, entanglement_entropy, verify_partitions, StateVector, VERIFY_TOLERANCE,
};
use crate::toric::{closed_form_entropy, ClosedForm, TableRow, ToricState};

fn oracle_state(lat: &Lattice, state: &ToricState) -> Result<StateVector> {
    if lat.torus_indexing().is_some() {
        return build_ground_state(lat, &state.coeffs()?);
    }
    match state {
        ToricState::Xi(0, 0) => StateVector::equal_superposition(&lat.star_group()),
        _ => Err(Error::Unsupported(
            "only xi:0,0 is defined off the torus".into(),
        )),
    }
}

fn check_oracle_cap(cli: &Cli, lat: &Lattice) -> Result<()> {
    if lat.n_links() > cli.max_oracle_spins {
        return Err(Error::resource(format!(
            "oracle needs 2^{} amplitudes; cap is {} spins",
            lat.n_links(),
            cli.max_oracle_spins
        )));
    }
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or("--".into(), |v| format!("{v}"))
}

pub(super) fn entropy(cli: &Cli, a: &EntropyArgs, out: &mut Outcome) -> Result<()> {
    let lat = a.lattice.build()?;
    let resolved = a.partition.resolve(&lat)?;
    let p = &resolved.partition;
    let (state, note) = a.state.resolve()?;
    if let Some(note) = note {
        writeln!(out.stderr, "{note}").unwrap();
    }
    let report = entropy_equal_superposition(&lat.star_group(), p)?;
    let stats = match &resolved.disk {
        Some(d) => d.stats,
        None => BoundaryStats::compute(&lat, p),
    };

    let table_row = match (&resolved.disk, resolved.named) {
        (Some(d), _) => Some(TableRow::Disk(d.stats)),
        (None, Some(n)) => Some(TableRow::Named(n)),
        _ => None,
    };
    let closed = match (lat.torus_indexing(), table_row) {
        (Some(t), Some(row)) => Some(closed_form_entropy(row, t.k, &state)?),
        _ => None,
    };

    let generic = matches!(state, ToricState::Generic(_));
    let want_oracle = a.oracle || (generic && closed.and_then(|c| c.value()).is_none());
    let oracle_s = if want_oracle {
        if a.oracle {
            check_oracle_cap(cli, &lat)?;
        }
        if lat.n_links() <= cli.max_oracle_spins {
            Some(entanglement_entropy(&oracle_state(&lat, &state)?, p)?)
        } else {
            writeln!(out.stderr, "note: lattice exceeds the oracle cap; no numeric value").unwrap();
            None
        }
    } else {
        None
    };

    let mut row = Row::new(a.partition.to_string(), p.len(), &stats, report.s_bits);
    row.s_closed_form = closed.and_then(|c| c.value());
    row.oracle_s = oracle_s;

    let s_state = match state {
        ToricState::Xi(..) => Some(report.s_bits as f64),
        ToricState::Generic(_) => oracle_s.or(row.s_closed_form),
    };

    match cli.format {
        Format::Table => {
            let mut t = String::new();
            let mut kv = |k: &str, v: String| writeln!(t, "{k:<14} {v}").unwrap();
            kv("lattice", a.lattice.to_string());
            kv("partition", a.partition.to_string());
            kv("state", a.state.to_string());
            kv("size_A", p.len().to_string());
            kv("S", fmt_opt(s_state));
            kv("S_bits", report.s_bits.to_string());
            kv("log2_G", report.log2_g.to_string());
            kv("log2_dA", report.log2_da.to_string());
            kv("log2_dB", report.log2_db.to_string());
            kv("log2_f", report.log2_f.to_string());
            kv("diagonal", report.diagonal.to_string());
            kv("L", stats.l_boundary.to_string());
            kv("n1,n2,n3", format!("{},{},{}", stats.n1, stats.n2, stats.n3));
            kv("S_closed_form", closed.map_or("--".into(), |c| c.to_string()));
            kv("bounds", format!("[{:.6}, {:.6}]", row.lower_bound, row.upper_bound));
            kv("oracle_S", fmt_opt(oracle_s));
            out.stdout.push_str(&t);
        }
        f => out.stdout.push_str(&render(&[row], f)?),
    }

    let mut problems = Vec::new();
    if let (ToricState::Xi(..), Some(ClosedForm::Bits(b))) = (state, closed) {
        if b != report.s_bits {
            problems.push(format!("closed form {b} disagrees with engine {}", report.s_bits));
        }
    }
    if let Some(o) = oracle_s {
        let expected = match state {
            ToricState::Xi(..) => Some(report.s_bits as f64),
            ToricState::Generic(_) => closed.and_then(|c| c.value()),
        };
        if let Some(e) = expected {
            if (o - e).abs() >= VERIFY_TOLERANCE {
                problems.push(format!("oracle {o} disagrees with expected {e}"));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{}: {}", a.partition, problems.join("; "))))
    }
}

fn verify_cases(lat: &Lattice) -> Result<Vec<(String, Partition)>> {
    let n = lat.n_links();
    let mut cases = Vec::new();
    if let Some(t) = lat.torus_indexing() {
        for named in NamedPartition::ALL {
            cases.push((named.to_string(), named.build(lat)?));
        }
        let disk = DiskRegion::rect(lat, 0, 0, 1, 1)?;
        cases.push(("rect:0,0,1,1".into(), disk.partition));
        if t.k >= 3 {
            cases.push(("pair:0,1".into(), Partition::new(n, &[0, 1])?));
        }
    } else {
        for l in 0..n {
            cases.push((format!("spin:{l}"), Partition::new(n, &[l])?));
        }
    }
    // every bipartition when that is cheap
    if n <= 12 {
        let mut all: Vec<(String, Partition)> = (1..(1u64 << n) - 1)
            .map(|m| {
                let p = Partition::from_mask(FlipVector::from_u64(n, m));
                (p.descriptor(), p)
            })
            .collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        cases.extend(all);
    }
    Ok(cases)
}

pub(super) fn verify(cli: &Cli, a: &VerifyArgs, out: &mut Outcome) -> Result<()> {
    let lat = a.lattice.build()?;
    if lat.n_links() > VERIFY_MAX_SPINS {
        return Err(Error::resource(format!(
            "verify runs up to {VERIFY_MAX_SPINS} spins (torus k <= 3); lattice has {}",
            lat.n_links()
        )));
    }
    check_oracle_cap(cli, &lat)?;
    let truth = lat.star_group();
    let engine: Gf2Matrix = match &a.generators {
        Some(path) => load_generators(path, lat.n_links())?,
        None => truth.clone(),
    };
    let state = StateVector::equal_superposition(&truth)?;
    let results = verify_partitions(&state, &engine, &verify_cases(&lat)?)?;

    match cli.format {
        Format::Table => {
            for r in &results {
                writeln!(
                    out.stdout,
                    "{}  {:<24} engine={:<3} oracle={:.12} deviation={:.3e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.label,
                    r.engine_s,
                    r.oracle_s,
                    r.deviation
                )
                .unwrap();
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| Error::Internal(e.to_string());
            w.write_record(["partition", "engine_S", "oracle_S", "deviation", "status"])
                .map_err(err)?;
            for r in &results {
                w.write_record([
                    r.label.clone(),
                    r.engine_s.to_string(),
                    r.oracle_s.to_string(),
                    r.deviation.to_string(),
                    if r.pass { "pass" } else { "fail" }.to_string(),
                ])
                .map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            out.stdout.push_str(&String::from_utf8_lossy(&bytes));
        }
        Format::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|r| {
                    json!({
                        "partition": r.label,
                        "engine_S": r.engine_s,
                        "oracle_S": r.oracle_s,
                        "deviation": r.deviation,
                        "pass": r.pass,
                    })
                })
                .collect();
            out.stdout
                .push_str(&(serde_json::to_string_pretty(&rows).map_err(|e| Error::Internal(e.to_string()))? + "\n"));
        }
    }

    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.label.as_str()).collect();
    let max_dev = results.iter().map(|r| r.deviation).fold(0.0, f64::max);
    writeln!(
        out.stderr,
        "verified {} partitions: {} failed, max deviation {:.3e}",
        results.len(),
        failed.len(),
        max_dev
    )
    .unwrap();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "engine disagrees with oracle on {} (first: {})",
            failed.len(),
            failed[0]
        )))
    }
}

/// A scan row before entropies are attached.
struct Pending {
    descriptor: String,
    partition: Partition,
    stats: BoundaryStats,
    /// Closed form for `ξ00`, if the row has one.
    closed: Option<ClosedForm>,
    disk: bool,
}

impl Pending {
    fn plain(lat: &Lattice, descriptor: String, partition: Partition) -> Self {
        let stats = BoundaryStats::compute(lat, &partition);
        Self {
            descriptor,
            partition,
            stats,
            closed: None,
            disk: false,
        }
    }

    fn disk(lat: &Lattice, descriptor: String, d: DiskRegion) -> Result<Self> {
        let k = lat.require_torus("disk closed forms")?.k;
        let closed = closed_form_entropy(TableRow::Disk(d.stats), k, &ToricState::Xi(0, 0))?;
        Ok(Self {
            descriptor,
            partition: d.partition,
            stats: d.stats,
            closed: Some(closed),
            disk: true,
        })
    }
}

fn scan_pending(cli: &Cli, a: &ScanArgs, lat: &Lattice) -> Result<Vec<Pending>> {
    let n = lat.n_links();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match a.mode {
        ScanMode::Exhaustive => {
            if n > cli.exhaustive_cap || n >= 64 {
                return Err(Error::resource(format!(
                    "exhaustive scan over {n} spins exceeds the cap of {}",
                    cli.exhaustive_cap
                )));
            }
            Ok((1..(1u64 << n) - 1)
                .into_par_iter()
                .map(|m| {
                    let p = Partition::from_mask(FlipVector::from_u64(n, m));
                    Pending::plain(lat, p.descriptor(), p)
                })
                .collect())
        }
        ScanMode::Sampled => Ok(sample_partitions(n, a.count, cli.seed)?
            .into_iter()
            .map(|p| Pending::plain(lat, p.descriptor(), p))
            .collect()),
        ScanMode::Disks => {
            let t = lat.require_torus("random disks")?;
            let max_sites = a.max_sites.unwrap_or((t.k * t.k / 4).max(1));
            (0..a.count)
                .map(|_| {
                    let d = random_disk(lat, max_sites, &mut rng)?;
                    Pending::disk(lat, d.dual_loop.descriptor(), d)
                })
                .collect()
        }
        ScanMode::Rects => (0..a.count)
            .map(|_| {
                let (x, y, w, h, d) = random_rect(lat, &mut rng)?;
                Pending::disk(lat, format!("rect:{x},{y},{w},{h}"), d)
            })
            .collect(),
        ScanMode::Table1 => {
            let t = lat.require_torus("table rows")?;
            let mut rows = Vec::new();
            for named in NamedPartition::ALL {
                let closed = closed_form_entropy(TableRow::Named(named), t.k, &ToricState::Xi(0, 0))?;
                let mut p = Pending::plain(lat, named.to_string(), named.build(lat)?);
                p.closed = Some(closed);
                rows.push(p);
            }
            let mut rects = vec![(0, 0, 1, 1)];
            if t.k >= 3 {
                rects.push((0, 0, 2, 2));
            }
            for (x, y, w, h) in rects {
                let spec = PartitionSpec::Rect { x, y, w, h };
                rows.push(Pending::disk(lat, spec.to_string(), DiskRegion::rect(lat, x, y, w, h)?)?);
            }
            Ok(rows)
        }
    }
}

pub(super) fn scan(cli: &Cli, a: &ScanArgs, out: &mut Outcome) -> Result<()> {
    let lat = a.lattice.build()?;
    if a.oracle {
        check_oracle_cap(cli, &lat)?;
    }
    let mut pending = scan_pending(cli, a, &lat)?;
    pending.sort_by(|x, y| x.descriptor.cmp(&y.descriptor));

    let g = lat.star_group();
    let state = if a.oracle {
        Some(oracle_state(&lat, &ToricState::Xi(0, 0))?)
    } else {
        None
    };
    let rows: Vec<(Row, &Pending)> = pending
        .par_iter()
        .map(|pd| {
            let s = entropy_equal_superposition(&g, &pd.partition)?.s_bits;
            let mut row = Row::new(pd.descriptor.clone(), pd.partition.len(), &pd.stats, s);
            row.s_closed_form = pd.closed.and_then(|c| c.value());
            if let Some(st) = &state {
                row.oracle_s = Some(entanglement_entropy(st, &pd.partition)?);
            }
            Ok((row, pd))
        })
        .collect::<Result<_>>()?;

    let mut problems = Vec::new();
    for (row, pd) in &rows {
        if let Some(c) = row.s_closed_form {
            if c != row.s_bits as f64 {
                problems.push(format!("{}: engine {} vs closed form {c}", row.partition, row.s_bits));
            }
        }
        if pd.disk && !boundary_bounds_check(&pd.stats, row.s_bits) {
            problems.push(format!("{}: S={} outside boundary bounds (L={})", row.partition, row.s_bits, row.l));
        }
        if let Some(o) = row.oracle_s {
            if (o - row.s_bits as f64).abs() >= VERIFY_TOLERANCE {
                problems.push(format!("{}: oracle {o} vs engine {}", row.partition, row.s_bits));
            }
        }
    }

    let rows: Vec<Row> = rows.into_iter().map(|(r, _)| r).collect();
    out.stdout.push_str(&render(&rows, cli.format)?);
    if let Some(min) = rows.iter().min_by_key(|r| r.s_bits) {
        writeln!(
            out.stderr,
            "{} rows, min S_bits {} at {}",
            rows.len(),
            min.s_bits,
            min.partition
        )
        .unwrap();
    }
    for p in &problems {
        writeln!(out.stderr, "mismatch: {p}").unwrap();
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{} rows failed their checks", problems.len())))
    }
}

pub(super) fn lattice_info(cli: &Cli, a: &LatticeArgs, out: &mut Outcome) -> Result<()> {
    let lat = a.lattice.build()?;
    let degeneracy = if lat.is_closed() {
        Some(ground_degeneracy(&lat)?)
    } else {
        None
    };
    let fields: Vec<(&str, String)> = vec![
        ("lattice", a.lattice.to_string()),
        ("sites", lat.n_sites().to_string()),
        ("links", lat.n_links().to_string()),
        ("plaquettes", lat.n_plaquettes().to_string()),
        ("surface", if lat.is_closed() { "closed" } else { "open" }.to_string()),
        ("genus", lat.genus().map_or("n/a".into(), |g| g.to_string())),
        ("euler_characteristic", lat.euler_characteristic().to_string()),
        ("star_rank", lat.star_group().rank().to_string()),
        ("plaquette_rank", lat.plaquette_group().rank().to_string()),
        ("independent_generators", independent_generator_count(&lat).to_string()),
        ("degeneracy", degeneracy.map_or("n/a".into(), |d| d.to_string())),
    ];
    match cli.format {
        Format::Table => {
            for (k, v) in &fields {
                writeln!(out.stdout, "{k:<24}{v}").unwrap();
            }
        }
        Format::Csv => {
            out.stdout.push_str("field,value\n");
            for (k, v) in &fields {
                writeln!(out.stdout, "{k},{v}").unwrap();
            }
        }
        Format::Json => {
            let obj = json!({
                "lattice": a.lattice.to_string(),
                "sites": lat.n_sites(),
                "links": lat.n_links(),
                "plaquettes": lat.n_plaquettes(),
                "closed": lat.is_closed(),
                "genus": lat.genus(),
                "euler_characteristic": lat.euler_characteristic(),
                "star_rank": lat.star_group().rank(),
                "plaquette_rank": lat.plaquette_group().rank(),
                "independent_generators": independent_generator_count(&lat),
                "degeneracy": degeneracy.map(|d| d.to_string()),
            });
            out.stdout
                .push_str(&(serde_json::to_string_pretty(&obj).map_err(|e| Error::Internal(e.to_string()))? + "\n"));
        }
    }
    Ok(())
}
