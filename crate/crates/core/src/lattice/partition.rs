//! Bipartitions of the spins and the site statistics of their boundary.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::region::{DiskRegion, DualLoop};
use super::Lattice;
use crate::error::{Error, Result};
use crate::gf2::FlipVector;

/// Subsystem `A` as a set of link indices; `B` is the complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    links: Vec<usize>,
    mask: FlipVector,
}

impl Partition {
    pub fn new(n_links: usize, links: &[usize]) -> Result<Self> {
        let mask = FlipVector::from_indices(n_links, links)?;
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: FlipVector) -> Self {
        Self {
            links: mask.indices().collect(),
            mask,
        }
    }

    /// Links of `A`, ascending.
    pub fn links(&self) -> &[usize] {
        &self.links
    }

    pub fn mask(&self) -> &FlipVector {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn n_links(&self) -> usize {
        self.mask.len()
    }

    /// The partition with `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self::from_mask(self.mask.complement())
    }

    /// Both sides nonempty.
    pub fn is_proper(&self) -> bool {
        !self.links.is_empty() && self.links.len() < self.mask.len()
    }

    pub fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "partition with |A| = {} of {} spins is not proper",
                self.links.len(),
                self.mask.len()
            )))
        }
    }

    /// `links:<comma list>` descriptor.
    pub fn descriptor(&self) -> String {
        let ids: Vec<String> = self.links.iter().map(|l| l.to_string()).collect();
        format!("links:{}", ids.join(","))
    }
}

/// Classification of sites by how many of their links lie in `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BoundaryStats {
    /// Sites with every link in `A`.
    pub sigma_a: usize,
    /// Sites with no link in `A`.
    pub sigma_b: usize,
    /// Sites touching both sides.
    pub sigma_ab: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    /// Straddling sites with four or more links in `A` (never on the torus).
    pub n_over: usize,
    /// Total count of `A`-links at straddling sites, `n1 + 2·n2 + 3·n3 + …`.
    pub l_boundary: usize,
}

impl BoundaryStats {
    pub fn compute(lat: &Lattice, p: &Partition) -> Self {
        let mut stats = BoundaryStats::default();
        for site in 0..lat.n_sites() {
            let star = lat.star_links(site);
            let inside = star.iter().filter(|&&l| p.mask().get(l)).count();
            if inside == star.len() {
                stats.sigma_a += 1;
            } else if inside == 0 {
                stats.sigma_b += 1;
            } else {
                stats.sigma_ab += 1;
                stats.l_boundary += inside;
                match inside {
                    1 => stats.n1 += 1,
                    2 => stats.n2 += 1,
                    3 => stats.n3 += 1,
                    _ => stats.n_over += 1,
                }
            }
        }
        stats
    }

    /// Checks the counting identities; `n_sites` is the lattice size.
    pub fn is_consistent(&self, n_sites: usize) -> bool {
        let low = self.n1 + 2 * self.n2 + 3 * self.n3;
        let perimeter_ok = if self.n_over == 0 {
            self.l_boundary == low
        } else {
            self.l_boundary >= low + 4 * self.n_over
        };
        self.sigma_a + self.sigma_b + self.sigma_ab == n_sites
            && self.sigma_ab == self.n1 + self.n2 + self.n3 + self.n_over
            && perimeter_ok
    }
}

/// Site classification for a partition.
pub fn boundary_stats(lat: &Lattice, p: &Partition) -> BoundaryStats {
    BoundaryStats::compute(lat, p)
}

/// The torus partitions with closed-form entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedPartition {
    /// One spin (link 0 unless given explicitly).
    SingleSpin,
    /// The `k` vertical links `v(0, j)` of column 0.
    Chain,
    /// The `k` horizontal links `h(0, j)` crossed by the vertical dual loop right of column 0.
    Ladder,
    /// Chain together with ladder, `2k` spins.
    Cross,
    /// All `k²` vertical links.
    Vertical,
}

impl NamedPartition {
    pub const ALL: [NamedPartition; 5] = [
        NamedPartition::SingleSpin,
        NamedPartition::Chain,
        NamedPartition::Ladder,
        NamedPartition::Cross,
        NamedPartition::Vertical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedPartition::SingleSpin => "single_spin",
            NamedPartition::Chain => "chain",
            NamedPartition::Ladder => "ladder",
            NamedPartition::Cross => "cross",
            NamedPartition::Vertical => "vertical",
        }
    }

    pub fn build(&self, lat: &Lattice) -> Result<Partition> {
        let t = lat.require_torus("named partitions")?;
        let k = t.k as isize;
        let chain = || (0..k).map(|j| t.v(0, j));
        let ladder = || (0..k).map(|j| t.h(0, j));
        let links: Vec<usize> = match self {
            NamedPartition::SingleSpin => vec![0],
            NamedPartition::Chain => chain().collect(),
            NamedPartition::Ladder => ladder().collect(),
            NamedPartition::Cross => chain().chain(ladder()).collect(),
            NamedPartition::Vertical => (0..k)
                .flat_map(|j| (0..k).map(move |i| t.v(i, j)))
                .collect(),
        };
        Partition::new(lat.n_links(), &links)
    }
}

impl fmt::Display for NamedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single_spin" | "spin" => Ok(NamedPartition::SingleSpin),
            "chain" => Ok(NamedPartition::Chain),
            "ladder" => Ok(NamedPartition::Ladder),
            "cross" => Ok(NamedPartition::Cross),
            "vertical" => Ok(NamedPartition::Vertical),
            other => Err(Error::input(format!("unknown partition name `{other}`"))),
        }
    }
}

/// A named torus partition; `pair` gives the two-spin subsystem `{i, j}`.
pub fn named_partition(lat: &Lattice, name: &str) -> Result<Partition> {
    if let Some(rest) = name.strip_prefix("pair(").and_then(|r| r.strip_suffix(')')) {
        let ids = parse_id_list(rest)?;
        return pair(lat, &ids);
    }
    name.parse::<NamedPartition>()?.build(lat)
}

fn pair(lat: &Lattice, ids: &[usize]) -> Result<Partition> {
    if ids.len() != 2 || ids[0] == ids[1] {
        return Err(Error::input("a pair needs two distinct link ids"));
    }
    Partition::new(lat.n_links(), ids)
}

/// Partition descriptors accepted on the command line.
///
/// `chain`, `ladder`, `cross`, `vertical`, `spin:<id>`, `pair:<id>,<id>`,
/// `links:<comma list>`, `rect:<x>,<y>,<w>,<h>`, `loop:<dual-edge list>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSpec {
    Named(NamedPartition),
    Spin(usize),
    Pair(usize, usize),
    Links(Vec<usize>),
    Rect {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
    },
    Loop(Vec<usize>),
}

fn parse_id_list(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("expected a link/site id, found `{t}`")))
        })
        .collect()
}

impl FromStr for PartitionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("spin", Some(r)) => {
                let ids = parse_id_list(r)?;
                match ids.as_slice() {
                    [id] => Ok(PartitionSpec::Spin(*id)),
                    _ => Err(Error::input("spin:<id> takes one id")),
                }
            }
            ("pair", Some(r)) => match parse_id_list(r)?.as_slice() {
                [a, b] if a != b => Ok(PartitionSpec::Pair(*a, *b)),
                _ => Err(Error::input("pair:<id>,<id> takes two distinct ids")),
            },
            ("links", Some(r)) => Ok(PartitionSpec::Links(parse_id_list(r)?)),
            ("rect", Some(r)) => match parse_id_list(r)?.as_slice() {
                [x, y, w, h] => Ok(PartitionSpec::Rect {
                    x: *x,
                    y: *y,
                    w: *w,
                    h: *h,
                }),
                _ => Err(Error::input("rect:<x>,<y>,<w>,<h> takes four integers")),
            },
            ("loop", Some(r)) => Ok(PartitionSpec::Loop(parse_id_list(r)?)),
            (name, None) => Ok(PartitionSpec::Named(name.parse()?)),
            (other, Some(_)) => Err(Error::input(format!("unknown partition kind `{other}`"))),
        }
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ids: &[usize]| {
            ids.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            PartitionSpec::Named(n) => write!(f, "{n}"),
            PartitionSpec::Spin(id) => write!(f, "spin:{id}"),
            PartitionSpec::Pair(a, b) => write!(f, "pair:{a},{b}"),
            PartitionSpec::Links(ids) => write!(f, "links:{}", join(ids)),
            PartitionSpec::Rect { x, y, w, h } => write!(f, "rect:{x},{y},{w},{h}"),
            PartitionSpec::Loop(ids) => write!(f, "loop:{}", join(ids)),
        }
    }
}

/// A partition together with what is known about its shape.
#[derive(Debug, Clone)]
pub struct ResolvedPartition {
    pub partition: Partition,
    pub named: Option<NamedPartition>,
    pub disk: Option<DiskRegion>,
}

impl PartitionSpec {
    pub fn resolve(&self, lat: &Lattice) -> Result<ResolvedPartition> {
        let plain = |partition| ResolvedPartition {
            partition,
            named: None,
            disk: None,
        };
        match self {
            PartitionSpec::Named(n) => Ok(ResolvedPartition {
                partition: n.build(lat)?,
                named: Some(*n),
                disk: None,
            }),
            PartitionSpec::Spin(id) => Ok(ResolvedPartition {
                partition: Partition::new(lat.n_links(), &[*id])?,
                named: Some(NamedPartition::SingleSpin),
                disk: None,
            }),
            PartitionSpec::Pair(a, b) => Ok(plain(pair(lat, &[*a, *b])?)),
            PartitionSpec::Links(ids) => Ok(plain(Partition::new(lat.n_links(), ids)?)),
            PartitionSpec::Rect { x, y, w, h } => {
                let disk = DiskRegion::rect(lat, *x, *y, *w, *h)?;
                Ok(ResolvedPartition {
                    partition: disk.partition.clone(),
                    named: None,
                    disk: Some(disk),
                })
            }
            PartitionSpec::Loop(ids) => {
                let disk = DiskRegion::from_loop(lat, &DualLoop::new(ids.clone()))?;
                Ok(ResolvedPartition {
                    partition: disk.partition.clone(),
                    named: None,
                    disk: Some(disk),
                })
            }
        }
    }
}
