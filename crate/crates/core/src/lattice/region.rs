//! Disk-shaped subsystems bounded by a contractible loop on the dual lattice.
//!
//! A dual loop is given by the links it crosses, in order. It encloses a set
//! of sites; `A` is every link touching an enclosed site, so the crossed links
//! form the boundary of `A` and the rest of `A` is bulk.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::IndexedRandom;
use rand::Rng;

use super::partition::{BoundaryStats, Partition};
use super::Lattice;
use crate::error::{Error, Result};

/// Ordered list of the links crossed by a closed dual-lattice path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualLoop {
    links: Vec<usize>,
}

impl DualLoop {
    pub fn new(links: Vec<usize>) -> Self {
        Self { links }
    }

    pub fn links(&self) -> &[usize] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// `loop:<ids>` descriptor.
    pub fn descriptor(&self) -> String {
        let ids: Vec<String> = self.links.iter().map(|l| l.to_string()).collect();
        format!("loop:{}", ids.join(","))
    }
}

/// A disk subsystem: its loop, enclosed sites, partition and boundary statistics.
#[derive(Debug, Clone)]
pub struct DiskRegion {
    pub dual_loop: DualLoop,
    pub interior_sites: Vec<usize>,
    pub partition: Partition,
    pub stats: BoundaryStats,
}

fn shares_plaquette(lat: &Lattice, a: usize, b: usize) -> bool {
    lat.link_plaquettes(a)
        .iter()
        .any(|p| lat.link_plaquettes(b).contains(p))
}

/// Connected components of sites when the loop links are cut.
fn site_components(lat: &Lattice, cut: &[bool]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; lat.n_sites()];
    let mut next = 0;
    for start in 0..lat.n_sites() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for &l in lat.star_links(s) {
                if cut[l] {
                    continue;
                }
                let [a, b] = lat.links()[l];
                let other = if a == s { b } else { a };
                if comp[other] == usize::MAX {
                    comp[other] = next;
                    queue.push_back(other);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Euler characteristic of the subcomplex spanned by a site set.
fn region_euler(lat: &Lattice, inside: &[bool]) -> isize {
    let v = inside.iter().filter(|&&x| x).count() as isize;
    let link_in = |l: usize| {
        let [a, b] = lat.links()[l];
        inside[a] && inside[b]
    };
    let e = (0..lat.n_links()).filter(|&l| link_in(l)).count() as isize;
    let f = (0..lat.n_plaquettes())
        .filter(|&p| lat.plaquette_links(p).iter().all(|&l| link_in(l)))
        .count() as isize;
    v - e + f
}

impl DiskRegion {
    /// Region enclosed by a simple contractible dual loop.
    pub fn from_loop(lat: &Lattice, dual_loop: &DualLoop) -> Result<Self> {
        let links = dual_loop.links();
        if links.len() < 2 {
            return Err(Error::input("a dual loop needs at least two links"));
        }
        let mut cut = vec![false; lat.n_links()];
        for &l in links {
            if l >= lat.n_links() {
                return Err(Error::input(format!("loop link {l} out of range")));
            }
            if cut[l] {
                return Err(Error::input(format!("loop crosses link {l} twice")));
            }
            cut[l] = true;
        }
        for (idx, &l) in links.iter().enumerate() {
            let next = links[(idx + 1) % links.len()];
            if !shares_plaquette(lat, l, next) {
                return Err(Error::input(format!(
                    "loop links {l} and {next} are not adjacent on the dual lattice"
                )));
            }
        }
        for p in 0..lat.n_plaquettes() {
            let hits = lat.plaquette_links(p).iter().filter(|&&l| cut[l]).count();
            if hits != 0 && hits != 2 {
                return Err(Error::input(format!(
                    "loop is not simple: it crosses {hits} links of plaquette {p}"
                )));
            }
        }
        for &l in links {
            if lat.link_plaquettes(l).len() != 2 {
                return Err(Error::input(format!(
                    "loop crosses link {l}, which lies on the lattice boundary"
                )));
            }
        }

        let comp = site_components(lat, &cut);
        let n_comp = comp.iter().copied().max().map_or(0, |m| m + 1);
        if n_comp != 2 {
            return Err(Error::input(format!(
                "loop does not bound a disk: cutting it leaves {n_comp} component(s) (noncontractible loop?)"
            )));
        }
        if links.iter().any(|&l| {
            let [a, b] = lat.links()[l];
            comp[a] == comp[b]
        }) {
            return Err(Error::input("loop is not a boundary between two regions"));
        }
        let sides: Vec<Vec<bool>> = (0..2)
            .map(|c| comp.iter().map(|&x| x == c).collect())
            .collect();
        let sizes: Vec<usize> = sides
            .iter()
            .map(|s| s.iter().filter(|&&x| x).count())
            .collect();
        let disks: Vec<usize> = (0..2)
            .filter(|&c| region_euler(lat, &sides[c]) == 1)
            .collect();
        let side = match disks.as_slice() {
            [c] => *c,
            [_, _] => {
                if sizes[1] < sizes[0] {
                    1
                } else {
                    0
                }
            }
            _ => {
                return Err(Error::input(
                    "neither side of the loop is a disk (noncontractible loop)",
                ))
            }
        };
        let interior_sites: Vec<usize> = (0..lat.n_sites()).filter(|&s| sides[side][s]).collect();
        let a_links: Vec<usize> = (0..lat.n_links())
            .filter(|&l| {
                let [a, b] = lat.links()[l];
                sides[side][a] || sides[side][b]
            })
            .collect();
        let partition = Partition::new(lat.n_links(), &a_links)?;
        let stats = BoundaryStats::compute(lat, &partition);
        Ok(Self {
            dual_loop: dual_loop.clone(),
            interior_sites,
            partition,
            stats,
        })
    }

    /// Disk around a set of sites; fails unless the sites form a disk whose
    /// boundary is a single simple dual loop.
    pub fn from_sites(lat: &Lattice, sites: &[usize]) -> Result<Self> {
        let mut inside = vec![false; lat.n_sites()];
        for &s in sites {
            if s >= lat.n_sites() {
                return Err(Error::input(format!("site {s} out of range")));
            }
            inside[s] = true;
        }
        let dual_loop = boundary_loop(lat, &inside)?;
        let disk = Self::from_loop(lat, &dual_loop)?;
        let wanted: BTreeSet<usize> = sites.iter().copied().collect();
        if disk.interior_sites.iter().copied().collect::<BTreeSet<_>>() != wanted {
            return Err(Error::input("site set is not a disk"));
        }
        Ok(disk)
    }

    /// The `w × h` block of sites with lower-left site `(x, y)` on the torus.
    pub fn rect(lat: &Lattice, x: usize, y: usize, w: usize, h: usize) -> Result<Self> {
        let t = lat.require_torus("rectangular regions")?;
        if w == 0 || h == 0 || w >= t.k || h >= t.k {
            return Err(Error::input(format!(
                "rect {w}x{h} must have sides between 1 and {} on a k={} torus",
                t.k - 1,
                t.k
            )));
        }
        let sites: Vec<usize> = (0..h)
            .flat_map(|dy| (0..w).map(move |dx| (dx, dy)))
            .map(|(dx, dy)| t.site((x + dx) as isize, (y + dy) as isize))
            .collect();
        Self::from_sites(lat, &sites)
    }
}

/// Orders the links leaving a site set into a dual loop.
fn boundary_loop(lat: &Lattice, inside: &[bool]) -> Result<DualLoop> {
    let crossed: Vec<bool> = lat
        .links()
        .iter()
        .map(|&[a, b]| inside[a] != inside[b])
        .collect();
    let total = crossed.iter().filter(|&&c| c).count();
    let Some(start) = crossed.iter().position(|&c| c) else {
        return Err(Error::input("site set has no boundary"));
    };
    let mut order = vec![start];
    let mut prev_plaquette = usize::MAX;
    let mut current = start;
    loop {
        let plaquettes = lat.link_plaquettes(current);
        if plaquettes.len() != 2 {
            return Err(Error::input(format!(
                "boundary link {current} lies on the lattice edge"
            )));
        }
        let p = if plaquettes[0] != prev_plaquette {
            plaquettes[0]
        } else {
            plaquettes[1]
        };
        let others: Vec<usize> = lat
            .plaquette_links(p)
            .iter()
            .copied()
            .filter(|&l| crossed[l] && l != current)
            .collect();
        let [next] = others.as_slice() else {
            return Err(Error::input(format!(
                "region boundary pinches at plaquette {p}"
            )));
        };
        if *next == start {
            break;
        }
        if order.len() > total {
            return Err(Error::Internal("dual-loop walk did not close".into()));
        }
        order.push(*next);
        prev_plaquette = p;
        current = *next;
    }
    if order.len() != total {
        return Err(Error::input(
            "region boundary is not a single loop (region has holes or several pieces)",
        ));
    }
    Ok(DualLoop::new(order))
}

/// Grows a random disk of up to `max_sites` sites on the torus, one site at a
/// time, keeping only growth steps that leave a simple boundary.
pub fn random_disk<R: Rng + ?Sized>(lat: &Lattice, max_sites: usize, rng: &mut R) -> Result<DiskRegion> {
    let t = lat.require_torus("random disks")?;
    let max_sites = max_sites.clamp(1, t.k * t.k / 2);
    let target = rng.random_range(1..=max_sites);
    let seed = rng.random_range(0..lat.n_sites());
    let mut sites = vec![seed];
    let mut disk = DiskRegion::from_sites(lat, &sites)?;
    let mut stalls = 0;
    while sites.len() < target && stalls < 64 {
        let frontier: Vec<usize> = disk
            .dual_loop
            .links()
            .iter()
            .map(|&l| {
                let [a, b] = lat.links()[l];
                if sites.contains(&a) {
                    b
                } else {
                    a
                }
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let Some(&candidate) = frontier.choose(rng) else {
            break;
        };
        sites.push(candidate);
        match DiskRegion::from_sites(lat, &sites) {
            Ok(d) => {
                disk = d;
                stalls = 0;
            }
            Err(_) => {
                sites.pop();
                stalls += 1;
            }
        }
    }
    Ok(disk)
}

/// Random axis-aligned rectangle with sides in `1..=k-2`.
pub fn random_rect<R: Rng + ?Sized>(lat: &Lattice, rng: &mut R) -> Result<(usize, usize, usize, usize, DiskRegion)> {
    let t = lat.require_torus("random rectangles")?;
    if t.k < 3 {
        return Err(Error::input("random rectangles need k >= 3"));
    }
    let x = rng.random_range(0..t.k);
    let y = rng.random_range(0..t.k);
    let w = rng.random_range(1..=t.k - 2);
    let h = rng.random_range(1..=t.k - 2);
    let disk = DiskRegion::rect(lat, x, y, w, h)?;
    Ok((x, y, w, h, disk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_disk() {
        let lat = Lattice::torus(4).unwrap();
        let d = DiskRegion::rect(&lat, 1, 2, 1, 1).unwrap();
        assert_eq!(d.partition.len(), 4);
        assert_eq!(d.stats.l_boundary, 4);
        assert_eq!((d.stats.n2, d.stats.n3), (0, 0));
        assert_eq!(d.stats.sigma_a, 1);
        assert_eq!(d.dual_loop.len(), 4);
    }

    #[test]
    fn two_by_two_on_k5() {
        let lat = Lattice::torus(5).unwrap();
        let d = DiskRegion::rect(&lat, 1, 1, 2, 2).unwrap();
        // hand count: 4 interior sites, 12 links touching them, 8 crossed
        assert_eq!(d.partition.len(), 12);
        assert_eq!(d.stats.l_boundary, 8);
        assert_eq!(d.stats.sigma_ab, 8);
        assert_eq!(d.stats.sigma_a, 4);
        assert_eq!((d.stats.n2, d.stats.n3), (0, 0));
    }

    #[test]
    fn notched_region_counts() {
        let lat = Lattice::torus(6).unwrap();
        let t = lat.torus_indexing().unwrap();
        let mut sites = Vec::new();
        for y in 1..5 {
            for x in 1..5 {
                if (x, y) != (4, 4) && (x, y) != (2, 1) {
                    sites.push(t.site(x, y));
                }
            }
        }
        let d = DiskRegion::from_sites(&lat, &sites).unwrap();
        assert_eq!(d.stats.n2, 1);
        assert_eq!(d.stats.n3, 1);
        assert!(d.stats.is_consistent(36));
        // the loop alone reproduces the region
        let again = DiskRegion::from_loop(&lat, &d.dual_loop).unwrap();
        assert_eq!(again.interior_sites, d.interior_sites);
    }

    #[test]
    fn noncontractible_loop_rejected() {
        let lat = Lattice::torus(4).unwrap();
        let (w1, _) = lat.ladder_operators().unwrap();
        let l = DualLoop::new(w1.indices().collect());
        assert!(matches!(DiskRegion::from_loop(&lat, &l), Err(Error::Input(_))));
    }

    #[test]
    fn non_adjacent_loop_rejected() {
        let lat = Lattice::torus(4).unwrap();
        let l = DualLoop::new(vec![0, 5, 10, 15]);
        assert!(DiskRegion::from_loop(&lat, &l).is_err());
    }

    #[test]
    fn pinched_region_rejected() {
        let lat = Lattice::torus(5).unwrap();
        let t = lat.torus_indexing().unwrap();
        let sites = [t.site(1, 1), t.site(2, 2)];
        assert!(DiskRegion::from_sites(&lat, &sites).is_err());
    }

    #[test]
    fn rect_bounds() {
        let lat = Lattice::torus(4).unwrap();
        assert!(DiskRegion::rect(&lat, 0, 0, 0, 1).is_err());
        assert!(DiskRegion::rect(&lat, 0, 0, 4, 1).is_err());
        assert!(DiskRegion::rect(&lat, 3, 3, 2, 2).is_ok());
    }

    #[test]
    fn random_disks_are_consistent() {
        let lat = Lattice::torus(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let d = random_disk(&lat, 40, &mut rng).unwrap();
            assert!(d.stats.is_consistent(144));
            assert_eq!(d.stats.l_boundary, d.dual_loop.len());
        }
    }
}
