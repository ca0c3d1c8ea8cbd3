//! Lattices carrying one spin per link, with star and plaquette incidence.
//!
//! The concrete builder is the `k × k` torus ([`Lattice::torus`]); arbitrary
//! cell structures are read from the text format in [`document`].
//!
//! Torus link convention, for site `(i, j)` (column `i`, row `j`, 0-based,
//! periodic):
//!
//! * horizontal link `h(i, j) = j·k + i` joins `(i, j)` and `(i+1, j)`;
//! * vertical link `v(i, j) = k² + j·k + i` joins `(i, j)` and `(i, j+1)`;
//! * the plaquette with lower-left corner `(i, j)` is bounded by
//!   `h(i, j), h(i, j+1), v(i, j), v(i+1, j)`.

pub mod document;
pub mod partition;
pub mod region;

use crate::error::{Error, Result};
use crate::gf2::{FlipVector, Gf2Matrix};

pub use partition::{BoundaryStats, NamedPartition, Partition, PartitionSpec};
pub use region::{DiskRegion, DualLoop};

/// Index arithmetic for the `k × k` torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusIndexing {
    pub k: usize,
}

impl TorusIndexing {
    fn wrap(&self, x: isize) -> usize {
        x.rem_euclid(self.k as isize) as usize
    }

    pub fn site(&self, i: isize, j: isize) -> usize {
        self.wrap(j) * self.k + self.wrap(i)
    }

    pub fn site_coords(&self, site: usize) -> (usize, usize) {
        (site % self.k, site / self.k)
    }

    pub fn h(&self, i: isize, j: isize) -> usize {
        self.site(i, j)
    }

    pub fn v(&self, i: isize, j: isize) -> usize {
        self.k * self.k + self.site(i, j)
    }

    pub fn plaquette(&self, i: isize, j: isize) -> usize {
        self.site(i, j)
    }

    pub fn is_vertical(&self, link: usize) -> bool {
        link >= self.k * self.k
    }
}

/// Sites, links and plaquettes of a cell structure, one spin per link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    n_sites: usize,
    links: Vec<[usize; 2]>,
    star_links: Vec<Vec<usize>>,
    plaquette_links: Vec<Vec<usize>>,
    link_plaquettes: Vec<Vec<usize>>,
    genus: Option<usize>,
    torus: Option<TorusIndexing>,
}

impl Lattice {
    /// The `k × k` square lattice on the torus: `k²` sites and plaquettes,
    /// `2k²` links.
    pub fn torus(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::input(format!("torus needs k >= 2, got {k}")));
        }
        let t = TorusIndexing { k };
        let n = k * k;
        let mut links = vec![[0usize; 2]; 2 * n];
        let mut plaquettes = Vec::with_capacity(n);
        for j in 0..k as isize {
            for i in 0..k as isize {
                links[t.h(i, j)] = [t.site(i, j), t.site(i + 1, j)];
                links[t.v(i, j)] = [t.site(i, j), t.site(i, j + 1)];
            }
        }
        for j in 0..k as isize {
            for i in 0..k as isize {
                plaquettes.push(vec![t.h(i, j), t.h(i, j + 1), t.v(i, j), t.v(i + 1, j)]);
            }
        }
        let mut lat = Self::from_parts(n, links, plaquettes, Some(1))?;
        lat.torus = Some(t);
        Ok(lat)
    }

    /// Assembles and validates a lattice. `genus` is recorded as given; the
    /// document loader infers it from the Euler characteristic.
    pub fn from_parts(
        n_sites: usize,
        links: Vec<[usize; 2]>,
        plaquette_links: Vec<Vec<usize>>,
        genus: Option<usize>,
    ) -> Result<Self> {
        let mut star_links = vec![Vec::new(); n_sites];
        for (l, &[a, b]) in links.iter().enumerate() {
            if a >= n_sites || b >= n_sites {
                return Err(Error::validation(format!(
                    "link {l} joins sites {a} and {b}, but there are only {n_sites} sites"
                )));
            }
            if a == b {
                return Err(Error::validation(format!("link {l} is a loop at site {a}")));
            }
            star_links[a].push(l);
            star_links[b].push(l);
        }
        let mut link_plaquettes = vec![Vec::new(); links.len()];
        for (p, pl) in plaquette_links.iter().enumerate() {
            if pl.is_empty() {
                return Err(Error::validation(format!("plaquette {p} has no links")));
            }
            for (idx, &l) in pl.iter().enumerate() {
                if l >= links.len() {
                    return Err(Error::validation(format!(
                        "plaquette {p} references link {l}, but there are only {} links",
                        links.len()
                    )));
                }
                if pl[..idx].contains(&l) {
                    return Err(Error::validation(format!(
                        "plaquette {p} lists link {l} twice"
                    )));
                }
                link_plaquettes[l].push(p);
            }
        }
        let lat = Self {
            n_sites,
            links,
            star_links,
            plaquette_links,
            link_plaquettes,
            genus,
            torus: None,
        };
        lat.check_commutation()?;
        Ok(lat)
    }

    /// Every star and plaquette must share an even number of links.
    fn check_commutation(&self) -> Result<()> {
        for (p, pl) in self.plaquette_links.iter().enumerate() {
            let mut counts = std::collections::HashMap::<usize, usize>::new();
            for &l in pl {
                for &s in &self.links[l] {
                    *counts.entry(s).or_default() += 1;
                }
            }
            let mut odd: Vec<_> = counts.into_iter().filter(|&(_, c)| c % 2 == 1).collect();
            odd.sort_unstable();
            if let Some(&(s, c)) = odd.first() {
                return Err(Error::validation(format!(
                    "star {s} and plaquette {p} share {c} link(s); stars and plaquettes must share 0 or 2"
                )));
            }
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_links(&self) -> usize {
        self.links.len()
    }

    pub fn n_plaquettes(&self) -> usize {
        self.plaquette_links.len()
    }

    pub fn genus(&self) -> Option<usize> {
        self.genus
    }

    pub fn is_closed(&self) -> bool {
        self.genus.is_some()
    }

    pub fn torus_indexing(&self) -> Option<TorusIndexing> {
        self.torus
    }

    pub fn links(&self) -> &[[usize; 2]] {
        &self.links
    }

    pub fn star_links(&self, site: usize) -> &[usize] {
        &self.star_links[site]
    }

    pub fn plaquette_links(&self, plaquette: usize) -> &[usize] {
        &self.plaquette_links[plaquette]
    }

    /// Plaquettes bordering a link (two on a closed surface).
    pub fn link_plaquettes(&self, link: usize) -> &[usize] {
        &self.link_plaquettes[link]
    }

    /// `n_sites − n_links + n_plaquettes`.
    pub fn euler_characteristic(&self) -> isize {
        self.n_sites as isize - self.links.len() as isize + self.plaquette_links.len() as isize
    }

    pub fn star_vector(&self, site: usize) -> FlipVector {
        FlipVector::from_indices(self.n_links(), &self.star_links[site])
            .expect("star links are in range")
    }

    pub fn plaquette_vector(&self, plaquette: usize) -> FlipVector {
        FlipVector::from_indices(self.n_links(), &self.plaquette_links[plaquette])
            .expect("plaquette links are in range")
    }

    /// One generator per site flipping its incident links.
    pub fn star_group(&self) -> Gf2Matrix {
        let rows = (0..self.n_sites).map(|s| self.star_vector(s)).collect();
        Gf2Matrix::from_rows(self.n_links(), rows).expect("star rows match link count")
    }

    /// One generator per plaquette marking its boundary links.
    pub fn plaquette_group(&self) -> Gf2Matrix {
        let rows = (0..self.n_plaquettes())
            .map(|p| self.plaquette_vector(p))
            .collect();
        Gf2Matrix::from_rows(self.n_links(), rows).expect("plaquette rows match link count")
    }

    /// Noncontractible x-strings `(w1, w2)` of the torus.
    ///
    /// `w1` flips the vertical links `v(i, 0)` crossed by the horizontal dual
    /// loop above row 0; `w2` flips the horizontal links `h(0, j)` crossed by
    /// the vertical dual loop right of column 0.
    pub fn ladder_operators(&self) -> Result<(FlipVector, FlipVector)> {
        let t = self.require_torus("ladder operators")?;
        let k = t.k as isize;
        let w1: Vec<usize> = (0..k).map(|i| t.v(i, 0)).collect();
        let w2: Vec<usize> = (0..k).map(|j| t.h(0, j)).collect();
        Ok((
            FlipVector::from_indices(self.n_links(), &w1)?,
            FlipVector::from_indices(self.n_links(), &w2)?,
        ))
    }

    pub(crate) fn require_torus(&self, what: &str) -> Result<TorusIndexing> {
        self.torus
            .ok_or_else(|| Error::Unsupported(format!("{what} are only defined on the torus")))
    }
}
