//! Text format for user-supplied lattices.
//!
//! ```text
//! # comments start with '#'
//! lattice v1
//! surface closed          # or `open`; closed surfaces get a genus from Euler's formula
//! SITES 4
//! LINKS 8
//! 0 1                     # link 0 joins sites 0 and 1
//! ...
//! PLAQUETTES 4
//! 0 2 4 5                 # plaquette 0 is bounded by links 0, 2, 4, 5
//! ...
//! ```
//!
//! Link and plaquette ids are their line order within the section.

use std::fmt::Write as _;
use std::path::Path;

use super::Lattice;
use crate::error::{Error, Result};

pub const FORMAT_HEADER: &str = "lattice v1";

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-blank line with comments stripped, with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str, last_line: usize) -> Result<(usize, &'a str)> {
        self.next_content()
            .ok_or_else(|| Error::parse(last_line + 1, format!("unexpected end of document, expected {what}")))
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn section(line: usize, text: &str, name: &str) -> Result<usize> {
    let mut toks = text.split_whitespace();
    match (toks.next(), toks.next(), toks.next()) {
        (Some(tag), Some(n), None) if tag == name => parse_usize(line, n),
        _ => Err(Error::parse(line, format!("expected `{name} <count>`, found `{text}`"))),
    }
}

/// Parses and validates a lattice document.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.expect("header", 0)?;
    if header != FORMAT_HEADER {
        return Err(Error::parse(
            ln,
            format!("expected header `{FORMAT_HEADER}`, found `{header}`"),
        ));
    }

    let (mut ln, mut text_line) = lines.expect("`surface` or `SITES`", ln)?;
    let mut closed = true;
    if let Some(rest) = text_line.strip_prefix("surface") {
        closed = match rest.trim() {
            "closed" => true,
            "open" => false,
            other => {
                return Err(Error::parse(
                    ln,
                    format!("surface must be `closed` or `open`, found `{other}`"),
                ))
            }
        };
        (ln, text_line) = lines.expect("`SITES`", ln)?;
    }
    let n_sites = section(ln, text_line, "SITES")?;

    let (mut ln, text_line) = lines.expect("`LINKS`", ln)?;
    let n_links = section(ln, text_line, "LINKS")?;
    let mut links = Vec::with_capacity(n_links);
    for l in 0..n_links {
        let (lnum, t) = lines.expect(&format!("link {l}"), ln)?;
        ln = lnum;
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(ln, format!("link {l}: expected two site ids, found `{t}`")));
        }
        let a = parse_usize(ln, toks[0])?;
        let b = parse_usize(ln, toks[1])?;
        if a >= n_sites || b >= n_sites {
            return Err(Error::parse(ln, format!("link {l}: site id out of range (have {n_sites} sites)")));
        }
        links.push([a, b]);
    }

    let (mut ln, text_line) = lines.expect("`PLAQUETTES`", ln)?;
    let n_plaq = section(ln, text_line, "PLAQUETTES")?;
    let mut plaquettes = Vec::with_capacity(n_plaq);
    for p in 0..n_plaq {
        let (lnum, t) = lines.expect(&format!("plaquette {p}"), ln)?;
        ln = lnum;
        let ids = t
            .split_whitespace()
            .map(|tok| parse_usize(ln, tok))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = ids.iter().find(|&&l| l >= n_links) {
            return Err(Error::parse(ln, format!("plaquette {p}: link id {bad} out of range (have {n_links} links)")));
        }
        plaquettes.push(ids);
    }
    if let Some((lnum, t)) = lines.next_content() {
        return Err(Error::parse(lnum, format!("trailing content `{t}`")));
    }

    let genus = if closed {
        let chi = n_sites as isize - n_links as isize + n_plaq as isize;
        if chi > 2 || chi % 2 != 0 {
            return Err(Error::validation(format!(
                "closed surface has Euler characteristic {chi}, which is not 2 - 2g for any genus g"
            )));
        }
        Some(((2 - chi) / 2) as usize)
    } else {
        None
    };
    Lattice::from_parts(n_sites, links, plaquettes, genus)
}

pub fn load_lattice(path: &Path) -> Result<Lattice> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_lattice(&text)
}

/// Serializes a lattice; [`parse_lattice`] reads it back to identical incidence.
pub fn write_lattice(lat: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "{FORMAT_HEADER}").unwrap();
    writeln!(out, "surface {}", if lat.is_closed() { "closed" } else { "open" }).unwrap();
    writeln!(out, "SITES {}", lat.n_sites()).unwrap();
    writeln!(out, "LINKS {}", lat.n_links()).unwrap();
    for [a, b] in lat.links() {
        writeln!(out, "{a} {b}").unwrap();
    }
    writeln!(out, "PLAQUETTES {}", lat.n_plaquettes()).unwrap();
    for p in 0..lat.n_plaquettes() {
        let ids: Vec<String> = lat.plaquette_links(p).iter().map(|l| l.to_string()).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    out
}
