//! Parsers for the lattice, state and generator arguments.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{FlipVector, Gf2Matrix};
use crate::lattice::{document, Lattice};
use crate::toric::{GroundStateCoeffs, ToricState};

/// Tolerance on the input norm before coefficients are rejected.
pub const COEFF_RESCALE_TOLERANCE: f64 = 1e-6;

/// `torus:k=K` or a path to a lattice document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    Torus(usize),
    File(PathBuf),
}

impl FromStr for LatticeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("torus:") {
            let k = rest
                .strip_prefix("k=")
                .unwrap_or(rest)
                .parse::<usize>()
                .map_err(|_| Error::input(format!("bad torus size in `{s}`, expected torus:k=<K>")))?;
            return Ok(LatticeSpec::Torus(k));
        }
        if s.is_empty() {
            return Err(Error::input("empty lattice spec"));
        }
        Ok(LatticeSpec::File(PathBuf::from(s)))
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Torus(k) => write!(f, "torus:k={k}"),
            LatticeSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            LatticeSpec::Torus(k) => Lattice::torus(*k),
            LatticeSpec::File(p) => document::load_lattice(p),
        }
    }
}

/// `xi:i,j`, `coeffs:a00,a01,a10,a11` (complex literals `re+imj`), or `random:seed`.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Xi(usize, usize),
    Coeffs([Complex64; 4]),
    Random(u64),
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::input(format!("bad state `{s}`, expected xi:, coeffs: or random:")))?;
        match kind {
            "xi" => {
                let ids: Vec<&str> = rest.split(',').collect();
                match ids.as_slice() {
                    [i, j] => {
                        let parse = |t: &str| match t.trim() {
                            "0" => Ok(0),
                            "1" => Ok(1),
                            other => Err(Error::input(format!("xi index must be 0 or 1, got `{other}`"))),
                        };
                        Ok(StateSpec::Xi(parse(i)?, parse(j)?))
                    }
                    _ => Err(Error::input("xi:<i>,<j> takes two indices")),
                }
            }
            "coeffs" => {
                let vals = rest
                    .split(',')
                    .map(parse_complex)
                    .collect::<Result<Vec<_>>>()?;
                let arr: [Complex64; 4] = vals
                    .try_into()
                    .map_err(|_| Error::input("coeffs: takes exactly four values a00,a01,a10,a11"))?;
                Ok(StateSpec::Coeffs(arr))
            }
            "random" => rest
                .trim()
                .parse()
                .map(StateSpec::Random)
                .map_err(|_| Error::input(format!("bad seed `{rest}`"))),
            other => Err(Error::input(format!("unknown state kind `{other}`"))),
        }
    }
}

impl StateSpec {
    /// Resolves to a state, plus a note when the coefficients were rescaled.
    pub fn resolve(&self) -> Result<(ToricState, Option<String>)> {
        match self {
            StateSpec::Xi(i, j) => Ok((ToricState::Xi(*i, *j), None)),
            StateSpec::Coeffs(values) => {
                let (c, rescaled) = GroundStateCoeffs::normalized(*values, COEFF_RESCALE_TOLERANCE)?;
                let note = rescaled.then(|| {
                    let n: f64 = values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    format!("note: coefficients rescaled from norm {n:.12} to 1")
                });
                Ok((ToricState::Generic(c), note))
            }
            StateSpec::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((ToricState::Generic(GroundStateCoeffs::random(&mut rng)), None))
            }
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Xi(i, j) => write!(f, "xi:{i},{j}"),
            StateSpec::Coeffs(v) => {
                let parts: Vec<String> = v.iter().map(format_complex).collect();
                write!(f, "coeffs:{}", parts.join(","))
            }
            StateSpec::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

pub fn format_complex(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}j", z.re, z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

/// Parses `re`, `imj`, or `re±imj`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::input(format!("bad complex literal `{s}`, expected re+imj"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('j') else {
        return Ok(Complex64::new(num(t)?, 0.0));
    };
    // split at the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (num(&body[..i])?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => num(other)?,
    };
    Ok(Complex64::new(re, im))
}

/// Generator file: one generator per line, as whitespace- or comma-separated
/// link ids; `#` starts a comment.
pub fn parse_generators(text: &str, n_links: usize) -> Result<Gf2Matrix> {
    let mut m = Gf2Matrix::new(n_links);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ids = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, format!("bad link id `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let v = FlipVector::from_indices(n_links, &ids).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        m.push_row(v)?;
    }
    Ok(m)
}

pub fn load_generators(path: &Path, n_links: usize) -> Result<Gf2Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_generators(&text, n_links)
}
