//! JSON formats.
//!
//! A filtered complex is written as
//!
//! ```json
//! {"formal_dim": 2, "facets": [[0,1,2], ...], "skeleta": [{"dim": 0, "facets": [[0]]}]}
//! ```
//!
//! `skeleta` lists the generating facets of `X_i` for strictly increasing
//! `i`; a skipped index repeats the previous skeleton and a missing `X_n` is
//! the whole complex.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::perversity::Perversity;
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub formal_dim: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default)]
    pub skeleta: Vec<SkeletonJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonJson {
    pub dim: usize,
    pub facets: Vec<Vec<usize>>,
}

fn simplices(raw: &[Vec<usize>]) -> Result<Vec<Simplex>> {
    raw.iter().map(|v| Simplex::new(v.clone())).collect()
}

fn raw(s: &[Simplex]) -> Vec<Vec<usize>> {
    s.iter().map(|x| x.vertices().to_vec()).collect()
}

impl ComplexJson {
    pub fn from_complex(k: &FilteredComplex) -> Self {
        let n = k.formal_dim();
        let skeleta = k.skeleta()[..n]
            .iter()
            .enumerate()
            .filter(|(i, s)| !s.is_empty() && (*i == 0 || k.skeleta()[i - 1] != **s))
            .map(|(dim, s)| SkeletonJson { dim, facets: raw(s) })
            .collect();
        ComplexJson { formal_dim: n, facets: raw(k.facets()), skeleta }
    }

    pub fn to_complex(&self) -> Result<FilteredComplex> {
        let n = self.formal_dim;
        let mut skeleta: Vec<Vec<Simplex>> = vec![Vec::new(); n + 1];
        let mut last: Option<usize> = None;
        for s in &self.skeleta {
            if last.map_or(false, |l| s.dim <= l) {
                return Err(Error::malformed("skeleton dimensions must be strictly increasing"));
            }
            if s.dim > n {
                return Err(Error::malformed(format!("skeleton X_{} above formal dimension {n}", s.dim)));
            }
            last = Some(s.dim);
            skeleta[s.dim] = simplices(&s.facets)?;
        }
        if skeleta[n].is_empty() {
            skeleta.pop();
        }
        FilteredComplex::new(n, simplices(&self.facets)?, skeleta)
    }
}

pub fn complex_to_json(k: &FilteredComplex) -> String {
    serde_json::to_string(&ComplexJson::from_complex(k)).expect("serializable")
}

pub fn complex_from_json(s: &str) -> Result<FilteredComplex> {
    serde_json::from_str::<ComplexJson>(s)?.to_complex()
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<FilteredComplex> {
    complex_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_complex(path: impl AsRef<Path>, k: &FilteredComplex) -> Result<()> {
    std::fs::write(path, complex_to_json(k) + "\n")?;
    Ok(())
}

/// Parses a perversity given inline as JSON or as a path to a JSON file.
pub fn parse_perversity(arg: &str) -> Result<Perversity> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { std::fs::read_to_string(arg)? };
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline; key order follows field order, so
/// output is byte-stable.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
