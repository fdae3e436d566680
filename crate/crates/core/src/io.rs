//! File formats: coin systems, walk states, position vectors, eigen-component
//! specs (JSON) and distribution tables (CSV).
//!
//! Complex numbers are `[re, im]` pairs and matrices are flat row-major lists.

use std::io::Write;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::coin::CoinOperatorSystem;
use crate::error::{Error, Result};
use crate::fock::PositionVector;
use crate::scalar::{cplx, real, to_f64, CMatrix, CVector, Real};
use crate::walk::{ComponentChoice, Distribution, EigenComponentSpec, WalkState};

pub type Pair = [f64; 2];

fn to_pair<T: Real>(z: Complex<T>) -> Pair {
    [to_f64(z.re), to_f64(z.im)]
}

fn from_pair<T: Real>(p: Pair) -> Complex<T> {
    cplx(real(p[0]), real(p[1]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinFile {
    pub n: usize,
    pub dim: usize,
    pub coins: Vec<Vec<Pair>>,
}

impl CoinFile {
    pub fn from_system<T: Real>(system: &CoinOperatorSystem<T>) -> Self {
        let d = system.dim();
        let coins = system
            .coins()
            .iter()
            .map(|c| (0..d).flat_map(|i| (0..d).map(move |j| to_pair(c[(i, j)]))).collect())
            .collect();
        CoinFile { n: system.n(), dim: d, coins }
    }

    pub fn to_system<T: Real>(&self) -> Result<CoinOperatorSystem<T>> {
        if self.coins.len() != self.n + 1 {
            return Err(Error::Dimension(format!(
                "coin file declares n = {} but lists {} coins",
                self.n,
                self.coins.len()
            )));
        }
        let d = self.dim;
        let coins = self
            .coins
            .iter()
            .enumerate()
            .map(|(k, entries)| {
                if entries.len() != d * d {
                    return Err(Error::Dimension(format!(
                        "coin {k} has {} entries, expected {}",
                        entries.len(),
                        d * d
                    )));
                }
                Ok(CMatrix::from_row_iterator(d, d, entries.iter().map(|&p| from_pair(p))))
            })
            .collect::<Result<_>>()?;
        CoinOperatorSystem::new(coins)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub dim: usize,
    pub amplitudes: Vec<Pair>,
}

impl StateFile {
    pub fn from_state<T: Real>(state: &WalkState<T>) -> Self {
        StateFile {
            n: state.n(),
            dim: state.dim(),
            amplitudes: state.amplitudes().iter().map(|&z| to_pair(z)).collect(),
        }
    }

    pub fn to_state<T: Real>(&self) -> Result<WalkState<T>> {
        WalkState::from_amplitudes(self.n, self.dim, self.amplitudes.iter().map(|&p| from_pair(p)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionFile {
    pub n: usize,
    pub amplitudes: Vec<Pair>,
}

impl PositionFile {
    pub fn from_vector<T: Real>(v: &PositionVector<T>) -> Self {
        PositionFile { n: v.n(), amplitudes: v.amplitudes().iter().map(|&z| to_pair(z)).collect() }
    }

    pub fn to_vector<T: Real>(&self) -> Result<PositionVector<T>> {
        PositionVector::from_amplitudes(self.n, self.amplitudes.iter().map(|&p| from_pair(p)).collect())
    }
}

/// One entry of a spec file: either `vector` (optionally with `eigenvalue`)
/// or `eigen_index`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub tau: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecFile {
    pub n: usize,
    pub dim: usize,
    pub components: Vec<ComponentEntry>,
}

impl SpecFile {
    pub fn from_spec<T: Real>(n: usize, dim: usize, spec: &EigenComponentSpec<T>) -> Self {
        let components = spec
            .choices
            .iter()
            .enumerate()
            .map(|(tau, choice)| match choice {
                ComponentChoice::Vector { vector, eigenvalue } => ComponentEntry {
                    tau,
                    vector: Some(vector.iter().map(|&z| to_pair(z)).collect()),
                    eigenvalue: eigenvalue.map(to_pair),
                    eigen_index: None,
                },
                ComponentChoice::EigenIndex(i) => {
                    ComponentEntry { tau, vector: None, eigenvalue: None, eigen_index: Some(*i) }
                }
            })
            .collect();
        SpecFile { n, dim, components }
    }

    pub fn to_spec<T: Real>(&self) -> Result<EigenComponentSpec<T>> {
        let count = 1usize << (self.n + 1);
        let mut slots: Vec<Option<ComponentChoice<T>>> = vec![None; count];
        for e in &self.components {
            if e.tau >= count {
                return Err(Error::Domain(format!("spec entry for tau = {} out of range", e.tau)));
            }
            let choice = match (&e.vector, e.eigen_index) {
                (Some(v), None) => {
                    if v.len() != self.dim {
                        return Err(Error::Dimension(format!(
                            "spec vector for tau = {} has length {}, expected {}",
                            e.tau,
                            v.len(),
                            self.dim
                        )));
                    }
                    ComponentChoice::Vector {
                        vector: CVector::from_iterator(self.dim, v.iter().map(|&p| from_pair(p))),
                        eigenvalue: e.eigenvalue.map(from_pair),
                    }
                }
                (None, Some(i)) => ComponentChoice::EigenIndex(i),
                _ => {
                    return Err(Error::Domain(format!(
                        "spec entry for tau = {} needs exactly one of vector or eigen_index",
                        e.tau
                    )))
                }
            };
            if slots[e.tau].replace(choice).is_some() {
                return Err(Error::Domain(format!("duplicate spec entry for tau = {}", e.tau)));
            }
        }
        let choices = slots
            .into_iter()
            .enumerate()
            .map(|(tau, c)| c.ok_or_else(|| Error::Domain(format!("spec has no entry for tau = {tau}"))))
            .collect::<Result<_>>()?;
        Ok(EigenComponentSpec { choices })
    }
}

pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D> {
    Ok(serde_json::from_str(text)?)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_probability(p: f64) -> String {
    format!("{p:.16e}")
}

/// `vertex,probability` rows for one distribution.
pub fn write_snapshot<T: Real, W: Write>(out: &mut W, dist: &Distribution<T>) -> std::io::Result<()> {
    writeln!(out, "vertex,probability")?;
    for (s, &p) in dist.probs().iter().enumerate() {
        writeln!(out, "{s},{}", format_probability(to_f64(p)))?;
    }
    Ok(())
}

/// `t,vertex,probability` header.
pub fn write_series_header<W: Write>(out: &mut W, time_label: &str) -> std::io::Result<()> {
    writeln!(out, "{time_label},vertex,probability")
}

/// Rows of a time series for one time label.
pub fn write_series_rows<T: Real, W: Write>(out: &mut W, label: &str, dist: &Distribution<T>) -> std::io::Result<()> {
    for (s, &p) in dist.probs().iter().enumerate() {
        writeln!(out, "{label},{s},{}", format_probability(to_f64(p)))?;
    }
    Ok(())
}
