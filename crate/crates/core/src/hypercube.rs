//! The powerset hypercube on `{0, ..., n}`.
//!
//! A vertex is a subset of `{0, ..., n}` stored as a bitmask: bit `k` is set
//! iff `k` belongs to the subset. Two vertices are joined by an edge iff their
//! symmetric difference has exactly one element, which makes the graph an
//! `(n+1)`-dimensional binary hypercube.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `n`; keeps `2^(n+1)` amplitudes addressable at desk scale.
pub const MAX_N: usize = 24;

/// A subset of `{0, ..., n}` encoded as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexIndex(pub usize);

impl VertexIndex {
    pub const EMPTY: VertexIndex = VertexIndex(0);

    /// Builds the vertex for the given set of elements.
    pub fn from_elements(elements: &[usize]) -> Self {
        VertexIndex(elements.iter().fold(0, |m, &k| m | (1 << k)))
    }

    #[inline]
    pub fn bits(self) -> usize {
        self.0
    }

    #[inline]
    pub fn contains(self, k: usize) -> bool {
        (self.0 >> k) & 1 == 1
    }

    /// Cardinality of the subset.
    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Symmetric difference with `{k}`.
    #[inline]
    pub fn flip(self, k: usize) -> Self {
        VertexIndex(self.0 ^ (1 << k))
    }

    /// `+1` if `k` is in the subset, `-1` otherwise.
    #[inline]
    pub fn sign_at(self, k: usize) -> i32 {
        if self.contains(k) {
            1
        } else {
            -1
        }
    }

    pub fn elements(self) -> Vec<usize> {
        (0..usize::BITS as usize).filter(|&k| self.contains(k)).collect()
    }
}

impl fmt::Display for VertexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.elements().iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `(-1)^{#(σ∖τ)}`.
#[inline]
pub fn diff_parity_sign(sigma: VertexIndex, tau: VertexIndex) -> i32 {
    if (sigma.0 & !tau.0).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The hypercube `(Γ_n, 𝔈_n)` of dimension `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypercubeGraph {
    n: usize,
}

impl HypercubeGraph {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(HypercubeGraph { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of modes, `n + 1`; also the degree of every vertex.
    #[inline]
    pub fn modes(&self) -> usize {
        self.n + 1
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        1 << (self.n + 1)
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        (self.n + 1) << self.n
    }

    /// The vertex `{0, ..., n}`.
    #[inline]
    pub fn full(&self) -> VertexIndex {
        VertexIndex(self.vertex_count() - 1)
    }

    /// All vertices in ascending bitmask order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexIndex> {
        (0..self.vertex_count()).map(VertexIndex)
    }

    pub fn check(&self, v: VertexIndex) -> Result<()> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "vertex {} out of range for n = {} (must be < {})",
                v.0,
                self.n,
                self.vertex_count()
            )))
        }
    }

    pub fn check_mode(&self, k: usize) -> Result<()> {
        if k <= self.n {
            Ok(())
        } else {
            Err(Error::Domain(format!("mode {k} out of range for n = {}", self.n)))
        }
    }

    pub fn adjacent(&self, sigma: VertexIndex, tau: VertexIndex) -> Result<bool> {
        self.check(sigma)?;
        self.check(tau)?;
        Ok((sigma.0 ^ tau.0).count_ones() == 1)
    }

    /// The `n + 1` neighbours of `sigma`, ordered by the flipped element `k = 0..=n`.
    pub fn neighbors(&self, sigma: VertexIndex) -> Result<Vec<VertexIndex>> {
        self.check(sigma)?;
        Ok((0..=self.n).map(|k| sigma.flip(k)).collect())
    }

    /// Indicator tuple `(1_σ(0), ..., 1_σ(n))`.
    pub fn to_binary_tuple(&self, sigma: VertexIndex) -> Result<Vec<u8>> {
        self.check(sigma)?;
        Ok((0..=self.n).map(|k| sigma.contains(k) as u8).collect())
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::Domain(format!("n = {n} exceeds the supported maximum {MAX_N}")))
    } else {
        Ok(())
    }
}
