//! Coin operator systems.
//!
//! A coin operator system on a `d`-dimensional coin space is a family
//! `{C_0, ..., C_n}` of `d × d` matrices with `C_j* C_k = C_j C_k* = 0` for
//! `j != k` and unitary sum. Every such system factors as `C_k = P_k U`
//! for a unitary `U` and a resolution of the identity `{P_k}`, and
//! conversely.

use nalgebra as na;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::{check_n, HypercubeGraph, VertexIndex};
use crate::scalar::{
    cplx, effective_tol, max_abs, max_abs_diff, real, to_f64, unitarity_defect, CMatrix, CVector, Real,
};
use crate::tol;

#[derive(Clone, Debug, PartialEq)]
pub struct CoinOperatorSystem<T: Real> {
    n: usize,
    dim: usize,
    coins: Vec<CMatrix<T>>,
}

/// Worst deviations from the defining relations of a coin system.
#[derive(Clone, Debug, Serialize)]
pub struct CoinValidation {
    /// `max_{j != k} max(|C_j* C_k|, |C_j C_k*|)`, entrywise.
    pub cross_deviation: f64,
    /// `max |(ΣC_k)*(ΣC_k) - I|`, entrywise.
    pub unitarity_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl<T: Real> CoinOperatorSystem<T> {
    /// Wraps `coins` after checking shapes. Does not check the defining relations.
    pub fn new(coins: Vec<CMatrix<T>>) -> Result<Self> {
        if coins.is_empty() {
            return Err(Error::Dimension("a coin system needs at least one coin".into()));
        }
        let n = coins.len() - 1;
        check_n(n)?;
        let dim = coins[0].nrows();
        for (k, c) in coins.iter().enumerate() {
            if c.nrows() != dim || c.ncols() != dim {
                return Err(Error::Dimension(format!("coin {k} is {}x{}, expected {dim}x{dim}", c.nrows(), c.ncols())));
            }
        }
        if dim < n + 1 {
            return Err(Error::Dimension(format!("coin dimension {dim} is below n + 1 = {}", n + 1)));
        }
        Ok(CoinOperatorSystem { n, dim, coins })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn coins(&self) -> &[CMatrix<T>] {
        &self.coins
    }

    #[inline]
    pub fn coin(&self, k: usize) -> &CMatrix<T> {
        &self.coins[k]
    }

    pub fn graph(&self) -> HypercubeGraph {
        HypercubeGraph::new(self.n).expect("n validated at construction")
    }

    pub fn sum(&self) -> CMatrix<T> {
        self.coins.iter().fold(CMatrix::zeros(self.dim, self.dim), |acc, c| acc + c)
    }

    pub fn validate(&self, tolerance: f64) -> CoinValidation {
        let mut cross = T::zero();
        for (j, cj) in self.coins.iter().enumerate() {
            for (k, ck) in self.coins.iter().enumerate() {
                if j == k {
                    continue;
                }
                cross = cross.max(max_abs(&(cj.adjoint() * ck)));
                cross = cross.max(max_abs(&(cj * ck.adjoint())));
            }
        }
        let unitarity = unitarity_defect(&self.sum());
        let (cross, unitarity) = (to_f64(cross), to_f64(unitarity));
        CoinValidation {
            cross_deviation: cross,
            unitarity_deviation: unitarity,
            tolerance,
            pass: cross <= tolerance && unitarity <= tolerance,
        }
    }

    /// `(U, {P_k})` with `U = Σ C_k` and `P_k = C_k C_k*`.
    pub fn factor(&self) -> Result<(CMatrix<T>, ResolutionOfIdentity<T>)> {
        let report = self.validate(effective_tol::<T>(tol::VALIDATION));
        if !report.pass {
            return Err(Error::Invalid(format!(
                "not a coin operator system (cross {:e}, unitarity {:e})",
                report.cross_deviation, report.unitarity_deviation
            )));
        }
        let u = self.sum();
        let projections = self.coins.iter().map(|c| c * c.adjoint()).collect();
        Ok((u, ResolutionOfIdentity::new(projections)?))
    }

    /// `{P_k U}` for a unitary `u` and a resolution of the identity `r`.
    pub fn build(u: &CMatrix<T>, r: &ResolutionOfIdentity<T>) -> Result<Self> {
        if !u.is_square() || u.nrows() != r.dim() {
            return Err(Error::Dimension(format!(
                "unitary is {}x{}, resolution acts on dimension {}",
                u.nrows(),
                u.ncols(),
                r.dim()
            )));
        }
        let defect = to_f64(unitarity_defect(u));
        if defect > effective_tol::<T>(tol::VALIDATION) {
            return Err(Error::Invalid(format!("matrix is not unitary (defect {defect:e})")));
        }
        Self::new(r.projections().iter().map(|p| p * u).collect())
    }

    /// The `ε_τ`-weighted sum `Σ_k ε_τ(k) C_k`.
    pub fn weighted_sum(&self, tau: VertexIndex) -> Result<WeightedCoinSum<T>> {
        self.graph().check(tau)?;
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (k, c) in self.coins.iter().enumerate() {
            if tau.contains(k) {
                m += c;
            } else {
                m -= c;
            }
        }
        Ok(WeightedCoinSum { tau, matrix: m })
    }

    /// Weighted sums for every vertex, in ascending vertex order.
    pub fn weighted_sums(&self) -> Vec<WeightedCoinSum<T>> {
        self.graph().vertices().map(|t| self.weighted_sum(t).expect("vertex drawn from the graph")).collect()
    }

    /// Random system `{P_k U}` with `U` Haar-distributed and `P_k` projecting
    /// onto consecutive blocks of the standard basis.
    pub fn random(n: usize, dim: usize, seed: u64, partition: Option<&[usize]>) -> Result<Self> {
        check_n(n)?;
        let sizes = match partition {
            Some(p) => {
                if p.len() != n + 1 || p.contains(&0) || p.iter().sum::<usize>() != dim {
                    return Err(Error::Domain(format!(
                        "partition {p:?} must have {} positive parts summing to {dim}",
                        n + 1
                    )));
                }
                p.to_vec()
            }
            None => default_partition(n + 1, dim)?,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = haar_unitary::<T, _>(dim, &mut rng);
        let r = ResolutionOfIdentity::from_blocks(&sizes);
        Self::build(&u, &r)
    }

    pub fn builtin(example: BuiltinExample) -> Self {
        let z = T::zero();
        let o = T::one();
        let m = |d: usize, entries: &[(usize, usize, T)]| {
            let mut a = CMatrix::<T>::zeros(d, d);
            for &(i, j, v) in entries {
                a[(i, j)] = cplx(v, z);
            }
            a
        };
        let coins = match example {
            BuiltinExample::Swap2 => vec![m(2, &[(0, 1, o)]), m(2, &[(1, 0, o)])],
            BuiltinExample::Diagonal4 => vec![m(4, &[(0, 0, o), (1, 1, o)]), m(4, &[(2, 2, -o), (3, 3, -o)])],
        };
        Self::new(coins).expect("builtin systems are well formed")
    }
}

/// Sizes as equal as possible, larger blocks first.
pub fn default_partition(parts: usize, dim: usize) -> Result<Vec<usize>> {
    if dim < parts {
        return Err(Error::Domain(format!("cannot split dimension {dim} into {parts} nonempty blocks")));
    }
    let (base, extra) = (dim / parts, dim % parts);
    Ok((0..parts).map(|i| base + usize::from(i < extra)).collect())
}

/// The two worked coin systems on the square `n = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinExample {
    /// `d = 2`: `C_0 = [[0,1],[0,0]]`, `C_1 = [[0,0],[1,0]]`.
    Swap2,
    /// `d = 4`: `C_0 = diag(1,1,0,0)`, `C_1 = diag(0,0,-1,-1)`.
    Diagonal4,
}

impl BuiltinExample {
    pub fn id(self) -> &'static str {
        match self {
            BuiltinExample::Swap2 => "3.1",
            BuiltinExample::Diagonal4 => "3.2",
        }
    }
}

impl std::str::FromStr for BuiltinExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3.1" => Ok(BuiltinExample::Swap2),
            "3.2" => Ok(BuiltinExample::Diagonal4),
            other => Err(Error::Domain(format!("unknown example id {other:?} (expected 3.1 or 3.2)"))),
        }
    }
}

/// Looks up a worked example by its id (`"3.1"` or `"3.2"`).
pub fn builtin_example<T: Real>(id: &str) -> Result<CoinOperatorSystem<T>> {
    Ok(CoinOperatorSystem::builtin(id.parse()?))
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `diag(R)` moved into `Q`.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix<T> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut entries = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        entries.push(cplx(real::<T>(re * scale), real::<T>(im * scale)));
    }
    let g = CMatrix::<T>::from_row_slice(dim, dim, &entries);
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let rjj = r[(j, j)];
        let modulus = rjj.norm_sqr().sqrt();
        if modulus > T::zero() {
            let phase = rjj.unscale(modulus);
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Mutually orthogonal projections summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionOfIdentity<T: Real> {
    projections: Vec<CMatrix<T>>,
}

impl<T: Real> ResolutionOfIdentity<T> {
    /// Checks the defining relations at [`tol::VALIDATION`].
    pub fn new(projections: Vec<CMatrix<T>>) -> Result<Self> {
        if projections.is_empty() {
            return Err(Error::Dimension("empty resolution of the identity".into()));
        }
        let d = projections[0].nrows();
        if projections.iter().any(|p| p.nrows() != d || p.ncols() != d) {
            return Err(Error::Dimension("projections must share one square shape".into()));
        }
        let r = ResolutionOfIdentity { projections };
        let dev = r.deviation();
        if dev > effective_tol::<T>(tol::VALIDATION) {
            return Err(Error::Invalid(format!("not a resolution of the identity (deviation {dev:e})")));
        }
        Ok(r)
    }

    /// Projections onto consecutive blocks of the standard basis.
    pub fn from_blocks(sizes: &[usize]) -> Self {
        let d: usize = sizes.iter().sum();
        let mut start = 0;
        let projections = sizes
            .iter()
            .map(|&s| {
                let mut p = CMatrix::zeros(d, d);
                for i in start..start + s {
                    p[(i, i)] = cplx(T::one(), T::zero());
                }
                start += s;
                p
            })
            .collect();
        ResolutionOfIdentity { projections }
    }

    pub fn projections(&self) -> &[CMatrix<T>] {
        &self.projections
    }

    pub fn dim(&self) -> usize {
        self.projections[0].nrows()
    }

    /// Worst entrywise violation of `P² = P = P*`, `ΣP = I`, `P_j P_k = 0`.
    pub fn deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = T::zero();
        let mut total = CMatrix::zeros(d, d);
        for (j, p) in self.projections.iter().enumerate() {
            worst = worst.max(max_abs_diff(&(p * p), p));
            worst = worst.max(max_abs_diff(&p.adjoint(), p));
            total += p;
            for (k, q) in self.projections.iter().enumerate() {
                if j != k {
                    worst = worst.max(max_abs(&(p * q)));
                }
            }
        }
        worst = worst.max(max_abs_diff(&total, &CMatrix::identity(d, d)));
        to_f64(worst)
    }
}

/// `U_τ = Σ_k ε_τ(k) C_k`, unitary for every `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCoinSum<T: Real> {
    pub tau: VertexIndex,
    pub matrix: CMatrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T: Real> {
    pub value: Complex<T>,
    pub vector: CVector<T>,
}

/// Full spectral decomposition of a unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition<T: Real> {
    pub pairs: Vec<EigenPair<T>>,
}

impl<T: Real> EigenDecomposition<T> {
    /// `Σ_i b_i v_i v_i*`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let d = self.pairs.first().map_or(0, |p| p.vector.len());
        self.pairs.iter().fold(CMatrix::zeros(d, d), |acc, p| acc + (&p.vector * p.vector.adjoint()) * p.value)
    }

    /// `U^t u` evaluated as `Σ_i b_i^t ⟨v_i, u⟩ v_i`.
    pub fn apply_power(&self, u: &CVector<T>, t: u64) -> CVector<T> {
        let d = u.len();
        self.pairs.iter().fold(CVector::zeros(d), |acc, p| {
            let coeff = p.vector.dotc(u) * complex_powu(p.value, t);
            acc + &p.vector * coeff
        })
    }

    /// Distinct eigenvalues after grouping within `tolerance`, with multiplicities.
    pub fn distinct_values(&self, tolerance: f64) -> Vec<(Complex<T>, usize)> {
        let tol: T = real(tolerance);
        let mut out: Vec<(Complex<T>, usize)> = Vec::new();
        for p in &self.pairs {
            match out.iter_mut().find(|(v, _)| (*v - p.value).norm_sqr().sqrt() <= tol) {
                Some((_, m)) => *m += 1,
                None => out.push((p.value, 1)),
            }
        }
        out
    }
}

pub(crate) fn complex_powu<T: Real>(mut base: Complex<T>, mut exp: u64) -> Complex<T> {
    let mut acc = cplx(T::one(), T::zero());
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

impl<T: Real> WeightedCoinSum<T> {
    /// Spectral decomposition through the complex Schur form, which is
    /// diagonal for normal matrices. Eigenvectors are re-orthonormalized
    /// inside each group of eigenvalues closer than [`tol::EIGEN_GROUPING`].
    pub fn eigendecompose(&self, tolerance: f64) -> Result<EigenDecomposition<T>> {
        let d = self.matrix.nrows();
        let tol_t: T = real(tolerance);
        let defect = to_f64(unitarity_defect(&self.matrix));
        if defect > tolerance {
            return Err(Error::Numerical(format!(
                "weighted sum for tau = {} is not unitary (defect {defect:e})",
                self.tau.0
            )));
        }
        let schur = na::Schur::try_new(self.matrix.clone(), T::default_epsilon(), 10_000)
            .ok_or_else(|| Error::Numerical(format!("Schur iteration did not converge for tau = {}", self.tau.0)))?;
        let (q, t) = schur.unpack();

        let mut pairs: Vec<EigenPair<T>> =
            (0..d).map(|i| EigenPair { value: t[(i, i)], vector: q.column(i).into_owned() }).collect();

        // Gram-Schmidt inside clusters of (numerically) equal eigenvalues.
        let group_tol: T = real(effective_tol::<T>(tol::EIGEN_GROUPING));
        for i in 0..d {
            for j in 0..i {
                if (pairs[i].value - pairs[j].value).norm_sqr().sqrt() <= group_tol {
                    let proj = pairs[j].vector.dotc(&pairs[i].vector);
                    let vj = pairs[j].vector.clone();
                    pairs[i].vector -= vj * proj;
                }
            }
            let norm = pairs[i].vector.norm();
            if norm <= T::default_epsilon() {
                return Err(Error::Numerical(format!("degenerate eigenvector collapsed for tau = {}", self.tau.0)));
            }
            pairs[i].vector.unscale_mut(norm);
        }

        let mut worst_residual = T::zero();
        let mut worst_modulus = T::zero();
        for p in &pairs {
            let r = (&self.matrix * &p.vector - &p.vector * p.value).norm();
            worst_residual = worst_residual.max(r);
            worst_modulus = worst_modulus.max((p.value.norm_sqr().sqrt() - T::one()).abs());
        }
        let mut worst_ortho = T::zero();
        for i in 0..d {
            for j in 0..d {
                let ip = pairs[i].vector.dotc(&pairs[j].vector);
                let expect = if i == j { T::one() } else { T::zero() };
                worst_ortho = worst_ortho.max((ip - cplx(expect, T::zero())).norm_sqr().sqrt());
            }
        }
        if worst_residual > tol_t || worst_modulus > tol_t || worst_ortho > tol_t {
            return Err(Error::Numerical(format!(
                "eigendecomposition for tau = {} misses tolerance {tolerance:e}: residual {:e}, |b|-1 {:e}, orthonormality {:e}",
                self.tau.0,
                to_f64(worst_residual),
                to_f64(worst_modulus),
                to_f64(worst_ortho)
            )));
        }
        Ok(EigenDecomposition { pairs })
    }
}
