//! The coined walk on the hypercube.
//!
//! A state is a `2^(n+1) × d` array of amplitudes `Φ(σ, j) = ⟨Z_σ ⊗ e_j, Φ⟩`
//! stored vertex-major. One step applies `W = Σ_k (∂_k* + ∂_k) ⊗ C_k`, which
//! on amplitudes reads `Φ'(σ) = Σ_k C_k Φ(σ △ {k})`. The evolution operator is
//! never materialized.
//!
//! In the Hadamard-like basis the walk decouples: `W(Ẑ_τ ⊗ u) = Ẑ_τ ⊗ U_τ u`
//! with `U_τ` the `ε_τ`-weighted coin sum. [`decompose`] moves a state into
//! those coordinates and [`ClosedForm`] evaluates `P_t` from them directly.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::coin::{CoinOperatorSystem, EigenDecomposition};
use crate::error::{Error, Result};
use crate::fock::{hadamard_vector, signed_wht_rows, Direction, PositionVector};
use crate::hypercube::{check_n, diff_parity_sign, HypercubeGraph, VertexIndex};
use crate::scalar::{cplx, czero, effective_tol, inv_sqrt_pow2, real, to_f64, CMatrix, CVector, Real};
use crate::tol;

/// Largest number of steps accepted by the evolution and closed-form routines.
pub const MAX_STEPS: u64 = 1 << 16;

/// States with at least this many amplitudes are stepped in parallel.
const PAR_THRESHOLD: usize = 1 << 14;

/// An element of `𝔥_n ⊗ 𝒦`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState<T: Real> {
    n: usize,
    dim: usize,
    amp: Vec<Complex<T>>,
}

impl<T: Real> WalkState<T> {
    /// Wraps a vertex-major `2^(n+1) × dim` amplitude array.
    pub fn from_amplitudes(n: usize, dim: usize, amp: Vec<Complex<T>>) -> Result<Self> {
        check_n(n)?;
        if dim == 0 {
            return Err(Error::Dimension("coin dimension must be positive".into()));
        }
        let expect = (1usize << (n + 1)) * dim;
        if amp.len() != expect {
            return Err(Error::Dimension(format!(
                "expected {expect} amplitudes for n = {n}, dim = {dim}, got {}",
                amp.len()
            )));
        }
        Ok(WalkState { n, dim, amp })
    }

    pub fn zeros(n: usize, dim: usize) -> Result<Self> {
        check_n(n)?;
        Self::from_amplitudes(n, dim, vec![czero(); (1 << (n + 1)) * dim])
    }

    /// `Z_σ ⊗ e_j`.
    pub fn basis(n: usize, dim: usize, sigma: VertexIndex, j: usize) -> Result<Self> {
        HypercubeGraph::new(n)?.check(sigma)?;
        if j >= dim {
            return Err(Error::Domain(format!("coin index {j} out of range for dim = {dim}")));
        }
        let mut s = Self::zeros(n, dim)?;
        s.amp[sigma.0 * dim + j] = cplx(T::one(), T::zero());
        Ok(s)
    }

    /// Normalized complex Gaussian state.
    pub fn random<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Result<Self> {
        check_n(n)?;
        let len = (1usize << (n + 1)) * dim;
        let amp = (0..len)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                cplx(real(re), real(im))
            })
            .collect();
        let mut s = Self::from_amplitudes(n, dim, amp)?;
        s.normalize()?;
        Ok(s)
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
    pub fn vertex_count(&self) -> usize {
        1 << (self.n + 1)
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amp
    }

    #[inline]
    pub fn get(&self, sigma: VertexIndex, j: usize) -> Complex<T> {
        self.amp[sigma.0 * self.dim + j]
    }

    /// The coin-space fiber `Φ(σ, ·)`.
    #[inline]
    pub fn fiber(&self, sigma: VertexIndex) -> &[Complex<T>] {
        &self.amp[sigma.0 * self.dim..(sigma.0 + 1) * self.dim]
    }

    pub fn norm_sqr(&self) -> T {
        self.amp.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm <= T::zero() {
            return Err(Error::Domain("cannot normalize the zero state".into()));
        }
        for a in &mut self.amp {
            *a = a.unscale(norm);
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.n, self.dim), (other.n, other.dim));
        self.amp.iter().zip(&other.amp).fold(T::zero(), |m, (a, b)| m.max((a - b).norm_sqr().sqrt()))
    }

    fn check_system(&self, system: &CoinOperatorSystem<T>) -> Result<()> {
        if self.n != system.n() || self.dim != system.dim() {
            return Err(Error::Dimension(format!(
                "state has n = {}, dim = {} but coin system has n = {}, dim = {}",
                self.n,
                self.dim,
                system.n(),
                system.dim()
            )));
        }
        Ok(())
    }
}

/// `v ⊗ u`, normalized to unit norm.
pub fn product_state<T: Real>(v: &PositionVector<T>, u: &CVector<T>) -> Result<WalkState<T>> {
    if v.norm() <= T::zero() || u.norm() <= T::zero() {
        return Err(Error::Domain("product state factors must be nonzero".into()));
    }
    let dim = u.len();
    let mut amp = Vec::with_capacity(v.len() * dim);
    for a in v.amplitudes() {
        amp.extend(u.iter().map(|b| a * b));
    }
    let mut s = WalkState::from_amplitudes(v.n(), dim, amp)?;
    s.normalize()?;
    Ok(s)
}

/// Operator-free application of `W` for a fixed coin system.
#[derive(Clone, Debug)]
pub struct Evolution<T: Real> {
    n: usize,
    dim: usize,
    /// Row-major copies of the coins.
    coins: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Evolution<T> {
    pub fn new(system: &CoinOperatorSystem<T>) -> Self {
        let dim = system.dim();
        let coins = system
            .coins()
            .iter()
            .map(|c| {
                let mut rows = Vec::with_capacity(dim * dim);
                for i in 0..dim {
                    rows.extend((0..dim).map(|j| c[(i, j)]));
                }
                rows
            })
            .collect();
        Evolution { n: system.n(), dim, coins }
    }

    /// Writes `W src` into `dst`. Each output entry sums over `k` ascending,
    /// then over coin columns ascending, independent of thread count.
    pub fn apply_into(&self, src: &WalkState<T>, dst: &mut WalkState<T>) {
        assert_eq!((src.n, src.dim), (self.n, self.dim));
        assert_eq!((dst.n, dst.dim), (self.n, self.dim));
        let d = self.dim;
        let kernel = |(sigma, out): (usize, &mut [Complex<T>])| {
            out.fill(czero());
            for (k, coin) in self.coins.iter().enumerate() {
                let nb = sigma ^ (1 << k);
                let input = &src.amp[nb * d..(nb + 1) * d];
                for (i, o) in out.iter_mut().enumerate() {
                    let row = &coin[i * d..(i + 1) * d];
                    *o = row.iter().zip(input).fold(*o, |acc, (c, x)| acc + c * x);
                }
            }
        };
        if src.amp.len() >= PAR_THRESHOLD {
            dst.amp.par_chunks_mut(d).enumerate().for_each(kernel);
        } else {
            dst.amp.chunks_mut(d).enumerate().for_each(kernel);
        }
    }

    pub fn apply(&self, src: &WalkState<T>) -> WalkState<T> {
        let mut dst = WalkState { n: src.n, dim: src.dim, amp: vec![czero(); src.amp.len()] };
        self.apply_into(src, &mut dst);
        dst
    }
}

/// `Φ_{t+1} = W Φ_t`.
pub fn step<T: Real>(state: &WalkState<T>, system: &CoinOperatorSystem<T>) -> Result<WalkState<T>> {
    state.check_system(system)?;
    Ok(Evolution::new(system).apply(state))
}

/// `W^t Φ`.
pub fn evolve<T: Real>(state: &WalkState<T>, system: &CoinOperatorSystem<T>, t: u64) -> Result<WalkState<T>> {
    state.check_system(system)?;
    let evo = Evolution::new(system);
    let mut cur = state.clone();
    let mut next = state.clone();
    for _ in 0..t {
        evo.apply_into(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(cur)
}

/// A probability distribution over the vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution<T: Real> {
    n: usize,
    probs: Vec<T>,
    /// Total mass before negative entries were clamped.
    #[serde(skip)]
    raw_total: T,
}

impl<T: Real> Distribution<T> {
    /// Records the raw total, then clamps negative rounding residue to zero.
    pub fn from_raw(n: usize, mut probs: Vec<T>) -> Result<Self> {
        check_n(n)?;
        if probs.len() != 1 << (n + 1) {
            return Err(Error::Dimension(format!(
                "expected {} probabilities for n = {n}, got {}",
                1usize << (n + 1),
                probs.len()
            )));
        }
        let raw_total = probs.iter().fold(T::zero(), |s, &p| s + p);
        for p in &mut probs {
            if *p < T::zero() {
                *p = T::zero();
            }
        }
        Ok(Distribution { n, probs, raw_total })
    }

    /// The uniform measure `κ_n`.
    pub fn uniform(n: usize) -> Result<Self> {
        check_n(n)?;
        let p = inv_sqrt_pow2::<T>(2 * (n as u32 + 1));
        Self::from_raw(n, vec![p; 1 << (n + 1)])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, sigma: VertexIndex) -> T {
        self.probs[sigma.0]
    }

    pub fn raw_total(&self) -> T {
        self.raw_total
    }

    /// `|Σ_σ p(σ) - 1|` measured before clamping.
    pub fn normalization_error(&self) -> T {
        (self.raw_total - T::one()).abs()
    }

    /// A warning when the raw total misses one by more than `tolerance`.
    pub fn normalization_warning(&self, tolerance: f64) -> Option<String> {
        let err = to_f64(self.normalization_error());
        (err > tolerance).then(|| format!("distribution total deviates from 1 by {err:e}"))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        self.probs.iter().zip(&other.probs).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    /// `max_σ |p(σ) - 2^{-(n+1)}|`.
    pub fn max_deviation_from_uniform(&self) -> T {
        let u = inv_sqrt_pow2::<T>(2 * (self.n as u32 + 1));
        self.probs.iter().fold(T::zero(), |m, &p| m.max((p - u).abs()))
    }
}

/// `P(σ) = Σ_j |Φ(σ, j)|²`.
pub fn distribution<T: Real>(state: &WalkState<T>) -> Distribution<T> {
    let probs =
        state.amp.chunks_exact(state.dim).map(|fiber| fiber.iter().fold(T::zero(), |s, a| s + a.norm_sqr())).collect();
    Distribution::from_raw(state.n, probs).expect("state shape is valid")
}

/// Coin-space components `u_τ = Σ_j ⟨Ẑ_τ ⊗ e_j, Φ⟩ e_j` of a state.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDecomposition<T: Real> {
    n: usize,
    dim: usize,
    /// Vertex-major `2^(n+1) × dim`, row `τ` holds `u_τ`.
    data: Vec<Complex<T>>,
}

impl<T: Real> ComponentDecomposition<T> {
    /// Builds a decomposition from one component per vertex, in vertex order.
    pub fn from_components(n: usize, components: &[CVector<T>]) -> Result<Self> {
        check_n(n)?;
        if components.len() != 1 << (n + 1) {
            return Err(Error::Dimension(format!(
                "expected {} components for n = {n}, got {}",
                1usize << (n + 1),
                components.len()
            )));
        }
        let dim = components[0].len();
        if dim == 0 || components.iter().any(|c| c.len() != dim) {
            return Err(Error::Dimension("components must share a positive dimension".into()));
        }
        let data = components.iter().flat_map(|c| c.iter().copied()).collect();
        Ok(ComponentDecomposition { n, dim, data })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, tau: VertexIndex) -> CVector<T> {
        CVector::from_column_slice(&self.data[tau.0 * self.dim..(tau.0 + 1) * self.dim])
    }

    pub fn components(&self) -> Vec<CVector<T>> {
        self.data.chunks_exact(self.dim).map(CVector::from_column_slice).collect()
    }

    /// `Σ_τ ‖u_τ‖²`, equal to `‖Φ‖²`.
    pub fn norm_sqr(&self) -> T {
        self.data.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    /// `Σ_τ Ẑ_τ ⊗ u_τ`.
    pub fn recompose(&self) -> WalkState<T> {
        let mut amp = self.data.clone();
        signed_wht_rows(&mut amp, self.n + 1, self.dim, Direction::Inverse);
        WalkState { n: self.n, dim: self.dim, amp }
    }
}

/// Components of `state` in the `{Ẑ_τ ⊗ e_j}` basis, via the signed transform
/// applied along the vertex axis for each coin coordinate.
pub fn decompose<T: Real>(state: &WalkState<T>) -> ComponentDecomposition<T> {
    let mut data = state.amp.clone();
    signed_wht_rows(&mut data, state.n + 1, state.dim, Direction::Forward);
    ComponentDecomposition { n: state.n, dim: state.dim, data }
}

/// How `(U_τ)^t u_τ` is evaluated in the closed form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PowerMethod {
    /// Repeated matrix-vector multiplication.
    #[default]
    Iterated,
    /// `Σ_i b_i^t ⟨v_i, u⟩ v_i` from a spectral decomposition of each `U_τ`.
    Spectral,
}

/// Closed-form evaluation of `P_t(σ) = 2^{-(n+1)} ‖Σ_τ (-1)^{#(σ∖τ)} U_τ^t u_τ‖²`.
///
/// The sum over `τ` is an inverse signed transform of the evolved components,
/// so each `U_τ^t u_τ` is computed once and shared by every `σ`.
#[derive(Clone, Debug)]
pub struct ClosedForm<T: Real> {
    decomposition: ComponentDecomposition<T>,
    sums: Vec<CMatrix<T>>,
    spectra: Option<Vec<EigenDecomposition<T>>>,
}

impl<T: Real> ClosedForm<T> {
    pub fn new(
        system: &CoinOperatorSystem<T>,
        decomposition: &ComponentDecomposition<T>,
        method: PowerMethod,
    ) -> Result<Self> {
        if decomposition.n != system.n() || decomposition.dim != system.dim() {
            return Err(Error::Dimension(format!(
                "decomposition has n = {}, dim = {} but coin system has n = {}, dim = {}",
                decomposition.n,
                decomposition.dim,
                system.n(),
                system.dim()
            )));
        }
        let weighted = system.weighted_sums();
        let spectra = match method {
            PowerMethod::Iterated => None,
            PowerMethod::Spectral => Some(
                weighted
                    .iter()
                    .map(|w| w.eigendecompose(effective_tol::<T>(tol::VALIDATION)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(ClosedForm {
            decomposition: decomposition.clone(),
            sums: weighted.into_iter().map(|w| w.matrix).collect(),
            spectra,
        })
    }

    fn evolved_components(&self, t: u64) -> Vec<CVector<T>> {
        let comps = self.decomposition.components();
        match &self.spectra {
            Some(spectra) => comps.iter().zip(spectra).map(|(u, e)| e.apply_power(u, t)).collect(),
            None => comps
                .into_iter()
                .zip(&self.sums)
                .map(|(mut u, m)| {
                    for _ in 0..t {
                        u = m * u;
                    }
                    u
                })
                .collect(),
        }
    }

    fn distribution_from(&self, evolved: &[CVector<T>]) -> Distribution<T> {
        let state = ComponentDecomposition::from_components(self.decomposition.n, evolved)
            .expect("shapes preserved")
            .recompose();
        distribution(&state)
    }

    /// `P_t` for one `t ≤ MAX_STEPS`.
    pub fn distribution_at(&self, t: u64) -> Result<Distribution<T>> {
        check_steps(t)?;
        Ok(self.distribution_from(&self.evolved_components(t)))
    }

    /// `P_0, ..., P_{t_max}`, advancing every component by one multiplication per step.
    pub fn series(&self, t_max: u64) -> Result<Vec<Distribution<T>>> {
        check_steps(t_max)?;
        let mut comps = self.decomposition.components();
        let mut out = Vec::with_capacity(t_max as usize + 1);
        for t in 0..=t_max {
            if t > 0 {
                comps = match &self.spectra {
                    Some(_) => self.evolved_components(t),
                    None => comps.iter().zip(&self.sums).map(|(u, m)| m * u).collect(),
                };
            }
            out.push(self.distribution_from(&comps));
        }
        Ok(out)
    }
}

fn check_steps(t: u64) -> Result<()> {
    if t > MAX_STEPS {
        Err(Error::Domain(format!("t = {t} exceeds the supported maximum {MAX_STEPS}")))
    } else {
        Ok(())
    }
}

/// `P_t` from the component decomposition, with iterated matrix powers.
pub fn distribution_closed_form<T: Real>(
    system: &CoinOperatorSystem<T>,
    decomposition: &ComponentDecomposition<T>,
    t: u64,
) -> Result<Distribution<T>> {
    ClosedForm::new(system, decomposition, PowerMethod::Iterated)?.distribution_at(t)
}

/// `P̄_T` at each horizon in `horizons` (ascending, each ≥ 1), from one
/// streaming pass of direct evolution.
pub fn averaged_ladder<T: Real>(
    system: &CoinOperatorSystem<T>,
    initial: &WalkState<T>,
    horizons: &[u64],
) -> Result<Vec<(u64, Distribution<T>)>> {
    initial.check_system(system)?;
    if horizons.first().is_some_and(|&h| h == 0) || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("horizons must be strictly ascending and at least 1".into()));
    }
    let evo = Evolution::new(system);
    let n = initial.n;
    let mut sums = vec![T::zero(); initial.vertex_count()];
    let mut cur = initial.clone();
    let mut next = initial.clone();
    let mut out = Vec::with_capacity(horizons.len());
    let mut t = 0u64;
    for &h in horizons {
        while t < h {
            if t > 0 {
                evo.apply_into(&cur, &mut next);
                std::mem::swap(&mut cur, &mut next);
            }
            for (s, p) in sums.iter_mut().zip(distribution(&cur).probs()) {
                *s += *p;
            }
            t += 1;
        }
        let scale: T = real(h as f64);
        out.push((h, Distribution::from_raw(n, sums.iter().map(|&s| s / scale).collect())?));
    }
    Ok(out)
}

/// `P̄_T(σ) = (1/T) Σ_{t<T} P_t(σ)`.
pub fn averaged_distribution<T: Real>(
    system: &CoinOperatorSystem<T>,
    initial: &WalkState<T>,
    horizon: u64,
) -> Result<Distribution<T>> {
    if horizon == 0 {
        return Err(Error::Domain("averaging horizon must be at least 1".into()));
    }
    Ok(averaged_ladder(system, initial, &[horizon])?.pop().expect("one horizon").1)
}

/// `1, 2, 4, ...` up to `horizon`, with `horizon` itself always last.
pub fn geometric_ladder(horizon: u64) -> Vec<u64> {
    let mut out: Vec<u64> =
        std::iter::successors(Some(1u64), |&t| t.checked_mul(2)).take_while(|&t| t < horizon).collect();
    if horizon >= 1 {
        out.push(horizon);
    }
    out
}

/// One coin component of an eigen-component initial state.
#[derive(Clone, Debug, PartialEq)]
pub enum ComponentChoice<T: Real> {
    /// An explicit vector, optionally with its claimed eigenvalue.
    Vector { vector: CVector<T>, eigenvalue: Option<Complex<T>> },
    /// The `i`-th eigenpair of `U_τ` as returned by its eigendecomposition.
    EigenIndex(usize),
}

/// One [`ComponentChoice`] per vertex `τ`, in vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenComponentSpec<T: Real> {
    pub choices: Vec<ComponentChoice<T>>,
}

/// A resolved component `v_τ` with its eigenvalue; zero components carry none.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedComponent<T: Real> {
    pub vector: CVector<T>,
    pub eigenvalue: Option<Complex<T>>,
}

impl<T: Real> EigenComponentSpec<T> {
    pub fn from_vectors(vectors: Vec<CVector<T>>) -> Self {
        EigenComponentSpec {
            choices: vectors.into_iter().map(|vector| ComponentChoice::Vector { vector, eigenvalue: None }).collect(),
        }
    }

    /// For each `τ`, the unit eigenvector of `U_τ` whose eigenvalue is closest to `targets[τ]`.
    pub fn nearest_eigenvalues(system: &CoinOperatorSystem<T>, targets: &[Complex<T>]) -> Result<Self> {
        let g = system.graph();
        if targets.len() != g.vertex_count() {
            return Err(Error::Dimension(format!(
                "expected {} target eigenvalues, got {}",
                g.vertex_count(),
                targets.len()
            )));
        }
        let choices = g
            .vertices()
            .zip(targets)
            .map(|(tau, &target)| {
                let eig = system.weighted_sum(tau)?.eigendecompose(effective_tol::<T>(tol::VALIDATION))?;
                let best = eig
                    .pairs
                    .iter()
                    .min_by(|a, b| {
                        let da = to_f64((a.value - target).norm_sqr());
                        let db = to_f64((b.value - target).norm_sqr());
                        da.total_cmp(&db)
                    })
                    .expect("nonempty spectrum");
                Ok(ComponentChoice::Vector { vector: best.vector.clone(), eigenvalue: Some(best.value) })
            })
            .collect::<Result<_>>()?;
        Ok(EigenComponentSpec { choices })
    }

    /// Seeded eigenmix: for each `τ`, a uniformly chosen eigenvalue of `U_τ`
    /// and a random unit vector in its (possibly degenerate) eigenspace.
    pub fn random(system: &CoinOperatorSystem<T>, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grouping: T = real(tol::EIGEN_GROUPING);
        let choices = system
            .weighted_sums()
            .iter()
            .map(|w| {
                let eig = w.eigendecompose(effective_tol::<T>(tol::VALIDATION))?;
                let pick = rng.random_range(0..eig.pairs.len());
                let value = eig.pairs[pick].value;
                let mut vector = CVector::zeros(system.dim());
                for p in eig.pairs.iter().filter(|p| (p.value - value).norm_sqr().sqrt() <= grouping) {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    vector += &p.vector * cplx(real::<T>(re), real::<T>(im));
                }
                let norm = vector.norm();
                vector.unscale_mut(norm);
                Ok(ComponentChoice::Vector { vector, eigenvalue: Some(value) })
            })
            .collect::<Result<_>>()?;
        Ok(EigenComponentSpec { choices })
    }

    /// Resolves every choice and checks `‖U_τ v - b v‖ ≤ tolerance · ‖v‖`.
    pub fn resolve(&self, system: &CoinOperatorSystem<T>, tolerance: f64) -> Result<Vec<ResolvedComponent<T>>> {
        let g = system.graph();
        if self.choices.len() != g.vertex_count() {
            return Err(Error::Dimension(format!(
                "expected {} component choices for n = {}, got {}",
                g.vertex_count(),
                system.n(),
                self.choices.len()
            )));
        }
        let tol_t: T = real(tolerance);
        g.vertices()
            .zip(&self.choices)
            .map(|(tau, choice)| {
                let w = system.weighted_sum(tau)?;
                match choice {
                    ComponentChoice::EigenIndex(i) => {
                        let eig = w.eigendecompose(effective_tol::<T>(tol::VALIDATION))?;
                        let pair = eig.pairs.get(*i).ok_or_else(|| {
                            Error::Domain(format!("eigenpair index {i} out of range for tau = {}", tau.0))
                        })?;
                        Ok(ResolvedComponent { vector: pair.vector.clone(), eigenvalue: Some(pair.value) })
                    }
                    ComponentChoice::Vector { vector, eigenvalue } => {
                        if vector.len() != system.dim() {
                            return Err(Error::Dimension(format!(
                                "component for tau = {} has length {}, expected {}",
                                tau.0,
                                vector.len(),
                                system.dim()
                            )));
                        }
                        let norm = vector.norm();
                        if norm <= T::zero() {
                            return Ok(ResolvedComponent { vector: vector.clone(), eigenvalue: None });
                        }
                        let image = &w.matrix * vector;
                        let b = eigenvalue.unwrap_or_else(|| vector.dotc(&image).unscale(norm * norm));
                        let residual = (image - vector * b).norm() / norm;
                        if residual > tol_t {
                            return Err(Error::NotEigenvector { tau: tau.0, residual: to_f64(residual) });
                        }
                        Ok(ResolvedComponent { vector: vector.clone(), eigenvalue: Some(b) })
                    }
                }
            })
            .collect()
    }
}

/// An eigen-component initial state together with its construction data.
#[derive(Clone, Debug)]
pub struct Eigenmix<T: Real> {
    pub state: WalkState<T>,
    /// `M_0 = Σ_γ ‖v_γ‖²`.
    pub m0: T,
    pub components: Vec<ResolvedComponent<T>>,
}

/// `Φ_0 = M_0^{-1/2} Σ_γ Ẑ_γ ⊗ v_γ`.
pub fn build_eigenmix_state<T: Real>(
    system: &CoinOperatorSystem<T>,
    spec: &EigenComponentSpec<T>,
) -> Result<Eigenmix<T>> {
    let components = spec.resolve(system, effective_tol::<T>(tol::EIGENVECTOR))?;
    let m0 = components.iter().fold(T::zero(), |s, c| s + c.vector.norm_squared());
    if m0 <= T::zero() {
        return Err(Error::Domain("every eigen-component is zero".into()));
    }
    let scale = T::one() / m0.sqrt();
    let scaled: Vec<CVector<T>> = components.iter().map(|c| c.vector.scale(scale)).collect();
    let state = ComponentDecomposition::from_components(system.n(), &scaled)?.recompose();
    Ok(Eigenmix { state, m0, components })
}

/// Options for [`limit_distribution_with`].
#[derive(Clone, Copy, Debug)]
pub struct LimitOptions {
    pub eigenvector_tolerance: f64,
    pub grouping_tolerance: f64,
    pub imaginary_tolerance: f64,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            eigenvector_tolerance: tol::EIGENVECTOR,
            grouping_tolerance: tol::EIGEN_GROUPING,
            imaginary_tolerance: tol::IMAGINARY_RESIDUE,
        }
    }
}

/// `lim_T P̄_T(σ)` for an eigen-component initial state.
pub fn limit_distribution<T: Real>(
    system: &CoinOperatorSystem<T>,
    spec: &EigenComponentSpec<T>,
) -> Result<Distribution<T>> {
    limit_distribution_with(system, spec, LimitOptions::default())
}

/// `2^{-(n+1)} [1 + Σ (-1)^{#(σ∖τ1)+#(σ∖τ2)} ⟨u_τ1, u_τ2⟩]` over ordered pairs
/// `τ1 != τ2` whose eigenvalues agree within the grouping tolerance.
///
/// Components are normalized so that `Σ ‖u_τ‖² = 1`.
pub fn limit_distribution_with<T: Real>(
    system: &CoinOperatorSystem<T>,
    spec: &EigenComponentSpec<T>,
    options: LimitOptions,
) -> Result<Distribution<T>> {
    let comps = spec.resolve(system, effective_tol::<T>(options.eigenvector_tolerance))?;
    let m0 = comps.iter().fold(T::zero(), |s, c| s + c.vector.norm_squared());
    if m0 <= T::zero() {
        return Err(Error::Domain("every eigen-component is zero".into()));
    }
    let scale = T::one() / m0.sqrt();
    let u: Vec<CVector<T>> = comps.iter().map(|c| c.vector.scale(scale)).collect();
    let values: Vec<Option<Complex<T>>> = comps.iter().map(|c| c.eigenvalue).collect();

    let g = system.graph();
    let count = g.vertex_count();
    let grouping: T = real(effective_tol::<T>(options.grouping_tolerance));
    let close = |a: usize, b: usize| match (values[a], values[b]) {
        (Some(x), Some(y)) => (x - y).norm_sqr().sqrt() <= grouping,
        _ => false,
    };

    // Clusters of mutually close eigenvalues. When a cluster is a clique the
    // pair sum collapses to ‖Σ s u‖² - Σ ‖u‖²; otherwise fall back to pairs.
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pairs = Vec::new();
    for a in 0..count {
        for b in a + 1..count {
            if close(a, b) {
                pairs.push((a, b));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (tau, value) in values.iter().enumerate() {
        if value.is_some() {
            let root = find(&mut parent, tau);
            clusters.entry(root).or_default().push(tau);
        }
    }
    let clusters: Vec<Vec<usize>> = clusters.into_values().filter(|c| c.len() > 1).collect();
    let cliques = clusters.iter().all(|c| c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| close(a, b))));

    let base = inv_sqrt_pow2::<T>(2 * (system.n() as u32 + 1));
    let mut probs = Vec::with_capacity(count);
    let mut worst_imag = T::zero();
    for sigma in g.vertices() {
        let sign = |tau: usize| -> T { real(diff_parity_sign(sigma, VertexIndex(tau)) as f64) };
        let correction = if cliques {
            clusters.iter().fold(T::zero(), |acc, c| {
                let mut sum = CVector::<T>::zeros(system.dim());
                let mut diag = T::zero();
                for &tau in c {
                    sum += u[tau].scale(sign(tau));
                    diag += u[tau].norm_squared();
                }
                acc + sum.norm_squared() - diag
            })
        } else {
            let total = pairs.iter().fold(czero::<T>(), |acc, &(a, b)| {
                // ordered pairs (a, b) and (b, a) contribute z and conj(z)
                let z = u[a].dotc(&u[b]) * (sign(a) * sign(b));
                acc + z + z.conj()
            });
            worst_imag = worst_imag.max(total.im.abs());
            total.re
        };
        probs.push(base * (T::one() + correction));
    }
    if to_f64(worst_imag) > effective_tol::<T>(options.imaginary_tolerance) {
        return Err(Error::Numerical(format!("limit formula left an imaginary residue of {:e}", to_f64(worst_imag))));
    }
    Distribution::from_raw(system.n(), probs)
}

/// Outcome of [`stationary_check`].
#[derive(Clone, Debug, Serialize)]
pub struct StationaryReport {
    pub t_max: u64,
    /// `max_{t ≤ t_max, σ} |P_t(σ) - P_0(σ)|`.
    pub max_deviation: f64,
    /// `max_σ |P_0(σ) - 2^{-(n+1)}|`.
    pub uniform_deviation: f64,
    pub tolerance: f64,
    pub stationary: bool,
    pub uniform: bool,
}

/// Evolves directly to `t_max` and measures how far `P_t` drifts from `P_0`.
pub fn stationary_check<T: Real>(
    system: &CoinOperatorSystem<T>,
    initial: &WalkState<T>,
    t_max: u64,
    tolerance: f64,
) -> Result<StationaryReport> {
    initial.check_system(system)?;
    check_steps(t_max)?;
    let norm_err = to_f64((initial.norm_sqr() - T::one()).abs());
    if norm_err > effective_tol::<T>(tol::NORMALIZATION) {
        return Err(Error::Domain(format!("initial state is not a unit vector (|‖Φ‖² - 1| = {norm_err:e})")));
    }
    let evo = Evolution::new(system);
    let p0 = distribution(initial);
    let mut worst = T::zero();
    let mut cur = initial.clone();
    let mut next = initial.clone();
    for _ in 0..t_max {
        evo.apply_into(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        worst = worst.max(distribution(&cur).max_abs_diff(&p0));
    }
    let max_deviation = to_f64(worst);
    let uniform_deviation = to_f64(p0.max_deviation_from_uniform());
    Ok(StationaryReport {
        t_max,
        max_deviation,
        uniform_deviation,
        tolerance,
        stationary: max_deviation <= tolerance,
        uniform: uniform_deviation <= tolerance,
    })
}

/// `Ẑ_γ ⊗ u` with `u` normalized.
pub fn hadamard_product_state<T: Real>(n: usize, gamma: VertexIndex, u: &CVector<T>) -> Result<WalkState<T>> {
    product_state(&hadamard_vector(n, gamma)?, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::builtin_example;

    type S = WalkState<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn v(e: &[usize]) -> VertexIndex {
        VertexIndex::from_elements(e)
    }

    fn random_unit(dim: usize, rng: &mut impl Rng) -> CVector<f64> {
        let v = CVector::from_fn(dim, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let n = v.norm();
        v.unscale(n)
    }

    fn trivial_flip() -> CoinOperatorSystem<f64> {
        CoinOperatorSystem::new(vec![CMatrix::identity(1, 1)]).unwrap()
    }

    #[test]
    fn step_single_mode_flip() {
        let s = S::basis(0, 1, v(&[]), 0).unwrap();
        let out = step(&s, &trivial_flip()).unwrap();
        assert_eq!(out, S::basis(0, 1, v(&[0]), 0).unwrap());
        assert_eq!(evolve(&s, &trivial_flip(), 2).unwrap(), s);
        assert_eq!(evolve(&s, &trivial_flip(), 0).unwrap(), s);
    }

    #[test]
    fn step_dimension_mismatch() {
        let s = S::basis(1, 3, v(&[]), 0).unwrap();
        let sys = builtin_example::<f64>("3.1").unwrap();
        assert!(matches!(step(&s, &sys), Err(Error::Dimension(_))));
    }

    #[test]
    fn step_on_hadamard_block() {
        let sys = builtin_example::<f64>("3.1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for tau in sys.graph().vertices() {
            let u = random_unit(2, &mut rng);
            let s = hadamard_product_state(1, tau, &u).unwrap();
            let ut = &sys.weighted_sum(tau).unwrap().matrix * &u;
            let expect = hadamard_product_state(1, tau, &ut).unwrap();
            assert!(step(&s, &sys).unwrap().max_abs_diff(&expect) < 1e-12);
        }
    }

    #[test]
    fn evolution_is_norm_preserving() {
        let sys = CoinOperatorSystem::<f64>::random(2, 4, 5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = S::random(2, 4, &mut rng).unwrap();
        let out = evolve(&s, &sys, 1000).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn parallel_step_matches_single_threaded() {
        let sys = CoinOperatorSystem::<f64>::random(11, 12, 1, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = S::random(11, 12, &mut rng).unwrap();
        let par = step(&s, &sys).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let seq = pool.install(|| step(&s, &sys).unwrap());
        assert_eq!(par, seq);
    }

    #[test]
    fn distribution_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unit(3, &mut rng);
        let s = product_state(&PositionVector::basis(1, v(&[1])).unwrap(), &u).unwrap();
        let p = distribution(&s);
        assert!((p.get(v(&[1])) - 1.0).abs() < 1e-15);
        assert_eq!(p.get(v(&[0])), 0.0);

        let s = hadamard_product_state(1, v(&[0]), &u).unwrap();
        let p = distribution(&s);
        assert!(p.probs().iter().all(|&x| (x - 0.25).abs() < 1e-15));

        let s = S::random(3, 4, &mut rng).unwrap();
        assert!((distribution(&s).raw_total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distribution_warns_on_unnormalized() {
        let s = S::from_amplitudes(0, 1, vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let p = distribution(&s);
        assert!(p.normalization_warning(1e-10).is_some());
        assert_eq!(p.probs(), &[1.0, 1.0]);
    }

    #[test]
    fn clamping_happens_after_total() {
        let p = Distribution::<f64>::from_raw(0, vec![1.0 + 1e-17, -1e-17]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
        assert!((p.raw_total() - 1.0).abs() < 1e-16);
    }

    #[test]
    fn decompose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = random_unit(2, &mut rng);
        let s = hadamard_product_state(2, v(&[0, 2]), &u).unwrap();
        let d = decompose(&s);
        for tau in HypercubeGraph::new(2).unwrap().vertices() {
            let expect = if tau == v(&[0, 2]) { u.clone() } else { CVector::zeros(2) };
            assert!((d.component(tau) - expect).norm() < 1e-12);
        }

        let s = S::random(4, 3, &mut rng).unwrap();
        let d = decompose(&s);
        assert!((d.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(d.recompose().max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn product_state_contract() {
        let z = PositionVector::<f64>::zeros(1).unwrap();
        assert!(product_state(&z, &CVector::from_element(2, c(1.0, 0.0))).is_err());
        let b = PositionVector::basis(1, v(&[])).unwrap();
        assert!(product_state(&b, &CVector::zeros(2)).is_err());
        let s = product_state(&b, &CVector::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert_eq!(s, S::basis(1, 2, v(&[]), 0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = PositionVector::from_amplitudes(2, (0..8).map(|_| c(rng.random(), rng.random())).collect()).unwrap();
        let s = product_state(&x, &CVector::from_element(3, c(2.0, -1.0))).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_zero_time_and_uniform() {
        let sys = CoinOperatorSystem::<f64>::random(2, 4, 11, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = S::random(2, 4, &mut rng).unwrap();
        let d = decompose(&s);
        let p0 = distribution_closed_form(&sys, &d, 0).unwrap();
        assert!(p0.max_abs_diff(&distribution(&d.recompose())) < 1e-12);

        let u = random_unit(4, &mut rng);
        let h = hadamard_product_state(2, v(&[1]), &u).unwrap();
        let cf = ClosedForm::new(&sys, &decompose(&h), PowerMethod::Iterated).unwrap();
        for p in cf.series(20).unwrap() {
            assert!(p.max_deviation_from_uniform() < 1e-12);
        }
        assert!(distribution_closed_form(&sys, &d, MAX_STEPS + 1).is_err());
    }

    #[test]
    fn closed_form_matches_direct_and_spectral() {
        let sys = CoinOperatorSystem::<f64>::random(2, 5, 13, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = S::random(2, 5, &mut rng).unwrap();
        let d = decompose(&s);
        let iter = ClosedForm::new(&sys, &d, PowerMethod::Iterated).unwrap();
        let spec = ClosedForm::new(&sys, &d, PowerMethod::Spectral).unwrap();
        let series = iter.series(30).unwrap();
        let mut cur = s.clone();
        for (t, p) in series.iter().enumerate() {
            assert!(p.max_abs_diff(&distribution(&cur)) < 1e-9, "t = {t}");
            assert!(p.max_abs_diff(&iter.distribution_at(t as u64).unwrap()) < 1e-12);
            assert!(p.max_abs_diff(&spec.distribution_at(t as u64).unwrap()) < 1e-9);
            cur = step(&cur, &sys).unwrap();
        }
    }

    #[test]
    fn averaged_examples() {
        let sys = CoinOperatorSystem::<f64>::random(2, 3, 21, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = S::random(2, 3, &mut rng).unwrap();
        let p1 = averaged_distribution(&sys, &s, 1).unwrap();
        assert!(p1.max_abs_diff(&distribution(&s)) < 1e-15);
        assert!(averaged_distribution(&sys, &s, 0).is_err());

        let cf = ClosedForm::new(&sys, &decompose(&s), PowerMethod::Iterated).unwrap();
        let series = cf.series(31).unwrap();
        let mean: Vec<f64> = (0..8).map(|i| series.iter().map(|p| p.probs()[i]).sum::<f64>() / 32.0).collect();
        let avg = averaged_distribution(&sys, &s, 32).unwrap();
        for (a, b) in avg.probs().iter().zip(&mean) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!((avg.raw_total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ladder_shape() {
        assert_eq!(geometric_ladder(1), vec![1]);
        assert_eq!(geometric_ladder(8), vec![1, 2, 4, 8]);
        assert_eq!(geometric_ladder(10), vec![1, 2, 4, 8, 10]);
        let sys = builtin_example::<f64>("3.1").unwrap();
        let s = S::basis(1, 2, v(&[]), 0).unwrap();
        assert!(averaged_ladder(&sys, &s, &[2, 2]).is_err());
    }

    fn swap2_eigenmix() -> (CoinOperatorSystem<f64>, EigenComponentSpec<f64>) {
        let sys = builtin_example::<f64>("3.1").unwrap();
        let targets = [c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)];
        let spec = EigenComponentSpec::nearest_eigenvalues(&sys, &targets).unwrap();
        (sys, spec)
    }

    fn diag4_components() -> Vec<CVector<f64>> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        [[0.0, 0.0, r, r], [0.0, 0.0, r, -r], [r, r, 0.0, 0.0], [r, -r, 0.0, 0.0]]
            .iter()
            .map(|row| CVector::from_iterator(4, row.iter().map(|&x| c(x, 0.0))))
            .collect()
    }

    #[test]
    fn eigenmix_examples() {
        let (sys, spec) = swap2_eigenmix();
        let mix = build_eigenmix_state(&sys, &spec).unwrap();
        assert!((mix.state.norm() - 1.0).abs() < 1e-12);
        let d = decompose(&mix.state);
        for (tau, comp) in mix.components.iter().enumerate() {
            let u = d.component(VertexIndex(tau));
            let w = &sys.weighted_sum(VertexIndex(tau)).unwrap().matrix;
            assert!((w * &u - &u * comp.eigenvalue.unwrap()).norm() < 1e-12);
        }

        let sys = builtin_example::<f64>("3.2").unwrap();
        let vs = diag4_components();
        let mix = build_eigenmix_state(&sys, &EigenComponentSpec::from_vectors(vs.clone())).unwrap();
        assert!((mix.m0 - 4.0).abs() < 1e-12);
        let d = decompose(&mix.state);
        for (tau, vt) in vs.iter().enumerate() {
            assert!((d.component(VertexIndex(tau)) - vt.scale(0.5)).norm() < 1e-12);
        }

        let mut only = vec![CVector::zeros(4); 4];
        only[2] = vs[2].clone();
        let mix = build_eigenmix_state(&sys, &EigenComponentSpec::from_vectors(only)).unwrap();
        let expect = hadamard_product_state(1, VertexIndex(2), &vs[2]).unwrap();
        assert!(mix.state.max_abs_diff(&expect) < 1e-12);

        let zeros = EigenComponentSpec::from_vectors(vec![CVector::zeros(4); 4]);
        assert!(matches!(build_eigenmix_state(&sys, &zeros), Err(Error::Domain(_))));
    }

    #[test]
    fn limit_examples() {
        let (sys, spec) = swap2_eigenmix();
        let lim = limit_distribution(&sys, &spec).unwrap();
        assert!(lim.probs().iter().all(|&p| p == 0.25));

        let sys = builtin_example::<f64>("3.2").unwrap();
        let lim = limit_distribution(&sys, &EigenComponentSpec::from_vectors(diag4_components())).unwrap();
        assert!(lim.max_deviation_from_uniform() < 1e-15);

        let mut bad = diag4_components();
        bad[0] = CVector::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        match limit_distribution(&sys, &EigenComponentSpec::from_vectors(bad)) {
            Err(Error::NotEigenvector { tau, .. }) => assert_eq!(tau, 0),
            other => panic!("expected NotEigenvector, got {other:?}"),
        }
    }

    #[test]
    fn limit_pairwise_and_clique_paths_agree() {
        let sys = builtin_example::<f64>("3.2").unwrap();
        let spec = EigenComponentSpec::random(&sys, 77).unwrap();
        let fast = limit_distribution(&sys, &spec).unwrap();
        // Oracle: brute-force ordered-pair sum with exact eigenvalue labels.
        let comps = spec.resolve(&sys, 1e-10).unwrap();
        let m0: f64 = comps.iter().map(|r| r.vector.norm_squared()).sum();
        for sigma in 0..4usize {
            let mut acc = c(0.0, 0.0);
            for a in 0..4usize {
                for b in 0..4usize {
                    if a == b || (comps[a].eigenvalue.unwrap() - comps[b].eigenvalue.unwrap()).norm() > 1e-9 {
                        continue;
                    }
                    let s = diff_parity_sign(VertexIndex(sigma), VertexIndex(a))
                        * diff_parity_sign(VertexIndex(sigma), VertexIndex(b));
                    acc += comps[a].vector.dotc(&comps[b].vector) * (s as f64 / m0);
                }
            }
            assert!(acc.im.abs() < 1e-12);
            assert!((fast.probs()[sigma] - 0.25 * (1.0 + acc.re)).abs() < 1e-12);
        }
    }

    #[test]
    fn stationary_examples() {
        let sys = builtin_example::<f64>("3.1").unwrap();
        let r = stationary_check(&sys, &S::basis(1, 2, v(&[]), 0).unwrap(), 8, 1e-12).unwrap();
        assert!(!r.stationary);
        assert!(!r.uniform);

        let sys = builtin_example::<f64>("3.2").unwrap();
        let mix = build_eigenmix_state(&sys, &EigenComponentSpec::from_vectors(diag4_components())).unwrap();
        let r = stationary_check(&sys, &mix.state, 128, 1e-12).unwrap();
        assert!(r.stationary && r.uniform, "{r:?}");

        let bad = S::from_amplitudes(1, 4, vec![c(1.0, 0.0); 16]).unwrap();
        assert!(stationary_check(&sys, &bad, 4, 1e-12).is_err());
    }

    #[test]
    fn f32_walk_runs() {
        let sys = CoinOperatorSystem::<f32>::random(2, 3, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = WalkState::<f32>::random(2, 3, &mut rng).unwrap();
        let out = evolve(&s, &sys, 50).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-4);
    }
}
