//! The truncated position space spanned by `{Z_σ : σ ⊆ {0..n}}`.
//!
//! Annihilation and creation act on the canonical basis by removing or adding
//! an element of the index set; their sum is a bit flip on the vertex index.
//! The Hadamard-like basis `Ẑ_σ` diagonalizes every shift simultaneously and
//! the change of coordinates into it is a signed Walsh-Hadamard transform.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::{check_n, HypercubeGraph, VertexIndex};
use crate::scalar::{czero, inv_sqrt_pow2, real, to_f64, Real};
use crate::tol;

/// Vectors at least this long are permuted in parallel.
const PAR_THRESHOLD: usize = 1 << 14;

/// A vector of `2^(n+1)` complex amplitudes indexed by vertex bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionVector<T: Real> {
    n: usize,
    amp: Vec<Complex<T>>,
}

impl<T: Real> PositionVector<T> {
    pub fn zeros(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(PositionVector { n, amp: vec![czero(); 1 << (n + 1)] })
    }

    /// The canonical basis vector `Z_σ`.
    pub fn basis(n: usize, sigma: VertexIndex) -> Result<Self> {
        let mut v = Self::zeros(n)?;
        HypercubeGraph::new(n)?.check(sigma)?;
        v.amp[sigma.0] = Complex::new(T::one(), T::zero());
        Ok(v)
    }

    pub fn from_amplitudes(n: usize, amp: Vec<Complex<T>>) -> Result<Self> {
        check_n(n)?;
        if amp.len() != 1 << (n + 1) {
            return Err(Error::Dimension(format!(
                "expected {} amplitudes for n = {n}, got {}",
                1usize << (n + 1),
                amp.len()
            )));
        }
        Ok(PositionVector { n, amp })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.amp.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.amp.is_empty()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amp
    }

    #[inline]
    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amp
    }

    #[inline]
    pub fn get(&self, sigma: VertexIndex) -> Complex<T> {
        self.amp[sigma.0]
    }

    pub fn graph(&self) -> HypercubeGraph {
        HypercubeGraph::new(self.n).expect("n validated at construction")
    }

    pub fn norm_sqr(&self) -> T {
        self.amp.iter().fold(T::zero(), |s, a| s + a.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.n, other.n);
        self.amp.iter().zip(&other.amp).fold(czero(), |s, (a, b)| s + a.conj() * b)
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        PositionVector { n: self.n, amp: self.amp.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let amp = self.amp.iter().zip(&other.amp).map(|(a, b)| a + b).collect();
        PositionVector { n: self.n, amp }
    }

    /// Largest amplitude-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n);
        self.amp.iter().zip(&other.amp).fold(T::zero(), |m, (a, b)| m.max((a - b).norm_sqr().sqrt()))
    }

    pub fn max_abs(&self) -> T {
        self.amp.iter().fold(T::zero(), |m, a| m.max(a.norm_sqr().sqrt()))
    }
}

/// `∂_k`: `Z_σ ↦ 1_σ(k) Z_{σ∖k}`.
pub fn apply_annihilation<T: Real>(k: usize, v: &PositionVector<T>) -> Result<PositionVector<T>> {
    v.graph().check_mode(k)?;
    let bit = 1usize << k;
    let amp = (0..v.len()).map(|s| if s & bit == 0 { v.amp[s | bit] } else { czero() }).collect();
    Ok(PositionVector { n: v.n, amp })
}

/// `∂_k*`: `Z_σ ↦ (1 - 1_σ(k)) Z_{σ∪k}`.
pub fn apply_creation<T: Real>(k: usize, v: &PositionVector<T>) -> Result<PositionVector<T>> {
    v.graph().check_mode(k)?;
    let bit = 1usize << k;
    let amp = (0..v.len()).map(|s| if s & bit != 0 { v.amp[s ^ bit] } else { czero() }).collect();
    Ok(PositionVector { n: v.n, amp })
}

/// `∂_k* + ∂_k`: `Z_σ ↦ Z_{σ△{k}}`.
pub fn apply_shift<T: Real>(k: usize, v: &PositionVector<T>) -> Result<PositionVector<T>> {
    v.graph().check_mode(k)?;
    let bit = 1usize << k;
    let src = &v.amp;
    let amp = if src.len() >= PAR_THRESHOLD {
        (0..src.len()).into_par_iter().map(|s| src[s ^ bit]).collect()
    } else {
        (0..src.len()).map(|s| src[s ^ bit]).collect()
    };
    Ok(PositionVector { n: v.n, amp })
}

/// The Hadamard-like basis vector `Ẑ_σ`, with `amp(τ) = 2^{-(n+1)/2} Π_{k∈τ} ε_σ(k)`.
pub fn hadamard_vector<T: Real>(n: usize, sigma: VertexIndex) -> Result<PositionVector<T>> {
    let g = HypercubeGraph::new(n)?;
    g.check(sigma)?;
    let scale = inv_sqrt_pow2::<T>((n + 1) as u32);
    let amp = (0..g.vertex_count())
        .map(|t| {
            // Π_{k∈τ} ε_σ(k) = (-1)^{#(τ∖σ)}
            if (t & !sigma.0).count_ones().is_multiple_of(2) {
                Complex::new(scale, T::zero())
            } else {
                Complex::new(-scale, T::zero())
            }
        })
        .collect();
    Ok(PositionVector { n, amp })
}

/// `ξ⋆ = Ẑ_{{0..n}}`, the uniform superposition fixed by every shift.
pub fn fixed_point<T: Real>(n: usize) -> Result<PositionVector<T>> {
    let g = HypercubeGraph::new(n)?;
    hadamard_vector(n, g.full())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `{Z_σ}` coordinates to `{Ẑ_τ}` coordinates.
    Forward,
    /// `{Ẑ_τ}` coordinates back to `{Z_σ}` coordinates.
    Inverse,
}

/// Change of basis between `{Z_σ}` and `{Ẑ_σ}` coordinates in `O(N log N)`.
///
/// The kernel `(-1)^{#(σ∖τ)} 2^{-(n+1)/2}` factors as the diagonal sign
/// `(-1)^{#σ}` times the Walsh-Hadamard kernel `(-1)^{#(σ∩τ)}`.
pub fn signed_wht<T: Real>(v: &PositionVector<T>, direction: Direction) -> PositionVector<T> {
    let mut amp = v.amp.clone();
    signed_wht_rows(&mut amp, v.n + 1, 1, direction);
    PositionVector { n: v.n, amp }
}

/// Applies the signed transform along the row axis of a row-major
/// `2^modes × cols` array, treating each column independently.
pub(crate) fn signed_wht_rows<T: Real>(data: &mut [Complex<T>], modes: usize, cols: usize, direction: Direction) {
    let rows = 1usize << modes;
    debug_assert_eq!(data.len(), rows * cols);
    if direction == Direction::Forward {
        apply_parity_sign(data, cols);
    }
    wht_butterfly(data, rows, cols);
    if direction == Direction::Inverse {
        apply_parity_sign(data, cols);
    }
    let scale = inv_sqrt_pow2::<T>(modes as u32);
    for a in data.iter_mut() {
        *a = a.scale(scale);
    }
}

fn apply_parity_sign<T: Real>(data: &mut [Complex<T>], cols: usize) {
    for (s, row) in data.chunks_exact_mut(cols).enumerate() {
        if s.count_ones() % 2 == 1 {
            for a in row {
                *a = -*a;
            }
        }
    }
}

/// Unnormalized in-place Walsh-Hadamard butterflies over rows.
fn wht_butterfly<T: Real>(data: &mut [Complex<T>], rows: usize, cols: usize) {
    let mut h = 1;
    while h < rows {
        for block in data.chunks_exact_mut(2 * h * cols) {
            let (lo, hi) = block.split_at_mut(h * cols);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

/// `A_σ = Π_{k=0}^{n} (I + ε_σ(k)(∂_k* + ∂_k))`, factors applied in order `k = 0..=n`.
pub fn apply_a<T: Real>(sigma: VertexIndex, v: &PositionVector<T>) -> Result<PositionVector<T>> {
    let g = v.graph();
    g.check(sigma)?;
    let mut cur = v.clone();
    for k in 0..=v.n {
        let shifted = apply_shift(k, &cur)?;
        cur = if sigma.contains(k) {
            cur.add(&shifted)
        } else {
            cur.add(&shifted.scaled(-Complex::new(T::one(), T::zero())))
        };
    }
    Ok(cur)
}

/// One named relation and its worst deviation over the basis.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub max_deviation: f64,
}

/// Outcome of [`verify_car`].
#[derive(Clone, Debug, Serialize)]
pub struct CarReport {
    pub n: usize,
    pub relations: Vec<RelationCheck>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Largest `n` accepted by [`verify_car`].
pub const CAR_MAX_N: usize = 8;

/// Checks the equal-time canonical anti-commutation relations on every basis vector.
pub fn verify_car<T: Real>(n: usize) -> Result<CarReport> {
    verify_car_with_tol::<T>(n, tol::AMPLITUDE)
}

pub fn verify_car_with_tol<T: Real>(n: usize, tolerance: f64) -> Result<CarReport> {
    if n > CAR_MAX_N {
        return Err(Error::Domain(format!("CAR sweep supports n <= {CAR_MAX_N}, got {n}")));
    }
    let g = HypercubeGraph::new(n)?;
    let names = [
        "annihilators commute",
        "creators commute",
        "creator/annihilator commute (k != l)",
        "annihilator squares to zero",
        "creator squares to zero",
        "anti-commutator is identity",
    ];
    let mut worst = [T::zero(); 6];
    let a = |k: usize, v: &PositionVector<T>| apply_annihilation(k, v);
    let c = |k: usize, v: &PositionVector<T>| apply_creation(k, v);

    for sigma in g.vertices() {
        let z = PositionVector::<T>::basis(n, sigma)?;
        for k in 0..=n {
            let ak = a(k, &z)?;
            let ck = c(k, &z)?;
            for l in 0..=n {
                let al = a(l, &z)?;
                let cl = c(l, &z)?;
                worst[0] = worst[0].max(a(k, &al)?.max_abs_diff(&a(l, &ak)?));
                worst[1] = worst[1].max(c(k, &cl)?.max_abs_diff(&c(l, &ck)?));
                if k != l {
                    worst[2] = worst[2].max(c(k, &al)?.max_abs_diff(&a(l, &ck)?));
                }
            }
            worst[3] = worst[3].max(a(k, &ak)?.max_abs());
            worst[4] = worst[4].max(c(k, &ck)?.max_abs());
            let anti = a(k, &ck)?.add(&c(k, &ak)?);
            worst[5] = worst[5].max(anti.max_abs_diff(&z));
        }
    }

    let relations: Vec<RelationCheck> = names
        .iter()
        .zip(worst)
        .map(|(name, dev)| RelationCheck { name: name.to_string(), max_deviation: to_f64(dev) })
        .collect();
    let max_deviation = relations.iter().fold(0.0f64, |m, r| m.max(r.max_deviation));
    Ok(CarReport { n, relations, max_deviation, tolerance, pass: max_deviation <= tolerance })
}

/// Outcome of [`verify_hadamard_basis`].
#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub n: usize,
    /// `max |⟨Ẑ_σ, Ẑ_γ⟩ - δ_{σγ}|`.
    pub gram_deviation: f64,
    /// `max |(∂_k*+∂_k)Ẑ_σ - ε_σ(k)Ẑ_σ|`.
    pub eigen_deviation: f64,
    /// `max |(∂_k*+∂_k)ξ⋆ - ξ⋆|`.
    pub fixed_point_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Largest `n` accepted by [`verify_hadamard_basis`].
pub const BASIS_MAX_N: usize = 10;

/// Orthonormality and shift-eigenvector checks for `{Ẑ_σ}`.
///
/// The Gram matrix is evaluated with dense inner products.
pub fn verify_hadamard_basis<T: Real>(n: usize, tolerance: f64) -> Result<BasisReport> {
    if n > BASIS_MAX_N {
        return Err(Error::Domain(format!("basis sweep supports n <= {BASIS_MAX_N}, got {n}")));
    }
    let g = HypercubeGraph::new(n)?;
    let basis: Vec<PositionVector<T>> = g.vertices().map(|s| hadamard_vector(n, s)).collect::<Result<_>>()?;

    let mut gram = T::zero();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let expect = if i == j { T::one() } else { T::zero() };
            let ip = bi.inner(bj);
            gram = gram.max((ip - Complex::new(expect, T::zero())).norm_sqr().sqrt());
        }
    }

    let mut eigen = T::zero();
    for (s, b) in g.vertices().zip(&basis) {
        for k in 0..=n {
            let eps: T = real(s.sign_at(k) as f64);
            eigen = eigen.max(apply_shift(k, b)?.max_abs_diff(&b.scaled(Complex::new(eps, T::zero()))));
        }
    }

    let xi = fixed_point::<T>(n)?;
    let mut fixed = T::zero();
    for k in 0..=n {
        fixed = fixed.max(apply_shift(k, &xi)?.max_abs_diff(&xi));
    }

    let (gram, eigen, fixed) = (to_f64(gram), to_f64(eigen), to_f64(fixed));
    Ok(BasisReport {
        n,
        gram_deviation: gram,
        eigen_deviation: eigen,
        fixed_point_deviation: fixed,
        tolerance,
        pass: gram <= tolerance && eigen <= tolerance && fixed <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type V = PositionVector<f64>;

    fn v(e: &[usize]) -> VertexIndex {
        VertexIndex::from_elements(e)
    }

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn random_vector(n: usize, rng: &mut impl Rng) -> V {
        let amp =
            (0..1 << (n + 1)).map(|_| Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        V::from_amplitudes(n, amp).unwrap()
    }

    /// Naive O(N²) application of the forward kernel.
    fn naive_forward(x: &V) -> V {
        let n = x.n();
        let big_n = x.len();
        let scale = 1.0 / (big_n as f64).sqrt();
        let amp = (0..big_n)
            .map(|t| {
                (0..big_n).fold(Complex::new(0.0, 0.0), |acc, s| {
                    let sign = if (s & !t).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    acc + x.amplitudes()[s] * (sign * scale)
                })
            })
            .collect();
        V::from_amplitudes(n, amp).unwrap()
    }

    #[test]
    fn annihilation_examples() {
        let out = apply_annihilation(0, &V::basis(1, v(&[0])).unwrap()).unwrap();
        assert_eq!(out, V::basis(1, v(&[])).unwrap());
        let out = apply_annihilation(0, &V::basis(1, v(&[])).unwrap()).unwrap();
        assert_eq!(out.max_abs(), 0.0);
        let x = V::basis(2, v(&[0, 2])).unwrap().add(&V::basis(2, v(&[1])).unwrap());
        assert_eq!(apply_annihilation(2, &x).unwrap(), V::basis(2, v(&[0])).unwrap());
        assert!(matches!(apply_annihilation(2, &V::zeros(1).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn creation_examples() {
        let out = apply_creation(1, &V::basis(1, v(&[])).unwrap()).unwrap();
        assert_eq!(out, V::basis(1, v(&[1])).unwrap());
        let out = apply_creation(0, &V::basis(1, v(&[0])).unwrap()).unwrap();
        assert_eq!(out.max_abs(), 0.0);
        assert!(apply_creation(5, &V::zeros(3).unwrap()).is_err());
    }

    #[test]
    fn creation_is_adjoint_of_annihilation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = random_vector(3, &mut rng);
            let y = random_vector(3, &mut rng);
            for k in 0..=3 {
                let lhs = apply_creation(k, &x).unwrap().inner(&y);
                let rhs = x.inner(&apply_annihilation(k, &y).unwrap());
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn shift_examples() {
        let out = apply_shift(1, &V::basis(1, v(&[])).unwrap()).unwrap();
        assert_eq!(out, V::basis(1, v(&[1])).unwrap());

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let x = V::basis(2, v(&[0])).unwrap().add(&V::basis(2, v(&[1, 2])).unwrap()).scaled(c(r));
        let expect = V::basis(2, v(&[0, 1])).unwrap().add(&V::basis(2, v(&[2])).unwrap()).scaled(c(r));
        assert!(apply_shift(1, &x).unwrap().max_abs_diff(&expect) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_vector(4, &mut rng);
        for k in 0..=4 {
            let twice = apply_shift(k, &apply_shift(k, &x).unwrap()).unwrap();
            assert_eq!(twice, x);
            // a permutation of amplitudes preserves the multiset of moduli exactly
            let mut a: Vec<f64> = apply_shift(k, &x).unwrap().amplitudes().iter().map(|z| z.norm_sqr()).collect();
            let mut b: Vec<f64> = x.amplitudes().iter().map(|z| z.norm_sqr()).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn shift_parallel_path_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = random_vector(14, &mut rng);
        for k in [0, 7, 14] {
            let out = apply_shift(k, &x).unwrap();
            for s in 0..x.len() {
                assert_eq!(out.amplitudes()[s], x.amplitudes()[s ^ (1 << k)]);
            }
        }
    }

    #[test]
    fn car_small() {
        let r = verify_car::<f64>(1).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.pass);
        let r = verify_car::<f64>(4).unwrap();
        assert!(r.pass);
        assert_eq!(r.relations.len(), 6);
        assert!(verify_car::<f64>(9).is_err());
    }

    #[test]
    fn car_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = random_vector(3, &mut rng);
        for k in 0..=3 {
            let ak = apply_annihilation(k, &x).unwrap();
            let ck = apply_creation(k, &x).unwrap();
            assert_eq!(apply_annihilation(k, &ak).unwrap().max_abs(), 0.0);
            assert_eq!(apply_creation(k, &ck).unwrap().max_abs(), 0.0);
            let anti = apply_annihilation(k, &ck).unwrap().add(&apply_creation(k, &ak).unwrap());
            assert!(anti.max_abs_diff(&x) < 1e-15);
        }
    }

    #[test]
    fn hadamard_examples() {
        let xi = hadamard_vector::<f64>(1, v(&[0, 1])).unwrap();
        let expect = V::from_amplitudes(1, vec![c(0.5); 4]).unwrap();
        assert!(xi.max_abs_diff(&expect) < 1e-15);

        let h = hadamard_vector::<f64>(1, v(&[])).unwrap();
        let expect = V::from_amplitudes(1, vec![c(0.5), c(-0.5), c(-0.5), c(0.5)]).unwrap();
        assert!(h.max_abs_diff(&expect) < 1e-15);

        let n = 3;
        let scale = 1.0 / 16f64.sqrt();
        for s in 0..16 {
            for t in 0..16 {
                let z = V::basis(n, VertexIndex(s)).unwrap();
                let zh = hadamard_vector::<f64>(n, VertexIndex(t)).unwrap();
                let sign = crate::hypercube::diff_parity_sign(VertexIndex(s), VertexIndex(t)) as f64;
                assert!((z.inner(&zh) - c(sign * scale)).norm() < 1e-15);
            }
        }
        assert!(hadamard_vector::<f64>(1, VertexIndex(4)).is_err());
    }

    #[test]
    fn wht_examples() {
        for n in 0..=5 {
            let g = HypercubeGraph::new(n).unwrap();
            for gamma in g.vertices() {
                let zh = hadamard_vector::<f64>(n, gamma).unwrap();
                let coords = signed_wht(&zh, Direction::Forward);
                assert!(coords.max_abs_diff(&V::basis(n, gamma).unwrap()) < 1e-12);

                let z = V::basis(n, gamma).unwrap();
                assert!(signed_wht(&z, Direction::Forward).max_abs_diff(&naive_forward(&z)) < 1e-12);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let x = random_vector(6, &mut rng);
            let back = signed_wht(&signed_wht(&x, Direction::Forward), Direction::Inverse);
            assert!(back.max_abs_diff(&x) < 1e-12);
        }
    }

    #[test]
    fn a_operator_examples() {
        let n = 3;
        let g = HypercubeGraph::new(n).unwrap();
        let vac = V::basis(n, VertexIndex::EMPTY).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = random_vector(n, &mut rng);
        for s in g.vertices() {
            let lhs = apply_a(s, &vac).unwrap();
            let rhs = hadamard_vector::<f64>(n, s).unwrap().scaled(c(16f64.sqrt()));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);

            let ax = apply_a(s, &x).unwrap();
            for k in 0..=n {
                let eps = s.sign_at(k) as f64;
                assert!(apply_shift(k, &ax).unwrap().max_abs_diff(&ax.scaled(c(eps))) < 1e-12);
            }
        }

        let g2 = HypercubeGraph::new(2).unwrap();
        let y = random_vector(2, &mut rng);
        for s in g2.vertices() {
            for t in g2.vertices().filter(|&t| t != s) {
                let out = apply_a(s, &apply_a(t, &y).unwrap()).unwrap();
                assert!(out.max_abs() < 1e-12);
            }
        }
        assert!(apply_a(VertexIndex(64), &y).is_err());
    }

    #[test]
    fn basis_suite_passes() {
        for n in 0..=5 {
            let r = verify_hadamard_basis::<f64>(n, 1e-12).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn f32_transform_round_trip() {
        let x = hadamard_vector::<f32>(4, VertexIndex(9)).unwrap();
        let coords = signed_wht(&x, Direction::Forward);
        assert!(coords.max_abs_diff(&PositionVector::<f32>::basis(4, VertexIndex(9)).unwrap()) < 1e-5);
    }
}
