//! Independent oracles shared by the integration tests. Nothing here calls
//! the fast paths it is used to check.

#![allow(dead_code)]

use num_complex::Complex;
use qbnwalk::{CMatrix, CVector, CoinOperatorSystem, PositionVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub type C = Complex<f64>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

/// Forward signed transform by the O(N²) double loop over the kernel
/// `(-1)^{#(σ∖τ)} 2^{-(n+1)/2}`.
pub fn naive_signed_wht(v: &PositionVector) -> PositionVector {
    let amp = (0..v.len()).map(|tau| naive_signed_wht_entry(v, tau)).collect();
    PositionVector::from_amplitudes(v.n(), amp).unwrap()
}

/// Entry `tau` of the naive transform.
pub fn naive_signed_wht_entry(v: &PositionVector, tau: usize) -> C {
    let big_n = v.len();
    let scale = 1.0 / (big_n as f64).sqrt();
    let mut acc = c(0.0, 0.0);
    for sigma in 0..big_n {
        let k = (sigma & !tau).count_ones();
        let sign = if k.is_multiple_of(2) { scale } else { -scale };
        acc += v.amplitudes()[sigma] * sign;
    }
    acc
}

/// Matrix of the bit flip `Z_σ ↦ Z_{σ△{k}}` on `2^(n+1)` vertices.
pub fn shift_matrix(n: usize, k: usize) -> CMatrix<f64> {
    let big_n = 1usize << (n + 1);
    let mut m = CMatrix::zeros(big_n, big_n);
    for s in 0..big_n {
        m[(s ^ (1 << k), s)] = c(1.0, 0.0);
    }
    m
}

/// Dense `W = Σ_k S_k ⊗ C_k`, rows and columns indexed by `σ·d + j`.
pub fn dense_walk_matrix(system: &CoinOperatorSystem) -> CMatrix<f64> {
    let n = system.n();
    let big_n = 1usize << (n + 1);
    let d = system.dim();
    let mut w = CMatrix::zeros(big_n * d, big_n * d);
    for (k, coin) in system.coins().iter().enumerate() {
        w += shift_matrix(n, k).kronecker(coin);
    }
    w
}

pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> CVector<f64> {
    let v = CVector::from_fn(dim, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let norm = v.norm();
    v.unscale(norm)
}

pub fn random_position(n: usize, rng: &mut impl Rng) -> PositionVector {
    let amp = (0..1 << (n + 1)).map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    PositionVector::from_amplitudes(n, amp).unwrap()
}

/// `P(σ) = Σ_j |Φ(σ,j)|²` recomputed from raw amplitudes.
pub fn probabilities(amps: &[C], dim: usize) -> Vec<f64> {
    amps.chunks(dim).map(|f| f.iter().map(|z| z.norm_sqr()).sum()).collect()
}

pub fn report(id: &str, name: &str, pass: bool, detail: &str) {
    println!("[{}] {id} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}
