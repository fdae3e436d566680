//! Scalar types.
//!
//! Everything numeric in this crate is generic over [`Real`], which is
//! implemented for `f32` and `f64`. Amplitudes are `Complex<T>`.

use nalgebra as na;
use num_complex::Complex;
use num_traits as nt;

/// Gathers the traits needed for a real scalar driving complex amplitudes.
pub trait Real: Copy + nt::FloatConst + nt::FromPrimitive + na::RealField {}

impl Real for f32 {}
impl Real for f64 {}

/// Complex dense matrix on the coin space.
pub type CMatrix<T> = na::DMatrix<Complex<T>>;
/// Complex column vector on the coin space.
pub type CVector<T> = na::DVector<Complex<T>>;

/// Lossy conversion from an `f64` literal.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 is representable in every Real type")
}

/// Lossy conversion to `f64`, used for reporting and serialization.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    na::try_convert::<T, f64>(x).unwrap_or(f64::NAN)
}

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `2^{-m/2}`, the normalization of the Hadamard-like basis on `2^m` vertices.
#[inline]
pub(crate) fn inv_sqrt_pow2<T: Real>(m: u32) -> T {
    let half = m / 2;
    let base = T::one() / real::<T>((1u64 << half) as f64);
    if m % 2 == 1 {
        base * T::FRAC_1_SQRT_2()
    } else {
        base
    }
}

/// `tolerance`, raised to a small multiple of the machine epsilon of `T`
/// so that `f64` defaults stay usable for `f32`.
#[inline]
pub fn effective_tol<T: Real>(tolerance: f64) -> f64 {
    tolerance.max(1e3 * to_f64(T::default_epsilon()))
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(T::zero(), |m, (x, y)| m.max((*x - *y).norm_sqr().sqrt()))
}

/// Largest entrywise modulus of `a`.
pub fn max_abs<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, x| m.max(x.norm_sqr().sqrt()))
}

/// `max |(M* M - I)_{ij}|`.
pub fn unitarity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let d = m.nrows();
    let prod = m.adjoint() * m;
    max_abs_diff(&prod, &CMatrix::<T>::identity(d, d))
}
