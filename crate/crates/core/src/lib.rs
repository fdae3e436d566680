//! Discrete-time coined quantum walks on the `(n+1)`-dimensional hypercube
//! whose shift operators are the quantum Bernoulli noise combinations
//! `∂_k* + ∂_k`.
//!
//! The crate is organized bottom-up:
//!
//! - [`hypercube`]: the powerset hypercube and its vertex encoding.
//! - [`fock`]: the truncated position space, annihilation/creation/shift
//!   operators, the Hadamard-like basis and the signed Walsh-Hadamard transform.
//! - [`coin`]: coin operator systems, their unitary/projection factorization,
//!   weighted sums and spectra.
//! - [`walk`]: direct evolution, closed-form distributions, time averages,
//!   limit distributions and stationarity checks.
//! - [`io`]: JSON and CSV file formats.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.
//!
//! ```
//! use qbnwalk::{builtin_example, distribution, evolve, hadamard_product_state, CVector, VertexIndex};
//! use num_complex::Complex;
//!
//! let coins = builtin_example::<f64>("3.1").unwrap();
//! let u = CVector::from_column_slice(&[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]);
//! let start = hadamard_product_state(1, VertexIndex(3), &u).unwrap();
//! let later = evolve(&start, &coins, 16).unwrap();
//! assert!(distribution(&later).probs().iter().all(|p| (p - 0.25).abs() < 1e-12));
//! ```

pub mod coin;
pub mod error;
pub mod fock;
pub mod hypercube;
pub mod io;
pub mod scalar;
pub mod tol;
pub mod walk;

pub use coin::{
    builtin_example, default_partition, haar_unitary, BuiltinExample, CoinValidation, EigenDecomposition, EigenPair,
};
pub use error::{Error, Result};
pub use fock::{
    apply_a, apply_annihilation, apply_creation, apply_shift, fixed_point, hadamard_vector, signed_wht, verify_car,
    verify_car_with_tol, verify_hadamard_basis, BasisReport, CarReport, Direction,
};
pub use hypercube::{diff_parity_sign, HypercubeGraph, VertexIndex, MAX_N};
pub use scalar::{CMatrix, CVector, Real};
pub use walk::{
    averaged_distribution, averaged_ladder, build_eigenmix_state, decompose, distribution, distribution_closed_form,
    evolve, geometric_ladder, hadamard_product_state, limit_distribution, limit_distribution_with, product_state,
    stationary_check, step, ClosedForm, ComponentChoice, Eigenmix, Evolution, LimitOptions, PowerMethod,
    ResolvedComponent, StationaryReport, MAX_STEPS,
};

pub type PositionVector = fock::PositionVector<f64>;
pub type CoinOperatorSystem = coin::CoinOperatorSystem<f64>;
pub type ResolutionOfIdentity = coin::ResolutionOfIdentity<f64>;
pub type WeightedCoinSum = coin::WeightedCoinSum<f64>;
pub type WalkState = walk::WalkState<f64>;
pub type ComponentDecomposition = walk::ComponentDecomposition<f64>;
pub type Distribution = walk::Distribution<f64>;
pub type EigenComponentSpec = walk::EigenComponentSpec<f64>;

pub type PositionVectorF32 = fock::PositionVector<f32>;
pub type CoinOperatorSystemF32 = coin::CoinOperatorSystem<f32>;
pub type WalkStateF32 = walk::WalkState<f32>;
pub type DistributionF32 = walk::Distribution<f32>;
