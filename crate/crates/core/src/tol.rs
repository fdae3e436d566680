//! Default numerical tolerances. Every public check also accepts an override.

/// Equality of amplitudes produced by permutations, signs and ±1 sums.
pub const AMPLITUDE: f64 = 1e-12;

/// Defining relations of coin systems; matrix products square rounding error.
pub const VALIDATION: f64 = 1e-10;

/// Residual `‖U v - b v‖` accepted for a chosen eigenvector.
pub const EIGENVECTOR: f64 = 1e-10;

/// Complex distance under which two eigenvalues are treated as equal.
pub const EIGEN_GROUPING: f64 = 1e-9;

/// Allowed deviation of a probability distribution's total mass from one.
pub const NORMALIZATION: f64 = 1e-10;

/// Largest residual imaginary part tolerated in the limit formula.
pub const IMAGINARY_RESIDUE: f64 = 1e-10;
