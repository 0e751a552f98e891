//! Numeric tolerances shared across the crate.
//!
//! Collected in one place so library code and tests agree on what "equal"
//! means at each precision tier. Functions that take an explicit tolerance
//! parameter default to the constants here.

/// Closed-form f64 algebra: state equality, unitarity residues, dual-route
/// correlation agreement. A handful of arithmetic operations on O(1) values
/// stays comfortably inside this.
pub const EXACT: f64 = 1e-10;

/// Maximum entry-wise deviation from self-adjointness an operator may carry
/// before expectation values refuse it.
pub const HERMITICITY: f64 = 1e-10;

/// Singular values at or below this count as zero when ranking a state.
pub const SCHMIDT_CUTOFF: f64 = 1e-10;

/// Squared norms below this are treated as the zero vector; normalizing
/// such a state is an error rather than an overflow.
pub const ZERO_NORM: f64 = f64::MIN_POSITIVE;

/// Amplitudes above this must carry mode provenance tags.
pub const OCCUPANCY: f64 = 1e-12;

/// Angle convergence for the CHSH setting-search refinement stage.
pub const ANGLE_REFINE: f64 = 1e-6;

/// An intensity quad summing below this cannot normalize a correlation.
pub const INTENSITY_FLOOR: f64 = 1e-12;

/// Slack allowed on the product-state bound |S| <= 2 after refinement.
pub const CLASSICAL_BOUND_SLACK: f64 = 1e-6;

/// Slack allowed on the global cap |S| <= 2*sqrt(2).
pub const S_CAP_SLACK: f64 = 1e-9;

/// Statistical null checks must sit within this many standard errors of zero.
pub const NULL_SIGMA: f64 = 5.0;
