//! Two-mode complex algebra: single-beam Jones vectors, provenance tags,
//! two-path composite states and Hermitian operators on them.

mod composite;
mod jones;
mod mode;
mod operator;

pub use composite::{tensor, CompositeState, TermTags};
pub(crate) use composite::basis_index as composite_basis_index;
#[cfg(test)]
pub(crate) use composite::scrambled_state;
pub use jones::{JonesVector, Polarization};
pub use mode::{Frequency, ModeTag, PathLabel, Source};
pub use operator::{Operator, Support};

use num_complex::Complex64;
use thiserror::Error;

/// Errors from state and operator construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    /// Normalization was requested for a numerically zero state.
    #[error("cannot normalize a state with zero norm")]
    ZeroNorm,
    /// Two beams were combined in a way their mode tags forbid.
    #[error("mode tag conflict: {0}")]
    TagConflict(String),
    /// An expectation value was requested for a non-Hermitian operator.
    #[error("operator is not Hermitian (max entry deviation {deviation:.2e})")]
    NonHermitian { deviation: f64 },
}

/// Distance between two amplitude slices after aligning a global phase.
///
/// The phase is chosen by rotating `b` so that its entry at the index of the
/// largest-magnitude amplitude of `a` matches the phase of `a` there. Two
/// states that are equal up to a global phase come out at (numerically) zero
/// regardless of that phase.
pub fn global_phase_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "amplitude slices must have equal length");
    let mut anchor = 0;
    for (i, amp) in a.iter().enumerate() {
        if amp.norm_sqr() > a[anchor].norm_sqr() {
            anchor = i;
        }
    }
    let rot = if a[anchor].norm_sqr() > 0.0 && b[anchor].norm_sqr() > 0.0 {
        Complex64::from_polar(1.0, a[anchor].arg() - b[anchor].arg())
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - rot * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
