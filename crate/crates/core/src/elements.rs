//! Transfer maps for the individual bench elements.
//!
//! Phase conventions, fixed once for the whole crate:
//!
//! * every reflection (at the polarizing splitter, the ordinary splitter, a
//!   mirror, or the reflecting arm of a dichroic combiner) multiplies the
//!   amplitude by `i`;
//! * transmission adds no phase;
//! * the half-wave plate at 45 degrees is the bare mode swap |0> <-> |1>.
//!
//! Every element except the polarizer conserves energy: the squared norms of
//! its outputs sum to the squared norm of its inputs.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{Frequency, JonesVector, Polarization};

/// Phase factor picked up on any reflection.
pub const REFLECTION_PHASE: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    /// A dichroic combiner received two beams with the same carrier tag.
    #[error("dichroic combiner received two beams tagged {0:?}")]
    FrequencyCollision(Frequency),
}

/// The two outputs of a splitting element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub reflected: JonesVector,
    pub transmitted: JonesVector,
}

/// Polarizing beam splitter: reflects the vertical component (phase `i`),
/// transmits the horizontal component unchanged.
pub fn pbs_split(input: &JonesVector) -> Split {
    Split {
        reflected: JonesVector::new(
            REFLECTION_PHASE * input.component(Polarization::V),
            Complex64::ZERO,
        ),
        transmitted: JonesVector::new(Complex64::ZERO, input.component(Polarization::H)),
    }
}

/// Ordinary 50/50 splitter, polarization independent: `i/sqrt(2)` on the
/// reflected output, `1/sqrt(2)` on the transmitted one.
pub fn bs_split(input: &JonesVector) -> Split {
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    Split {
        reflected: input.scaled(REFLECTION_PHASE * inv),
        transmitted: input.scaled(Complex64::new(inv, 0.0)),
    }
}

/// Lossless mirror: one reflection, global phase `i`.
pub fn mirror_apply(input: &JonesVector) -> JonesVector {
    input.scaled(REFLECTION_PHASE)
}

/// Half-wave plate at 45 degrees: swaps |0> and |1>.
pub fn hwp_apply(input: &JonesVector) -> JonesVector {
    JonesVector::new(
        input.component(Polarization::H),
        input.component(Polarization::V),
    )
}

/// Ideal linear polarizer along `axis`. The output keeps the projected
/// amplitude unnormalized, so for a unit input its recorded intensity is the
/// transmitted fraction (Malus law).
pub fn polarizer_apply(input: &JonesVector, axis: Polarization) -> JonesVector {
    match axis {
        Polarization::V => JonesVector::new(input.component(Polarization::V), Complex64::ZERO),
        Polarization::H => JonesVector::new(Complex64::ZERO, input.component(Polarization::H)),
    }
}

/// A beam together with its carrier-frequency tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaggedBeam {
    pub frequency: Frequency,
    pub jones: JonesVector,
}

impl TaggedBeam {
    pub fn new(frequency: Frequency, jones: JonesVector) -> Self {
        Self { frequency, jones }
    }
}

/// Field in one output path: the co-propagating components of the two
/// carriers, which never interfere with each other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathField {
    /// `Omega1` component.
    pub red: JonesVector,
    /// `Omega2` component.
    pub blue: JonesVector,
}

impl PathField {
    pub fn component(&self, frequency: Frequency) -> &JonesVector {
        match frequency {
            Frequency::Omega1 => &self.red,
            Frequency::Omega2 => &self.blue,
        }
    }

    /// Total squared norm over both carriers.
    pub fn norm_sqr(&self) -> f64 {
        self.red.norm_sqr() + self.blue.norm_sqr()
    }
}

/// Dichroic combiner: merges two beams of distinct carrier frequency into one
/// path without ever mixing them. The arm whose carrier equals `reflects`
/// turns at the coating and picks up the reflection phase `i`; the other arm
/// passes straight through.
pub fn dichroic_combine(
    x: TaggedBeam,
    y: TaggedBeam,
    reflects: Frequency,
) -> Result<PathField, ElementError> {
    if x.frequency == y.frequency {
        return Err(ElementError::FrequencyCollision(x.frequency));
    }
    let routed = |beam: &TaggedBeam| {
        if beam.frequency == reflects {
            beam.jones.scaled(REFLECTION_PHASE)
        } else {
            beam.jones
        }
    };
    let (red, blue) = if x.frequency == Frequency::Omega1 {
        (routed(&x), routed(&y))
    } else {
        (routed(&y), routed(&x))
    };
    Ok(PathField { red, blue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag() -> JonesVector {
        JonesVector::symmetric()
    }

    #[test]
    fn pbs_routes_v_up_with_phase_and_h_straight() {
        let split = pbs_split(&diag());
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        assert!((split.reflected.component(Polarization::V) - c(0.0, inv)).norm() < 1e-15);
        assert_eq!(split.reflected.component(Polarization::H), Complex64::ZERO);
        assert!((split.transmitted.component(Polarization::H) - c(inv, 0.0)).norm() < 1e-15);
        assert_eq!(split.transmitted.component(Polarization::V), Complex64::ZERO);
    }

    #[test]
    fn bs_splits_evenly_for_any_polarization() {
        let input = JonesVector::new(c(0.3, 0.4), c(-0.5, 0.2));
        let split = bs_split(&input);
        assert!((split.reflected.norm_sqr() - input.norm_sqr() / 2.0).abs() < 1e-14);
        assert!((split.transmitted.norm_sqr() - input.norm_sqr() / 2.0).abs() < 1e-14);
        // Reflection carries the quarter-turn phase relative to transmission.
        let ratio = split.reflected.component(Polarization::V)
            / split.transmitted.component(Polarization::V);
        assert!((ratio - REFLECTION_PHASE).norm() < 1e-14);
    }

    #[test]
    fn hwp_swaps_modes_and_is_an_involution() {
        let input = JonesVector::new(c(0.6, 0.1), c(-0.2, 0.7));
        let swapped = hwp_apply(&input);
        assert_eq!(swapped.component(Polarization::V), input.component(Polarization::H));
        assert_eq!(swapped.component(Polarization::H), input.component(Polarization::V));
        assert_eq!(hwp_apply(&swapped), input);
    }

    #[test]
    fn double_mirror_is_identity_up_to_global_phase() {
        let input = JonesVector::new(c(0.6, 0.1), c(-0.2, 0.7));
        let twice = mirror_apply(&mirror_apply(&input));
        assert!(twice.approx_eq_global_phase(&input, 1e-14));
        // ... and is exactly the input negated.
        assert!((twice.component(Polarization::V) + input.component(Polarization::V)).norm() < 1e-15);
    }

    #[test]
    fn polarizer_passes_half_of_a_diagonal_beam() {
        let out = polarizer_apply(&diag(), Polarization::V);
        assert!((out.intensity() - 0.5).abs() < 1e-15);
        assert_eq!(out.component(Polarization::H), Complex64::ZERO);
    }

    #[test]
    fn polarizer_blocks_the_orthogonal_beam() {
        let out = polarizer_apply(&JonesVector::polarized(Polarization::H), Polarization::V);
        assert_eq!(out.intensity(), 0.0);
    }

    #[test]
    fn crossed_polarizers_extinguish() {
        let after_v = polarizer_apply(&diag(), Polarization::V);
        let after_h = polarizer_apply(&after_v, Polarization::H);
        assert_eq!(after_h.intensity(), 0.0);
    }

    #[test]
    fn dichroic_keeps_carriers_separate() {
        let red = TaggedBeam::new(Frequency::Omega1, JonesVector::polarized(Polarization::V));
        let blue = TaggedBeam::new(Frequency::Omega2, JonesVector::polarized(Polarization::H));
        let field = dichroic_combine(red, blue, Frequency::Omega2).unwrap();
        assert_eq!(field.red, JonesVector::polarized(Polarization::V));
        // The blue arm reflected: same mode occupancy, quarter-turn phase.
        assert!((field.blue.component(Polarization::H) - c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(field.blue.component(Polarization::V), Complex64::ZERO);
    }

    #[test]
    fn dichroic_accepts_an_empty_arm() {
        let red = TaggedBeam::new(Frequency::Omega1, JonesVector::polarized(Polarization::H));
        let blue = TaggedBeam::new(Frequency::Omega2, JonesVector::zero());
        let field = dichroic_combine(red, blue, Frequency::Omega1).unwrap();
        assert_eq!(field.blue, JonesVector::zero());
        assert!((field.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dichroic_rejects_equal_carriers() {
        let one = TaggedBeam::new(Frequency::Omega1, JonesVector::polarized(Polarization::V));
        let two = TaggedBeam::new(Frequency::Omega1, JonesVector::polarized(Polarization::H));
        assert_eq!(
            dichroic_combine(one, two, Frequency::Omega1),
            Err(ElementError::FrequencyCollision(Frequency::Omega1))
        );
    }

    proptest! {
        #[test]
        fn energy_is_conserved_by_lossless_elements(
            re_v in -10.0f64..10.0, im_v in -10.0f64..10.0,
            re_h in -10.0f64..10.0, im_h in -10.0f64..10.0,
        ) {
            let input = JonesVector::new(c(re_v, im_v), c(re_h, im_h));
            let n2 = input.norm_sqr();

            let pbs = pbs_split(&input);
            prop_assert!((pbs.reflected.norm_sqr() + pbs.transmitted.norm_sqr() - n2).abs() < 1e-12);

            let bs = bs_split(&input);
            prop_assert!((bs.reflected.norm_sqr() + bs.transmitted.norm_sqr() - n2).abs() < 1e-12);

            prop_assert!((mirror_apply(&input).norm_sqr() - n2).abs() < 1e-12);
            prop_assert!((hwp_apply(&input).norm_sqr() - n2).abs() < 1e-12);

            let field = dichroic_combine(
                TaggedBeam::new(Frequency::Omega1, input),
                TaggedBeam::new(Frequency::Omega2, hwp_apply(&input)),
                Frequency::Omega1,
            ).unwrap();
            prop_assert!((field.norm_sqr() - 2.0 * n2).abs() < 1e-11);
        }

        #[test]
        fn polarizer_never_amplifies(
            re_v in -10.0f64..10.0, im_v in -10.0f64..10.0,
            re_h in -10.0f64..10.0, im_h in -10.0f64..10.0,
        ) {
            let input = JonesVector::new(c(re_v, im_v), c(re_h, im_h));
            for axis in Polarization::BOTH {
                let out = polarizer_apply(&input, axis);
                prop_assert!(out.intensity() <= input.norm_sqr() + 1e-12);
                prop_assert_eq!(out.component(axis.flipped()), Complex64::ZERO);
            }
        }
    }
}
