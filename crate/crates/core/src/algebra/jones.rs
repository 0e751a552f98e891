use num_complex::Complex64;

use super::{global_phase_distance, AlgebraError};
use crate::tol;

/// Polarization basis label. `V` (vertical) doubles as the logical |0> mode,
/// `H` (horizontal) as |1>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    V,
    H,
}

impl Polarization {
    pub const BOTH: [Self; 2] = [Self::V, Self::H];

    /// Basis index: 0 for `V`, 1 for `H`.
    pub fn index(self) -> usize {
        match self {
            Self::V => 0,
            Self::H => 1,
        }
    }

    /// The orthogonal polarization.
    pub fn flipped(self) -> Self {
        match self {
            Self::V => Self::H,
            Self::H => Self::V,
        }
    }
}

/// Single-beam polarization state in the {|0> = V, |1> = H} basis.
///
/// `intensity` keeps the squared norm the beam had before the most recent
/// normalization, so attenuation (e.g. by a polarizer) stays visible after
/// the amplitudes themselves are rescaled to unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    components: [Complex64; 2],
    intensity: f64,
}

impl JonesVector {
    /// Beam with the given mode amplitudes; the recorded intensity is their
    /// squared norm as given.
    pub fn new(v: Complex64, h: Complex64) -> Self {
        assert!(
            v.re.is_finite() && v.im.is_finite() && h.re.is_finite() && h.im.is_finite(),
            "Jones amplitudes must be finite"
        );
        Self {
            components: [v, h],
            intensity: v.norm_sqr() + h.norm_sqr(),
        }
    }

    /// Unit-intensity beam polarized along `axis`.
    pub fn polarized(axis: Polarization) -> Self {
        let mut components = [Complex64::ZERO; 2];
        components[axis.index()] = Complex64::ONE;
        Self {
            components,
            intensity: 1.0,
        }
    }

    /// Unit-intensity equal superposition (|0> + |1>)/sqrt(2): the fixed
    /// deterministic stand-in for an unpolarized beam.
    pub fn symmetric() -> Self {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(c, c)
    }

    /// The empty beam.
    pub fn zero() -> Self {
        Self {
            components: [Complex64::ZERO; 2],
            intensity: 0.0,
        }
    }

    pub fn component(&self, p: Polarization) -> Complex64 {
        self.components[p.index()]
    }

    pub fn components(&self) -> [Complex64; 2] {
        self.components
    }

    /// Current squared norm of the amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.components[0].norm_sqr() + self.components[1].norm_sqr()
    }

    /// Squared norm the beam carried before normalization. Equal to
    /// [`norm_sqr`](Self::norm_sqr) until [`normalize`](Self::normalize)
    /// rescales the amplitudes.
    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    /// Every amplitude scaled by `factor`; intensity re-recorded.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::new(self.components[0] * factor, self.components[1] * factor)
    }

    /// Rescales to unit norm, recording the pre-normalization squared norm in
    /// `intensity`. A beam that is already unit within a few ulps is returned
    /// untouched, so a second call is an exact no-op.
    pub fn normalize(self) -> Result<Self, AlgebraError> {
        let n2 = self.norm_sqr();
        if n2 < tol::ZERO_NORM {
            return Err(AlgebraError::ZeroNorm);
        }
        if (n2 - 1.0).abs() <= 8.0 * f64::EPSILON {
            return Ok(self);
        }
        let inv = 1.0 / n2.sqrt();
        Ok(Self {
            components: [self.components[0] * inv, self.components[1] * inv],
            intensity: n2,
        })
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            <= tolerance
    }

    /// Equality up to one global phase on the whole beam.
    pub fn approx_eq_global_phase(&self, other: &Self, tolerance: f64) -> bool {
        global_phase_distance(&self.components, &other.components) <= tolerance
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalize_records_original_intensity() {
        let v = JonesVector::new(c(3.0, 0.0), c(0.0, 4.0)).normalize().unwrap();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-15);
        assert!((v.intensity() - 25.0).abs() < 1e-12);
        assert!((v.component(Polarization::V).re - 0.6).abs() < 1e-15);
        assert!((v.component(Polarization::H).im - 0.8).abs() < 1e-15);
    }

    #[test]
    fn normalize_is_idempotent() {
        let once = JonesVector::new(c(1.0, 1.0), c(0.5, -0.25)).normalize().unwrap();
        let twice = once.normalize().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn normalize_rejects_zero() {
        assert_eq!(JonesVector::zero().normalize(), Err(AlgebraError::ZeroNorm));
    }

    #[test]
    fn global_phase_equality_ignores_common_factor() {
        let v = JonesVector::new(c(0.6, 0.0), c(0.0, 0.8));
        let rotated = v.scaled(Complex64::from_polar(1.0, 1.234));
        assert!(v.approx_eq_global_phase(&rotated, 1e-12));
        assert!(!v.approx_eq(&rotated, 1e-12));
    }

    #[test]
    fn symmetric_beam_is_unit_and_balanced() {
        let v = JonesVector::symmetric();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-15);
        assert_eq!(v.component(Polarization::V), v.component(Polarization::H));
    }
}
