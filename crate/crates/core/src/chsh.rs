//! Phase-shift analyzers and the CHSH sum.
//!
//! Each path feeds an analyzer that interferes the two polarization modes
//! with a tunable relative phase. The analyzer observable at angle `theta`
//! has the two-by-two block `[[0, e^{-i theta}], [e^{i theta}, 0]]`, with
//! eigenvalues plus and minus one; its eigenprojectors double as the
//! transmitted-intensity model, so every correlation here can be computed
//! both as an operator expectation and as a normalized intensity ratio.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{CompositeState, Operator};
use crate::circuit::ProductStateParams;
use crate::tol;

type Mat2 = [[Complex64; 2]; 2];

/// Strict-improvement margin for the deterministic setting search.
const IMPROVEMENT: f64 = 1e-12;

/// Analyzer outcome label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

#[derive(Debug, Error)]
pub enum ChshError {
    #[error("intensity quad sums to {total:.3e}, too small to normalize")]
    DegenerateQuad { total: f64 },
}

/// Eigenprojector of the analyzer at `theta` onto the given outcome:
/// `(1/2) [[1, s e^{-i theta}], [s e^{i theta}, 1]]` with `s = +-1`.
pub fn sigma_projector(theta: f64, outcome: Outcome) -> Mat2 {
    let s = match outcome {
        Outcome::Plus => 1.0,
        Outcome::Minus => -1.0,
    };
    let off = Complex64::cis(theta) * s;
    [
        [Complex64::new(0.5, 0.0), 0.5 * off.conj()],
        [0.5 * off, Complex64::new(0.5, 0.0)],
    ]
}

/// Analyzer observable at `theta`: difference of the two eigenprojectors.
pub fn sigma_observable(theta: f64) -> Mat2 {
    let off = Complex64::cis(theta);
    [[Complex64::ZERO, off.conj()], [off, Complex64::ZERO]]
}

/// One joint analyzer setting: `theta` on path a, `phi` on path b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSetting {
    pub theta: f64,
    pub phi: f64,
}

/// The four analyzer angles of a CHSH run: two per path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
}

impl ChshSettings {
    pub fn new(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> Self {
        assert!(
            theta1.is_finite() && phi1.is_finite() && theta2.is_finite() && phi2.is_finite(),
            "analyzer angles must be finite"
        );
        Self {
            theta1,
            phi1,
            theta2,
            phi2,
        }
    }

    /// The four setting pairs in the fixed order (1,1), (1,2), (2,1), (2,2).
    pub fn pairings(&self) -> [MeasurementSetting; 4] {
        [
            MeasurementSetting {
                theta: self.theta1,
                phi: self.phi1,
            },
            MeasurementSetting {
                theta: self.theta1,
                phi: self.phi2,
            },
            MeasurementSetting {
                theta: self.theta2,
                phi: self.phi1,
            },
            MeasurementSetting {
                theta: self.theta2,
                phi: self.phi2,
            },
        ]
    }
}

/// Which of the four correlations enters the CHSH sum with a minus sign.
/// Both variants reach the same maximum over settings; they only pair
/// naturally with different analyzer conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignPattern {
    /// `E11 + E12 - E21 + E22`.
    #[default]
    PhaseSum,
    /// `E11 - E12 + E21 + E22`.
    AngleDifference,
}

impl SignPattern {
    /// Signs applied to the correlations in `pairings` order.
    pub fn signs(self) -> [f64; 4] {
        match self {
            SignPattern::PhaseSum => [1.0, 1.0, -1.0, 1.0],
            SignPattern::AngleDifference => [1.0, -1.0, 1.0, 1.0],
        }
    }
}

/// A full CHSH evaluation: the settings used, the four correlations in
/// `pairings` order, and the signed sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshResult {
    pub settings: ChshSettings,
    pub correlations: [f64; 4],
    pub s_value: f64,
    pub violates_bound: bool,
    pub pattern: SignPattern,
}

/// The four joint analyzer intensities at one setting pair, in units where a
/// unit-intensity input splits across the quad with total two. For the
/// parallel-polarized Bell-analog state the `pp` entry follows the fringe
/// law `(1/2)(1 + cos(theta + phi))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityQuad {
    /// Both analyzers on their plus port.
    pub pp: f64,
    /// Both on minus.
    pub mm: f64,
    /// Path a minus, path b plus.
    pub mp: f64,
    /// Path a plus, path b minus.
    pub pm: f64,
}

impl IntensityQuad {
    pub fn total(&self) -> f64 {
        self.pp + self.mm + self.mp + self.pm
    }

    /// Correlation as the normalized intensity ratio
    /// `(pp + mm - mp - pm) / total`.
    pub fn correlation(&self) -> Result<f64, ChshError> {
        let total = self.total();
        if total < tol::INTENSITY_FLOOR {
            return Err(ChshError::DegenerateQuad { total });
        }
        Ok((self.pp + self.mm - self.mp - self.pm) / total)
    }
}

fn joint_projector(theta: f64, outcome_a: Outcome, phi: f64, outcome_b: Outcome) -> Operator {
    &Operator::on_path_a(sigma_projector(theta, outcome_a))
        * &Operator::on_path_b(sigma_projector(phi, outcome_b))
}

/// Joint analyzer intensities for `state` at one setting pair.
pub fn intensity_quad(state: &CompositeState, theta: f64, phi: f64) -> IntensityQuad {
    let value = |oa, ob| {
        2.0 * state
            .expectation(&joint_projector(theta, oa, phi, ob))
            .expect("joint projectors are Hermitian")
    };
    IntensityQuad {
        pp: value(Outcome::Plus, Outcome::Plus),
        mm: value(Outcome::Minus, Outcome::Minus),
        mp: value(Outcome::Minus, Outcome::Plus),
        pm: value(Outcome::Plus, Outcome::Minus),
    }
}

/// Correlation as an operator expectation value.
pub fn correlation(state: &CompositeState, theta: f64, phi: f64) -> f64 {
    let joint =
        &Operator::on_path_a(sigma_observable(theta)) * &Operator::on_path_b(sigma_observable(phi));
    state
        .expectation(&joint)
        .expect("product of commuting analyzer observables is Hermitian")
}

/// Correlation recovered from the four joint intensities. Agrees with
/// [`correlation`] for every normalized state.
pub fn correlation_from_intensities(
    state: &CompositeState,
    theta: f64,
    phi: f64,
) -> Result<f64, ChshError> {
    intensity_quad(state, theta, phi).correlation()
}

fn assemble(
    settings: ChshSettings,
    correlations: [f64; 4],
    pattern: SignPattern,
) -> ChshResult {
    let signs = pattern.signs();
    let s_value: f64 = signs
        .iter()
        .zip(correlations.iter())
        .map(|(s, e)| s * e)
        .sum();
    ChshResult {
        settings,
        correlations,
        s_value,
        violates_bound: s_value.abs() > 2.0 + tol::CLASSICAL_BOUND_SLACK,
        pattern,
    }
}

/// Evaluates the CHSH sum for `state` at the given settings.
pub fn chsh_s(state: &CompositeState, settings: &ChshSettings, pattern: SignPattern) -> ChshResult {
    let correlations = settings
        .pairings()
        .map(|pair| correlation(state, pair.theta, pair.phi));
    assemble(*settings, correlations, pattern)
}

/// Closed-form correlation of the two-beam product state: the expectation
/// factorizes into `sin(2 alpha) cos(beta - theta) sin(2 gamma) cos(delta - phi)`,
/// so its magnitude never exceeds one and the CHSH sum stays within two.
pub fn product_state_correlation_closed_form(
    params: &ProductStateParams,
    theta: f64,
    phi: f64,
) -> f64 {
    (2.0 * params.alpha).sin()
        * (params.beta - theta).cos()
        * (2.0 * params.gamma).sin()
        * (params.delta - phi).cos()
}

/// Deterministic search for the settings maximizing `|S|`.
///
/// Stage one scans a `grid x grid` lattice of analyzer angles (step
/// `2 pi / grid`) using a precomputed correlation table, keeping the
/// lexicographically first maximizer. Stage two refines by coordinate
/// descent, shrinking the step until it drops below
/// [`tol::ANGLE_REFINE`]. The result is exact on the lattice whenever the
/// optimum sits there, which holds for every state this crate synthesizes
/// once `grid` is a multiple of eight.
pub fn maximize_s(state: &CompositeState, grid: usize, pattern: SignPattern) -> ChshResult {
    assert!(grid >= 4, "angle grid too coarse to bracket an optimum");
    let step = std::f64::consts::TAU / grid as f64;
    let angles: Vec<f64> = (0..grid).map(|k| step * k as f64).collect();
    let table: Vec<Vec<f64>> = angles
        .iter()
        .map(|&theta| {
            angles
                .iter()
                .map(|&phi| correlation(state, theta, phi))
                .collect()
        })
        .collect();

    let signs = pattern.signs();
    // Angle indices in the order (theta1, theta2, phi1, phi2).
    let mut best_idx = [0usize; 4];
    let mut best_abs = f64::NEG_INFINITY;
    for i1 in 0..grid {
        for i2 in 0..grid {
            for j1 in 0..grid {
                for j2 in 0..grid {
                    let s = signs[0] * table[i1][j1]
                        + signs[1] * table[i1][j2]
                        + signs[2] * table[i2][j1]
                        + signs[3] * table[i2][j2];
                    if s.abs() > best_abs + IMPROVEMENT {
                        best_abs = s.abs();
                        best_idx = [i1, i2, j1, j2];
                    }
                }
            }
        }
    }

    // Coordinate-descent refinement around the lattice optimum.
    let mut a = best_idx.map(|k| angles[k]);
    let mut e = [
        [
            correlation(state, a[0], a[2]),
            correlation(state, a[0], a[3]),
        ],
        [
            correlation(state, a[1], a[2]),
            correlation(state, a[1], a[3]),
        ],
    ];
    let s_of = |e: &[[f64; 2]; 2]| {
        signs[0] * e[0][0] + signs[1] * e[0][1] + signs[2] * e[1][0] + signs[3] * e[1][1]
    };
    let mut best_abs = s_of(&e).abs();
    let mut h = step;
    while h > tol::ANGLE_REFINE {
        for _sweep in 0..64 {
            let mut improved = false;
            for c in 0..4 {
                for offset in [-1.0, -0.5, 0.5, 1.0] {
                    let trial_angle = a[c] + offset * h;
                    let mut trial = e;
                    if c < 2 {
                        trial[c][0] = correlation(state, trial_angle, a[2]);
                        trial[c][1] = correlation(state, trial_angle, a[3]);
                    } else {
                        trial[0][c - 2] = correlation(state, a[0], trial_angle);
                        trial[1][c - 2] = correlation(state, a[1], trial_angle);
                    }
                    let trial_abs = s_of(&trial).abs();
                    if trial_abs > best_abs + IMPROVEMENT {
                        a[c] = trial_angle;
                        e = trial;
                        best_abs = trial_abs;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        h *= 0.5;
    }

    assemble(
        ChshSettings::new(a[0], a[2], a[1], a[3]),
        [e[0][0], e[0][1], e[1][0], e[1][1]],
        pattern,
    )
}
