use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{
    global_phase_distance, AlgebraError, JonesVector, ModeTag, Operator, PathLabel, Source,
};
use crate::tol;

/// Provenance of one occupied composite basis term: the tagged mode sitting
/// in path a and the one sitting in path b. Every term pairs light from the
/// two distinct sources, one per path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermTags {
    pub path_a: ModeTag,
    pub path_b: ModeTag,
}

impl TermTags {
    pub fn new(path_a: ModeTag, path_b: ModeTag) -> Result<Self, AlgebraError> {
        if path_a.path != PathLabel::A || path_b.path != PathLabel::B {
            return Err(AlgebraError::TagConflict(format!(
                "term tags must cover path a and path b, got {:?} and {:?}",
                path_a.path, path_b.path
            )));
        }
        if path_a.source == path_b.source {
            return Err(AlgebraError::TagConflict(format!(
                "both paths tagged with source {:?}; a term pairs the two sources",
                path_a.source
            )));
        }
        Ok(Self { path_a, path_b })
    }

    /// The tag belonging to `source` in this term.
    pub fn for_source(&self, source: Source) -> ModeTag {
        if self.path_a.source == source {
            self.path_a
        } else {
            self.path_b
        }
    }
}

/// Normalized joint polarization state of the two output paths.
///
/// Amplitudes live on a 2x2 mode basis, flattened as `2 * i_a + i_b` where
/// `i_a` indexes path a's mode and `i_b` path b's. For the states built here
/// a mode's index inside its path is its polarization label (V = 0, H = 1);
/// when both modes of a path share a polarization the tie is broken by
/// source order (the S1-origin mode takes the lower index). `mode_tags`
/// records, per occupied term, which source's light occupies which path.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    amplitudes: [Complex64; 4],
    mode_tags: BTreeMap<usize, TermTags>,
}

/// Flattened basis index for (path-a mode `i`, path-b mode `j`).
pub(crate) fn basis_index(i: usize, j: usize) -> usize {
    debug_assert!(i < 2 && j < 2);
    2 * i + j
}

impl CompositeState {
    /// Builds a state from raw amplitudes, normalizing them. Every amplitude
    /// carrying weight must come with provenance tags.
    pub fn normalized(
        amplitudes: [Complex64; 4],
        mode_tags: BTreeMap<usize, TermTags>,
    ) -> Result<Self, AlgebraError> {
        for amp in &amplitudes {
            assert!(
                amp.re.is_finite() && amp.im.is_finite(),
                "composite amplitudes must be finite"
            );
        }
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if n2 < tol::ZERO_NORM {
            return Err(AlgebraError::ZeroNorm);
        }
        let inv = 1.0 / n2.sqrt();
        let amplitudes = amplitudes.map(|a| a * inv);
        for (idx, amp) in amplitudes.iter().enumerate() {
            assert!(
                amp.norm() <= tol::OCCUPANCY || mode_tags.contains_key(&idx),
                "occupied basis index {idx} has no mode tags"
            );
        }
        Ok(Self {
            amplitudes,
            mode_tags,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// Amplitude of (path-a mode `i`, path-b mode `j`).
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitudes[basis_index(i, j)]
    }

    pub fn mode_tags(&self) -> &BTreeMap<usize, TermTags> {
        &self.mode_tags
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Singular values of the amplitudes reshaped to a 2x2 matrix, largest
    /// first. The smaller one is recovered from the determinant identity
    /// `s0 * s1 = |det|`, which stays accurate when the direct formula would
    /// cancel to zero.
    pub fn schmidt_coefficients(&self) -> [f64; 2] {
        let m = &self.amplitudes;
        let frob: f64 = self.norm_sqr();
        let det = m[basis_index(0, 0)] * m[basis_index(1, 1)]
            - m[basis_index(0, 1)] * m[basis_index(1, 0)];
        let d = det.norm();
        let gap = (frob * frob - 4.0 * d * d).max(0.0).sqrt();
        let s0 = ((frob + gap) / 2.0).sqrt();
        let s1 = if s0 > 0.0 { d / s0 } else { 0.0 };
        [s0, s1]
    }

    /// Number of Schmidt coefficients above the default cutoff: 1 for
    /// factorizable states, 2 otherwise.
    pub fn schmidt_rank(&self) -> usize {
        self.schmidt_rank_with_cutoff(tol::SCHMIDT_CUTOFF)
    }

    pub fn schmidt_rank_with_cutoff(&self, cutoff: f64) -> usize {
        self.schmidt_coefficients()
            .iter()
            .filter(|s| **s > cutoff)
            .count()
    }

    /// Expectation value of `op`, which must be Hermitian.
    pub fn expectation(&self, op: &Operator) -> Result<f64, AlgebraError> {
        let deviation = op.hermiticity_deviation();
        if deviation > tol::HERMITICITY {
            return Err(AlgebraError::NonHermitian { deviation });
        }
        let transformed = op.apply(&self.amplitudes);
        let value: Complex64 = self
            .amplitudes
            .iter()
            .zip(&transformed)
            .map(|(a, t)| a.conj() * t)
            .sum();
        debug_assert!(
            value.im.abs() <= tol::EXACT,
            "Hermitian expectation produced imaginary residue {:.2e}",
            value.im
        );
        Ok(value.re)
    }

    /// Distance to `other` after aligning one global phase.
    pub fn global_phase_distance(&self, other: &Self) -> f64 {
        global_phase_distance(&self.amplitudes, &other.amplitudes)
    }

    /// Equality up to a single global phase on all four amplitudes.
    pub fn approx_eq_global_phase(&self, other: &Self, tolerance: f64) -> bool {
        self.global_phase_distance(other) <= tolerance
    }
}

/// Joint state of two tagged beams, one per output path.
///
/// The beam tagged for path a supplies the first basis slot regardless of
/// argument order. Both beams keep their provenance: every occupied term of
/// the result carries the same (path a, path b) tag pair. Fails if the tags
/// claim the same path or the same source, or if either beam is empty.
pub fn tensor(
    beam_x: &JonesVector,
    tag_x: ModeTag,
    beam_y: &JonesVector,
    tag_y: ModeTag,
) -> Result<CompositeState, AlgebraError> {
    if tag_x.path == tag_y.path {
        return Err(AlgebraError::TagConflict(format!(
            "both beams tagged with path {:?}",
            tag_x.path
        )));
    }
    let ((beam_a, tag_a), (beam_b, tag_b)) = if tag_x.path == PathLabel::A {
        ((beam_x, tag_x), (beam_y, tag_y))
    } else {
        ((beam_y, tag_y), (beam_x, tag_x))
    };
    let tags = TermTags::new(tag_a, tag_b)?;

    let a = beam_a.components();
    let b = beam_b.components();
    let mut amplitudes = [Complex64::ZERO; 4];
    let mut mode_tags = BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            let amp = a[i] * b[j];
            amplitudes[basis_index(i, j)] = amp;
            if amp.norm() > tol::OCCUPANCY {
                mode_tags.insert(basis_index(i, j), tags);
            }
        }
    }
    CompositeState::normalized(amplitudes, mode_tags)
}

/// Deterministic pseudo-random normalized state covering all four terms,
/// tagged with the default S1-in-a / S2-in-b provenance. Test helper.
#[cfg(test)]
pub(crate) fn scrambled_state(seed: u64) -> CompositeState {
    let tags = TermTags::new(
        ModeTag::new(Source::S1, PathLabel::A),
        ModeTag::new(Source::S2, PathLabel::B),
    )
    .unwrap();
    let mut x = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
    let mut next = || {
        x ^= x >> 30;
        x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x ^= x >> 27;
        x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^= x >> 31;
        (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let amps = [
        Complex64::new(next(), next()),
        Complex64::new(next(), next()),
        Complex64::new(next(), next()),
        Complex64::new(next(), next()),
    ];
    CompositeState::normalized(amps, (0..4).map(|i| (i, tags)).collect()).unwrap()
}
