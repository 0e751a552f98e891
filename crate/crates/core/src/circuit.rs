//! The bench: a fixed element topology that synthesizes the Bell-analog
//! state, plus arbitrary two-beam product-state preparation.
//!
//! Layout, with `source2_polarizer = V`:
//!
//! ```text
//! S1 (red)  ── PBS ─┬─ V reflected ───────────────► DM1 ──► path a
//!                   └─ H transmitted ─────────────► DM2 ──► path b
//! S2 (blue) ── VP ── BS ─┬─ reflected ─ M1 ─ HWP ─ M2 ─► DM1
//!                        └─ transmitted ──────────► DM2
//! ```
//!
//! Each combiner merges two perpendicular beams, so exactly one arm turns at
//! the coating: the blue arm at DM1, the red arm at DM2. With the global
//! i-per-reflection convention this geometry delivers the two output terms in
//! phase, with a common overall factor of i.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::algebra::{
    tensor, AlgebraError, CompositeState, Frequency, JonesVector, ModeTag, PathLabel,
    Polarization, Source, TermTags,
};
use crate::algebra::composite_basis_index as basis_index;
use crate::elements::{
    bs_split, dichroic_combine, hwp_apply, mirror_apply, pbs_split, polarizer_apply, PathField,
    TaggedBeam,
};

/// The blue arm arrives at DM1 perpendicular to the red one and turns there.
const DM1_REFLECTS: Frequency = Frequency::Omega2;
/// At DM2 it is the red arm that turns.
const DM2_REFLECTS: Frequency = Frequency::Omega1;

/// Bench setting: the axis of the polarizer in front of the second source.
/// The vertical axis yields the state with parallel-polarized terms at
/// indices (0,0) and (1,1); the horizontal axis yields the variant at (0,1)
/// and (1,0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub source2_polarizer: Polarization,
}

impl BenchConfig {
    pub fn vertical() -> Self {
        Self {
            source2_polarizer: Polarization::V,
        }
    }

    pub fn horizontal() -> Self {
        Self {
            source2_polarizer: Polarization::H,
        }
    }
}

/// Angles of the two-beam product state
/// `(cos(alpha)|0> + e^{i beta} sin(alpha)|1>) (x) (cos(gamma)|0> + e^{i delta} sin(gamma)|1>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductStateParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ProductStateParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        assert!(
            alpha.is_finite() && beta.is_finite() && gamma.is_finite() && delta.is_finite(),
            "product-state angles must be finite"
        );
        Self {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// The beam headed for path a.
    pub fn beam_a(&self) -> JonesVector {
        JonesVector::new(
            Complex64::new(self.alpha.cos(), 0.0),
            Complex64::cis(self.beta) * self.alpha.sin(),
        )
    }

    /// The beam headed for path b.
    pub fn beam_b(&self) -> JonesVector {
        JonesVector::new(
            Complex64::new(self.gamma.cos(), 0.0),
            Complex64::cis(self.delta) * self.gamma.sin(),
        )
    }
}

/// The fields of both output paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathFields {
    pub a: PathField,
    pub b: PathField,
}

/// One recorded element application in the bench walk-through.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub element: &'static str,
    pub inputs: Vec<(&'static str, JonesVector)>,
    pub outputs: Vec<(&'static str, JonesVector)>,
}

/// Full walk-through of the bench: every element step plus the combined
/// output state, which equals `build_bell_analog` for the same config.
#[derive(Debug, Clone)]
pub struct BenchTrace {
    pub steps: Vec<TraceStep>,
    pub output: CompositeState,
}

/// Routes a single realization of the two source fields through the bench.
/// `source2` is the field after its polarizer; no renormalization happens
/// here, so per-realization energy bookkeeping holds exactly.
pub fn route_fields(
    cfg: &BenchConfig,
    source1: &JonesVector,
    source2: &JonesVector,
) -> PathFields {
    walk(cfg, source1, source2, None)
}

fn walk(
    _cfg: &BenchConfig,
    source1: &JonesVector,
    source2: &JonesVector,
    mut trace: Option<&mut Vec<TraceStep>>,
) -> PathFields {
    let record = |step: TraceStep, trace: &mut Option<&mut Vec<TraceStep>>| {
        if let Some(t) = trace.as_deref_mut() {
            t.push(step);
        }
    };

    let pbs = pbs_split(source1);
    record(
        TraceStep {
            element: "PBS",
            inputs: vec![("S1", *source1)],
            outputs: vec![
                ("reflected, toward DM1", pbs.reflected),
                ("transmitted, toward DM2", pbs.transmitted),
            ],
        },
        &mut trace,
    );

    let bs = bs_split(source2);
    record(
        TraceStep {
            element: "BS",
            inputs: vec![("S2 after polarizer", *source2)],
            outputs: vec![
                ("reflected, toward M1", bs.reflected),
                ("transmitted, toward DM2", bs.transmitted),
            ],
        },
        &mut trace,
    );

    let after_m1 = mirror_apply(&bs.reflected);
    record(
        TraceStep {
            element: "M1",
            inputs: vec![("from BS", bs.reflected)],
            outputs: vec![("toward HWP", after_m1)],
        },
        &mut trace,
    );

    let after_hwp = hwp_apply(&after_m1);
    record(
        TraceStep {
            element: "HWP",
            inputs: vec![("from M1", after_m1)],
            outputs: vec![("toward M2", after_hwp)],
        },
        &mut trace,
    );

    let after_m2 = mirror_apply(&after_hwp);
    record(
        TraceStep {
            element: "M2",
            inputs: vec![("from HWP", after_hwp)],
            outputs: vec![("toward DM1", after_m2)],
        },
        &mut trace,
    );

    let a = dichroic_combine(
        TaggedBeam::new(Frequency::Omega1, pbs.reflected),
        TaggedBeam::new(Frequency::Omega2, after_m2),
        DM1_REFLECTS,
    )
    .expect("DM1 arms carry distinct carriers");
    record(
        TraceStep {
            element: "DM1",
            inputs: vec![("red, from PBS", pbs.reflected), ("blue, from M2", after_m2)],
            outputs: vec![("path a red", a.red), ("path a blue", a.blue)],
        },
        &mut trace,
    );

    let b = dichroic_combine(
        TaggedBeam::new(Frequency::Omega1, pbs.transmitted),
        TaggedBeam::new(Frequency::Omega2, bs.transmitted),
        DM2_REFLECTS,
    )
    .expect("DM2 arms carry distinct carriers");
    record(
        TraceStep {
            element: "DM2",
            inputs: vec![
                ("red, from PBS", pbs.transmitted),
                ("blue, from BS", bs.transmitted),
            ],
            outputs: vec![("path b red", b.red), ("path b blue", b.blue)],
        },
        &mut trace,
    );

    PathFields { a, b }
}

/// The only occupied mode of a beam that the bench delivers into one carrier
/// of one path. The other component is exactly zero by construction.
fn single_mode(beam: &JonesVector) -> (Polarization, Complex64) {
    let v = beam.component(Polarization::V);
    let h = beam.component(Polarization::H);
    match (v.norm_sqr() > 0.0, h.norm_sqr() > 0.0) {
        (true, false) => (Polarization::V, v),
        (false, true) => (Polarization::H, h),
        _ => panic!("bench arm must occupy exactly one polarization mode"),
    }
}

/// Basis index of a mode inside its path: its polarization label, with a
/// polarization tie broken by source order (the S1-origin mode comes first).
fn mode_index(mine: (Source, Polarization), other: (Source, Polarization)) -> usize {
    let key = |(s, p): (Source, Polarization)| (p.index(), s.index());
    usize::from(key(mine) > key(other))
}

/// Pairs the path fields into the joint two-path state. Each term pairs the
/// light of one source in path a with the light of the other source in path
/// b, the only combinations in which both outputs fire together.
fn combine_paths(fields: &PathFields) -> Result<CompositeState, AlgebraError> {
    let (pol_a1, amp_a1) = single_mode(&fields.a.red);
    let (pol_a2, amp_a2) = single_mode(&fields.a.blue);
    let (pol_b1, amp_b1) = single_mode(&fields.b.red);
    let (pol_b2, amp_b2) = single_mode(&fields.b.blue);

    let a1 = mode_index((Source::S1, pol_a1), (Source::S2, pol_a2));
    let a2 = mode_index((Source::S2, pol_a2), (Source::S1, pol_a1));
    let b1 = mode_index((Source::S1, pol_b1), (Source::S2, pol_b2));
    let b2 = mode_index((Source::S2, pol_b2), (Source::S1, pol_b1));

    let mut amplitudes = [Complex64::ZERO; 4];
    let mut tags = BTreeMap::new();

    amplitudes[basis_index(a1, b2)] = amp_a1 * amp_b2;
    tags.insert(
        basis_index(a1, b2),
        TermTags::new(
            ModeTag::new(Source::S1, PathLabel::A),
            ModeTag::new(Source::S2, PathLabel::B),
        )?,
    );

    amplitudes[basis_index(a2, b1)] = amp_a2 * amp_b1;
    tags.insert(
        basis_index(a2, b1),
        TermTags::new(
            ModeTag::new(Source::S2, PathLabel::A),
            ModeTag::new(Source::S1, PathLabel::B),
        )?,
    );

    CompositeState::normalized(amplitudes, tags)
}

/// Deterministic stand-in for the prepared second source: an unpolarized
/// (symmetric) beam through the config's polarizer, renormalized.
fn prepared_source2(cfg: &BenchConfig) -> JonesVector {
    polarizer_apply(&JonesVector::symmetric(), cfg.source2_polarizer)
        .normalize()
        .expect("polarizer passes half of a symmetric beam")
}

/// Synthesizes the Bell-analog state for the given bench config.
///
/// With the vertical polarizer the result is `(i/sqrt2)(|00> + |11>)`; with
/// the horizontal one, `(i/sqrt2)(|01> + |10>)`. Both have Schmidt rank 2.
pub fn build_bell_analog(cfg: &BenchConfig) -> CompositeState {
    let fields = walk(cfg, &JonesVector::symmetric(), &prepared_source2(cfg), None);
    combine_paths(&fields).expect("bench delivers one tagged mode per source per path")
}

/// Walks the bench step by step, recording every element application. The
/// trace's `output` equals `build_bell_analog(cfg)` exactly.
pub fn trace_bench(cfg: &BenchConfig) -> BenchTrace {
    let mut steps = Vec::new();

    let s1 = JonesVector::symmetric();
    steps.push(TraceStep {
        element: "source S1",
        inputs: vec![],
        outputs: vec![("red, unpolarized stand-in", s1)],
    });

    let s2_raw = JonesVector::symmetric();
    let s2_projected = polarizer_apply(&s2_raw, cfg.source2_polarizer);
    let s2 = s2_projected
        .normalize()
        .expect("polarizer passes half of a symmetric beam");
    steps.push(TraceStep {
        element: "source S2 polarizer",
        inputs: vec![("blue, unpolarized stand-in", s2_raw)],
        outputs: vec![("projected", s2_projected), ("renormalized", s2)],
    });

    let fields = walk(cfg, &s1, &s2, Some(&mut steps));
    let output = combine_paths(&fields).expect("bench delivers one tagged mode per source per path");
    BenchTrace { steps, output }
}

/// Tensor state of two independently prepared beams, one per path. Path a's
/// beam is tagged as S1 light, path b's as S2 light.
pub fn build_product_state(params: &ProductStateParams) -> CompositeState {
    tensor(
        &params.beam_a(),
        ModeTag::new(Source::S1, PathLabel::A),
        &params.beam_b(),
        ModeTag::new(Source::S2, PathLabel::B),
    )
    .expect("product beams are unit and distinctly tagged")
}
