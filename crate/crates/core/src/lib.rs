//! Classical-optics simulation of an intersystem Bell-analog bench.
//!
//! Two mutually incoherent beams at distinct carrier frequencies ("red" and
//! "blue") enter a fixed bench: a polarizing beam splitter on the red arm, an
//! ordinary 50/50 splitter plus a half-wave plate on the blue arm, and a
//! dichroic combiner per output path. The two output paths then carry a joint
//! polarization state that is formally maximally entangled between the path
//! modes even though every ingredient is classical.
//!
//! The crate provides:
//!
//! * [`algebra`]: Jones vectors, tagged two-path composite states, Schmidt
//!   rank, Hermitian operators and expectation values;
//! * [`elements`]: the individual optical element transfer maps with a fixed
//!   phase convention (factor `i` on every reflection);
//! * [`circuit`]: the bench itself, with Bell-analog synthesis, product-state
//!   preparation, and a step-by-step trace;
//! * [`ensemble`]: seeded thermal-field Monte Carlo and the correlation
//!   estimators that verify the null-correlation structure;
//! * [`chsh`]: phase-shift analyzers, intensity quads, CHSH sums and a
//!   deterministic setting search.
//!
//! ```
//! use bellcal_core::chsh::{chsh_s, ChshSettings, SignPattern};
//! use bellcal_core::circuit::{build_bell_analog, BenchConfig};
//!
//! let state = build_bell_analog(&BenchConfig::vertical());
//! assert_eq!(state.schmidt_rank(), 2);
//!
//! let result = chsh_s(
//!     &state,
//!     &ChshSettings::new(0.0, std::f64::consts::FRAC_PI_4,
//!                        std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_4),
//!     SignPattern::PhaseSum,
//! );
//! assert!((result.s_value.abs() - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
//! ```

pub mod algebra;
pub mod chsh;
pub mod circuit;
pub mod elements;
pub mod ensemble;
pub mod tol;

pub use algebra::{
    AlgebraError, CompositeState, Frequency, JonesVector, ModeTag, Operator, PathLabel,
    Polarization, Source,
};
pub use chsh::{ChshResult, ChshSettings, IntensityQuad, MeasurementSetting, SignPattern};
pub use circuit::{BenchConfig, BenchTrace, ProductStateParams};
pub use elements::ElementError;
pub use ensemble::{Channel, CorrelationEstimate, EnsembleError, FieldEnsemble, SourceSpec};
