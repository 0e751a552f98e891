//! End-to-end acceptance gate. Each criterion prints one PASS or FAIL line;
//! the test fails if any criterion does. Tolerances and budgets are pinned
//! here so the gate cannot drift with library internals.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use bellcal_core::algebra::{CompositeState, ModeTag, PathLabel, Source, TermTags};
use bellcal_core::chsh::{
    chsh_s, correlation, correlation_from_intensities, intensity_quad, maximize_s, ChshSettings,
    SignPattern,
};
use bellcal_core::circuit::{build_bell_analog, build_product_state, BenchConfig, ProductStateParams};
use bellcal_core::ensemble::verify_thermal_structure;

const STATE_TOL: f64 = 1e-10;
const GRID_TOL: f64 = 1e-10;
const TSIRELSON_TOL: f64 = 1e-9;
const BOUND_SLACK: f64 = 1e-6;
const ROUTE_AGREEMENT: f64 = 1e-10;
const FRINGE_TOL: f64 = 1e-10;
const SEARCH_TOL: f64 = 1e-4;
const NULL_SIGMA: f64 = 5.0;

const BELL_BUILD_BUDGET: Duration = Duration::from_millis(1);
const GRID_BUDGET: Duration = Duration::from_secs(1);
const SEARCH_BUDGET: Duration = Duration::from_secs(30);
const THERMAL_BUDGET: Duration = Duration::from_secs(30);

const TSIRELSON: f64 = 2.0 * std::f64::consts::SQRT_2;
const TAU: f64 = std::f64::consts::TAU;

fn run(name: &str, body: impl FnOnce()) -> bool {
    let result = catch_unwind(AssertUnwindSafe(body));
    match &result {
        Ok(()) => println!("PASS  {name}"),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("panic without message");
            println!("FAIL  {name}: {msg}");
        }
    }
    result.is_ok()
}

/// Reference Bell-analog amplitudes: i/sqrt(2) at the two given indices.
fn reference_bell(indices: [(usize, usize); 2]) -> [Complex64; 4] {
    let mut amps = [Complex64::ZERO; 4];
    for (i, j) in indices {
        amps[2 * i + j] = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    }
    amps
}

fn max_amplitude_deviation(state: &CompositeState, reference: &[Complex64; 4]) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(reference)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// Random normalized state with full provenance tags, for route-agreement
/// sweeps.
fn random_state(rng: &mut ChaCha12Rng) -> CompositeState {
    let tags = TermTags::new(
        ModeTag::new(Source::S1, PathLabel::A),
        ModeTag::new(Source::S2, PathLabel::B),
    )
    .unwrap();
    loop {
        let amps: [Complex64; 4] = std::array::from_fn(|_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() < 1e-3 {
            continue;
        }
        let mode_tags: BTreeMap<usize, TermTags> = (0..4).map(|idx| (idx, tags)).collect();
        return CompositeState::normalized(amps, mode_tags).unwrap();
    }
}

#[test]
fn acceptance() {
    let previous_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));

    let mut all = true;

    all &= run(
        "criterion 1: vertical bench synthesizes the parallel Bell analog",
        || {
            let start = Instant::now();
            let state = build_bell_analog(&BenchConfig::vertical());
            let elapsed = start.elapsed();
            let reference = reference_bell([(0, 0), (1, 1)]);
            let deviation = max_amplitude_deviation(&state, &reference);
            assert!(
                deviation < STATE_TOL,
                "amplitude deviation {deviation:.2e} exceeds {STATE_TOL:.0e}"
            );
            assert_eq!(state.schmidt_rank(), 2, "synthesized state is separable");
            assert!(
                elapsed < BELL_BUILD_BUDGET,
                "synthesis took {elapsed:?}, budget {BELL_BUILD_BUDGET:?}"
            );
        },
    );

    all &= run(
        "criterion 2: bell correlation follows cos(theta+phi) on a 64x64 grid",
        || {
            let state = build_bell_analog(&BenchConfig::vertical());
            let start = Instant::now();
            let mut worst = 0.0f64;
            for k in 0..64 {
                for l in 0..64 {
                    let theta = TAU * k as f64 / 64.0;
                    let phi = TAU * l as f64 / 64.0;
                    let e = correlation(&state, theta, phi);
                    worst = worst.max((e - (theta + phi).cos()).abs());
                }
            }
            let elapsed = start.elapsed();
            assert!(
                worst < GRID_TOL,
                "worst grid deviation {worst:.2e} exceeds {GRID_TOL:.0e}"
            );
            assert!(
                elapsed < GRID_BUDGET,
                "grid sweep took {elapsed:?}, budget {GRID_BUDGET:?}"
            );
        },
    );

    all &= run(
        "criterion 3: tsirelson sum at both sign conventions",
        || {
            let state = build_bell_analog(&BenchConfig::vertical());
            let phase_sum = chsh_s(
                &state,
                &ChshSettings::new(
                    0.0,
                    std::f64::consts::FRAC_PI_4,
                    std::f64::consts::FRAC_PI_2,
                    -std::f64::consts::FRAC_PI_4,
                ),
                SignPattern::PhaseSum,
            );
            assert!(
                (phase_sum.s_value.abs() - TSIRELSON).abs() < TSIRELSON_TOL,
                "phase-sum convention reached {}",
                phase_sum.s_value
            );
            assert!(phase_sum.violates_bound);
            let angle_diff = chsh_s(
                &state,
                &ChshSettings::new(
                    std::f64::consts::FRAC_PI_2,
                    -std::f64::consts::FRAC_PI_4,
                    0.0,
                    std::f64::consts::FRAC_PI_4,
                ),
                SignPattern::AngleDifference,
            );
            assert!(
                (angle_diff.s_value.abs() - TSIRELSON).abs() < TSIRELSON_TOL,
                "angle-difference convention reached {}",
                angle_diff.s_value
            );
            assert!(angle_diff.violates_bound);
        },
    );

    all &= run(
        "criterion 4: product-state search never beats the classical bound",
        || {
            let start = Instant::now();
            let mut rng = ChaCha12Rng::seed_from_u64(0x50f4_57a7);
            let mut max_seen = 0.0f64;
            for draw in 0..100 {
                let params = ProductStateParams::new(
                    rng.random_range(0.0..TAU),
                    rng.random_range(0.0..TAU),
                    rng.random_range(0.0..TAU),
                    rng.random_range(0.0..TAU),
                );
                let state = build_product_state(&params);
                let result = maximize_s(&state, 16, SignPattern::PhaseSum);
                let s = result.s_value.abs();
                max_seen = max_seen.max(s);
                assert!(
                    s <= 2.0 + BOUND_SLACK,
                    "draw {draw} reached |S| = {s} > 2 + {BOUND_SLACK:.0e}"
                );
                assert!(!result.violates_bound);
            }
            let elapsed = start.elapsed();
            assert!(max_seen > 0.0 && max_seen <= 2.0 + BOUND_SLACK);
            assert!(
                elapsed < SEARCH_BUDGET,
                "search sweep took {elapsed:?}, budget {SEARCH_BUDGET:?}"
            );
        },
    );

    all &= run(
        "criterion 5: operator and intensity-ratio correlations agree",
        || {
            let mut rng = ChaCha12Rng::seed_from_u64(0xa9ee);
            for _ in 0..1000 {
                let state = random_state(&mut rng);
                let theta = rng.random_range(-TAU..TAU);
                let phi = rng.random_range(-TAU..TAU);
                let direct = correlation(&state, theta, phi);
                let ratio = correlation_from_intensities(&state, theta, phi)
                    .expect("normalized states have unit quad mass");
                assert!(
                    (direct - ratio).abs() < ROUTE_AGREEMENT,
                    "routes disagree by {:.2e}",
                    (direct - ratio).abs()
                );
            }
        },
    );

    all &= run(
        "criterion 6: joint intensity follows the fringe law",
        || {
            let state = build_bell_analog(&BenchConfig::vertical());
            for k in 0..64 {
                let theta = TAU * k as f64 / 64.0 - std::f64::consts::PI;
                let phi = 0.7 - 0.3 * theta;
                let quad = intensity_quad(&state, theta, phi);
                let expected = 0.5 * (1.0 + (theta + phi).cos());
                assert!(
                    (quad.pp - expected).abs() < FRINGE_TOL,
                    "pp fringe off by {:.2e} at theta = {theta}",
                    (quad.pp - expected).abs()
                );
                assert!((quad.total() - 2.0).abs() < FRINGE_TOL);
            }
        },
    );

    all &= run(
        "criterion 7: thermal nulls hold at one million samples, reproducibly",
        || {
            let start = Instant::now();
            let checks = verify_thermal_structure(1_000_000, 42).expect("valid sample count");
            let elapsed = start.elapsed();
            assert_eq!(checks.len(), 7);
            for check in &checks {
                assert!(
                    check.passed,
                    "{} sits {:.1} sigma from zero",
                    check.name,
                    check.estimate.sigma_distance()
                );
                assert!(
                    check.estimate.sigma_distance() < NULL_SIGMA,
                    "{} sits {:.1} sigma from zero",
                    check.name,
                    check.estimate.sigma_distance()
                );
            }
            let rerun = verify_thermal_structure(1_000_000, 42).expect("valid sample count");
            for (a, b) in checks.iter().zip(&rerun) {
                assert_eq!(a.estimate.value, b.estimate.value, "{} not reproducible", a.name);
                assert_eq!(a.estimate.std_error, b.estimate.std_error);
            }
            assert!(
                elapsed < THERMAL_BUDGET,
                "thermal verification took {elapsed:?}, budget {THERMAL_BUDGET:?}"
            );
        },
    );

    all &= run(
        "criterion 8: product closed form matches the operator route",
        || {
            let mut rng = ChaCha12Rng::seed_from_u64(0xc105_ed);
            for _ in 0..10_000 {
                let params = ProductStateParams::new(
                    rng.random_range(-TAU..TAU),
                    rng.random_range(-TAU..TAU),
                    rng.random_range(-TAU..TAU),
                    rng.random_range(-TAU..TAU),
                );
                let state = build_product_state(&params);
                let theta = rng.random_range(-TAU..TAU);
                let phi = rng.random_range(-TAU..TAU);
                let closed = bellcal_core::chsh::product_state_correlation_closed_form(
                    &params, theta, phi,
                );
                let direct = correlation(&state, theta, phi);
                assert!(
                    (closed - direct).abs() < ROUTE_AGREEMENT,
                    "closed form off by {:.2e}",
                    (closed - direct).abs()
                );
            }
        },
    );

    all &= run(
        "criterion 9: horizontal bench synthesizes the crossed Bell analog at tsirelson",
        || {
            let state = build_bell_analog(&BenchConfig::horizontal());
            let reference = reference_bell([(0, 1), (1, 0)]);
            let deviation = max_amplitude_deviation(&state, &reference);
            assert!(
                deviation < STATE_TOL,
                "amplitude deviation {deviation:.2e} exceeds {STATE_TOL:.0e}"
            );
            assert_eq!(state.schmidt_rank(), 2);
            let result = maximize_s(&state, 16, SignPattern::PhaseSum);
            assert!(
                (result.s_value.abs() - TSIRELSON).abs() < SEARCH_TOL,
                "search reached {}",
                result.s_value
            );
        },
    );

    std::panic::set_hook(previous_hook);
    assert!(all, "one or more acceptance criteria failed");
}
