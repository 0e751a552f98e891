use clap::ValueEnum;
use serde_json::json;

use bellcal_core::chsh::{chsh_s, correlation, maximize_s, ChshResult, ChshSettings, SignPattern};
use bellcal_core::circuit::{
    build_bell_analog, build_product_state, BenchConfig, ProductStateParams,
};
use bellcal_core::{tol, CompositeState};

use crate::report::{ExperimentReport, Record};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternFlag {
    /// S = E11 + E12 - E21 + E22.
    PhaseSum,
    /// S = E11 - E12 + E21 + E22.
    AngleDifference,
}

impl PatternFlag {
    fn pattern(self) -> SignPattern {
        match self {
            PatternFlag::PhaseSum => SignPattern::PhaseSum,
            PatternFlag::AngleDifference => SignPattern::AngleDifference,
        }
    }

    fn label(self) -> &'static str {
        match self {
            PatternFlag::PhaseSum => "phase_sum",
            PatternFlag::AngleDifference => "angle_difference",
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// State to analyze: bell-V, bell-H, or product (which takes the PARAMS
    /// positional).
    state: String,

    /// Product-state angles alpha,beta,gamma,delta.
    #[arg(value_name = "PARAMS")]
    params: Option<String>,

    /// Evaluate S directly at these analyzer angles theta1,phi1,theta2,phi2.
    #[arg(long, conflicts_with = "grid", value_name = "T1,P1,T2,P2")]
    settings: Option<String>,

    /// Search lattice size per angle; used when --settings is absent
    /// (default 16).
    #[arg(long, value_name = "N")]
    grid: Option<usize>,

    /// Sign convention for the CHSH sum.
    #[arg(long, value_enum, default_value_t = PatternFlag::PhaseSum)]
    pattern: PatternFlag,
}

fn parse_tuple4(text: &str, what: &str) -> Result<[f64; 4], UsageError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(UsageError(format!(
            "{what} needs exactly four comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut values = [0.0; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>().map_err(|_| {
            UsageError(format!("{what}: '{part}' is not a number"))
        })?;
        if !slot.is_finite() {
            return Err(UsageError(format!("{what}: '{part}' is not finite")));
        }
    }
    Ok(values)
}

fn build_state(
    args: &Args,
    angle_scale: f64,
) -> Result<(CompositeState, Option<ProductStateParams>), UsageError> {
    match args.state.as_str() {
        "bell-V" | "bell-v" => {
            if args.params.is_some() {
                return Err(UsageError("bell-V takes no PARAMS positional".into()));
            }
            Ok((build_bell_analog(&BenchConfig::vertical()), None))
        }
        "bell-H" | "bell-h" => {
            if args.params.is_some() {
                return Err(UsageError("bell-H takes no PARAMS positional".into()));
            }
            Ok((build_bell_analog(&BenchConfig::horizontal()), None))
        }
        "product" => {
            let text = args.params.as_deref().ok_or_else(|| {
                UsageError("product needs alpha,beta,gamma,delta as the next argument".into())
            })?;
            let raw = parse_tuple4(text, "product parameters")?;
            let params = ProductStateParams::new(
                raw[0] * angle_scale,
                raw[1] * angle_scale,
                raw[2] * angle_scale,
                raw[3] * angle_scale,
            );
            Ok((build_product_state(&params), Some(params)))
        }
        other => Err(UsageError(format!(
            "unknown state spec '{other}' (expected bell-V, bell-H, or product)"
        ))),
    }
}

fn summary_record(result: &ChshResult, pattern_label: &str) -> Record {
    Record::ChshSummary {
        theta1: result.settings.theta1,
        phi1: result.settings.phi1,
        theta2: result.settings.theta2,
        phi2: result.settings.phi2,
        pattern: pattern_label.to_string(),
        correlations: result.correlations,
        s_value: result.s_value,
        violates_classical_bound: result.violates_bound,
    }
}

fn setting_records(result: &ChshResult) -> impl Iterator<Item = Record> + '_ {
    result
        .settings
        .pairings()
        .into_iter()
        .zip(result.correlations)
        .map(|(pair, value)| Record::Correlation {
            theta: pair.theta,
            phi: pair.phi,
            value,
        })
}

pub fn run(args: &Args, angle_scale: f64) -> Result<ExperimentReport, UsageError> {
    let (state, product_params) = build_state(args, angle_scale)?;
    let pattern = args.pattern.pattern();

    let mut parameters = crate::parameters([
        ("state", json!(args.state)),
        ("pattern", json!(args.pattern.label())),
    ]);
    if let Some(p) = &product_params {
        parameters.insert("alpha".into(), json!(p.alpha));
        parameters.insert("beta".into(), json!(p.beta));
        parameters.insert("gamma".into(), json!(p.gamma));
        parameters.insert("delta".into(), json!(p.delta));
    }

    let mut records = Vec::new();
    let result = if let Some(text) = &args.settings {
        let raw = parse_tuple4(text, "--settings")?;
        let settings = ChshSettings::new(
            raw[0] * angle_scale,
            raw[1] * angle_scale,
            raw[2] * angle_scale,
            raw[3] * angle_scale,
        );
        parameters.insert("theta1".into(), json!(settings.theta1));
        parameters.insert("phi1".into(), json!(settings.phi1));
        parameters.insert("theta2".into(), json!(settings.theta2));
        parameters.insert("phi2".into(), json!(settings.phi2));
        chsh_s(&state, &settings, pattern)
    } else {
        let grid = args.grid.unwrap_or(16);
        if !(4..=64).contains(&grid) {
            return Err(UsageError(format!(
                "--grid must be between 4 and 64, got {grid}"
            )));
        }
        parameters.insert("grid".into(), json!(grid));
        let step = std::f64::consts::TAU / grid as f64;
        for k in 0..grid {
            for l in 0..grid {
                let theta = step * k as f64;
                let phi = step * l as f64;
                records.push(Record::LatticePoint {
                    theta,
                    phi,
                    value: correlation(&state, theta, phi),
                });
            }
        }
        maximize_s(&state, grid, pattern)
    };

    records.extend(setting_records(&result));
    records.push(summary_record(&result, args.pattern.label()));

    let correlations_sane = result.correlations.iter().all(|e| e.abs() <= 1.0 + 1e-9);
    let lattice_sane = records.iter().all(|r| match r {
        Record::LatticePoint { value, .. } => value.abs() <= 1.0 + 1e-9,
        _ => true,
    });
    let mut pass = correlations_sane
        && lattice_sane
        && result.s_value.abs() <= 2.0 * std::f64::consts::SQRT_2 + tol::S_CAP_SLACK;
    if product_params.is_some() {
        pass = pass && result.s_value.abs() <= 2.0 + tol::CLASSICAL_BOUND_SLACK;
    }

    let mut report = ExperimentReport::new("chsh-scan", parameters);
    report.results = records;
    report.pass = pass;
    Ok(report)
}
