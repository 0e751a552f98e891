use serde_json::json;

use bellcal_core::ensemble::verify_thermal_structure;

use crate::report::{ExperimentReport, Record};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Monte Carlo sample count (at least 100).
    #[arg(
        long = "n",
        value_name = "N",
        default_value_t = 1_000_000,
        value_parser = clap::value_parser!(u64).range(100..)
    )]
    n: u64,

    /// Ensemble seed. A --seed flag overrides BELLCAL_SEED from the
    /// environment.
    #[arg(long, env = "BELLCAL_SEED", default_value_t = 42)]
    seed: u64,
}

pub fn run(args: &Args) -> ExperimentReport {
    let checks = verify_thermal_structure(args.n as usize, args.seed)
        .expect("flag parsing enforces the sample-count floor");

    let mut report = ExperimentReport::new(
        "thermal-verify",
        crate::parameters([("n_samples", json!(args.n)), ("seed", json!(args.seed))]),
    );
    for check in &checks {
        report.results.push(Record::NullCheck {
            name: check.name.to_string(),
            value: check.estimate.value.into(),
            std_error: check.estimate.std_error,
            sigma_distance: check.estimate.sigma_distance(),
            passed: check.passed,
        });
    }
    report.pass = checks.iter().all(|check| check.passed);
    report
}
