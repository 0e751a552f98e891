use clap::ValueEnum;
use serde_json::json;

use bellcal_core::algebra::Polarization;
use bellcal_core::circuit::{trace_bench, BenchConfig};

use crate::report::{ExperimentReport, Record};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConfigFlag {
    /// Vertical preparation polarizer: parallel-polarized output terms.
    #[value(name = "V", alias = "v")]
    V,
    /// Horizontal preparation polarizer: crossed output terms.
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Axis of the preparation polarizer on the second source.
    #[arg(long, value_enum)]
    config: ConfigFlag,
}

pub fn run(args: &Args) -> ExperimentReport {
    let (cfg, label) = match args.config {
        ConfigFlag::V => (BenchConfig::vertical(), "V"),
        ConfigFlag::H => (BenchConfig::horizontal(), "H"),
    };
    let trace = trace_bench(&cfg);
    let state = &trace.output;

    let mut report = ExperimentReport::new(
        "bell-state",
        crate::parameters([("config", json!(label))]),
    );

    for index in 0..4 {
        let (i, j) = (index / 2, index % 2);
        let tags = state.mode_tags().get(&index);
        report.results.push(Record::Amplitude {
            index_a: i,
            index_b: j,
            value: state.amplitude(i, j).into(),
            path_a_source: tags.map(|t| format!("{:?}", t.path_a.source)),
            path_b_source: tags.map(|t| format!("{:?}", t.path_b.source)),
        });
    }

    report.results.push(Record::SchmidtRank {
        rank: state.schmidt_rank(),
        coefficients: state.schmidt_coefficients(),
    });

    for step in &trace.steps {
        for (port, beams) in [("in", &step.inputs), ("out", &step.outputs)] {
            for (beam_label, jones) in beams {
                report.results.push(Record::TraceStep {
                    element: step.element.to_string(),
                    port: port.to_string(),
                    label: beam_label.to_string(),
                    v: jones.component(Polarization::V).into(),
                    h: jones.component(Polarization::H).into(),
                });
            }
        }
    }

    let norm_error = (state.norm_sqr() - 1.0).abs();
    report.pass = state.schmidt_rank() == 2 && norm_error < 1e-10;
    report
}
