//! Report envelope and serialization.
//!
//! JSON is the canonical format and the only one the schema governs; CSV is
//! a flat projection with one row per record and a fixed column set shared
//! by every record kind (cells a kind does not use stay empty). Reports
//! carry no timestamps or machine identifiers, so a command with a fixed
//! flag set reproduces its report byte for byte.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexField {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexField {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    /// One composite-basis amplitude, with source provenance when the term
    /// is occupied.
    Amplitude {
        index_a: usize,
        index_b: usize,
        value: ComplexField,
        #[serde(skip_serializing_if = "Option::is_none")]
        path_a_source: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        path_b_source: Option<String>,
    },
    SchmidtRank {
        rank: usize,
        coefficients: [f64; 2],
    },
    /// One beam at one port of one bench element.
    TraceStep {
        element: String,
        port: String,
        label: String,
        v: ComplexField,
        h: ComplexField,
    },
    /// Correlation at a single analyzer setting pair.
    Correlation {
        theta: f64,
        phi: f64,
        value: f64,
    },
    /// One cell of the correlation lattice emitted for plotting.
    LatticePoint {
        theta: f64,
        phi: f64,
        value: f64,
    },
    ChshSummary {
        theta1: f64,
        phi1: f64,
        theta2: f64,
        phi2: f64,
        pattern: String,
        correlations: [f64; 4],
        s_value: f64,
        violates_classical_bound: bool,
    },
    NullCheck {
        name: String,
        value: ComplexField,
        std_error: f64,
        sigma_distance: f64,
        passed: bool,
    },
    /// One product-state draw with the largest CHSH sum found for it.
    Draw {
        label: String,
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        s_value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub schema_version: u32,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub results: Vec<Record>,
    pub pass: bool,
}

impl ExperimentReport {
    pub fn new(experiment: &str, parameters: BTreeMap<String, serde_json::Value>) -> Self {
        Self {
            experiment: experiment.to_string(),
            schema_version: SCHEMA_VERSION,
            parameters,
            results: Vec::new(),
            pass: true,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Flat projection: comment lines for the envelope, then one row per
    /// record under a fixed header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# experiment: {}\n", self.experiment));
        out.push_str(&format!("# schema_version: {}\n", self.schema_version));
        for (key, value) in &self.parameters {
            out.push_str(&format!("# parameter {key}: {value}\n"));
        }
        out.push_str(&format!("# pass: {}\n", self.pass));
        out.push_str(&CSV_COLUMNS.join(","));
        out.push('\n');
        for record in &self.results {
            let cells = csv_cells(record);
            let row: Vec<&str> = CSV_COLUMNS
                .iter()
                .map(|col| cells.get(col).map(String::as_str).unwrap_or(""))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

const CSV_COLUMNS: [&str; 39] = [
    "kind",
    "element",
    "port",
    "label",
    "name",
    "index_a",
    "index_b",
    "path_a_source",
    "path_b_source",
    "rank",
    "s0",
    "s1",
    "re",
    "im",
    "v_re",
    "v_im",
    "h_re",
    "h_im",
    "theta",
    "phi",
    "value",
    "theta1",
    "phi1",
    "theta2",
    "phi2",
    "pattern",
    "e11",
    "e12",
    "e21",
    "e22",
    "s_value",
    "violates_classical_bound",
    "alpha",
    "beta",
    "gamma",
    "delta",
    "std_error",
    "sigma_distance",
    "passed",
];

fn escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_cells(record: &Record) -> BTreeMap<&'static str, String> {
    let mut cells = BTreeMap::new();
    let mut put = |key: &'static str, value: String| {
        cells.insert(key, value);
    };
    match record {
        Record::Amplitude {
            index_a,
            index_b,
            value,
            path_a_source,
            path_b_source,
        } => {
            put("kind", "amplitude".into());
            put("index_a", index_a.to_string());
            put("index_b", index_b.to_string());
            put("re", value.re.to_string());
            put("im", value.im.to_string());
            if let Some(s) = path_a_source {
                put("path_a_source", escape(s));
            }
            if let Some(s) = path_b_source {
                put("path_b_source", escape(s));
            }
        }
        Record::SchmidtRank { rank, coefficients } => {
            put("kind", "schmidt_rank".into());
            put("rank", rank.to_string());
            put("s0", coefficients[0].to_string());
            put("s1", coefficients[1].to_string());
        }
        Record::TraceStep {
            element,
            port,
            label,
            v,
            h,
        } => {
            put("kind", "trace_step".into());
            put("element", escape(element));
            put("port", escape(port));
            put("label", escape(label));
            put("v_re", v.re.to_string());
            put("v_im", v.im.to_string());
            put("h_re", h.re.to_string());
            put("h_im", h.im.to_string());
        }
        Record::Correlation { theta, phi, value } => {
            put("kind", "correlation".into());
            put("theta", theta.to_string());
            put("phi", phi.to_string());
            put("value", value.to_string());
        }
        Record::LatticePoint { theta, phi, value } => {
            put("kind", "lattice_point".into());
            put("theta", theta.to_string());
            put("phi", phi.to_string());
            put("value", value.to_string());
        }
        Record::ChshSummary {
            theta1,
            phi1,
            theta2,
            phi2,
            pattern,
            correlations,
            s_value,
            violates_classical_bound,
        } => {
            put("kind", "chsh_summary".into());
            put("theta1", theta1.to_string());
            put("phi1", phi1.to_string());
            put("theta2", theta2.to_string());
            put("phi2", phi2.to_string());
            put("pattern", escape(pattern));
            put("e11", correlations[0].to_string());
            put("e12", correlations[1].to_string());
            put("e21", correlations[2].to_string());
            put("e22", correlations[3].to_string());
            put("s_value", s_value.to_string());
            put("violates_classical_bound", violates_classical_bound.to_string());
        }
        Record::NullCheck {
            name,
            value,
            std_error,
            sigma_distance,
            passed,
        } => {
            put("kind", "null_check".into());
            put("name", escape(name));
            put("re", value.re.to_string());
            put("im", value.im.to_string());
            put("std_error", std_error.to_string());
            put("sigma_distance", sigma_distance.to_string());
            put("passed", passed.to_string());
        }
        Record::Draw {
            label,
            alpha,
            beta,
            gamma,
            delta,
            s_value,
        } => {
            put("kind", "draw".into());
            put("label", escape(label));
            put("alpha", alpha.to_string());
            put("beta", beta.to_string());
            put("gamma", gamma.to_string());
            put("delta", delta.to_string());
            put("s_value", s_value.to_string());
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trips() {
        let mut report = ExperimentReport::new("chsh-scan", BTreeMap::new());
        report.results.push(Record::Correlation {
            theta: 0.25,
            phi: -1.5,
            value: 0.875,
        });
        report.results.push(Record::NullCheck {
            name: "source_cross_pol".into(),
            value: ComplexField { re: 1e-4, im: -2e-4 },
            std_error: 5e-4,
            sigma_distance: 0.44,
            passed: true,
        });
        let json = report.to_json();
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_has_one_row_per_record_under_a_fixed_header() {
        let mut report = ExperimentReport::new("bell-state", BTreeMap::new());
        report.results.push(Record::SchmidtRank {
            rank: 2,
            coefficients: [std::f64::consts::FRAC_1_SQRT_2; 2],
        });
        report.results.push(Record::Amplitude {
            index_a: 0,
            index_b: 0,
            value: ComplexField { re: 0.0, im: 0.5 },
            path_a_source: Some("S1".into()),
            path_b_source: Some("S2".into()),
        });
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        let header_at = lines.iter().position(|l| l.starts_with("kind,")).unwrap();
        assert_eq!(lines.len() - header_at - 1, report.results.len());
        let header_fields = lines[header_at].split(',').count();
        for row in &lines[header_at + 1..] {
            assert_eq!(row.split(',').count(), header_fields);
        }
    }

    #[test]
    fn csv_escapes_embedded_commas() {
        assert_eq!(escape("a,b"), "\"a,b\"");
        assert_eq!(escape("plain"), "plain");
    }
}
