//! Experiment reports: a versioned JSON schema plus a one-row-per-trial CSV
//! projection. Reports are deterministic functions of their parameters and
//! the master seed, so serialized output is byte-stable.

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Stated in every report: what desk scale can and cannot verify.
pub const REPORT_HEADER: &str = "desk-scale verification: exact postconditions, closed-form \
expectations, and positivity/monotonicity of fitted constants; asymptotic-regime thresholds \
are out of reach at this scale and are never claimed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Edge count of the generated instance.
    pub edges: usize,
    /// Copies counted; absent when the work cap aborted the trial.
    pub count: Option<u64>,
    /// count / (e/n)^(2k), when defined.
    pub ratio: Option<f64>,
    /// Copies re-validated against the linear-cycle predicate.
    pub revalidated: usize,
    pub work_capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub label: String,
    pub value: f64,
    pub trials: Vec<TrialRecord>,
    pub mean_count: f64,
    pub variance: f64,
    /// Closed-form reference for the mean, when one exists.
    pub reference: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub work_capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub instance: usize,
    pub description: String,
    /// Serialized instance or parameters, for replay.
    pub payload: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub suite: String,
    pub instances: usize,
    pub passes: usize,
    pub witness: Option<FailureWitness>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub header: String,
    pub experiment: String,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub seed: u64,
    pub trials_per_point: usize,
    pub work_cap: Option<u64>,
    pub grid: Vec<GridPoint>,
    /// Minimum mean ratio across uncapped grid points.
    pub fitted_c: Option<f64>,
    /// Mean counts non-decreasing along the grid.
    pub means_non_decreasing: Option<bool>,
    pub reference: Option<f64>,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
    pub z_score: Option<f64>,
    pub audit: Option<AuditSummary>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seed: u64, trials_per_point: usize) -> Self {
        ExperimentReport {
            schema: REPORT_SCHEMA_VERSION,
            header: REPORT_HEADER.to_string(),
            experiment: experiment.to_string(),
            n: None,
            r: None,
            k: None,
            seed,
            trials_per_point,
            work_cap: None,
            grid: Vec::new(),
            fitted_c: None,
            means_non_decreasing: None,
            reference: None,
            mean: None,
            variance: None,
            z_score: None,
            audit: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One row per trial; floats use the shortest round-trip form, so the
    /// output is byte-stable for identical inputs.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "experiment,point,point_value,trial,edges,count,ratio,reference,work_capped\n",
        );
        for point in &self.grid {
            for t in &point.trials {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    self.experiment,
                    point.label,
                    point.value,
                    t.trial,
                    t.edges,
                    t.count.map_or(String::new(), |c| c.to_string()),
                    t.ratio.map_or(String::new(), |x| x.to_string()),
                    point.reference.map_or(String::new(), |x| x.to_string()),
                    t.work_capped,
                ));
            }
        }
        out
    }
}

/// Sample mean and variance (unbiased), empty-safe.
pub fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    (mean, var)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_exact() {
        let mut report = ExperimentReport::new("expectation_check", 7, 3);
        report.n = Some(30);
        report.k = Some(2);
        report.grid.push(GridPoint {
            label: "p=0.2".into(),
            value: 0.2,
            trials: vec![TrialRecord {
                trial: 0,
                edges: 81,
                count: Some(120),
                ratio: Some(3.5),
                revalidated: 2,
                work_capped: false,
            }],
            mean_count: 120.0,
            variance: 0.0,
            reference: Some(131.544),
            mean_ratio: Some(3.5),
            work_capped: false,
        });
        let text = report.to_json();
        let back = ExperimentReport::from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn csv_has_one_row_per_trial() {
        let mut report = ExperimentReport::new("supersat_sweep", 1, 2);
        report.grid.push(GridPoint {
            label: "budget=120".into(),
            value: 120.0,
            trials: (0..2)
                .map(|t| TrialRecord {
                    trial: t,
                    edges: 120,
                    count: Some(10),
                    ratio: Some(0.12),
                    revalidated: 1,
                    work_capped: false,
                })
                .collect(),
            mean_count: 10.0,
            variance: 0.0,
            reference: None,
            mean_ratio: Some(0.12),
            work_capped: false,
        });
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("experiment,point,"));
    }

    #[test]
    fn stats_helper() {
        let (m, v) = mean_and_variance(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert_eq!(v, 1.0);
        assert_eq!(mean_and_variance(&[]), (0.0, 0.0));
    }
}
