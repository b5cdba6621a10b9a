//! Estimate and report types shared by the Monte Carlo pipelines.

use serde::{Deserialize, Serialize};

use crate::exec::pairwise_sum;

/// A Monte Carlo estimate together with its standard error.
///
/// Serializes to `{target, value, std_error, n_samples, seed}`. The standard
/// error is the sample standard deviation divided by √n; reproducible from
/// `(target, seed, n_samples)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MomentEstimate {
    pub target: String,
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    /// Trials rejected by the owning pipeline (near-singular signatures,
    /// non-transversal sections, ...). Diagnostic only, not serialized.
    #[serde(skip)]
    pub discarded: u64,
}

impl MomentEstimate {
    /// Mean and standard error of `values`, reduced pairwise.
    pub fn from_samples(target: impl Into<String>, seed: u64, values: &[f64]) -> Self {
        let n = values.len() as f64;
        assert!(n > 0.0, "empty sample set for MomentEstimate");
        let mean = pairwise_sum(values) / n;
        let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        let var = if values.len() > 1 {
            pairwise_sum(&sq) / (n - 1.0)
        } else {
            0.0
        };
        MomentEstimate {
            target: target.into(),
            value: mean,
            std_error: (var / n).sqrt(),
            n_samples: values.len() as u64,
            seed,
            discarded: 0,
        }
    }

    /// An exact value (zero standard error), for the degenerate cases where
    /// no sampling is required.
    pub fn exact(target: impl Into<String>, seed: u64, value: f64) -> Self {
        MomentEstimate {
            target: target.into(),
            value,
            std_error: 0.0,
            n_samples: 1,
            seed,
            discarded: 0,
        }
    }

    /// |self - other| measured in combined standard errors.
    pub fn distance_in_se(&self, other: f64, extra_se: f64) -> f64 {
        let se = (self.std_error * self.std_error + extra_se * extra_se).sqrt();
        if se == 0.0 {
            if self.value == other {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.value - other).abs() / se
        }
    }
}

/// One line of experiment output: estimate against its theory value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub experiment: String,
    pub params: String,
    pub estimate: f64,
    pub std_error: f64,
    pub theory: f64,
    pub theory_source: String,
    pub pass: bool,
    pub tolerance: String,
    pub wall_ms: u64,
}

impl ReportRow {
    /// Wall time stays out of the CSV so identical configurations produce
    /// byte-identical files; it is still serialized in the JSON output.
    pub const CSV_HEADER: &'static str =
        "experiment,params,estimate,std_error,theory,theory_source,pass,tolerance";

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{:.17e},{:.17e},{:.17e},{},{},{}",
            self.experiment,
            self.params.replace(',', ";"),
            self.estimate,
            self.std_error,
            self.theory,
            self.theory_source.replace(',', ";"),
            self.pass,
            self.tolerance.replace(',', ";")
        )
    }
}

/// Renders rows as a CSV document with the fixed column order.
pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(ReportRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_estimate_mean_and_se() {
        let est = MomentEstimate::from_samples("t", 0, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(est.value, 2.5);
        let var = ((1.5f64).powi(2) + 0.25 + 0.25 + 2.25) / 3.0;
        assert!((est.std_error - (var / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn moment_estimate_json_shape() {
        let est = MomentEstimate::exact("e_R(0,0)", 3, 1.0);
        let json = serde_json::to_value(&est).unwrap();
        let obj = json.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(keys, vec!["n_samples", "seed", "std_error", "target", "value"]);
    }

    #[test]
    fn csv_is_comma_safe() {
        let row = ReportRow {
            experiment: "constants".into(),
            params: "n=3, k=2".into(),
            estimate: 1.0,
            std_error: 0.0,
            theory: 1.0,
            theory_source: "gamma product".into(),
            pass: true,
            tolerance: "1e-12 abs".into(),
            wall_ms: 1,
        };
        assert_eq!(row.to_csv_line().split(',').count(), 8);
    }
}
