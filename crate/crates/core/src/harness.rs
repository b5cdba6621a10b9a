//! Experiment orchestration: configuration, dispatch, reporting.
//!
//! Every experiment is addressed by the subcommand names of the CLI
//! (`constants`, `count-roots`, `components`, `crit-density`, `lefschetz`,
//! `certify-pair`, `pair-constants`, `stability`, `barrier`, `chern`,
//! `acceptance`). A run is deterministic in its master seed: per-trial RNGs
//! are derived by counter splitting, trials are reduced order-independently,
//! and the CSV output carries no timing, so identical configurations give
//! byte-identical files.

pub mod acceptance;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde_json::Value;
use thiserror::Error;

use crate::constants::{
    self, betti_upper_bound, crit_density, lefschetz_constant, lefschetz_factor_chain,
    mehta_closed, v_rescaled, vol_fs_rp, zero_density_kn,
};
use crate::chern;
use crate::ensembles::{estimate_e_r, sample_kostlan};
use crate::exec::ExecMode;
use crate::morse_crit::{self, MorseFunctionSpec};
use crate::regular_pairs::{
    barrier_probability_mc, builtin_product_pair, builtin_sphere_pair, certify, pair_constants,
    stability_trial, RegularPair,
};
use crate::report::{rows_to_csv, MomentEstimate, ReportRow};
use crate::zero_locus::{count_components_rp2_mode, count_projective_zeros};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("experiment failed: {0}")]
    Failed(String),
}

/// A parsed experiment request.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub mode: ExecMode,
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>, seed: u64) -> Self {
        ExperimentConfig {
            experiment: experiment.into(),
            params: BTreeMap::new(),
            seed,
            mode: ExecMode::default(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    fn u64_param(&self, key: &str) -> Result<u64, HarnessError> {
        self.params
            .get(key)
            .and_then(|v| v.as_u64())
            .ok_or_else(|| HarnessError::Usage(format!("missing or invalid parameter `{key}`")))
    }

    fn u64_or(&self, key: &str, default: u64) -> Result<u64, HarnessError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_u64()
                .ok_or_else(|| HarnessError::Usage(format!("invalid parameter `{key}`"))),
        }
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64, HarnessError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(v) => v
                .as_f64()
                .ok_or_else(|| HarnessError::Usage(format!("invalid parameter `{key}`"))),
        }
    }

    fn str_or(&self, key: &str, default: &str) -> String {
        self.params
            .get(key)
            .and_then(|v| v.as_str())
            .unwrap_or(default)
            .to_string()
    }
}

/// Result of one experiment: summary rows plus an optional per-trial CSV
/// artifact (header, lines).
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub rows: Vec<ReportRow>,
    pub artifact_csv: Option<String>,
    pub extra_json: Option<Value>,
}

impl RunOutput {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn summary_csv(&self) -> String {
        rows_to_csv(&self.rows)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "rows": self.rows,
            "extra": self.extra_json,
        })
    }
}

fn row(
    experiment: &str,
    params: String,
    estimate: f64,
    std_error: f64,
    theory: f64,
    source: &str,
    pass: bool,
    tolerance: String,
    wall: Instant,
) -> ReportRow {
    ReportRow {
        experiment: experiment.to_string(),
        params,
        estimate,
        std_error,
        theory,
        theory_source: source.to_string(),
        pass,
        tolerance,
        wall_ms: wall.elapsed().as_millis() as u64,
    }
}

fn within_se(est: &MomentEstimate, theory: f64, n_se: f64) -> bool {
    (est.value - theory).abs() <= n_se * est.std_error
}

/// Dispatches a configuration to its owning module.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    match config.experiment.as_str() {
        "constants" => run_constants(config),
        "count-roots" => run_count_roots(config),
        "components" => run_components(config),
        "crit-density" => run_crit_density(config),
        "lefschetz" => run_lefschetz(config),
        "certify-pair" => run_certify_pair(config),
        "pair-constants" => run_pair_constants(config),
        "stability" => run_stability(config),
        "barrier" => run_barrier(config),
        "chern" => run_chern(config),
        "acceptance" => {
            let report = acceptance::run_all(config.seed, 1.0, config.mode);
            Ok(report.into_run_output())
        }
        other => Err(HarnessError::Usage(format!("unknown experiment `{other}`"))),
    }
}

fn run_constants(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let n = config.u64_param("n")? as u32;
    let k = config.u64_param("k")? as u32;
    if !(1 <= k && k <= n) {
        return Err(HarnessError::Usage("need 1 ≤ k ≤ n".into()));
    }
    let mut rows = Vec::new();
    let p = format!("n={n};k={k}");
    rows.push(row(
        "constants",
        format!("{p};quantity=vol_fs_rp_n"),
        vol_fs_rp(n),
        0.0,
        vol_fs_rp(n),
        "fubini-study-volume",
        true,
        "exact".into(),
        t0,
    ));
    rows.push(row(
        "constants",
        format!("{p};quantity=v_rescaled"),
        v_rescaled(n, k),
        0.0,
        v_rescaled(n, k),
        "grassmannian-volume",
        true,
        "exact".into(),
        t0,
    ));
    let e_closed = mehta_closed(k - 1, n - k + 2);
    rows.push(row(
        "constants",
        format!("{p};quantity=matrix_moment"),
        e_closed,
        0.0,
        e_closed,
        "mehta-gamma-product",
        true,
        "exact".into(),
        t0,
    ));
    // Γ-product identity residual
    let identity_rhs = (constants::ln_fact(n as u64 - 1)
        - constants::ln_fact((n - k) as u64)
        - (k as f64 - 1.0) * 2.0f64.ln())
    .exp();
    let residual = (v_rescaled(n, k) * e_closed - identity_rhs).abs();
    rows.push(row(
        "constants",
        format!("{p};quantity=identity_residual"),
        residual,
        0.0,
        0.0,
        "gamma-product-identity",
        residual <= 1e-12,
        "1e-12 abs".into(),
        t0,
    ));
    if k < n {
        let m = (n - k) as usize;
        for i in 0..=(n - k) {
            let e_r = if m == 0 {
                MomentEstimate::exact("e_R(0,0)", config.seed, 1.0)
            } else {
                estimate_e_r(i as usize, m - i as usize, 100_000, config.seed, config.mode)
                    .map_err(|e| HarnessError::Failed(e.to_string()))?
            };
            let dens = crit_density(n, k, i, e_r.value)
                .map_err(|e| HarnessError::Failed(e.to_string()))?;
            rows.push(row(
                "constants",
                format!("{p};quantity=crit_density;i={i}"),
                dens.value,
                e_r.std_error,
                dens.value,
                "crit-density-limit",
                true,
                "informational".into(),
                t0,
            ));
            let bound = betti_upper_bound(n, k, i, e_r.value)
                .map_err(|e| HarnessError::Failed(e.to_string()))?;
            rows.push(row(
                "constants",
                format!("{p};quantity=betti_upper_bound;i={i}"),
                bound,
                e_r.std_error,
                bound,
                "betti-upper-bound",
                true,
                "informational".into(),
                t0,
            ));
        }
    } else {
        rows.push(row(
            "constants",
            format!("{p};quantity=zero_density"),
            zero_density_kn(n),
            0.0,
            1.0 / vol_fs_rp(n),
            "zero-count-limit",
            (zero_density_kn(n) * vol_fs_rp(n) - 1.0).abs() < 1e-12,
            "1e-12 abs".into(),
            t0,
        ));
    }
    Ok(RunOutput {
        rows,
        ..Default::default()
    })
}

fn run_count_roots(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let n = config.u64_or("n", 1)? as u32;
    let k = config.u64_or("k", n as u64)? as u32;
    let d = config.u64_param("d")? as u32;
    let trials = config.u64_param("trials")?;
    if k != n || !(n == 1 || n == 2) {
        return Err(HarnessError::Usage("count-roots needs k = n ∈ {1, 2}".into()));
    }
    if n == 2 && d > 24 {
        return Err(HarnessError::Usage("count-roots n=2 supports d ≤ 24".into()));
    }
    let seed = config.seed;
    let results: Vec<(u64, Option<usize>, &str)> = crate::exec::map_trials(
        trials as usize,
        config.mode,
        |t| {
            let s = sample_kostlan(n, d, k, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
            match count_projective_zeros(&s) {
                Ok(r) if r.unresolved == 0 => (t as u64, Some(r.count), ""),
                Ok(_) => (t as u64, None, "unresolved_bracket"),
                Err(_) => (t as u64, None, "degenerate"),
            }
        },
    );
    let mut csv = String::from("trial,seed,count,certified,discarded_reason\n");
    let mut counts = Vec::new();
    for (t, c, reason) in &results {
        let certified = c.is_some();
        let count = c.unwrap_or(0);
        let _ = writeln!(csv, "{t},{},{count},{certified},{reason}", seed ^ t.wrapping_mul(0x9e3779b97f4a7c15));
        if let Some(c) = c {
            counts.push(*c as f64);
        }
    }
    if counts.is_empty() {
        return Err(HarnessError::Failed("all trials discarded".into()));
    }
    let discard_frac = 1.0 - counts.len() as f64 / trials as f64;
    if discard_frac > 0.05 {
        return Err(HarnessError::Failed(format!(
            "discard fraction {discard_frac:.3} exceeds 5%"
        )));
    }
    let est = MomentEstimate::from_samples(format!("roots(n={n},d={d})"), seed, &counts);
    let theory = (d as f64).powi(n as i32).sqrt();
    let pass = within_se(&est, theory, 3.0);
    let rows = vec![row(
        "count-roots",
        format!("n={n};k={k};d={d};trials={trials}"),
        est.value,
        est.std_error,
        theory,
        "kostlan-shub-smale-mean",
        pass,
        "3 SE".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        artifact_csv: Some(csv),
        extra_json: None,
    })
}

fn run_components(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let d = config.u64_param("d")? as u32;
    let trials = config.u64_param("trials")?;
    let resolution = config.u64_or("resolution", 1 << 14)? as usize;
    if d > 24 {
        return Err(HarnessError::Usage("components supports d ≤ 24".into()));
    }
    let seed = config.seed;
    let results: Vec<(u64, Option<usize>, bool)> =
        crate::exec::map_trials(trials as usize, config.mode, |t| {
            let s = sample_kostlan(2, d, 1, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
            match count_components_rp2_mode(s.map.component(0), resolution, ExecMode::Sequential) {
                Ok(r) => (t as u64, Some(r.b0), r.certified),
                Err(_) => (t as u64, None, false),
            }
        });
    let mut csv = String::from("trial,seed,count,certified,discarded_reason\n");
    let mut vals = Vec::new();
    for (t, b0, certified) in &results {
        let reason = if *certified { "" } else { "uncertified" };
        let _ = writeln!(
            csv,
            "{t},{},{},{certified},{reason}",
            seed ^ t.wrapping_mul(0x9e3779b97f4a7c15),
            b0.unwrap_or(0)
        );
        if *certified {
            vals.push(b0.unwrap() as f64 / d as f64);
        }
    }
    let uncert = 1.0 - vals.len() as f64 / trials as f64;
    if uncert > 0.05 {
        return Err(HarnessError::Failed(format!(
            "uncertified fraction {uncert:.3} exceeds 5%"
        )));
    }
    let est = MomentEstimate::from_samples(format!("b0(d={d})"), seed, &vals);
    let e_r = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    let bound = betti_upper_bound(2, 1, 0, e_r).unwrap();
    let pass = est.value <= bound * 1.1;
    let rows = vec![row(
        "components",
        format!("d={d};trials={trials};resolution={resolution}"),
        est.value,
        est.std_error,
        bound,
        "betti-upper-bound",
        pass,
        "one-sided ≤ bound·1.1".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        artifact_csv: Some(csv),
        extra_json: None,
    })
}

fn run_crit_density(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let d = config.u64_param("d")? as u32;
    let trials = config.u64_param("trials")?;
    let indices: Vec<usize> = match config.params.get("index").and_then(|v| v.as_u64()) {
        Some(i) => vec![i as usize],
        None => vec![0, 1],
    };
    let seed = config.seed;
    let spec = MorseFunctionSpec::default_for(2);
    let results: Vec<(u64, Option<(usize, usize)>, String)> =
        crate::exec::map_trials(trials as usize, config.mode, |t| {
            let s = sample_kostlan(2, d, 1, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
            match morse_crit::find_crit_points(&s, &spec) {
                Ok(recs) => {
                    let n0 = recs.iter().filter(|r| r.morse_index == 0).count();
                    let n1 = recs.len() - n0;
                    (t as u64, Some((n0, n1)), String::new())
                }
                Err(flag) => (t as u64, None, format!("{flag:?}")),
            }
        });
    let mut csv = String::from("trial,seed,crit0,crit1,chi_balanced,discarded_reason\n");
    let mut per_index: Vec<Vec<f64>> = vec![Vec::new(), Vec::new()];
    for (t, counts, reason) in &results {
        match counts {
            Some((n0, n1)) => {
                let _ = writeln!(
                    csv,
                    "{t},{},{n0},{n1},{},",
                    seed ^ t.wrapping_mul(0x9e3779b97f4a7c15),
                    n0 == n1
                );
                per_index[0].push(*n0 as f64 / d as f64);
                per_index[1].push(*n1 as f64 / d as f64);
            }
            None => {
                let _ = writeln!(
                    csv,
                    "{t},{},0,0,false,{reason}",
                    seed ^ t.wrapping_mul(0x9e3779b97f4a7c15)
                );
            }
        }
    }
    let kept = per_index[0].len();
    let frac = 1.0 - kept as f64 / trials as f64;
    if frac > 0.05 {
        return Err(HarnessError::Failed(format!(
            "discard fraction {frac:.3} exceeds 5%"
        )));
    }
    let target = 2.0f64.sqrt() / std::f64::consts::PI;
    let mut rows = Vec::new();
    for &i in &indices {
        let est = MomentEstimate::from_samples(format!("crit(d={d},i={i})"), seed, &per_index[i]);
        let tol = 3.0 * est.std_error + 0.1 * target;
        rows.push(row(
            "crit-density",
            format!("d={d};index={i};trials={trials}"),
            est.value,
            est.std_error,
            target,
            "crit-density-limit",
            (est.value - target).abs() <= tol,
            "3 SE + 10% asymptotic slack".into(),
            t0,
        ));
    }
    Ok(RunOutput {
        rows,
        artifact_csv: Some(csv),
        extra_json: None,
    })
}

fn run_lefschetz(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let d = config.u64_param("d")? as u32;
    if !(2..=10).contains(&d) {
        return Err(HarnessError::Usage("lefschetz needs 2 ≤ d ≤ 10".into()));
    }
    let trials = config.u64_param("trials")?;
    let (est, results) = morse_crit::lefschetz_success_rate(d, trials, config.seed, config.mode);
    let mut csv = String::from("trial,count,expected,ok\n");
    for (t, r) in results.iter().enumerate() {
        let _ = writeln!(csv, "{t},{},{},{}", r.count, r.expected, r.ok);
    }
    let mean_norm =
        results.iter().map(|r| r.count as f64).sum::<f64>() / results.len() as f64 / (d * d) as f64;
    let rows = vec![
        row(
            "lefschetz",
            format!("d={d};trials={trials};quantity=exact_rate"),
            est.value,
            est.std_error,
            1.0,
            "lefschetz-class-count",
            est.value >= 0.95,
            "≥ 95% exact d(d-1)".into(),
            t0,
        ),
        row(
            "lefschetz",
            format!("d={d};trials={trials};quantity=normalized_count"),
            mean_norm,
            0.0,
            1.0 - 1.0 / d as f64,
            "lefschetz-class-count",
            (0.6..=1.0).contains(&mean_norm),
            "in [0.6, 1.0]".into(),
            t0,
        ),
    ];
    Ok(RunOutput {
        rows,
        artifact_csv: Some(csv),
        extra_json: None,
    })
}

fn parse_builtin(config: &ExperimentConfig) -> Result<RegularPair, HarnessError> {
    let builtin = config.str_or("builtin", "sphere");
    let n = config.u64_param("n")? as u32;
    let k = config.u64_param("k")? as u32;
    match builtin.as_str() {
        "sphere" => Ok(builtin_sphere_pair(n, k)),
        "product" => {
            let i = config.u64_or("i", 0)? as u32;
            if i > n - k {
                return Err(HarnessError::Usage("need i ≤ n - k".into()));
            }
            Ok(builtin_product_pair(n, k, i))
        }
        other => Err(HarnessError::Usage(format!("unknown builtin `{other}`"))),
    }
}

fn run_certify_pair(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let pair = parse_builtin(config)?;
    let delta = config.f64_or("delta", 0.75)?;
    let eps = config.f64_or("eps", 1.0)?;
    let outcome = certify(&pair, delta, eps, None);
    let (pass, margin) = match &outcome {
        Ok(cert) => (true, cert.interior_margin),
        Err(_) => (false, f64::NAN),
    };
    let rows = vec![row(
        "certify-pair",
        format!("pair={};delta={delta};eps={eps}", pair.label),
        margin,
        0.0,
        eps,
        "transversality-certificate",
        pass,
        "margins hold".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        extra_json: Some(serde_json::json!({ "certificate": outcome.ok() })),
        ..Default::default()
    })
}

fn run_pair_constants(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let pair = parse_builtin(config)?;
    let delta = config.f64_or("delta", if config.str_or("builtin", "sphere") == "sphere" { 0.75 } else { 0.45 })?;
    let eps = config.f64_or("eps", 1.0)?;
    let cert = certify(&pair, delta, eps, None)
        .map_err(|e| HarnessError::Failed(format!("certification failed: {e:?}")))?;
    let pc = pair_constants(&pair, &[cert]).map_err(|e| HarnessError::Failed(e.to_string()))?;
    let n = pair.n() as f64;
    let bound = if pair.label.starts_with("sphere") {
        53.0 + 5.0 * n
    } else {
        81.0 + 6.0 * n
    };
    let rows = vec![row(
        "pair-constants",
        format!("pair={};delta={delta};eps={eps}", pair.label),
        pc.log_tau,
        0.0,
        bound,
        "tau-pipeline-bound",
        pc.log_tau <= bound,
        "log τ ≤ paper bound".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        extra_json: Some(serde_json::to_value(&pc).unwrap()),
        ..Default::default()
    })
}

fn run_stability(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let trials = config.u64_param("trials")?;
    let pair = builtin_sphere_pair(2, 1);
    let cert = certify(&pair, 0.75, 1.0, None)
        .map_err(|e| HarnessError::Failed(format!("certification failed: {e:?}")))?;
    let seed = config.seed;
    let oks: Vec<bool> = crate::exec::map_trials(trials as usize, config.mode, |t| {
        stability_trial(&pair, &cert, seed, t as u64)
    });
    let successes = oks.iter().filter(|b| **b).count();
    let rows = vec![row(
        "stability",
        format!("pair={};trials={trials}", pair.label),
        successes as f64,
        0.0,
        trials as f64,
        "perturbation-stability",
        successes as u64 == trials,
        "all trials preserve the count".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        ..Default::default()
    })
}

fn run_barrier(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let d = config.u64_param("d")? as u32;
    let r = config.f64_or("r", 2.0)?;
    let trials = config.u64_param("trials")?;
    let est = barrier_probability_mc(d, r, trials, config.seed, config.mode)
        .map_err(|e| HarnessError::Usage(e.to_string()))?;
    let rows = vec![row(
        "barrier",
        format!("d={d};R={r};trials={trials}"),
        est.value,
        est.std_error,
        0.0,
        "presence-probability",
        est.value > 0.0,
        "positivity".into(),
        t0,
    )];
    Ok(RunOutput {
        rows,
        ..Default::default()
    })
}

fn run_chern(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let t0 = Instant::now();
    let n = config.u64_param("n")? as u32;
    let k = config.u64_param("k")? as u32;
    let d = config.u64_or("d", 3)? as i128;
    let chi = chern::euler_char(n, k, d).map_err(|e| HarnessError::Usage(e.to_string()))?;
    let lead = chern::leading_coefficient(n, k).map_err(|e| HarnessError::Usage(e.to_string()))?;
    let expected_lead = if (n - k) % 2 == 0 {
        lefschetz_constant(n, k)
    } else {
        -lefschetz_constant(n, k)
    };
    let rows = vec![
        row(
            "chern",
            format!("n={n};k={k};d={d};quantity=euler_characteristic"),
            chi as f64,
            0.0,
            chi as f64,
            "euler-adjunction",
            true,
            "exact integer".into(),
            t0,
        ),
        row(
            "chern",
            format!("n={n};k={k};quantity=leading_coefficient"),
            lead as f64,
            0.0,
            expected_lead,
            "euler-adjunction",
            lead as f64 == expected_lead,
            "exact".into(),
            t0,
        ),
    ];
    // factor-chain consistency, informational
    let chain = lefschetz_factor_chain(n, k);
    let rows = {
        let mut rows = rows;
        rows.push(row(
            "chern",
            format!("n={n};k={k};quantity=lefschetz_chain"),
            chain,
            0.0,
            lefschetz_constant(n, k),
            "lefschetz-class-count",
            (chain - lefschetz_constant(n, k)).abs() < 1e-8,
            "1e-8 abs".into(),
            t0,
        ));
        rows
    };
    Ok(RunOutput {
        rows,
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_constants_and_chern() {
        let cfg = ExperimentConfig::new("constants", 5).with("n", 3).with("k", 2);
        let out = run(&cfg).unwrap();
        assert!(out.all_pass());
        assert!(out.rows.len() >= 4);

        let cfg = ExperimentConfig::new("chern", 0).with("n", 2).with("k", 1).with("d", 4);
        let out = run(&cfg).unwrap();
        assert!(out.all_pass());
        assert_eq!(out.rows[0].estimate, -4.0);
    }

    #[test]
    fn usage_errors_name_the_field() {
        let cfg = ExperimentConfig::new("constants", 5);
        match run(&cfg) {
            Err(HarnessError::Usage(msg)) => assert!(msg.contains("`n`")),
            other => panic!("expected usage error, got {other:?}"),
        }
        let cfg = ExperimentConfig::new("nonsense", 5);
        assert!(matches!(run(&cfg), Err(HarnessError::Usage(_))));
    }

    #[test]
    fn count_roots_is_deterministic_byte_for_byte() {
        let cfg = ExperimentConfig::new("count-roots", 7)
            .with("n", 1)
            .with("k", 1)
            .with("d", 25)
            .with("trials", 50);
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.artifact_csv, b.artifact_csv);
        assert_eq!(a.summary_csv(), b.summary_csv());
        assert!(a.rows[0].pass);
    }

    #[test]
    fn certify_pair_row() {
        let cfg = ExperimentConfig::new("certify-pair", 0)
            .with("builtin", "sphere")
            .with("n", 2)
            .with("k", 1)
            .with("delta", 0.75)
            .with("eps", 1.0);
        let out = run(&cfg).unwrap();
        assert!(out.all_pass());
    }
}
