//! Random matrix and random section ensembles with their moment estimators.
//!
//! Conventions, fixed once and validated by simulation:
//!
//! * symmetric (GOE-type) matrices: diagonal entries N(0,1), off-diagonal
//!   N(0,1/2), density ∝ exp(-‖A‖₂²/2);
//! * square (Ginibre-type) matrices: all entries i.i.d. N(0,1/2), density
//!   ∝ exp(-‖A‖₂²), the probability normalization of that density;
//! * complex symmetric matrices: diagonal complex Gaussian with E|a|² = 2,
//!   off-diagonal with E|a|² = 1;
//! * Kostlan sections: homogeneous degree-d polynomial k-tuples in n+1
//!   variables whose monomial coefficients are independent centered
//!   Gaussians with variance (1/2)·d!/(i₀!⋯i_n!).
//!
//! Every estimator takes an explicit seed and derives per-chunk RNGs, so
//! results are reproducible and order-independent under parallel execution.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::constants::ln_fact;
use crate::exec::{map_trials, trial_rng, ExecMode};
use crate::linalg::{complex_det_small, det_small, sym_eigenvalues};
use crate::poly::{MultiPoly, PolyMap};
use crate::report::MomentEstimate;
use num_complex::Complex64;
use thiserror::Error;

/// Eigenvalues within this of zero make a signature ambiguous; such draws
/// are discarded (a measure-zero event).
pub const SIGNATURE_TOL: f64 = 1e-10;

const CHUNK: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnsembleError {
    #[error("n_samples must be positive")]
    NoSamples,
    #[error("matrix has an eigenvalue within {SIGNATURE_TOL} of zero")]
    NearSingular,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

/// Symmetric m×m matrix with the GOE-type convention, as dense rows.
pub fn sample_sym<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; m]; m];
    let half = 0.5f64.sqrt();
    for i in 0..m {
        for j in i..m {
            let g: f64 = rng.sample(StandardNormal);
            if i == j {
                a[i][j] = g;
            } else {
                a[i][j] = half * g;
                a[j][i] = half * g;
            }
        }
    }
    a
}

/// Counts of (positive, negative) eigenvalues. Near-singular draws error.
pub fn signature(a: &[Vec<f64>]) -> Result<(usize, usize), EnsembleError> {
    let eig = sym_eigenvalues(a);
    if eig.iter().any(|l| l.abs() < SIGNATURE_TOL) {
        return Err(EnsembleError::NearSingular);
    }
    let pos = eig.iter().filter(|l| **l > 0.0).count();
    let neg = eig.len() - pos;
    Ok((pos, neg))
}

fn chunked_mean(
    target: String,
    seed: u64,
    stream: &str,
    n_samples: u64,
    mode: ExecMode,
    per_sample: impl Fn(&mut rand_chacha::ChaCha12Rng) -> Option<f64> + Sync,
) -> MomentEstimate {
    let n_chunks = ((n_samples as usize) + CHUNK - 1) / CHUNK;
    let parts: Vec<(Vec<f64>, u64)> = map_trials(n_chunks, mode, |c| {
        let mut rng = trial_rng(seed, stream, c as u64);
        let lo = c * CHUNK;
        let hi = ((c + 1) * CHUNK).min(n_samples as usize);
        let mut vals = Vec::with_capacity(hi - lo);
        let mut discarded = 0u64;
        for _ in lo..hi {
            match per_sample(&mut rng) {
                Some(v) => vals.push(v),
                None => discarded += 1,
            }
        }
        (vals, discarded)
    });
    let mut all = Vec::with_capacity(n_samples as usize);
    let mut discarded = 0;
    for (vals, d) in parts {
        all.extend(vals);
        discarded += d;
    }
    let mut est = MomentEstimate::from_samples(target, seed, &all);
    est.n_samples = all.len() as u64;
    est.discarded = discarded;
    est
}

/// Monte Carlo estimate of e_R(i,j): the mean of |det A| restricted to the
/// signature-(i,j) cone, over symmetric (i+j)×(i+j) matrices.
pub fn estimate_e_r(
    i: usize,
    j: usize,
    n_samples: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<MomentEstimate, EnsembleError> {
    let m = i + j;
    let target = format!("e_R({i},{j})");
    if m == 0 {
        // Empty matrix: |det| = 1 on the single signature (0,0).
        return Ok(MomentEstimate::exact(target, seed, 1.0));
    }
    if n_samples == 0 {
        return Err(EnsembleError::NoSamples);
    }
    Ok(chunked_mean(target, seed, "e_R", n_samples, mode, |rng| {
        let a = sample_sym(m, rng);
        match signature(&a) {
            Err(_) => None,
            Ok((pos, neg)) => {
                if pos == i && neg == j {
                    let eig = sym_eigenvalues(&a);
                    Some(eig.iter().map(|l| l.abs()).product())
                } else {
                    Some(0.0)
                }
            }
        }
    }))
}

/// Mean of |det A| over symmetric m×m matrices (all signatures).
pub fn estimate_sym_absdet(m: usize, n_samples: u64, seed: u64, mode: ExecMode) -> MomentEstimate {
    let target = format!("E_sym({m})|det|");
    if m == 0 {
        return MomentEstimate::exact(target, seed, 1.0);
    }
    chunked_mean(target, seed, "e_R", n_samples, mode, |rng| {
        let a = sample_sym(m, rng);
        if signature(&a).is_err() {
            return None;
        }
        let eig = sym_eigenvalues(&a);
        Some(eig.iter().map(|l| l.abs()).product())
    })
}

/// Monte Carlo mean of |det|^p over m×m matrices with i.i.d. N(0,1/2)
/// entries; the closed form lives in `constants::mehta_closed`.
pub fn mehta_mc(m: usize, p: u32, n_samples: u64, seed: u64, mode: ExecMode) -> MomentEstimate {
    let target = format!("mehta({m},{p})");
    if m == 0 {
        return MomentEstimate::exact(target, seed, 1.0);
    }
    let half = 0.5f64.sqrt();
    chunked_mean(target, seed, "mehta", n_samples, mode, |rng| {
        let mut a = vec![0.0; m * m];
        for v in a.iter_mut() {
            let g: f64 = rng.sample(StandardNormal);
            *v = half * g;
        }
        Some(det_small(&a, m).abs().powi(p as i32))
    })
}

/// Monte Carlo mean of |det|² over complex symmetric m×m matrices
/// (diagonal E|a|² = 2, off-diagonal E|a|² = 1).
pub fn estimate_e_c(m: usize, n_samples: u64, seed: u64, mode: ExecMode) -> MomentEstimate {
    let target = format!("e_C({m})");
    if m == 0 {
        return MomentEstimate::exact(target, seed, 1.0);
    }
    let half = 0.5f64.sqrt();
    chunked_mean(target, seed, "e_C", n_samples, mode, |rng| {
        let mut a = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for j in i..m {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                let z = if i == j {
                    Complex64::new(re, im)
                } else {
                    Complex64::new(half * re, half * im)
                };
                a[i * m + j] = z;
                a[j * m + i] = z;
            }
        }
        Some(complex_det_small(&a, m).norm_sqr())
    })
}

/// A random homogeneous PolyMap from the Kostlan ensemble.
#[derive(Debug, Clone)]
pub struct KostlanSample {
    pub map: PolyMap,
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub seed: u64,
}

/// Enumerates degree-d exponent vectors over `nvars` variables in graded-lex
/// order of the stored multi-index.
pub fn degree_exponents(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(out: &mut Vec<Vec<u32>>, prefix: &mut Vec<u32>, left: u32, pos: usize, nvars: usize) {
        if pos == nvars - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(out, prefix, left - e, pos + 1, nvars);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), d, 0, nvars);
    out.sort_by(|a, b| a.cmp(b));
    out
}

/// ln of the multinomial weight d!/(i₀!⋯i_n!).
fn ln_multinomial(d: u32, exps: &[u32]) -> f64 {
    ln_fact(d as u64) - exps.iter().map(|&e| ln_fact(e as u64)).sum::<f64>()
}

/// Draws a Kostlan section: k independent components, each a homogeneous
/// degree-d polynomial in n+1 variables with coefficient variances
/// (1/2)·(multinomial weight). Deterministic in the seed.
pub fn sample_kostlan(n: u32, d: u32, k: u32, seed: u64) -> KostlanSample {
    assert!(n >= 1 && d >= 1 && 1 <= k && k <= n, "sample_kostlan out of range");
    let exps = degree_exponents(n as usize + 1, d);
    let mut comps = Vec::with_capacity(k as usize);
    for comp in 0..k {
        let mut rng = trial_rng(seed, "kostlan", comp as u64);
        let terms: Vec<(Vec<u32>, f64)> = exps
            .iter()
            .map(|e| {
                let g: f64 = rng.sample(StandardNormal);
                let sd = (0.5 * ln_multinomial(d, e).exp()).sqrt();
                (e.clone(), sd * g)
            })
            .collect();
        comps.push(MultiPoly::new(n as usize + 1, terms).unwrap());
    }
    KostlanSample {
        map: PolyMap::new(comps).unwrap(),
        n,
        d,
        k,
        seed,
    }
}

/// Complex Kostlan component: coefficients are complex Gaussians with
/// E|a|² = (multinomial weight). Returned as parallel (exps, coef) arrays.
pub fn sample_kostlan_complex(n: u32, d: u32, seed: u64) -> Vec<(Vec<u32>, Complex64)> {
    let exps = degree_exponents(n as usize + 1, d);
    let mut rng = trial_rng(seed, "kostlan-cx", 0);
    let half = 0.5f64.sqrt();
    exps.into_iter()
        .map(|e| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let sd = (ln_multinomial(d, &e).exp()).sqrt();
            (e, Complex64::new(half * sd * re, half * sd * im))
        })
        .collect()
}

/// Grid estimate of E(sup over B(x, R/√d) of |σ|²)/dⁿ in the affine chart at
/// x = [1:0:…:0], for comparison against the 6·k·δ_L·ρ_R bound (δ_L = 1 on
/// projective space).
///
/// The field here is normalized so that each vector of the L²-orthonormal
/// monomial basis carries unit variance — coefficient variance
/// C(n+d, n)·d!/I! — which makes the R→0 limit of the estimate equal δ_L.
/// Counting statistics are insensitive to this overall scale; only this
/// sup-norm check sees it. The ball of radius R/√d in the chart isometric at
/// x corresponds to affine radius √π·R/√d.
pub fn mc_sup_norm_check(
    n: u32,
    k: u32,
    d: u32,
    r: f64,
    n_samples: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<MomentEstimate, EnsembleError> {
    if !(n == 1 || n == 2) || k < 1 || k > n {
        return Err(EnsembleError::OutOfRange(format!("(n,k)=({n},{k})")));
    }
    if (d as f64) < 4.0 * r * r {
        return Err(EnsembleError::OutOfRange(format!(
            "d = {d} too small for R = {r}: need d ≥ 4R²"
        )));
    }
    if n_samples == 0 {
        return Err(EnsembleError::NoSamples);
    }
    // Affine exponents of the dehomogenized chart monomials and their ln
    // variance weights: C(n+d,n)·d!/(i₀!…i_n!) with i₀ the chart slot.
    let exps = degree_exponents(n as usize + 1, d);
    let ln_binom = ln_fact((n + d) as u64) - ln_fact(n as u64) - ln_fact(d as u64);
    let weights: Vec<(Vec<u32>, f64)> = exps
        .iter()
        .map(|e| {
            let sd = (0.5 * (ln_binom + ln_multinomial(d, e))).exp();
            (e[1..].to_vec(), sd)
        })
        .collect();
    // Grid of the ball: 32ⁿ lattice points plus the center.
    let radius = std::f64::consts::PI.sqrt() * r / (d as f64).sqrt();
    let mut points: Vec<Vec<f64>> = vec![vec![0.0; n as usize]];
    match n {
        1 => {
            for i in 0..32 {
                let t = -radius + 2.0 * radius * (i as f64 + 0.5) / 32.0;
                points.push(vec![t]);
            }
        }
        _ => {
            for i in 0..32 {
                for j in 0..32 {
                    let u = -radius + 2.0 * radius * (i as f64 + 0.5) / 32.0;
                    let v = -radius + 2.0 * radius * (j as f64 + 0.5) / 32.0;
                    if u * u + v * v <= radius * radius {
                        points.push(vec![u, v]);
                    }
                }
            }
        }
    }
    // The grid and exponent set are fixed, so the monomial values are
    // precomputed once; each trial is then a dot product per grid point.
    let n_terms = weights.len();
    let mono: Vec<f64> = points
        .iter()
        .flat_map(|pt| {
            weights.iter().map(move |(e, _)| {
                let mut t = 1.0;
                for (x, &ee) in pt.iter().zip(e.iter()) {
                    if ee > 0 {
                        t *= x.powi(ee as i32);
                    }
                }
                t
            })
        })
        .collect();
    let sds: Vec<f64> = weights.iter().map(|(_, sd)| *sd).collect();
    let dn = (d as f64).powi(n as i32);
    let target = format!("sup_norm(n={n},k={k},d={d},R={r})");
    Ok(chunked_mean(target, seed, "sup-norm", n_samples, mode, |rng| {
        let coefs: Vec<Vec<f64>> = (0..k)
            .map(|_| {
                sds.iter()
                    .map(|sd| {
                        let g: f64 = rng.sample(StandardNormal);
                        sd * g
                    })
                    .collect()
            })
            .collect();
        let mut sup = 0.0f64;
        for prow in mono.chunks_exact(n_terms) {
            let mut norm_sq = 0.0;
            for comp in &coefs {
                let val: f64 = prow.iter().zip(comp).map(|(m, c)| m * c).sum();
                norm_sq += val * val;
            }
            sup = sup.max(norm_sq);
        }
        Some(sup / dn)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::ExecMode;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    const MODE: ExecMode = ExecMode::Parallel;

    #[test]
    fn sym_convention_variances() {
        let n = 100_000;
        let mut rng = trial_rng(11, "conv", 0);
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n);
        for _ in 0..n {
            let a = sample_sym(2, &mut rng);
            diag.push(a[0][0] * a[0][0]);
            off.push(a[0][1] * a[0][1]);
            assert_eq!(a[0][1], a[1][0]);
        }
        let est_d = MomentEstimate::from_samples("var_diag", 0, &diag);
        let est_o = MomentEstimate::from_samples("var_off", 0, &off);
        assert!(est_d.distance_in_se(1.0, 0.0) < 3.0);
        assert!(est_o.distance_in_se(0.5, 0.0) < 3.0);
    }

    #[test]
    fn signature_small_cases() {
        let id3 = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        assert_eq!(signature(&id3).unwrap(), (3, 0));
        let mixed = vec![vec![1.0, 0.0], vec![0.0, -2.0]];
        assert_eq!(signature(&mixed).unwrap(), (1, 1));
        let zero1 = vec![vec![0.0]];
        assert_eq!(signature(&zero1).unwrap_err(), EnsembleError::NearSingular);
    }

    #[test]
    fn e_r_exact_empty_and_one_dim() {
        let est = estimate_e_r(0, 0, 10, 3, MODE).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);

        // e_R(1,0) = (1/2) E|N(0,1)| = 1/√(2π)
        let est = estimate_e_r(1, 0, 200_000, 5, MODE).unwrap();
        assert!(est.distance_in_se(1.0 / (2.0 * PI).sqrt(), 0.0) < 3.0);
        assert_eq!(estimate_e_r(1, 0, 0, 5, MODE).unwrap_err(), EnsembleError::NoSamples);
    }

    #[test]
    fn e_r_signature_partition_consistency() {
        // e_R(1,1) should equal E|det| minus the definite-cone contributions.
        let n = 200_000u64;
        let full = estimate_sym_absdet(2, n, 9, MODE);
        let pp = estimate_e_r(2, 0, n, 9, MODE).unwrap();
        let nn = estimate_e_r(0, 2, n, 9, MODE).unwrap();
        let mixed = estimate_e_r(1, 1, n, 9, MODE).unwrap();
        let combined = (full.std_error.powi(2)
            + pp.std_error.powi(2)
            + nn.std_error.powi(2)
            + mixed.std_error.powi(2))
        .sqrt();
        assert!((full.value - pp.value - nn.value - mixed.value).abs() < 3.0 * combined);
    }

    #[test]
    fn mehta_mc_against_closed_form() {
        let est = mehta_mc(1, 1, 200_000, 1, MODE);
        assert!(est.distance_in_se(1.0 / PI.sqrt(), 0.0) < 3.0);
        let est = mehta_mc(0, 3, 10, 1, MODE);
        assert_eq!(est.value, 1.0);
        // m=2, p=3 against the Γ-product closed form (independent route).
        let est = mehta_mc(2, 3, 1_000_000, 2, MODE);
        assert!(est.distance_in_se(crate::constants::mehta_closed(2, 3), 0.0) < 3.0);
    }

    #[test]
    fn e_c_factorials() {
        assert_eq!(estimate_e_c(0, 10, 0, MODE).value, 1.0);
        let est = estimate_e_c(1, 300_000, 4, MODE);
        assert!(est.distance_in_se(2.0, 0.0) < 3.0);
        let est = estimate_e_c(2, 300_000, 4, MODE);
        assert!(est.distance_in_se(6.0, 0.0) < 3.0);
    }

    #[test]
    fn kostlan_shape_and_variances() {
        let s = sample_kostlan(1, 2, 1, 77);
        assert_eq!(s.map.k(), 1);
        assert_eq!(s.map.homogeneous_degree(), Some(2));

        // n=1, d=1: both coefficients have variance 1/2; n=1, d=2: the x₀x₁
        // coefficient has variance 2·(1/2) = 1.
        let n_draws = 100_000;
        let mut lin = Vec::with_capacity(n_draws);
        let mut cross = Vec::with_capacity(n_draws);
        for t in 0..n_draws {
            let s1 = sample_kostlan(1, 1, 1, 1_000_000 + t as u64);
            let c = coef_of(&s1.map.component(0), &[1, 0]);
            lin.push(c * c);
            let s2 = sample_kostlan(1, 2, 1, 2_000_000 + t as u64);
            let c = coef_of(&s2.map.component(0), &[1, 1]);
            cross.push(c * c);
        }
        let est = MomentEstimate::from_samples("var_lin", 0, &lin);
        assert!(est.distance_in_se(0.5, 0.0) < 3.0);
        let est = MomentEstimate::from_samples("var_cross", 0, &cross);
        assert!(est.distance_in_se(1.0, 0.0) < 3.0);
    }

    fn coef_of(p: &MultiPoly, exps: &[u32]) -> f64 {
        p.terms()
            .find(|(e, _)| *e == exps)
            .map(|(_, c)| c)
            .unwrap_or(0.0)
    }

    #[test]
    fn kostlan_is_reproducible() {
        let a = sample_kostlan(2, 5, 2, 123);
        let b = sample_kostlan(2, 5, 2, 123);
        assert_eq!(a.map, b.map);
        let c = sample_kostlan(2, 5, 2, 124);
        assert_ne!(a.map, c.map);
    }

    #[test]
    fn sup_norm_center_limit_matches_bergman_diagonal() {
        // R → 0: the sup collapses to the center value, whose mean is
        // C(d+1,1)/d → 1 for n = 1. Checked against the binomial-sum oracle
        // Σ C(d,i) t^{2i} / (1+t²)^d, which equals 1 at t = 0.
        let d = 400;
        let est = mc_sup_norm_check(1, 1, d, 1e-3, 4000, 2024, MODE).unwrap();
        let exact_center = (d as f64 + 1.0) / d as f64;
        assert!((est.value - exact_center).abs() < 0.05 * exact_center);
        assert!((exact_center - 1.0).abs() < 0.05);
    }

    #[test]
    fn sup_norm_linear_in_k() {
        // E|σ|² is exactly linear in k; the sup inherits that in the
        // small-ball regime where it collapses to the center value.
        let e1 = mc_sup_norm_check(2, 1, 64, 0.1, 1500, 5, MODE).unwrap();
        let e2 = mc_sup_norm_check(2, 2, 64, 0.1, 1500, 6, MODE).unwrap();
        let ratio = e2.value / e1.value;
        assert!((ratio - 2.0).abs() < 0.2, "k-scaling ratio {ratio}");
    }

    #[test]
    fn sup_norm_guards() {
        assert!(mc_sup_norm_check(1, 1, 3, 1.0, 10, 0, MODE).is_err());
        assert!(mc_sup_norm_check(3, 1, 100, 1.0, 10, 0, MODE).is_err());
    }
}
