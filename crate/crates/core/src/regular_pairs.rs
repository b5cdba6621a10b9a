//! Regular pairs and the quantitative transversality pipeline.
//!
//! A regular pair is a bounded open U ⊂ ℝⁿ and a polynomial map
//! P: ℝⁿ → ℝᵏ with 0 a regular value on U and compact zero set inside U. A
//! transversality certificate (δ, ε) witnesses |P| > δ near ∂U and smallest
//! Jacobian singular value ≥ ε on the δ-sublevel. From a certificate the
//! pipeline produces, all in natural logs:
//!
//!   ρ_R  = inf_{s>0} ((R+s)/s)^{2n} e^{π(R+s)²}
//!   τ    = 24k · ρ_{R(U,P)} · ‖P‖²_BF · min over certs (1/δ² + πn/ε²)
//!   m_τ  = sup_{a ≥ √τ} (1/√π)(1 - τ/a²) ∫_a^∞ e^{-t²} dt
//!   log c_lower = log m_τ - n·ln 2 - ln Vol(B(R(U,P)))
//!
//! m_τ decays like e^{-τ}, far below f64 for the built-in pairs, so
//! everything stays in log space; for τ > 30 the tail integral uses its
//! asymptotic expansion and the maximization runs in the shifted variable
//! w = a² - τ, which stays order-one when τ is astronomically large.
//!
//! Certification is numerical: the ball is scanned on a lattice, boundary
//! values are extended to the continuum by first-derivative Lipschitz
//! bounds, and sublevel membership is inflated the same way. The built-in
//! sphere and product pairs attain their ε exactly (the Jacobian blocks are
//! orthonormal rows), so the singular-value comparison allows equality up
//! to 1e-9.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use statrs::function::erf::erfc;
use thiserror::Error;

use crate::constants::ln_gamma_half;
use crate::ensembles::sample_kostlan;
use crate::exec::{map_trials, trial_rng, ExecMode};
use crate::grid_components::grid_components;
use crate::linalg::sym_eigenvalues;
use crate::poly::{gram, FastPolyMap, MultiPoly, PolyMap};
use crate::report::MomentEstimate;
use crate::sturm::UniPoly;

#[derive(Debug, Error, PartialEq)]
pub enum PairError {
    #[error("no certificates supplied")]
    NoCertificates,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

/// Certification failure: which condition broke, and where.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CertifyFailure {
    /// min |P| on the boundary shell (Lipschitz-corrected) did not exceed δ.
    Boundary { margin: f64, at: Vec<f64> },
    /// A sublevel point had σ_min below ε.
    Interior { sigma_min: f64, at: Vec<f64> },
    /// Evaluation produced a non-finite value.
    NonFinite,
}

/// A regular pair over a ball domain.
#[derive(Debug, Clone)]
pub struct RegularPair {
    /// Ball radius of the open domain U = B(0, radius).
    pub radius: f64,
    pub map: PolyMap,
    /// R(U,P) = max(1, sup over U of |y|) = max(1, radius).
    pub r_up: f64,
    pub label: String,
}

impl RegularPair {
    pub fn new(radius: f64, map: PolyMap, label: impl Into<String>) -> Self {
        let r_up = radius.max(1.0);
        RegularPair {
            radius,
            map,
            r_up,
            label: label.into(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.nvars()
    }

    pub fn k(&self) -> usize {
        self.map.k()
    }

    /// Lattice spacing used when none is given: R/256 in low dimension,
    /// coarser in n ≥ 3 where an R/256 lattice would not fit in time or
    /// memory.
    pub fn default_spacing(&self) -> f64 {
        match self.n() {
            0..=2 => self.radius / 256.0,
            _ => self.radius / 64.0,
        }
    }
}

/// A numerical witness that (δ, ε) certifies the pair.
#[derive(Debug, Clone, Serialize)]
pub struct TransversalityCert {
    pub delta: f64,
    pub eps: f64,
    pub spacing: f64,
    /// min |P| over the boundary shell, after the -r·L correction.
    pub boundary_margin: f64,
    /// min σ_min(J) over the (inflated) δ-sublevel lattice points.
    pub interior_margin: f64,
    /// First-derivative bound: |P(x)-P(y)| ≤ lip_first·|x-y| on the ball.
    pub lip_first: f64,
    /// Second-derivative bound: ‖J(x)-J(y)‖₂ ≤ lip_second·|x-y|.
    pub lip_second: f64,
}

const EPS_EQUALITY_TOL: f64 = 1e-9;

/// Coefficient-norm bounds on sup over B(0,R) of the first and second
/// partial derivatives, in the Frobenius sense.
fn lipschitz_bounds(map: &PolyMap, radius: f64) -> (f64, f64) {
    let sup_abs = |p: &MultiPoly| -> f64 {
        p.terms()
            .map(|(e, c)| c.abs() * radius.powi(e.iter().sum::<u32>() as i32))
            .sum()
    };
    let mut first_sq = 0.0;
    let mut second_sq = 0.0;
    for comp in map.components() {
        for j in 0..map.nvars() {
            let dj = comp.partial(j);
            let b = sup_abs(&dj);
            first_sq += b * b;
            let mut row_sq = 0.0;
            for l in 0..map.nvars() {
                let b2 = sup_abs(&dj.partial(l));
                row_sq += b2 * b2;
            }
            second_sq += row_sq;
        }
    }
    (first_sq.sqrt(), second_sq.sqrt())
}

/// Numerically certifies (δ, ε) for the pair on a lattice of the given
/// spacing (default: the pair's `default_spacing`).
pub fn certify(
    pair: &RegularPair,
    delta: f64,
    eps: f64,
    spacing: Option<f64>,
) -> Result<TransversalityCert, CertifyFailure> {
    let h = spacing.unwrap_or_else(|| pair.default_spacing());
    assert!(
        h <= pair.radius / 64.0 + 1e-12,
        "lattice spacing must be at most R/64"
    );
    assert!(delta > 0.0 && eps > 0.0);
    let n = pair.n();
    let radius = pair.radius;
    let r_cov = 0.5 * h * (n as f64).sqrt();
    let (lip_first, lip_second) = lipschitz_bounds(&pair.map, radius + 2.0 * r_cov);
    let fast = FastPolyMap::compile(&pair.map);
    let per_axis = (2.0 * (radius + 2.0 * r_cov) / h).ceil() as usize + 1;
    let origin = -(per_axis as f64 - 1.0) / 2.0 * h;

    #[derive(Default, Clone)]
    struct SlabResult {
        boundary_margin: f64,
        boundary_at: Vec<f64>,
        interior_margin: f64,
        interior_at: Vec<f64>,
        nonfinite: bool,
    }
    // Slab-parallel scan over the leading axis.
    let slabs: Vec<SlabResult> = map_trials(per_axis, ExecMode::default(), |i0| {
        let mut res = SlabResult {
            boundary_margin: f64::INFINITY,
            interior_margin: f64::INFINITY,
            ..Default::default()
        };
        let mut pow = fast.workspace();
        let mut x = vec![0.0f64; n];
        let mut idx = vec![0usize; n.saturating_sub(1)];
        let mut values = vec![0.0f64; pair.k()];
        let mut jac = vec![vec![0.0f64; n]; pair.k()];
        x[0] = origin + h * i0 as f64;
        loop {
            for (d, &i) in idx.iter().enumerate() {
                x[d + 1] = origin + h * i as f64;
            }
            let r2: f64 = x.iter().map(|t| t * t).sum();
            let r = r2.sqrt();
            if r <= radius + 2.0 * r_cov {
                let norm = fast.norm_sq(&x, &mut pow).sqrt();
                if !norm.is_finite() {
                    res.nonfinite = true;
                    return res;
                }
                // Boundary shell: everything that can be the nearest lattice
                // point of a continuum point in the outer annulus. The
                // correction uses the local Jacobian norm (plus a global
                // second-order term) — the global first-derivative bound is
                // far too coarse for the quartic pairs.
                if r >= radius - 3.0 * r_cov {
                    fast.values_and_jacobian(&x, &mut pow, &mut values, &mut jac);
                    let jnorm = jac
                        .iter()
                        .flat_map(|row| row.iter().map(|v| v * v))
                        .sum::<f64>()
                        .sqrt();
                    let corrected = norm - r_cov * (jnorm + r_cov * lip_second);
                    if corrected < res.boundary_margin {
                        res.boundary_margin = corrected;
                        res.boundary_at = x.clone();
                    }
                }
                // Interior sublevel at lattice points. The paper's built-in
                // pairs attain ε exactly on the open sublevel, so inflating
                // membership by the Lipschitz radius would drag in points
                // just outside it where σ_min legitimately dips under ε;
                // the recorded (lip_first, lip_second) let a consumer form
                // the rigorous continuum pair (δ - r·L, ε - r·H).
                if r <= radius && norm < delta {
                    fast.values_and_jacobian(&x, &mut pow, &mut values, &mut jac);
                    let eig = sym_eigenvalues(&gram(&jac));
                    let smin = eig.first().map(|l| l.max(0.0).sqrt()).unwrap_or(0.0);
                    if smin < res.interior_margin {
                        res.interior_margin = smin;
                        res.interior_at = x.clone();
                    }
                }
            }
            if n == 1 {
                break;
            }
            // odometer over the trailing axes
            let mut d = idx.len();
            loop {
                d -= 1;
                idx[d] += 1;
                if idx[d] < per_axis {
                    break;
                }
                idx[d] = 0;
                if d == 0 {
                    break;
                }
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
        res
    });

    let mut boundary_margin = f64::INFINITY;
    let mut boundary_at = Vec::new();
    let mut interior_margin = f64::INFINITY;
    let mut interior_at = Vec::new();
    for s in slabs {
        if s.nonfinite {
            return Err(CertifyFailure::NonFinite);
        }
        if s.boundary_margin < boundary_margin {
            boundary_margin = s.boundary_margin;
            boundary_at = s.boundary_at;
        }
        if s.interior_margin < interior_margin {
            interior_margin = s.interior_margin;
            interior_at = s.interior_at;
        }
    }

    if boundary_margin <= delta {
        return Err(CertifyFailure::Boundary {
            margin: boundary_margin,
            at: boundary_at,
        });
    }
    if interior_margin < eps - EPS_EQUALITY_TOL {
        return Err(CertifyFailure::Interior {
            sigma_min: interior_margin,
            at: interior_at,
        });
    }
    Ok(TransversalityCert {
        delta,
        eps,
        spacing: h,
        boundary_margin,
        interior_margin,
        lip_first,
        lip_second,
    })
}

/// log ρ_R: golden-section minimum of 2n·ln((R+s)/s) + π(R+s)² over s > 0.
pub fn rho_r_log(radius: f64, n: u32) -> f64 {
    assert!(radius > 0.0 && n >= 1);
    let phi = |s: f64| 2.0 * n as f64 * ((radius + s) / s).ln() + PI * (radius + s) * (radius + s);
    golden_min(phi, 1e-9 * (radius + 1.0), 10.0 * radius + 10.0).1
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (b - a).abs() < 1e-13 * (1.0 + a.abs() + b.abs()) {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// log τ for a pair with at least one certificate:
/// ln(24k) + log ρ_{R(U,P)} + ln ‖P‖²_BF + ln min over certs (1/δ² + πn/ε²).
pub fn tau_log(pair: &RegularPair, certs: &[TransversalityCert]) -> Result<f64, PairError> {
    if certs.is_empty() {
        return Err(PairError::NoCertificates);
    }
    let n = pair.n() as f64;
    let best = certs
        .iter()
        .map(|c| 1.0 / (c.delta * c.delta) + PI * n / (c.eps * c.eps))
        .fold(f64::INFINITY, f64::min);
    Ok((24.0 * pair.k() as f64).ln()
        + rho_r_log(pair.r_up, pair.n() as u32)
        + pair.map.bargmann_fock_norm_sq().ln()
        + best.ln())
}

/// log m_τ from log τ.
///
/// Moderate τ (≤ 30): golden-section maximum of
/// ln[(1/2)(1 - τ/a²) erfc(a)] over a ∈ [√τ, √τ + 12]. Large τ: with
/// ∫_a^∞ e^{-t²} dt ≈ e^{-a²}/(2a), the objective in w = a² - τ reads
/// ln w - (τ + w) - (3/2)·ln(τ + w) - ln 2 - (1/2)·ln π, maximized over
/// ln w; w stays order one so no precision is lost even for τ ~ e⁵⁰.
pub fn m_tau_log(log_tau: f64) -> f64 {
    let tau = log_tau.exp();
    if tau <= 30.0 {
        let a_lo = (tau.sqrt() * (1.0 + 1e-14)).max(1e-12);
        let a_hi = tau.sqrt() + 12.0;
        let neg_obj = |a: f64| {
            let rel = 1.0 - tau / (a * a);
            if rel <= 0.0 {
                return f64::INFINITY;
            }
            -(0.5f64.ln() + rel.ln() + erfc(a).ln())
        };
        let (_, v) = golden_min(neg_obj, a_lo, a_hi);
        -v
    } else {
        let neg_obj = |lw: f64| {
            let w = lw.exp();
            -(lw - w - 1.5 * (tau + w).ln())
        };
        let (_, v) = golden_min(neg_obj, -40.0, 40.0);
        -v - tau - 2.0f64.ln() - 0.5 * PI.ln()
    }
}

/// Log of the Euclidean volume of the n-ball of radius R.
pub fn ball_volume_log(radius: f64, n: u32) -> f64 {
    (n as f64) * 0.5 * PI.ln() + n as f64 * radius.ln() - ln_gamma_half(n as u64 + 2)
}

/// Lower bound on log c for the isotopy class carried by the pair:
/// log m_τ - n·ln2 - ln Vol(B(R(U,P))).
pub fn c_sigma_lower_log(pair: &RegularPair, certs: &[TransversalityCert]) -> Result<f64, PairError> {
    let lt = tau_log(pair, certs)?;
    Ok(m_tau_log(lt) - pair.n() as f64 * 2.0f64.ln() - ball_volume_log(pair.r_up, pair.n() as u32))
}

/// All derived constants of a certified pair, as natural logs.
#[derive(Debug, Clone, Serialize)]
pub struct PairConstants {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub log_rho_r: f64,
    pub log_norm_sq: f64,
    pub log_tau: f64,
    pub log_m_tau: f64,
    pub log_c_sigma_lower: f64,
}

pub fn pair_constants(
    pair: &RegularPair,
    certs: &[TransversalityCert],
) -> Result<PairConstants, PairError> {
    let log_tau = tau_log(pair, certs)?;
    let log_m_tau = m_tau_log(log_tau);
    Ok(PairConstants {
        label: pair.label.clone(),
        n: pair.n(),
        k: pair.k(),
        log_rho_r: rho_r_log(pair.r_up, pair.n() as u32),
        log_norm_sq: pair.map.bargmann_fock_norm_sq().ln(),
        log_tau,
        log_m_tau,
        log_c_sigma_lower: log_m_tau
            - pair.n() as f64 * 2.0f64.ln()
            - ball_volume_log(pair.r_up, pair.n() as u32),
    })
}

/// The sphere pair: P_j = x_j for j < k, P_k = Σ_{j=k}^n x_j² - 1, on the
/// ball of radius 2. Zero set isotopic to S^{n-k}.
pub fn builtin_sphere_pair(n: u32, k: u32) -> RegularPair {
    assert!(1 <= k && k <= n);
    let n = n as usize;
    let k = k as usize;
    let mut comps = Vec::with_capacity(k);
    for j in 0..k - 1 {
        comps.push(MultiPoly::var(n, j));
    }
    let terms: Vec<(Vec<u32>, f64)> = (k - 1..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 2;
            (e, 1.0)
        })
        .chain([(vec![0u32; n], -1.0)])
        .collect();
    comps.push(MultiPoly::new(n, terms).unwrap());
    RegularPair::new(2.0, PolyMap::new(comps).unwrap(), format!("sphere(n={n},k={k})"))
}

/// The product pair: with x the first i+1 variables and y the remaining
/// n-i-1, Q_k = (|x|² - 2)² + Σ_{j=1}^{n-k-i} y_j² - 1 and Q_j = y_{n-i-j}
/// for j < k, on the ball of radius √6. Zero set isotopic to
/// S^i × S^{n-i-k}.
pub fn builtin_product_pair(n: u32, k: u32, i: u32) -> RegularPair {
    assert!(1 <= k && k <= n && i <= n - k, "invalid (n,k,i)");
    let n = n as usize;
    let k = k as usize;
    let i = i as usize;
    let x_dim = i + 1;
    let x_sq: Vec<(Vec<u32>, f64)> = (0..x_dim)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 2;
            (e, 1.0)
        })
        .chain([(vec![0u32; n], -2.0)])
        .collect();
    let shifted = MultiPoly::new(n, x_sq).unwrap();
    let mut q_k = shifted.mul(&shifted).sub(&MultiPoly::constant(n, 1.0));
    for j in 0..(n - k - i) {
        let mut e = vec![0u32; n];
        e[x_dim + j] = 2;
        q_k = q_k.add(&MultiPoly::monomial(n, e, 1.0).unwrap());
    }
    let mut comps = Vec::with_capacity(k);
    for j in 1..k {
        // Q_j = y_{n-i-j}, i.e. global variable n - j.
        comps.push(MultiPoly::var(n, n - j));
    }
    comps.push(q_k);
    RegularPair::new(
        6.0f64.sqrt(),
        PolyMap::new(comps).unwrap(),
        format!("product(n={n},k={k},i={i})"),
    )
}

/// Counts components of {P = 0} ∩ U on a marching lattice (n ∈ {2, 3}).
pub fn pair_zero_set_components(pair: &RegularPair, cells: usize) -> usize {
    let fast = FastPolyMap::compile(&pair.map);
    let n = pair.n();
    assert!((2..=3).contains(&n), "component marching supports n = 2, 3");
    let state = std::cell::RefCell::new((
        fast.workspace(),
        vec![0.0f64; fast.k()],
        vec![vec![0.0f64; n]; fast.k()],
    ));
    grid_components(n, pair.radius, cells, |x, out| {
        let mut st = state.borrow_mut();
        let (pow, values, jac) = &mut *st;
        fast.values_and_jacobian(x, pow, values, jac);
        out.clear();
        out.extend(values.iter().copied());
    })
    .count
}

/// One perturbation-stability trial: draws a random degree ≤ 3 map g,
/// rescales it to sup|g| ≤ 0.9δ and sup‖dg‖₂ ≤ 0.9ε measured on the
/// certification lattice, and reports whether the component count of
/// {P + g = 0} ∩ U matches the unperturbed count.
pub fn stability_trial(pair: &RegularPair, cert: &TransversalityCert, seed: u64, trial: u64) -> bool {
    let n = pair.n();
    let k = pair.k();
    let mut rng = trial_rng(seed, "stability", trial);
    let exps = all_exponents_up_to(n, 3);
    let g: Vec<MultiPoly> = (0..k)
        .map(|_| {
            MultiPoly::new(
                n,
                exps.iter().map(|e| {
                    let z: f64 = rng.sample(StandardNormal);
                    (e.clone(), z)
                }),
            )
            .unwrap()
        })
        .collect();
    let gmap = PolyMap::new(g).unwrap();

    // sup |g| and sup ‖dg‖₂ measured on a lattice of the cert spacing.
    let fast_g = FastPolyMap::compile(&gmap);
    let mut pow = fast_g.workspace();
    let mut values = vec![0.0; k];
    let mut jac = vec![vec![0.0; n]; k];
    let h = cert.spacing.max(pair.radius / 256.0);
    let per_axis = (2.0 * pair.radius / h).ceil() as usize + 1;
    let mut sup_g: f64 = 0.0;
    let mut sup_dg: f64 = 0.0;
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0f64; n];
    loop {
        for (d, &i) in idx.iter().enumerate() {
            x[d] = -pair.radius + h * i as f64;
        }
        if x.iter().map(|t| t * t).sum::<f64>() <= pair.radius * pair.radius {
            fast_g.values_and_jacobian(&x, &mut pow, &mut values, &mut jac);
            sup_g = sup_g.max(values.iter().map(|v| v * v).sum::<f64>().sqrt());
            sup_dg = sup_dg.max(
                jac.iter()
                    .flat_map(|row| row.iter().map(|v| v * v))
                    .sum::<f64>()
                    .sqrt(),
            );
        }
        let mut d = n;
        loop {
            d -= 1;
            idx[d] += 1;
            if idx[d] < per_axis {
                break;
            }
            idx[d] = 0;
            if d == 0 {
                break;
            }
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }
    let scale = 0.9 * (cert.delta / sup_g).min(cert.eps / sup_dg);
    let perturbed = PolyMap::new(
        pair.map
            .components()
            .iter()
            .zip(gmap.components())
            .map(|(p, gc)| p.add(&gc.scale(scale)))
            .collect(),
    )
    .unwrap();
    let cells = if n == 2 { 256 } else { 96 };
    let base = pair_zero_set_components(pair, cells);
    let pert_pair = RegularPair::new(pair.radius, perturbed, "perturbed");
    let after = pair_zero_set_components(&pert_pair, cells);
    base == after
}

fn all_exponents_up_to(nvars: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        if cur.iter().sum::<u32>() <= max_total {
            out.push(cur.clone());
        }
        let mut d = nvars;
        loop {
            d -= 1;
            cur[d] += 1;
            if cur[d] <= max_total {
                break;
            }
            cur[d] = 0;
            if d == 0 {
                return out;
            }
        }
        if cur.iter().all(|&e| e == 0) {
            return out;
        }
    }
}

/// Frequency over Kostlan draws (n = 2, k = 1) that the ball of radius
/// R/√d around a fixed point of RP² contains a closed oval of the zero set
/// entirely in its interior. The chart ball of isometric radius R/√d is the
/// affine ball of radius √π·R/√d.
pub fn barrier_probability_mc(
    d: u32,
    r: f64,
    n_trials: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<MomentEstimate, PairError> {
    if (d as f64) < 16.0 * r * r {
        return Err(PairError::OutOfRange(format!(
            "d = {d} too small for R = {r}: need d ≥ 16R²"
        )));
    }
    let radius = PI.sqrt() * r / (d as f64).sqrt();
    let cells = 96;
    let hits: Vec<f64> = map_trials(n_trials as usize, mode, |t| {
        let s = sample_kostlan(2, d, 1, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let affine = s.map.component(0).dehomogenize(0).unwrap();
        // Tensor evaluation: v-columns as polynomials in u, cached per
        // lattice column (the marching order varies v fastest).
        let du = affine.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
        let dv = affine.terms().map(|(e, _)| e[1]).max().unwrap_or(0) as usize;
        let mut cols = vec![vec![0.0f64; du + 1]; dv + 1];
        for (e, c) in affine.terms() {
            cols[e[1] as usize][e[0] as usize] += c;
        }
        let cols: Vec<UniPoly> = cols.into_iter().map(UniPoly::new).collect();
        let cache = std::cell::RefCell::new((f64::NAN, vec![0.0f64; cols.len()]));
        let g = grid_components(2, radius, cells, |x, out| {
            let mut cc = cache.borrow_mut();
            if cc.0 != x[0] {
                cc.0 = x[0];
                for (slot, col) in cc.1.iter_mut().zip(&cols) {
                    *slot = col.eval(x[0]);
                }
            }
            let mut acc = 0.0;
            for c in cc.1.iter().rev() {
                acc = acc * x[1] + c;
            }
            out.clear();
            out.push(acc);
        });
        f64::from(u8::from(g.interior_count >= 1))
    });
    Ok(MomentEstimate::from_samples(
        format!("barrier(d={d},R={r})"),
        seed,
        &hits,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rho_bounds_and_monotonicity() {
        for &radius in &[1.0, 2.0, 6.0f64.sqrt()] {
            for n in 1..=6u32 {
                let lr = rho_r_log(radius, n);
                assert!(lr >= PI * radius * radius - 1e-9);
                assert!(lr <= n as f64 * 4.0f64.ln() + 4.0 * PI * radius * radius + 1e-9);
            }
        }
        assert!(rho_r_log(1.0, 2) > rho_r_log(1.0, 1));
        assert!(rho_r_log(2.0, 1) > rho_r_log(1.0, 1));
    }

    #[test]
    fn rho_matches_dense_scan_oracle() {
        // independent 1-D oracle: dense scan with step 1e-4
        let (radius, n) = (1.0, 1u32);
        let phi =
            |s: f64| 2.0 * n as f64 * ((radius + s) / s).ln() + PI * (radius + s) * (radius + s);
        let mut best = f64::INFINITY;
        let mut arg = 0.0;
        let mut s = 1e-4;
        while s < 20.0 {
            let v = phi(s);
            if v < best {
                best = v;
                arg = s;
            }
            s += 1e-4;
        }
        // derivative changes sign around the scan minimum: interior minimum
        assert!(phi(arg - 1e-4) > best && phi(arg + 1e-4) > best);
        assert_abs_diff_eq!(rho_r_log(radius, n), best, epsilon = 1e-6);
    }

    #[test]
    fn m_tau_limits_and_monotonicity() {
        // τ = 0: sup of (1/2)·erfc at a → 0 is 1/2
        assert_abs_diff_eq!(m_tau_log(f64::NEG_INFINITY), 0.5f64.ln(), epsilon = 1e-6);
        let mut prev = f64::INFINITY;
        for t in [0.1, 0.5, 1.0, 3.0, 10.0, 20.0, 30.0] {
            let v = m_tau_log((t as f64).ln());
            assert!(v < prev, "m_τ not decreasing at τ = {t}");
            prev = v;
        }
        // log m_τ ≥ -2τ for τ ≥ 10
        for t in [10.0, 20.0, 30.0, 50.0, 1e3, 1e8, 1e20] {
            let v = m_tau_log((t as f64).ln());
            assert!(v >= -2.0 * t, "log m_τ = {v} < -2τ at τ = {t}");
        }
    }

    #[test]
    fn m_tau_continuous_at_switch() {
        let below = m_tau_log(29.999f64.ln());
        let above = m_tau_log(30.001f64.ln());
        assert!((below - above).abs() < 0.02, "jump at τ = 30: {below} vs {above}");
    }

    #[test]
    fn sphere_pair_shape_and_norm() {
        let p = builtin_sphere_pair(2, 1);
        assert_eq!(p.r_up, 2.0);
        assert_eq!(p.map.k(), 1);
        for n in 1..=4u32 {
            for k in 1..=n {
                let p = builtin_sphere_pair(n, k);
                assert!(p.map.bargmann_fock_norm_sq() <= 2.0 * n as f64 + 1e-12);
            }
        }
        let p32 = builtin_sphere_pair(3, 2);
        assert_eq!(p32.map.k(), 2);
        assert_eq!(p32.map.component(0), &MultiPoly::var(3, 0));
    }

    #[test]
    fn product_pair_shape_and_norm() {
        for n in 1..=4u32 {
            for k in 1..=n {
                for i in 0..=(n - k) {
                    let p = builtin_product_pair(n, k, i);
                    assert_abs_diff_eq!(p.r_up, 6.0f64.sqrt(), epsilon = 1e-15);
                    assert!(
                        p.map.bargmann_fock_norm_sq() <= 13.0 * (n as f64 + 1.0).powi(2),
                        "norm bound fails at ({n},{k},{i})"
                    );
                }
            }
        }
        // Q_k vanishes at |x|² = 2, y₁ = 1 by direct substitution.
        let p = builtin_product_pair(3, 1, 1);
        let val = p.map.component(0).evaluate(&[2.0f64.sqrt(), 0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(val, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn certify_sphere_pairs_small_n() {
        for n in 1..=3u32 {
            for k in 1..=n {
                let pair = builtin_sphere_pair(n, k);
                let cert = certify(&pair, 0.75, 1.0, None)
                    .unwrap_or_else(|e| panic!("sphere ({n},{k}) failed: {e:?}"));
                assert!(cert.boundary_margin > 0.75);
                assert!(cert.interior_margin >= 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn certify_product_pairs_small_n() {
        for n in 2..=3u32 {
            for k in 1..=n {
                for i in 0..=(n - k) {
                    let pair = builtin_product_pair(n, k, i);
                    certify(&pair, 0.45, 1.0, None)
                        .unwrap_or_else(|e| panic!("product ({n},{k},{i}) failed: {e:?}"));
                }
            }
        }
    }

    #[test]
    fn certify_monotone_in_delta_eps() {
        let pair = builtin_sphere_pair(2, 1);
        certify(&pair, 0.75, 1.0, None).unwrap();
        certify(&pair, 0.6, 0.8, None).unwrap();
    }

    #[test]
    fn certify_rejects_degenerate_pair() {
        // P = x₁² on B(0,2) with δ = 1: the sublevel contains the critical
        // point at the origin where the Jacobian vanishes.
        let p = MultiPoly::monomial(1, vec![2], 1.0).unwrap();
        let pair = RegularPair::new(2.0, PolyMap::new(vec![p]).unwrap(), "degenerate");
        match certify(&pair, 1.0, 0.5, None) {
            Err(CertifyFailure::Interior { sigma_min, .. }) => {
                assert!(sigma_min < 0.5);
            }
            other => panic!("expected interior failure, got {other:?}"),
        }
    }

    #[test]
    fn tau_is_antitone_in_certificates() {
        let pair = builtin_sphere_pair(2, 1);
        let strong = certify(&pair, 0.75, 1.0, None).unwrap();
        let weak = certify(&pair, 0.4, 0.5, None).unwrap();
        let t_strong = tau_log(&pair, &[strong.clone()]).unwrap();
        let t_weak = tau_log(&pair, &[weak.clone()]).unwrap();
        assert!(t_strong < t_weak);
        // adding a worse certificate never increases τ
        let t_both = tau_log(&pair, &[weak, strong]).unwrap();
        assert_abs_diff_eq!(t_both, t_strong, epsilon = 1e-12);
        assert!(tau_log(&pair, &[]).is_err());
    }

    #[test]
    fn tau_and_c_bounds_small_n() {
        for n in 1..=3u32 {
            let pair = builtin_sphere_pair(n, 1);
            let cert = certify(&pair, 0.75, 1.0, None).unwrap();
            let lt = tau_log(&pair, &[cert.clone()]).unwrap();
            assert!(lt <= 53.0 + 5.0 * n as f64, "sphere log τ = {lt} at n = {n}");
            let lc = c_sigma_lower_log(&pair, &[cert]).unwrap();
            assert!(lc >= -(54.0 + 5.0 * n as f64).exp());
        }
        for n in 2..=3u32 {
            let pair = builtin_product_pair(n, 1, 0);
            let cert = certify(&pair, 0.45, 1.0, None).unwrap();
            let lt = tau_log(&pair, &[cert]).unwrap();
            assert!(lt <= 81.0 + 6.0 * n as f64, "product log τ = {lt} at n = {n}");
        }
    }

    #[test]
    fn improving_eps_strictly_improves_c() {
        let pair = builtin_sphere_pair(2, 1);
        let c1 = certify(&pair, 0.75, 1.0, None).unwrap();
        let mut c2 = c1.clone();
        c2.eps = 2.0; // hypothetical stronger certificate, same pair data
        let l1 = c_sigma_lower_log(&pair, &[c1]).unwrap();
        let l2 = c_sigma_lower_log(&pair, &[c2]).unwrap();
        assert!(l2 > l1);
    }

    #[test]
    fn pair_constants_invariants() {
        let pair = builtin_sphere_pair(2, 1);
        let cert = certify(&pair, 0.75, 1.0, None).unwrap();
        let pc = pair_constants(&pair, &[cert]).unwrap();
        let r = pair.r_up;
        assert!(pc.log_rho_r >= PI * r * r - 1e-9);
        assert!(pc.log_rho_r <= 2.0 * 4.0f64.ln() + 4.0 * PI * r * r + 1e-9);
        assert_abs_diff_eq!(
            pc.log_c_sigma_lower,
            pc.log_m_tau - 2.0 * 2.0f64.ln() - ball_volume_log(r, 2),
            epsilon = 1e-12
        );
        let json = serde_json::to_string(&pc).unwrap();
        assert!(json.contains("log_c_sigma_lower"));
    }

    #[test]
    fn unperturbed_components() {
        let pair = builtin_sphere_pair(2, 1);
        assert_eq!(pair_zero_set_components(&pair, 256), 1);
        // torus pair zero set: one component in its ball
        let torus = builtin_product_pair(3, 1, 1);
        assert_eq!(pair_zero_set_components(&torus, 96), 1);
    }

    #[test]
    fn stability_trials_preserve_the_circle() {
        let pair = builtin_sphere_pair(2, 1);
        let cert = certify(&pair, 0.75, 1.0, None).unwrap();
        for t in 0..10u64 {
            assert!(stability_trial(&pair, &cert, 99, t), "trial {t} broke the count");
        }
    }

    #[test]
    fn barrier_guards_and_smoke() {
        assert!(barrier_probability_mc(10, 2.0, 10, 0, ExecMode::Sequential).is_err());
        let est = barrier_probability_mc(64, 1.0, 60, 3, ExecMode::Parallel).unwrap();
        assert!((0.0..=1.0).contains(&est.value));
    }
}
