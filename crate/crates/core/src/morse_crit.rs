//! Critical points of a fixed Morse function restricted to random plane
//! curves, and deterministic tangency counts on complex curves.
//!
//! Real pipeline (n = 2, k = 1): in each affine chart the condition
//! ∇σ ∥ ∇p becomes one polynomial equation G = 0 alongside σ = 0, solved by
//! the bivariate resultant scanner. Each located point is classified by the
//! sign of the second derivative of p along the curve (index 0 or 1 on a
//! curve), certified by residual and rank margins, and deduplicated across
//! charts modulo antipodes. On a closed curve the index counts must balance
//! (χ = 0); trials that fail any of this are discarded and counted.
//!
//! Complex pipeline: the tangency points of the pencil of lines through a
//! base point with a smooth degree-d curve form the intersection of the
//! curve with its first polar (degree d-1), d(d-1) points by Bezout. They
//! are located by resultant interpolation on the unit circle plus
//! Aberth–Ehrlich root finding, and certified by complex Newton.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::bivar::{BivarOptions, BivarSystem};
use crate::cpoly::{CBivar, CUniPoly};
use crate::ensembles::{sample_kostlan, sample_kostlan_complex, KostlanSample};
use crate::exec::{map_trials, trial_rng, ExecMode};
use crate::poly::{MultiPoly, PolyMap};
use crate::report::MomentEstimate;
use crate::zero_locus::dedup_projective;

#[derive(Debug, Error, PartialEq)]
pub enum MorseCritError {
    #[error("degenerate trial: {0}")]
    Degenerate(String),
    #[error("discard fraction {0:.3} exceeds 5%")]
    TooManyDiscards(f64),
    #[error("only n = 2, k = 1 is supported by the real pipeline")]
    Unsupported,
}

/// A Morse function on RPⁿ given as a ratio of homogeneous quadrics.
/// The default (Σ (j+1)x_j²)/(Σ x_j²) has distinct eigenvalues, hence n+1
/// nondegenerate critical points at the coordinate axes.
#[derive(Debug, Clone)]
pub struct MorseFunctionSpec {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl MorseFunctionSpec {
    pub fn default_for(n: usize) -> Self {
        let nv = n + 1;
        let quad = |weights: &dyn Fn(usize) -> f64| {
            MultiPoly::new(
                nv,
                (0..nv).map(|j| {
                    let mut e = vec![0u32; nv];
                    e[j] = 2;
                    (e, weights(j))
                }),
            )
            .unwrap()
        };
        MorseFunctionSpec {
            numerator: quad(&|j| (j + 1) as f64),
            denominator: quad(&|_| 1.0),
        }
    }

    /// Critical points on the sphere: the coordinate axes.
    fn crit_axes(&self) -> Vec<[f64; 3]> {
        vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    }
}

/// A located critical point of p restricted to the zero curve.
#[derive(Debug, Clone, Serialize)]
pub struct CritPointRecord {
    /// Unit representative on S² (canonical antipodal choice).
    pub point: [f64; 3],
    pub chart: usize,
    pub morse_index: usize,
    /// |σ| at the point.
    pub residual: f64,
    /// Smallest singular value of the (σ, G) Jacobian at the point.
    pub rank_margin: f64,
    pub multiplier_magnitude: f64,
}

/// Rational-function data for one chart: p = N/D with exact partials.
struct ChartMorse {
    n: MultiPoly,
    d: MultiPoly,
    nu: MultiPoly,
    nv: MultiPoly,
    du: MultiPoly,
    dv: MultiPoly,
    nuu: MultiPoly,
    nuv: MultiPoly,
    nvv: MultiPoly,
    duu: MultiPoly,
    duv: MultiPoly,
    dvv: MultiPoly,
}

impl ChartMorse {
    fn new(spec: &MorseFunctionSpec, chart: usize) -> Self {
        let n = spec.numerator.dehomogenize(chart).unwrap();
        let d = spec.denominator.dehomogenize(chart).unwrap();
        let nu = n.partial(0);
        let nv = n.partial(1);
        let du = d.partial(0);
        let dv = d.partial(1);
        ChartMorse {
            nuu: nu.partial(0),
            nuv: nu.partial(1),
            nvv: nv.partial(1),
            duu: du.partial(0),
            duv: du.partial(1),
            dvv: dv.partial(1),
            nu,
            nv,
            du,
            dv,
            n,
            d,
        }
    }

    /// Numerators of D²·∇p: A ∝ ∂p/∂u, B ∝ ∂p/∂v.
    fn grad_numerators(&self) -> (MultiPoly, MultiPoly) {
        let a = self.nu.mul(&self.d).sub(&self.n.mul(&self.du));
        let b = self.nv.mul(&self.d).sub(&self.n.mul(&self.dv));
        (a, b)
    }

    /// Gradient and Hessian of p = N/D at a point.
    fn grad_hess(&self, x: &[f64; 2]) -> ([f64; 2], [[f64; 2]; 2]) {
        let x = &x[..];
        let nv_ = self.n.evaluate(x).unwrap();
        let dv_ = self.d.evaluate(x).unwrap();
        let p = nv_ / dv_;
        let (n_u, n_v) = (self.nu.evaluate(x).unwrap(), self.nv.evaluate(x).unwrap());
        let (d_u, d_v) = (self.du.evaluate(x).unwrap(), self.dv.evaluate(x).unwrap());
        let p_u = (n_u - p * d_u) / dv_;
        let p_v = (n_v - p * d_v) / dv_;
        let h = |n_ij: f64, d_ij: f64, p_i: f64, d_j: f64, p_j: f64, d_i: f64| {
            (n_ij - p_i * d_j - p_j * d_i - p * d_ij) / dv_
        };
        let p_uu = h(
            self.nuu.evaluate(x).unwrap(),
            self.duu.evaluate(x).unwrap(),
            p_u,
            d_u,
            p_u,
            d_u,
        );
        let p_uv = h(
            self.nuv.evaluate(x).unwrap(),
            self.duv.evaluate(x).unwrap(),
            p_u,
            d_v,
            p_v,
            d_u,
        );
        let p_vv = h(
            self.nvv.evaluate(x).unwrap(),
            self.dvv.evaluate(x).unwrap(),
            p_v,
            d_v,
            p_v,
            d_v,
        );
        ([p_u, p_v], [[p_uu, p_uv], [p_uv, p_vv]])
    }
}

/// Discard reasons for one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TrialFlag {
    PositiveDimensional,
    UnresolvedBracket,
    RankMargin,
    DegenerateIndex,
    ChiMismatch,
}

const RANK_MARGIN_TOL: f64 = 1e-8;
const CRIT_P_DISTANCE: f64 = 1e-4;

/// All critical points of p restricted to {σ = 0} ⊂ RP², or the flag that
/// made the trial unusable.
pub fn find_crit_points(
    sample: &KostlanSample,
    spec: &MorseFunctionSpec,
) -> Result<Vec<CritPointRecord>, TrialFlag> {
    if sample.n != 2 || sample.k != 1 {
        return Err(TrialFlag::PositiveDimensional);
    }
    find_crit_points_map(sample.map.component(0), spec)
}

/// The same pipeline for an explicit homogeneous trivariate curve.
pub fn find_crit_points_map(
    sigma: &MultiPoly,
    spec: &MorseFunctionSpec,
) -> Result<Vec<CritPointRecord>, TrialFlag> {
    assert_eq!(sigma.nvars(), 3);
    let axes = spec.crit_axes();
    let mut found: Vec<(CritPointRecord, [f64; 3])> = Vec::new();
    for chart in 0..3usize {
        let sc = sigma.dehomogenize(chart).map_err(|_| TrialFlag::PositiveDimensional)?;
        let cm = ChartMorse::new(spec, chart);
        let (a, b) = cm.grad_numerators();
        let su = sc.partial(0);
        let sv = sc.partial(1);
        let g = su.mul(&b).sub(&sv.mul(&a));
        let sys = BivarSystem::new(sc.clone(), g.clone());
        let opts = BivarOptions {
            grid: 1536,
            ..BivarOptions::default()
        };
        let (sols, diag) = match sys.real_solutions(&opts) {
            Ok(r) => r,
            Err(_) => return Err(TrialFlag::PositiveDimensional),
        };
        if diag.unresolved_brackets > 0 {
            return Err(TrialFlag::UnresolvedBracket);
        }
        for sol in sols {
            // Embed into S², canonical antipodal representative.
            let mut v = [0.0f64; 3];
            v[chart] = 1.0;
            let mut j = 0;
            for c in 0..3 {
                if c != chart {
                    v[c] = sol[j];
                    j += 1;
                }
            }
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let unit = [v[0] / norm, v[1] / norm, v[2] / norm];
            // Points at the critical locus of p itself are excluded.
            if axes
                .iter()
                .any(|ax| {
                    let dot: f64 = ax.iter().zip(&unit).map(|(a, b)| a * b).sum();
                    dot.abs() > 1.0 - 0.5 * CRIT_P_DISTANCE * CRIT_P_DISTANCE
                })
            {
                continue;
            }
            // Rank margin of the solver system.
            let jac = PolyMap::new(vec![sc.clone(), g.clone()])
                .unwrap()
                .jacobian(&sol)
                .unwrap();
            let rank_margin = jac.sigma_min();
            if rank_margin < RANK_MARGIN_TOL {
                return Err(TrialFlag::RankMargin);
            }
            // Index: second derivative of p along the curve tangent.
            let grad_s = [su.evaluate(&sol).unwrap(), sv.evaluate(&sol).unwrap()];
            let gs2 = grad_s[0] * grad_s[0] + grad_s[1] * grad_s[1];
            if gs2 <= 0.0 {
                return Err(TrialFlag::RankMargin);
            }
            let tangent = [-grad_s[1] / gs2.sqrt(), grad_s[0] / gs2.sqrt()];
            let ([p_u, p_v], hp) = cm.grad_hess(&[sol[0], sol[1]]);
            let lambda = (p_u * grad_s[0] + p_v * grad_s[1]) / gs2;
            let hs = [
                [
                    su.partial(0).evaluate(&sol).unwrap(),
                    su.partial(1).evaluate(&sol).unwrap(),
                ],
                [
                    sv.partial(0).evaluate(&sol).unwrap(),
                    sv.partial(1).evaluate(&sol).unwrap(),
                ],
            ];
            let quad = |m: &[[f64; 2]; 2]| {
                m[0][0] * tangent[0] * tangent[0]
                    + 2.0 * m[0][1] * tangent[0] * tangent[1]
                    + m[1][1] * tangent[1] * tangent[1]
            };
            let second = quad(&hp) - lambda * quad(&hs);
            // Compare against the curvature scale, not an absolute epsilon.
            let scale = quad(&[[hp[0][0].abs(), hp[0][1].abs()], [hp[0][1].abs(), hp[1][1].abs()]])
                .abs()
                .max(lambda.abs() * gs2.sqrt())
                .max(1e-12);
            if second.abs() < 1e-9 * scale {
                return Err(TrialFlag::DegenerateIndex);
            }
            let record = CritPointRecord {
                point: unit,
                chart,
                morse_index: usize::from(second < 0.0),
                residual: sc.evaluate(&sol).unwrap().abs(),
                rank_margin,
                multiplier_magnitude: lambda.abs(),
            };
            found.push((record, unit));
        }
    }
    // Antipodal dedup (angular tolerance 1e-6), keeping the first record.
    let mut records: Vec<CritPointRecord> = Vec::new();
    let mut kept: Vec<[f64; 3]> = Vec::new();
    for (rec, pt) in found {
        let canon = dedup_projective([pt], 0.0)[0];
        let is_new = !kept.iter().any(|q| {
            let dot: f64 = q.iter().zip(&canon).map(|(a, b)| a * b).sum();
            dot.abs() > 1.0 - 0.5 * 1e-6 * 1e-6
        });
        if is_new {
            kept.push(canon);
            records.push(rec);
        }
    }
    let n0 = records.iter().filter(|r| r.morse_index == 0).count();
    let n1 = records.len() - n0;
    if n0 != n1 {
        return Err(TrialFlag::ChiMismatch);
    }
    Ok(records)
}

/// Mean number of index-i critical points per d, over Kostlan curves of
/// degree d. Trials flagged by the solver are discarded and counted;
/// a discard fraction above 5% fails.
pub fn estimate_crit_density(
    d: u32,
    index: usize,
    n_trials: u64,
    seed: u64,
    mode: ExecMode,
) -> Result<MomentEstimate, MorseCritError> {
    let spec = MorseFunctionSpec::default_for(2);
    let results: Vec<Option<usize>> = map_trials(n_trials as usize, mode, |t| {
        let s = sample_kostlan(2, d, 1, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
        find_crit_points(&s, &spec)
            .ok()
            .map(|r| r.iter().filter(|c| c.morse_index == index).count())
    });
    let kept: Vec<f64> = results
        .iter()
        .flatten()
        .map(|&c| c as f64 / d as f64)
        .collect();
    let frac = 1.0 - kept.len() as f64 / n_trials as f64;
    if frac > 0.05 {
        return Err(MorseCritError::TooManyDiscards(frac));
    }
    let mut est = MomentEstimate::from_samples(
        format!("crit_density(d={d},i={index})"),
        seed,
        &kept,
    );
    est.discarded = n_trials - kept.len() as u64;
    Ok(est)
}

// ---------------------------------------------------------------------------
// Complex Lefschetz tangency counts
// ---------------------------------------------------------------------------

/// Outcome of one tangency count on a complex plane curve.
#[derive(Debug, Clone, Serialize)]
pub struct LefschetzCount {
    pub count: usize,
    pub expected: usize,
    /// False when the count misses d(d-1) or a residual fails: singular
    /// curve or non-generic base point.
    pub ok: bool,
    pub max_residual: f64,
}

/// A random complex Kostlan plane curve of degree d as sparse terms.
pub fn sample_complex_curve(d: u32, seed: u64) -> Vec<(Vec<u32>, Complex64)> {
    sample_kostlan_complex(2, d, seed)
}

fn polar_terms(
    terms: &[(Vec<u32>, Complex64)],
    base: [Complex64; 3],
) -> Vec<(Vec<u32>, Complex64)> {
    let mut out: Vec<(Vec<u32>, Complex64)> = Vec::new();
    for (e, c) in terms {
        for axis in 0..3 {
            if e[axis] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[axis] -= 1;
            let coef = c * e[axis] as f64 * base[axis];
            if let Some(slot) = out.iter_mut().find(|(oe, _)| *oe == ne) {
                slot.1 += coef;
            } else {
                out.push((ne, coef));
            }
        }
    }
    out
}

/// Number of tangency points between a degree-d complex projective curve
/// and the pencil of lines through `base` = [1 : b₁ : b₂]: the intersection
/// of the curve with its polar, expected d(d-1) for a smooth curve and
/// generic base point.
pub fn count_crit_complex_curve(
    terms: &[(Vec<u32>, Complex64)],
    base: (Complex64, Complex64),
) -> LefschetzCount {
    let d = terms
        .iter()
        .map(|(e, _)| e.iter().sum::<u32>())
        .max()
        .unwrap_or(0) as usize;
    assert!(d >= 1, "curve degree must be positive");
    let expected = d * (d - 1);
    let b = [Complex64::new(1.0, 0.0), base.0, base.1];
    let polar = polar_terms(terms, b);
    let s = CBivar::from_homogeneous_chart0(terms);
    let t = CBivar::from_homogeneous_chart0(&polar);
    // Base point off the curve is a precondition.
    let at_base = s.eval(base.0, base.1);
    if at_base.norm() < 1e-12 {
        return LefschetzCount {
            count: 0,
            expected,
            ok: false,
            max_residual: f64::INFINITY,
        };
    }

    // Interpolate the resultant in u on the unit circle.
    let res_deg = d * (d - 1);
    let m = (res_deg + 1).next_power_of_two().max(32);
    let dm = s.cols.len() - 1;
    let dn = t.cols.len() - 1;
    let mut logs = Vec::with_capacity(m);
    let mut args = Vec::with_capacity(m);
    for j in 0..m {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
        let u = Complex64::from_polar(1.0, theta);
        let (la, arg) = sylvester_logdet_arg(&s.at_u(u).0, &t.at_u(u).0, dm, dn);
        logs.push(la);
        args.push(arg);
    }
    let lmax = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !lmax.is_finite() {
        return LefschetzCount {
            count: 0,
            expected,
            ok: false,
            max_residual: f64::INFINITY,
        };
    }
    let vals: Vec<Complex64> = logs
        .iter()
        .zip(&args)
        .map(|(&l, &a)| Complex64::from_polar((l - lmax).exp(), a))
        .collect();
    // Inverse DFT for the coefficients (degree < m).
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
    for (k, ck) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in vals.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (j * k % m) as f64 / m as f64;
            acc += v * Complex64::from_polar(1.0, ang);
        }
        *ck = acc / m as f64;
    }
    let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() < 1e-9 * cmax {
        coeffs.pop();
    }
    let res_poly = CUniPoly::new(coeffs);

    let u_roots = res_poly.roots();
    let mut sols: Vec<(Complex64, Complex64)> = Vec::new();
    let mut max_res = 0.0f64;
    let noise_scale: f64 = terms.iter().map(|(_, c)| c.norm()).sum::<f64>()
        + polar.iter().map(|(_, c)| c.norm()).sum::<f64>();
    for u0 in u_roots {
        let sv = s.at_u(u0);
        if sv.degree() == 0 {
            continue;
        }
        for v0 in sv.roots() {
            if t.eval(u0, v0).norm() > 1e-4 * noise_scale * (1.0 + v0.norm()).powi(d as i32) {
                continue;
            }
            if let Some(((u, v), res)) = complex_newton(&s, &t, u0, v0, noise_scale, d as i32) {
                if !sols
                    .iter()
                    .any(|(a, b)| (a - u).norm() < 1e-6 && (b - v).norm() < 1e-6)
                {
                    sols.push((u, v));
                    max_res = max_res.max(res);
                }
            }
        }
    }
    LefschetzCount {
        count: sols.len(),
        expected,
        ok: sols.len() == expected,
        max_residual: max_res,
    }
}

fn complex_newton(
    s: &CBivar,
    t: &CBivar,
    mut u: Complex64,
    mut v: Complex64,
    noise_scale: f64,
    degree: i32,
) -> Option<((Complex64, Complex64), f64)> {
    let su = s.du();
    let sv = s.dv();
    let tu = t.du();
    let tv = t.dv();
    for _ in 0..60 {
        let fs = s.eval(u, v);
        let ft = t.eval(u, v);
        let a = su.eval(u, v);
        let b = sv.eval(u, v);
        let c = tu.eval(u, v);
        let dd = tv.eval(u, v);
        let det = a * dd - b * c;
        if det.norm() < 1e-280 {
            return None;
        }
        let step_u = (fs * dd - ft * b) / det;
        let step_v = (ft * a - fs * c) / det;
        u -= step_u;
        v -= step_v;
        if !(u.re.is_finite() && u.im.is_finite() && v.re.is_finite() && v.im.is_finite()) {
            return None;
        }
        if step_u.norm() + step_v.norm() < 1e-14 * (1.0 + u.norm() + v.norm()) {
            break;
        }
    }
    let res = s.eval(u, v).norm().hypot(t.eval(u, v).norm());
    let local = noise_scale * (1.0 + u.norm().max(v.norm())).powi(degree);
    if res < 1e-9 * local.max(1.0) {
        Some(((u, v), res))
    } else {
        None
    }
}

/// Complex Sylvester determinant with phase tracking.
fn sylvester_logdet_arg(fc: &[Complex64], gc: &[Complex64], dm: usize, dn: usize) -> (f64, f64) {
    let size = dm + dn;
    if size == 0 {
        return (0.0, 0.0);
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut mat = vec![zero; size * size];
    for r in 0..dn {
        for j in 0..=dm {
            mat[r * size + r + j] = fc.get(dm - j).copied().unwrap_or(zero);
        }
    }
    for r in 0..dm {
        for j in 0..=dn {
            mat[(dn + r) * size + r + j] = gc.get(dn - j).copied().unwrap_or(zero);
        }
    }
    complex_lu_logdet_arg(&mut mat, size)
}

fn complex_lu_logdet_arg(a: &mut [Complex64], n: usize) -> (f64, f64) {
    let idx = |i: usize, j: usize| i * n + j;
    let mut logabs = 0.0f64;
    let mut arg = 0.0f64;
    let mut sign = 1.0f64;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[idx(col, col)].norm_sqr();
        for r in (col + 1)..n {
            let v = a[idx(r, col)].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return (f64::NEG_INFINITY, 0.0);
        }
        if piv != col {
            for j in 0..n {
                a.swap(idx(piv, j), idx(col, j));
            }
            sign = -sign;
        }
        let p = a[idx(col, col)];
        logabs += 0.5 * p.norm_sqr().ln();
        arg += p.arg();
        for r in (col + 1)..n {
            let f = a[idx(r, col)] / p;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[idx(r, col)] = Complex64::new(0.0, 0.0);
            for j in (col + 1)..n {
                let sub = f * a[idx(col, j)];
                a[idx(r, j)] -= sub;
            }
        }
    }
    if sign < 0.0 {
        arg += std::f64::consts::PI;
    }
    (logabs, arg)
}

/// Deterministic tangency count over random smooth curves: fraction of
/// trials hitting exactly d(d-1).
pub fn lefschetz_success_rate(
    d: u32,
    n_trials: u64,
    seed: u64,
    mode: ExecMode,
) -> (MomentEstimate, Vec<LefschetzCount>) {
    let results: Vec<LefschetzCount> = map_trials(n_trials as usize, mode, |t| {
        let terms = sample_complex_curve(d, seed ^ (t as u64).wrapping_mul(0x517cc1b727220a95));
        let mut rng = trial_rng(seed, "lefschetz-base", t as u64);
        use rand::Rng;
        let base = (
            Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
        );
        count_crit_complex_curve(&terms, base)
    });
    let hits: Vec<f64> = results.iter().map(|r| f64::from(u8::from(r.ok))).collect();
    let est = MomentEstimate::from_samples(format!("lefschetz(d={d})"), seed, &hits);
    (est, results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::ExecMode;

    fn homog3(terms: &[(&[u32], f64)]) -> MultiPoly {
        MultiPoly::new(3, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    /// (x₁-a·x₀)² + (x₂-b·x₀)² - r²·x₀²
    fn circle(a: f64, b: f64, r: f64) -> MultiPoly {
        homog3(&[
            (&[0, 2, 0], 1.0),
            (&[1, 1, 0], -2.0 * a),
            (&[0, 0, 2], 1.0),
            (&[1, 0, 1], -2.0 * b),
            (&[2, 0, 0], a * a + b * b - r * r),
        ])
    }

    #[test]
    fn off_center_circle_has_two_critical_points() {
        let spec = MorseFunctionSpec::default_for(2);
        let recs = find_crit_points_map(&circle(1.0, 0.7, 0.1), &spec).unwrap();
        assert_eq!(recs.len(), 2);
        let indices: Vec<usize> = recs.iter().map(|r| r.morse_index).collect();
        assert!(indices.contains(&0) && indices.contains(&1));
        for r in &recs {
            assert!(r.residual < 1e-9);
            assert!(r.rank_margin > 1e-8);
        }
    }

    #[test]
    fn two_disjoint_ovals_have_four_critical_points() {
        let spec = MorseFunctionSpec::default_for(2);
        let prod = circle(0.8, 0.5, 0.08).mul(&circle(0.3, -0.6, 0.08));
        let recs = find_crit_points_map(&prod, &spec).unwrap();
        assert_eq!(recs.len(), 4);
        assert_eq!(recs.iter().filter(|r| r.morse_index == 0).count(), 2);
    }

    #[test]
    fn random_curves_balance_morse_indices() {
        let spec = MorseFunctionSpec::default_for(2);
        let mut done = 0;
        for t in 0..12u64 {
            let s = sample_kostlan(2, 6, 1, 31_000 + t);
            match find_crit_points(&s, &spec) {
                Ok(recs) => {
                    let n0 = recs.iter().filter(|r| r.morse_index == 0).count();
                    assert_eq!(2 * n0, recs.len());
                    for r in &recs {
                        assert!(r.residual < 1e-9, "residual {}", r.residual);
                    }
                    done += 1;
                }
                Err(_) => {}
            }
        }
        assert!(done >= 10, "too many discarded trials: {done}/12 kept");
    }

    #[test]
    fn crit_density_smoke() {
        let est = estimate_crit_density(8, 0, 40, 9, ExecMode::Parallel).unwrap();
        assert!(est.value > 0.1 && est.value < 1.0, "density {}", est.value);
    }

    #[test]
    fn conic_has_two_tangent_lines() {
        // x₁² + x₂² - x₀², base point [1 : 0.35+0.1i : -0.2+0.3i]
        let terms: Vec<(Vec<u32>, Complex64)> = vec![
            (vec![0, 2, 0], Complex64::new(1.0, 0.0)),
            (vec![0, 0, 2], Complex64::new(1.0, 0.0)),
            (vec![2, 0, 0], Complex64::new(-1.0, 0.0)),
        ];
        let out = count_crit_complex_curve(
            &terms,
            (Complex64::new(0.35, 0.1), Complex64::new(-0.2, 0.3)),
        );
        assert!(out.ok, "conic count {} expected {}", out.count, out.expected);
        assert_eq!(out.count, 2);
    }

    #[test]
    fn random_cubics_give_six() {
        let (est, results) = lefschetz_success_rate(3, 20, 77, ExecMode::Parallel);
        for r in &results {
            assert_eq!(r.expected, 6);
        }
        assert!(est.value >= 0.95, "success rate {}", est.value);
    }
}
