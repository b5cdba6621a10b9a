//! Counting real zeros and connected components of random algebraic sets.
//!
//! Three pipelines:
//!
//! * univariate / RP¹ root counts — Sturm chains where f64 division is
//!   trustworthy, the projective circle counter for high-degree Kostlan
//!   forms;
//! * common zeros of pairs of curves in RP² — per affine chart, Sylvester
//!   resultant elimination with Newton certification, deduplicated across
//!   charts modulo the antipodal map;
//! * connected components of plane curves in RP² — sign fields on geodesic
//!   icosahedral meshes of S², union-find over crossing triangles, quotient
//!   by the antipodal map, refined until two consecutive levels agree.

use serde::Serialize;
use thiserror::Error;

use crate::bivar::{BivarError, BivarOptions, BivarSystem};
use crate::ensembles::{sample_kostlan, KostlanSample};
use crate::exec::{map_trials, ExecMode};
use crate::grid_components::UnionFind;
use crate::poly::{MultiPoly, PolyMap};
use crate::report::MomentEstimate;
use crate::sphere_mesh::{level_for_resolution, mesh};
use crate::sturm::{count_circle_sign_changes, isolate_real_roots, sturm_count_real_roots, UniPoly};

/// Degree above which the f64 Sturm remainder cascade is no longer trusted
/// and counting switches to the circle method.
const STURM_DEGREE_CAP: usize = 40;

#[derive(Debug, Error, PartialEq)]
pub enum ZeroLocusError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("only n = 1 and n = 2 projective systems are supported, got n = {0}")]
    UnsupportedDimension(u32),
    #[error("system must be k = n homogeneous of equal degree")]
    NotSquareSystem,
    #[error("degenerate trial: {0}")]
    Degenerate(String),
    #[error("uncertified fraction {0:.3} exceeds 5%")]
    TooManyUncertified(f64),
}

/// An isolating box for one zero: chart index plus per-coordinate bounds.
#[derive(Debug, Clone, Serialize)]
pub struct IsolatingBox {
    pub chart: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// Certified real zeros of a system.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RootReport {
    pub count: usize,
    pub boxes: Vec<IsolatingBox>,
    pub max_residual: f64,
    pub unresolved: usize,
}

/// Connected-component count of a real plane curve.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub b0: usize,
    /// Triangle count of the finest level used.
    pub resolution: usize,
    pub certified: bool,
    /// Counts at the last two levels (equal when certified).
    pub counts: (usize, usize),
}

/// Distinct real roots of a polynomial in one variable. Sturm-exact up to
/// degree 40 with isolating intervals; sign-counting on the circle beyond.
pub fn count_real_roots_univariate(p: &MultiPoly) -> Result<RootReport, ZeroLocusError> {
    assert_eq!(p.nvars(), 1, "expected a univariate polynomial");
    if p.is_zero() {
        return Err(ZeroLocusError::ZeroPolynomial);
    }
    let deg = p.degree().unwrap() as usize;
    let mut coeffs = vec![0.0; deg + 1];
    for (e, c) in p.terms() {
        coeffs[e[0] as usize] += c;
    }
    let up = UniPoly::new(coeffs.clone());
    if deg <= STURM_DEGREE_CAP {
        let count = sturm_count_real_roots(&up).map_err(|_| ZeroLocusError::ZeroPolynomial)?;
        let boxes = isolate_real_roots(&up, 1e-9)
            .map_err(|_| ZeroLocusError::ZeroPolynomial)?
            .into_iter()
            .map(|(lo, hi)| IsolatingBox {
                chart: 0,
                lo: vec![lo],
                hi: vec![hi],
            })
            .collect::<Vec<_>>();
        Ok(RootReport {
            count,
            boxes,
            max_residual: 0.0,
            unresolved: 0,
        })
    } else {
        // The affine polynomial, read as a degree-deg binary form, has no
        // root at infinity (its top coefficient is nonzero by trimming), so
        // the circle count equals the affine count.
        let count = count_circle_sign_changes(&coeffs, true);
        Ok(RootReport {
            count,
            boxes: Vec::new(),
            max_residual: 0.0,
            unresolved: 0,
        })
    }
}

/// Real projective roots of a binary form of ambient degree d (coefficients
/// of c^{d-i} s^i). The root at infinity is included when the top
/// coefficient vanishes.
pub fn count_rp1_roots(coeffs: &[f64]) -> usize {
    count_circle_sign_changes(coeffs, true)
}

fn binary_form_coeffs(p: &MultiPoly) -> Vec<f64> {
    let d = p.homogeneous_degree().expect("binary form must be homogeneous") as usize;
    let mut coeffs = vec![0.0; d + 1];
    for (e, c) in p.terms() {
        coeffs[e[1] as usize] += c;
    }
    coeffs
}

/// Spherical point identified with its antipode: canonical representative
/// has positive first nonzero coordinate.
fn canonical_s2(mut v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    for c in v.iter_mut() {
        *c /= n;
    }
    for c in v {
        if c.abs() > 1e-12 {
            if c < 0.0 {
                return [-v[0], -v[1], -v[2]];
            }
            break;
        }
    }
    v
}

fn angular_close(a: &[f64; 3], b: &[f64; 3], tol: f64) -> bool {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.abs() >= (1.0 - 0.5 * tol * tol)
}

/// Merges chart solutions into distinct projective points modulo antipodes.
pub fn dedup_projective(points: impl IntoIterator<Item = [f64; 3]>, tol: f64) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for p in points {
        let c = canonical_s2(p);
        if !out.iter().any(|q| angular_close(q, &c, tol)) {
            out.push(c);
        }
    }
    out
}

/// Count of real common zeros in RPⁿ of a k = n system of homogeneous
/// equal-degree forms, n ∈ {1, 2}.
///
/// n = 1: sign changes on the projective circle. n = 2: per affine chart,
/// eliminate by Sylvester resultant, back-substitute, certify by Newton
/// (residual < 1e-9), then deduplicate across charts by antipodal-aware
/// spatial hashing (angular tolerance 1e-6).
pub fn count_projective_zeros_map(map: &PolyMap) -> Result<RootReport, ZeroLocusError> {
    let n = map.nvars() as u32 - 1;
    if map.k() as u32 != n {
        return Err(ZeroLocusError::NotSquareSystem);
    }
    if map.homogeneous_degree().is_none() {
        return Err(ZeroLocusError::NotSquareSystem);
    }
    match n {
        1 => {
            let coeffs = binary_form_coeffs(map.component(0));
            Ok(RootReport {
                count: count_rp1_roots(&coeffs),
                boxes: Vec::new(),
                max_residual: 0.0,
                unresolved: 0,
            })
        }
        2 => {
            let mut points: Vec<[f64; 3]> = Vec::new();
            let mut report = RootReport::default();
            for chart in 0..3usize {
                let affine = map
                    .dehomogenize(chart)
                    .map_err(|e| ZeroLocusError::Degenerate(e.to_string()))?;
                let sys = BivarSystem::new(affine.component(0).clone(), affine.component(1).clone());
                let opts = BivarOptions::default();
                let (sols, diag) = match sys.real_solutions(&opts) {
                    Ok(r) => r,
                    Err(BivarError::PositiveDimensional) => {
                        return Err(ZeroLocusError::Degenerate(
                            "resultant vanishes along the scan".into(),
                        ))
                    }
                    Err(e) => return Err(ZeroLocusError::Degenerate(e.to_string())),
                };
                report.max_residual = report.max_residual.max(diag.max_residual);
                report.unresolved += diag.unresolved_brackets;
                for s in sols {
                    let mut v = [0.0; 3];
                    v[chart] = 1.0;
                    let mut j = 0;
                    for c in 0..3 {
                        if c != chart {
                            v[c] = s[j];
                            j += 1;
                        }
                    }
                    points.push(v);
                }
            }
            let distinct = dedup_projective(points, 1e-6);
            let boxes = distinct
                .iter()
                .map(|p| IsolatingBox {
                    chart: 3,
                    lo: vec![p[0], p[1], p[2]],
                    hi: vec![p[0], p[1], p[2]],
                })
                .collect();
            report.count = distinct.len();
            report.boxes = boxes;
            Ok(report)
        }
        other => Err(ZeroLocusError::UnsupportedDimension(other)),
    }
}

/// `count_projective_zeros_map` for a Kostlan draw.
pub fn count_projective_zeros(sample: &KostlanSample) -> Result<RootReport, ZeroLocusError> {
    count_projective_zeros_map(&sample.map)
}

// ---------------------------------------------------------------------------
// Components of plane curves in RP²
// ---------------------------------------------------------------------------

/// Trivariate evaluator with per-vertex power tables; also returns the
/// tangential gradient norm for the margin check.
struct SphereEval {
    terms: Vec<([u32; 3], f64)>,
    max_deg: usize,
}

impl SphereEval {
    fn new(p: &MultiPoly) -> Self {
        assert_eq!(p.nvars(), 3);
        let terms: Vec<([u32; 3], f64)> = p
            .terms()
            .map(|(e, c)| ([e[0], e[1], e[2]], c))
            .collect();
        let max_deg = p.degree().unwrap_or(0) as usize;
        SphereEval { terms, max_deg }
    }

    /// (value, tangential gradient norm) at a unit vector.
    fn value_grad(&self, v: &[f64; 3], pow: &mut [f64]) -> (f64, f64) {
        let w = self.max_deg + 1;
        for a in 0..3 {
            pow[a * w] = 1.0;
            for e in 1..w {
                pow[a * w + e] = pow[a * w + e - 1] * v[a];
            }
        }
        let mut val = 0.0;
        let mut grad = [0.0f64; 3];
        for ([e0, e1, e2], c) in &self.terms {
            let (e0, e1, e2) = (*e0 as usize, *e1 as usize, *e2 as usize);
            let m0 = pow[e0];
            let m1 = pow[w + e1];
            let m2 = pow[2 * w + e2];
            val += c * m0 * m1 * m2;
            if e0 > 0 {
                grad[0] += c * e0 as f64 * pow[e0 - 1] * m1 * m2;
            }
            if e1 > 0 {
                grad[1] += c * e1 as f64 * m0 * pow[w + e1 - 1] * m2;
            }
            if e2 > 0 {
                grad[2] += c * e2 as f64 * m0 * m1 * pow[2 * w + e2 - 1];
            }
        }
        let radial: f64 = grad.iter().zip(v).map(|(g, x)| g * x).sum();
        let tan_sq: f64 = grad.iter().zip(v).map(|(g, x)| (g - radial * x).powi(2)).sum();
        (val, tan_sq.sqrt())
    }
}

struct LevelScan {
    count: usize,
    /// An unsafe non-crossing triangle away from the detected curve could
    /// hide a component; any such triangle blocks certification.
    suspicious: bool,
}

fn scan_level(eval: &SphereEval, level: u32, mode: ExecMode) -> LevelScan {
    let m = mesh(level);
    let nv = m.vertices.len();
    let slab = 4096;
    let n_slabs = (nv + slab - 1) / slab;
    let parts: Vec<Vec<(f64, f64)>> = map_trials(n_slabs, mode, |s| {
        let lo = s * slab;
        let hi = ((s + 1) * slab).min(nv);
        let mut pow = vec![0.0; 3 * (eval.max_deg + 1)];
        (lo..hi)
            .map(|i| eval.value_grad(&m.vertices[i], &mut pow))
            .collect()
    });
    let mut vals = Vec::with_capacity(nv);
    let mut grads = Vec::with_capacity(nv);
    for part in parts {
        for (v, g) in part {
            vals.push(v);
            grads.push(g);
        }
    }

    let nf = m.faces.len();
    let mut crossing = vec![false; nf];
    let mut slot = vec![u32::MAX; nf];
    let mut crossing_list: Vec<u32> = Vec::new();
    for (f, face) in m.faces.iter().enumerate() {
        let s0 = vals[face[0] as usize] >= 0.0;
        let s1 = vals[face[1] as usize] >= 0.0;
        let s2 = vals[face[2] as usize] >= 0.0;
        if s0 != s1 || s1 != s2 {
            crossing[f] = true;
            slot[f] = crossing_list.len() as u32;
            crossing_list.push(f as u32);
        }
    }

    let mut uf = UnionFind::new(crossing_list.len());
    for (i, &f) in crossing_list.iter().enumerate() {
        for &nb in &m.face_adj[f as usize] {
            if nb != u32::MAX && crossing[nb as usize] {
                uf.union(i as u32, slot[nb as usize]);
            }
        }
        // Antipodal quotient: a component and its mirror are one class.
        let anti = m.antipode_face[f as usize];
        if crossing[anti as usize] {
            uf.union(i as u32, slot[anti as usize]);
        }
    }
    let mut roots: Vec<u32> = (0..crossing_list.len() as u32).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();

    // Margin check: a non-crossing triangle whose minimum |value| is below
    // the possible in-triangle variation could hide a zero; that is benign
    // when it hugs the detected curve (shares a vertex with a crossing
    // triangle) and suspicious otherwise. Every interior point lies within
    // the circumradius (≈ 0.58·edge) of a vertex; 0.8 covers gradient drift.
    let mut near_vertex = vec![false; nv];
    for &f in &crossing_list {
        for &v in &m.faces[f as usize] {
            near_vertex[v as usize] = true;
        }
    }
    // Dilate one more ring: faces two steps from the curve slope toward it
    // and legitimately sit right at the margin bound.
    let ring1 = near_vertex.clone();
    for face in m.faces.iter() {
        if face.iter().any(|&v| ring1[v as usize]) {
            for &v in face {
                near_vertex[v as usize] = true;
            }
        }
    }
    let h = m.max_edge;
    let mut suspicious = false;
    for (f, face) in m.faces.iter().enumerate() {
        if crossing[f] {
            continue;
        }
        let min_val = face
            .iter()
            .map(|&v| vals[v as usize].abs())
            .fold(f64::INFINITY, f64::min);
        let max_grad = face
            .iter()
            .map(|&v| grads[v as usize])
            .fold(0.0f64, f64::max);
        if min_val <= 0.8 * h * max_grad {
            let near_curve = face.iter().any(|&v| near_vertex[v as usize]);
            if !near_curve {
                if std::env::var_os("OVALAB_DEBUG_MARGIN").is_some() {
                    let c = m.vertices[face[0] as usize];
                    eprintln!(
                        "suspicious face {f} at ({:.4},{:.4},{:.4}) min|p|={min_val:.3e} h*grad={:.3e}",
                        c[0], c[1], c[2], h * max_grad
                    );
                }
                suspicious = true;
                break;
            }
        }
    }

    LevelScan {
        count: roots.len(),
        suspicious,
    }
}

/// Connected components of {p = 0} ⊂ RP² for a homogeneous trivariate
/// polynomial, by sign fields on icosahedral meshes. `resolution` is the
/// target triangle count at the base level (a power of two; capped at 2²⁰).
pub fn count_components_rp2(p: &MultiPoly, resolution: usize) -> Result<ComponentReport, ZeroLocusError> {
    count_components_rp2_mode(p, resolution, ExecMode::default())
}

pub fn count_components_rp2_mode(
    p: &MultiPoly,
    resolution: usize,
    mode: ExecMode,
) -> Result<ComponentReport, ZeroLocusError> {
    if p.is_zero() {
        return Err(ZeroLocusError::ZeroPolynomial);
    }
    assert!(p.nvars() == 3, "RP² component counting needs 3 variables");
    assert!(p.is_homogeneous(), "RP² component counting needs a homogeneous form");
    let eval = SphereEval::new(p);
    let base = level_for_resolution(resolution);
    let max_level = 8; // 20·4^8 ≈ 2^20.3 triangles
    let mut level = base;
    let mut prev = scan_level(&eval, level, mode);
    while level + 1 <= max_level {
        let next = scan_level(&eval, level + 1, mode);
        if next.count == prev.count && !next.suspicious {
            return Ok(ComponentReport {
                b0: next.count,
                resolution: crate::sphere_mesh::n_faces(level + 1),
                certified: true,
                counts: (prev.count, next.count),
            });
        }
        prev = next;
        level += 1;
    }
    Ok(ComponentReport {
        b0: prev.count,
        resolution: crate::sphere_mesh::n_faces(max_level),
        certified: false,
        counts: (prev.count, prev.count),
    })
}

/// Mean b₀/d over Kostlan plane curves of degree d, with the uncertified
/// fraction propagated (failure above 5%).
pub fn estimate_component_density(
    d: u32,
    n_trials: u64,
    seed: u64,
    resolution: usize,
    mode: ExecMode,
) -> Result<MomentEstimate, ZeroLocusError> {
    let reports: Vec<Option<usize>> = map_trials(n_trials as usize, mode, |t| {
        let s = sample_kostlan(2, d, 1, seed ^ (t as u64).wrapping_mul(0x9e3779b97f4a7c15));
        // Component scans inside a parallel trial loop stay sequential.
        match count_components_rp2_mode(s.map.component(0), resolution, ExecMode::Sequential) {
            Ok(r) if r.certified => Some(r.b0),
            _ => None,
        }
    });
    let certified: Vec<f64> = reports
        .iter()
        .flatten()
        .map(|&b| b as f64 / d as f64)
        .collect();
    let uncert = 1.0 - certified.len() as f64 / n_trials as f64;
    if uncert > 0.05 {
        return Err(ZeroLocusError::TooManyUncertified(uncert));
    }
    let mut est = MomentEstimate::from_samples(format!("b0_density(d={d})"), seed, &certified);
    est.discarded = n_trials - certified.len() as u64;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::sample_kostlan;
    use crate::exec::ExecMode;

    fn homog3(terms: &[(&[u32], f64)]) -> MultiPoly {
        MultiPoly::new(3, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn univariate_counts() {
        let p = MultiPoly::from_literal(1, r#"[{"exps":[2],"coef":1.0},{"exps":[0],"coef":1.0}]"#)
            .unwrap();
        assert_eq!(count_real_roots_univariate(&p).unwrap().count, 0);
        let p = MultiPoly::from_literal(
            1,
            r#"[{"exps":[3],"coef":1.0},{"exps":[1],"coef":-1.0}]"#,
        )
        .unwrap();
        let rep = count_real_roots_univariate(&p).unwrap();
        assert_eq!(rep.count, 3);
        assert_eq!(rep.boxes.len(), 3);
        assert_eq!(
            count_real_roots_univariate(&MultiPoly::zero(1)).unwrap_err(),
            ZeroLocusError::ZeroPolynomial
        );
    }

    #[test]
    fn sturm_matches_grid_signs_on_random_low_degree() {
        // Independent oracle: sign changes on a dense grid bracketing all
        // roots.
        use rand::Rng;
        let mut rng = crate::exec::trial_rng(31, "sturm-oracle", 0);
        for _ in 0..100 {
            let deg = rng.gen_range(1..=10);
            let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = UniPoly::new(coeffs.clone());
            if p.degree() == 0 {
                continue;
            }
            let sturm = sturm_count_real_roots(&p).unwrap();
            let b = p.root_bound();
            let grid = 200_000;
            let mut changes = 0;
            let mut last = p.eval(-b).signum();
            for i in 1..=grid {
                let x = -b + 2.0 * b * i as f64 / grid as f64;
                let s = p.eval(x).signum();
                if s != 0.0 && s != last {
                    changes += 1;
                    last = s;
                }
            }
            assert_eq!(sturm, changes, "disagreement on {coeffs:?}");
        }
    }

    #[test]
    fn projective_line_system() {
        // degree-1 system in RP²: two generic lines meet once
        let p = homog3(&[(&[1, 0, 0], 1.0)]);
        let q = homog3(&[(&[0, 1, 0], 1.0)]);
        let map = PolyMap::new(vec![p, q]).unwrap();
        let rep = count_projective_zeros_map(&map).unwrap();
        assert_eq!(rep.count, 1);
        // the zero is [0:0:1]
        let b = &rep.boxes[0];
        assert!(b.lo[2].abs() > 0.99);
    }

    #[test]
    fn random_lines_meet_once() {
        for t in 0..20 {
            let s = sample_kostlan(2, 1, 2, 900 + t);
            let rep = count_projective_zeros(&s).unwrap();
            assert_eq!(rep.count, 1, "two random lines, trial {t}");
        }
    }

    #[test]
    fn conic_pair_bezout_parity() {
        for t in 0..30 {
            let s = sample_kostlan(2, 2, 2, 1700 + t);
            let rep = match count_projective_zeros(&s) {
                Ok(r) => r,
                Err(_) => continue,
            };
            assert!(rep.count <= 4);
            assert_eq!(rep.count % 2, 0, "parity violated at trial {t}");
        }
    }

    #[test]
    fn oval_and_lines_components() {
        // one oval
        let circle = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -1.0)]);
        let rep = count_components_rp2(&circle, 1 << 14).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.b0, 1);

        // nested ovals: (x₁²+x₂²-x₀²)(x₁²+x₂²-4x₀²)
        let inner = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -1.0)]);
        let outer = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -4.0)]);
        let rep = count_components_rp2(&inner.mul(&outer), 1 << 14).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.b0, 2);

        // three disjoint small ovals
        let o1 = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -0.01)]);
        let shift = |cx: f64, cy: f64| {
            // (x₁-cx·x₀)² + (x₂-cy·x₀)² - 0.01x₀²
            homog3(&[
                (&[0, 2, 0], 1.0),
                (&[1, 1, 0], -2.0 * cx),
                (&[0, 0, 2], 1.0),
                (&[1, 0, 1], -2.0 * cy),
                (&[2, 0, 0], cx * cx + cy * cy - 0.01),
            ])
        };
        let three = o1.mul(&shift(0.7, 0.0)).mul(&shift(0.0, 0.7));
        let rep = count_components_rp2(&three, 1 << 14).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.b0, 3);
    }

    #[test]
    fn component_count_stable_under_refinement() {
        let inner = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -1.0)]);
        let outer = homog3(&[(&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[2, 0, 0], -4.0)]);
        let p = inner.mul(&outer);
        let r1 = count_components_rp2(&p, 1 << 14).unwrap();
        let r2 = count_components_rp2(&p, 1 << 16).unwrap();
        assert!(r1.certified && r2.certified);
        assert_eq!(r1.b0, r2.b0);
    }

    #[test]
    fn kostlan_scale_invariance_of_counts() {
        for t in 0..5 {
            let s = sample_kostlan(2, 6, 1, 4200 + t);
            let p = s.map.component(0).clone();
            let a = count_components_rp2(&p, 1 << 14).unwrap();
            let b = count_components_rp2(&p.scale(5.0), 1 << 14).unwrap();
            assert_eq!(a.b0, b.b0);
            assert_eq!(a.certified, b.certified);
        }
        // same for projective zero counts of a square system
        let s = sample_kostlan(2, 3, 2, 77);
        let scaled = PolyMap::new(
            s.map.components().iter().map(|c| c.scale(5.0)).collect(),
        )
        .unwrap();
        let a = count_projective_zeros_map(&s.map).unwrap();
        let b = count_projective_zeros_map(&scaled).unwrap();
        assert_eq!(a.count, b.count);
    }

    #[test]
    fn component_density_smoke() {
        let est = estimate_component_density(4, 20, 5, 1 << 14, ExecMode::Parallel).unwrap();
        assert!(est.value >= 0.0);
        assert!(est.value <= 4.0);
    }
}
