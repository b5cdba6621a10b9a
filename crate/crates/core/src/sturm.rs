//! Univariate real polynomials: Sturm chains, root isolation, and a
//! sign-change counter on the projective circle for high-degree binary
//! forms.
//!
//! The Sturm chain in f64 is exact in count for moderate degrees; the
//! remainder cascade degrades for large random polynomials, so callers that
//! count roots of high-degree Kostlan forms go through
//! [`count_circle_sign_changes`], which evaluates the homogeneous form on
//! the unit circle (numerically benign at any degree) instead of dividing
//! polynomials.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SturmError {
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
}

/// Dense univariate polynomial, coefficients low → high, trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly(pub Vec<f64>);

const TRIM_EPS: f64 = 0.0;

impl UniPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.abs() <= TRIM_EPS) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        UniPoly(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0.0)
    }

    pub fn leading(&self) -> f64 {
        *self.0.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.0.len() <= 1 {
            return UniPoly::new(vec![0.0]);
        }
        UniPoly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    /// Rescales so the largest |coefficient| is 1. Positive scaling leaves
    /// signs, roots and Sturm counts unchanged.
    fn normalized(&self) -> UniPoly {
        let m = self.0.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        if m == 0.0 || m == 1.0 {
            return self.clone();
        }
        UniPoly::new(self.0.iter().map(|c| c / m).collect())
    }

    /// Remainder of self / div (degrees small; plain long division).
    fn rem(&self, div: &UniPoly) -> UniPoly {
        let mut r = self.0.clone();
        let d = div.degree();
        let lead = div.leading();
        while r.len() > d && r.len() > 1 {
            let k = r.len() - 1;
            let f = r[k] / lead;
            if f != 0.0 && f.is_finite() {
                for j in 0..=d {
                    r[k - d + j] -= f * div.0[j];
                }
            }
            r.pop();
        }
        UniPoly::new(r)
    }

    /// Cauchy bound: every real root lies in (-B, B).
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().abs();
        1.0 + self.0[..self.0.len() - 1]
            .iter()
            .fold(0.0f64, |a, c| a.max(c.abs()))
            / lead
    }
}

/// Sturm chain of p (coefficient-normalized at every step).
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.normalized(), p.derivative().normalized()];
    // Drop a degenerate derivative (constant polynomial p).
    if chain[1].is_zero() {
        chain.pop();
        return chain;
    }
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let mut neg = UniPoly::new(r.0.iter().map(|c| -c).collect());
        neg = neg.normalized();
        // Guard against numerically dead remainders.
        if !neg.0.iter().all(|c| c.is_finite()) {
            break;
        }
        chain.push(neg);
        if chain.last().unwrap().degree() == 0 {
            break;
        }
    }
    chain
}

fn sign_variations(signs: impl Iterator<Item = f64>) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for s in signs {
        if s == 0.0 {
            continue;
        }
        if last != 0.0 && s.signum() != last.signum() {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of p in (a, b], by Sturm's theorem.
pub fn sturm_count_interval(chain: &[UniPoly], a: f64, b: f64) -> usize {
    let va = sign_variations(chain.iter().map(|q| q.eval(a)));
    let vb = sign_variations(chain.iter().map(|q| q.eval(b)));
    va.saturating_sub(vb)
}

/// Number of distinct real roots of p over the whole line.
pub fn sturm_count_real_roots(p: &UniPoly) -> Result<usize, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    // Signs at ±∞ come from leading coefficients and degree parities.
    let v_pos = sign_variations(chain.iter().map(|q| q.leading()));
    let v_neg = sign_variations(
        chain
            .iter()
            .map(|q| q.leading() * if q.degree() % 2 == 0 { 1.0 } else { -1.0 }),
    );
    Ok(v_neg.saturating_sub(v_pos))
}

/// Isolating intervals (a, b], one distinct real root each, via Sturm-count
/// bisection, refined until width ≤ `width`.
pub fn isolate_real_roots(p: &UniPoly, width: f64) -> Result<Vec<(f64, f64)>, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(p);
    let b = p.root_bound();
    let mut stack = vec![(-b, b)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm_count_interval(&chain, lo, hi);
        if c == 0 {
            continue;
        }
        if c == 1 && hi - lo <= width {
            out.push((lo, hi));
            continue;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            // Cannot split further in f64; report the cluster as one box.
            out.push((lo, hi));
            continue;
        }
        stack.push((lo, mid));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(out)
}

/// Counts sign changes of the degree-d binary form Σ b_i c^{d-i} s^i on the
/// half-circle θ ∈ [0, π), i.e. its real projective roots (transversal
/// case). `refine` doubles the grid in low-|value| gaps to pick up close
/// pairs.
pub fn count_circle_sign_changes(coeffs: &[f64], refine: bool) -> usize {
    let d = coeffs.len() - 1;
    let m = (128 * ((d as f64).sqrt().ceil() as usize).max(1)).max(256);
    let mut cp = vec![1.0; d + 1];
    let mut sp = vec![1.0; d + 1];
    let mut eval = move |theta: f64| -> f64 {
        let (s, c) = theta.sin_cos();
        // powers are stable: |c|,|s| ≤ 1 and Kostlan-scale coefficients keep
        // the value O(1)–O(poly(d)).
        for i in 1..=d {
            cp[i] = cp[i - 1] * c;
            sp[i] = sp[i - 1] * s;
        }
        coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| b * cp[d - i] * sp[i])
            .sum()
    };
    let h = std::f64::consts::PI / m as f64;
    let vals: Vec<f64> = (0..m).map(|j| eval(j as f64 * h)).collect();
    let wrap = if d % 2 == 0 { vals[0] } else { -vals[0] };
    let mut count = 0;
    let mut extra = 0;
    for j in 0..m {
        let a = vals[j];
        let b = if j + 1 < m { vals[j + 1] } else { wrap };
        if a == 0.0 {
            count += 1; // exact zero at a grid point: measure-zero, count once
            continue;
        }
        if a.signum() != b.signum() && b != 0.0 {
            count += 1;
        } else if refine {
            // No sign change: check for a dipping pair by subdividing when
            // the midpoint undershoots both endpoints by a lot.
            let mid = eval((j as f64 + 0.5) * h);
            if mid.abs() < 1e-3 * a.abs().min(b.abs()) || mid.signum() != a.signum() {
                let fine = 64;
                let mut prev = a;
                let mut local = 0;
                for t in 1..=fine {
                    let v = eval(j as f64 * h + h * t as f64 / fine as f64);
                    if prev.signum() != v.signum() && v != 0.0 && prev != 0.0 {
                        local += 1;
                    }
                    prev = v;
                }
                extra += local;
            }
        }
    }
    count + extra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_on_simple_polynomials() {
        // x² + 1: no real roots
        assert_eq!(sturm_count_real_roots(&UniPoly::new(vec![1.0, 0.0, 1.0])).unwrap(), 0);
        // x³ - x: three real roots
        assert_eq!(
            sturm_count_real_roots(&UniPoly::new(vec![0.0, -1.0, 0.0, 1.0])).unwrap(),
            3
        );
        // repeated roots count once: (x-1)² = x² - 2x + 1
        assert_eq!(
            sturm_count_real_roots(&UniPoly::new(vec![1.0, -2.0, 1.0])).unwrap(),
            1
        );
        assert_eq!(
            sturm_count_real_roots(&UniPoly::new(vec![0.0])).unwrap_err(),
            SturmError::ZeroPolynomial
        );
    }

    #[test]
    fn isolation_brackets_each_root() {
        let p = UniPoly::new(vec![0.0, -1.0, 0.0, 1.0]); // roots -1, 0, 1
        let boxes = isolate_real_roots(&p, 1e-9).unwrap();
        assert_eq!(boxes.len(), 3);
        for (lo, hi) in &boxes {
            assert!(hi - lo <= 1e-9);
        }
        let roots = [-1.0, 0.0, 1.0];
        for ((lo, hi), r) in boxes.iter().zip(roots) {
            assert!(*lo <= r && r <= *hi + 1e-9);
        }
    }

    #[test]
    fn circle_count_agrees_with_sturm_on_affine_roots() {
        // p(x) = x³ - x homogenizes to c s³ ... with no root at infinity:
        // binary form b_i as coefficients of c^{d-i} s^i from the affine poly
        // s/c substitution: f(x) = Σ a_i x^i → Σ a_i c^{d-i} s^i.
        let affine = [0.0, -1.0, 0.0, 1.0];
        assert_eq!(count_circle_sign_changes(&affine, true), 3);
        // x² + 1 → no circle crossings
        assert_eq!(count_circle_sign_changes(&[1.0, 0.0, 1.0], true), 0);
        // top coefficient zero: root at infinity joins the projective count.
        // x (degree-2 ambient): binary form s c, roots [1:0] and [0:1].
        assert_eq!(count_circle_sign_changes(&[0.0, 1.0, 0.0], true), 2);
    }
}
