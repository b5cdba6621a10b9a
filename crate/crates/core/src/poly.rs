//! Sparse multivariate polynomials with f64 coefficients.
//!
//! Terms are keyed by exponent multi-index in graded lexicographic order, so
//! iteration (and therefore every accumulated sum) is deterministic. Stored
//! coefficients are never zero; anything below 1e-300 in absolute value is
//! dropped on normalization as sub-representable noise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::ln_fact;

const COEFF_FLOOR: f64 = 1e-300;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("chart index {chart} out of range for {nvars} variables")]
    ChartOutOfRange { chart: usize, nvars: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("component {index} has {got} variables, expected {expected}")]
    MixedArity { index: usize, expected: usize, got: usize },
    #[error("bad polynomial literal: {0}")]
    BadLiteral(String),
}

/// Exponent multi-index ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse real polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, f64>,
    homogeneous_degree: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermLiteral {
    exps: Vec<u32>,
    coef: f64,
}

impl MultiPoly {
    /// Builds a polynomial from `(exponents, coefficient)` terms, merging
    /// duplicates and dropping negligible coefficients. The homogeneous
    /// degree is recorded when every surviving term has the same total
    /// degree.
    pub fn new(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Mono, f64> = BTreeMap::new();
        for (exps, coef) in terms {
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            *map.entry(Mono(exps)).or_insert(0.0) += coef;
        }
        map.retain(|_, c| c.abs() >= COEFF_FLOOR);
        Ok(Self::from_map(nvars, map))
    }

    fn from_map(nvars: usize, terms: BTreeMap<Mono, f64>) -> Self {
        let mut degs = terms.keys().map(|m| m.total_degree());
        let homogeneous_degree = match degs.next() {
            None => None,
            Some(d0) => {
                if degs.all(|d| d == d0) {
                    Some(d0)
                } else {
                    None
                }
            }
        };
        MultiPoly {
            nvars,
            terms,
            homogeneous_degree,
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_map(nvars, BTreeMap::new())
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::new(nvars, [(vec![0; nvars], c)]).unwrap()
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coef: f64) -> Result<Self, PolyError> {
        Self::new(nvars, [(exps, coef)])
    }

    /// The variable `x_var` as a polynomial.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Self::new(nvars, [(exps, 1.0)]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree.is_some() || self.is_zero()
    }

    /// Maximum total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Iterates terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(m, &c)| (m.0.as_slice(), c))
    }

    /// Σ coeff · x^index, term by term.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc = 0.0;
        for (mono, &c) in &self.terms {
            let mut t = c;
            for (xi, &e) in x.iter().zip(&mono.0) {
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact partial derivative with respect to `var`.
    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut map = BTreeMap::new();
        for (mono, &c) in &self.terms {
            let e = mono.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = mono.0.clone();
            exps[var] = e - 1;
            map.insert(Mono(exps), c * e as f64);
        }
        Self::from_map(self.nvars, map)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut map = BTreeMap::new();
        for (mono, &v) in &self.terms {
            let cv = v * c;
            if cv.abs() >= COEFF_FLOOR {
                map.insert(mono.clone(), cv);
            }
        }
        Self::from_map(self.nvars, map)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut map = self.terms.clone();
        for (mono, &c) in &other.terms {
            *map.entry(mono.clone()).or_insert(0.0) += c;
        }
        map.retain(|_, c| c.abs() >= COEFF_FLOOR);
        Self::from_map(self.nvars, map)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut map: BTreeMap<Mono, f64> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *map.entry(Mono(exps)).or_insert(0.0) += ca * cb;
            }
        }
        map.retain(|_, c| c.abs() >= COEFF_FLOOR);
        Self::from_map(self.nvars, map)
    }

    /// Substitutes 1 for the chart variable of a homogeneous polynomial.
    /// The output has one variable fewer.
    pub fn dehomogenize(&self, chart: usize) -> Result<Self, PolyError> {
        if chart >= self.nvars {
            return Err(PolyError::ChartOutOfRange {
                chart,
                nvars: self.nvars,
            });
        }
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let mut map: BTreeMap<Mono, f64> = BTreeMap::new();
        for (mono, &c) in &self.terms {
            let mut exps = Vec::with_capacity(self.nvars - 1);
            for (j, &e) in mono.0.iter().enumerate() {
                if j != chart {
                    exps.push(e);
                }
            }
            *map.entry(Mono(exps)).or_insert(0.0) += c;
        }
        map.retain(|_, c| c.abs() >= COEFF_FLOOR);
        Ok(Self::from_map(self.nvars - 1, map))
    }

    /// Homogenizes to degree `deg` by inserting a new variable at position
    /// `at` carrying the missing degree of each term.
    pub fn homogenize(&self, at: usize, deg: u32) -> Result<Self, PolyError> {
        assert!(at <= self.nvars);
        let mut map = BTreeMap::new();
        for (mono, &c) in &self.terms {
            let td = mono.total_degree();
            if td > deg {
                return Err(PolyError::NotHomogeneous);
            }
            let mut exps = mono.0.clone();
            exps.insert(at, deg - td);
            map.insert(Mono(exps), c);
        }
        Ok(Self::from_map(self.nvars + 1, map))
    }

    /// Squared Bargmann–Fock norm: Σ |coeff|² · i₁!⋯i_n! / π^{i₁+⋯+i_n}.
    /// Factorial weights go through log-Gamma so degrees beyond 170 do not
    /// overflow.
    pub fn bargmann_fock_norm_sq(&self) -> f64 {
        let ln_pi = PI.ln();
        let mut acc = 0.0;
        for (mono, &c) in &self.terms {
            let mut ln_w = -(mono.total_degree() as f64) * ln_pi;
            for &e in &mono.0 {
                ln_w += ln_fact(e as u64);
            }
            acc += c * c * ln_w.exp();
        }
        acc
    }

    /// Parses the literal format: a JSON list of `{"exps": [...], "coef": c}`.
    pub fn from_literal(nvars: usize, json: &str) -> Result<Self, PolyError> {
        let lits: Vec<TermLiteral> =
            serde_json::from_str(json).map_err(|e| PolyError::BadLiteral(e.to_string()))?;
        Self::new(nvars, lits.into_iter().map(|t| (t.exps, t.coef)))
    }

    /// Renders the literal format (graded-lex term order).
    pub fn to_literal(&self) -> String {
        let lits: Vec<TermLiteral> = self
            .terms
            .iter()
            .map(|(m, &c)| TermLiteral {
                exps: m.0.clone(),
                coef: c,
            })
            .collect();
        serde_json::to_string(&lits).unwrap()
    }
}

/// An ordered k-tuple of polynomials sharing the variable set: a map ℝⁿ → ℝᵏ.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap {
    components: Vec<MultiPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self, PolyError> {
        assert!(!components.is_empty(), "PolyMap needs at least one component");
        let nvars = components[0].nvars();
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != nvars {
                return Err(PolyError::MixedArity {
                    index: i,
                    expected: nvars,
                    got: c.nvars(),
                });
            }
        }
        // Degrees are not validated here: affine maps (e.g. dehomogenized
        // charts) legitimately mix component degrees. Projective callers
        // check `homogeneous_degree()`, which is Some only when every
        // component carries the same degree.
        Ok(PolyMap { components })
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.components[i]
    }

    /// Common homogeneous degree, when every component has it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.components.iter().map(|c| c.homogeneous_degree());
        let first = degs.next().flatten()?;
        if degs.all(|d| d == Some(first)) {
            Some(first)
        } else {
            None
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>, PolyError> {
        self.components.iter().map(|c| c.evaluate(x)).collect()
    }

    /// Euclidean norm |P(x)|.
    pub fn evaluate_norm(&self, x: &[f64]) -> Result<f64, PolyError> {
        let v = self.evaluate(x)?;
        Ok(v.iter().map(|t| t * t).sum::<f64>().sqrt())
    }

    /// Row i is the gradient of component i at `x`.
    pub fn jacobian(&self, x: &[f64]) -> Result<JacobianValue, PolyError> {
        if x.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                got: x.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.k());
        for comp in &self.components {
            let mut row = Vec::with_capacity(self.nvars());
            for v in 0..self.nvars() {
                row.push(comp.partial(v).evaluate(x)?);
            }
            rows.push(row);
        }
        Ok(JacobianValue {
            rows,
            point: x.to_vec(),
        })
    }

    /// Σ over components of the squared Bargmann–Fock norm.
    pub fn bargmann_fock_norm_sq(&self) -> f64 {
        self.components.iter().map(|c| c.bargmann_fock_norm_sq()).sum()
    }

    pub fn dehomogenize(&self, chart: usize) -> Result<Self, PolyError> {
        let comps: Result<Vec<_>, _> =
            self.components.iter().map(|c| c.dehomogenize(chart)).collect();
        PolyMap::new(comps?)
    }

    pub fn scale(&self, c: f64) -> Self {
        PolyMap {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Parses a JSON list of per-component term lists.
    pub fn from_literal(nvars: usize, json: &str) -> Result<Self, PolyError> {
        let lits: Vec<Vec<TermLiteral>> =
            serde_json::from_str(json).map_err(|e| PolyError::BadLiteral(e.to_string()))?;
        if lits.is_empty() {
            return Err(PolyError::BadLiteral("empty component list".into()));
        }
        let comps: Result<Vec<_>, _> = lits
            .into_iter()
            .map(|l| MultiPoly::new(nvars, l.into_iter().map(|t| (t.exps, t.coef))))
            .collect();
        PolyMap::new(comps?)
    }

    pub fn to_literal(&self) -> String {
        let lits: Vec<Vec<TermLiteral>> = self
            .components
            .iter()
            .map(|c| {
                c.terms
                    .iter()
                    .map(|(m, &co)| TermLiteral {
                        exps: m.0.clone(),
                        coef: co,
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string(&lits).unwrap()
    }
}

/// The matrix of partial derivatives of a `PolyMap` at a point.
#[derive(Debug, Clone)]
pub struct JacobianValue {
    rows: Vec<Vec<f64>>,
    point: Vec<f64>,
}

impl JacobianValue {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.point.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    /// Smallest singular value, i.e. the best constant ε with
    /// |(dP)*(w)| ≥ ε|w|.
    pub fn sigma_min(&self) -> f64 {
        crate::linalg::sym_eigenvalues(&gram(&self.rows))
            .first()
            .map(|l| l.max(0.0).sqrt())
            .unwrap_or(0.0)
    }
}

/// Gram matrix J Jᵀ of a row-major k×n matrix, as a dense k×k row-major vec.
pub(crate) fn gram(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = rows.len();
    let mut g = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            g[i][j] = dot;
            g[j][i] = dot;
        }
    }
    g
}

/// Flattened evaluator for hot loops: per-point power tables, one pass for
/// values and Jacobian rows.
pub struct FastPolyMap {
    nvars: usize,
    k: usize,
    max_deg: u32,
    // terms[comp] = (exps, coef)
    terms: Vec<Vec<(Vec<u32>, f64)>>,
}

impl FastPolyMap {
    pub fn compile(map: &PolyMap) -> Self {
        let nvars = map.nvars();
        let max_deg = map
            .components()
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0);
        let terms = map
            .components()
            .iter()
            .map(|c| c.terms().map(|(e, cf)| (e.to_vec(), cf)).collect())
            .collect();
        FastPolyMap {
            nvars,
            k: map.k(),
            max_deg,
            terms,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Workspace for repeated evaluations: power tables per variable.
    pub fn workspace(&self) -> Vec<f64> {
        vec![0.0; self.nvars * (self.max_deg as usize + 1)]
    }

    fn fill_powers(&self, x: &[f64], pow: &mut [f64]) {
        let w = self.max_deg as usize + 1;
        for v in 0..self.nvars {
            let base = v * w;
            pow[base] = 1.0;
            for e in 1..w {
                pow[base + e] = pow[base + e - 1] * x[v];
            }
        }
    }

    /// |P(x)|² using the supplied workspace.
    pub fn norm_sq(&self, x: &[f64], pow: &mut [f64]) -> f64 {
        self.fill_powers(x, pow);
        let w = self.max_deg as usize + 1;
        let mut acc = 0.0;
        for comp in &self.terms {
            let mut val = 0.0;
            for (exps, c) in comp {
                let mut t = *c;
                for (v, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        t *= pow[v * w + e as usize];
                    }
                }
                val += t;
            }
            acc += val * val;
        }
        acc
    }

    /// Values and Jacobian rows in one pass.
    pub fn values_and_jacobian(
        &self,
        x: &[f64],
        pow: &mut [f64],
        values: &mut [f64],
        jac: &mut [Vec<f64>],
    ) {
        self.fill_powers(x, pow);
        let w = self.max_deg as usize + 1;
        for (ci, comp) in self.terms.iter().enumerate() {
            let mut val = 0.0;
            let row = &mut jac[ci];
            row.iter_mut().for_each(|r| *r = 0.0);
            for (exps, c) in comp {
                let mut t = *c;
                for (v, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        t *= pow[v * w + e as usize];
                    }
                }
                val += t;
                for (v, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        // d/dx_v of the term: replace one power of x_v.
                        let mut dt = *c * e as f64;
                        for (u, &eu) in exps.iter().enumerate() {
                            let eff = if u == v { eu - 1 } else { eu };
                            if eff > 0 {
                                dt *= pow[u * w + eff as usize];
                            }
                        }
                        row[v] += dt;
                    }
                }
            }
            values[ci] = val;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p_of(nvars: usize, terms: &[(&[u32], f64)]) -> MultiPoly {
        MultiPoly::new(nvars, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn evaluate_monomial_and_sphere() {
        let p = p_of(1, &[(&[2], 1.0)]);
        assert_eq!(p.evaluate(&[3.0]).unwrap(), 9.0);

        let sphere = p_of(
            3,
            &[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0), (&[0, 0, 2], 1.0), (&[0, 0, 0], -1.0)],
        );
        assert_eq!(sphere.evaluate(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(
            sphere.evaluate(&[1.0, 0.0]).unwrap_err(),
            PolyError::DimensionMismatch { expected: 3, got: 2 }
        );
    }

    #[test]
    fn evaluate_product_pair_component_on_its_zero_set() {
        // (|x|² - 2)² + y₁² - 1 at |x|² = 2, y₁ = 1: substituting by hand
        // gives 0 + 1 - 1 = 0.
        let x2 = p_of(3, &[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0)]);
        let shifted = x2.sub(&MultiPoly::constant(3, 2.0));
        let q = shifted
            .mul(&shifted)
            .add(&p_of(3, &[(&[0, 0, 2], 1.0)]))
            .sub(&MultiPoly::constant(3, 1.0));
        let x = [2.0f64.sqrt(), 0.0, 1.0];
        assert_abs_diff_eq!(q.evaluate(&x).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobian_identity_and_product_rule() {
        let id = PolyMap::new(vec![MultiPoly::var(2, 0), MultiPoly::var(2, 1)]).unwrap();
        let j = id.jacobian(&[0.3, -0.7]).unwrap();
        assert_eq!(
            (j.entry(0, 0), j.entry(0, 1), j.entry(1, 0), j.entry(1, 1)),
            (1.0, 0.0, 0.0, 1.0)
        );

        let prod = PolyMap::new(vec![p_of(2, &[(&[1, 1], 1.0)])]).unwrap();
        let j = prod.jacobian(&[1.0, 1.0]).unwrap();
        assert_eq!((j.entry(0, 0), j.entry(0, 1)), (1.0, 1.0));
    }

    #[test]
    fn jacobian_sphere_row_norm() {
        // P_k = Σ_{j=k}^n x_j² - 1 has row (0,..,0,2x_k,..,2x_n) and squared
        // row norm 4 Σ_{j≥k} x_j².
        let n = 4;
        let k = 2usize;
        let terms: Vec<(Vec<u32>, f64)> = (k - 1..n)
            .map(|j| {
                let mut e = vec![0u32; n];
                e[j] = 2;
                (e, 1.0)
            })
            .chain([(vec![0; n], -1.0)])
            .collect();
        let p = PolyMap::new(vec![MultiPoly::new(n, terms).unwrap()]).unwrap();
        let x = [0.3, -0.2, 0.5, 0.7];
        let j = p.jacobian(&x).unwrap();
        let row_norm_sq: f64 = (0..n).map(|v| j.entry(0, v).powi(2)).sum();
        let expect: f64 = 4.0 * x[k - 1..].iter().map(|t| t * t).sum::<f64>();
        assert_abs_diff_eq!(row_norm_sq, expect, epsilon = 1e-13);
        assert_eq!(j.entry(0, 0), 0.0);
    }

    #[test]
    fn bargmann_fock_weights() {
        let one = PolyMap::new(vec![MultiPoly::constant(3, 1.0)]).unwrap();
        assert_eq!(one.bargmann_fock_norm_sq(), 1.0);

        let xj = PolyMap::new(vec![MultiPoly::var(3, 1)]).unwrap();
        assert_abs_diff_eq!(xj.bargmann_fock_norm_sq(), 1.0 / PI, epsilon = 1e-15);

        // Σ_{j=k}^n x_j² - 1 has squared norm 1 + 2(n-k+1)/π².
        for (n, k) in [(3usize, 1usize), (4, 2), (5, 3)] {
            let terms: Vec<(Vec<u32>, f64)> = (k - 1..n)
                .map(|j| {
                    let mut e = vec![0u32; n];
                    e[j] = 2;
                    (e, 1.0)
                })
                .chain([(vec![0; n], -1.0)])
                .collect();
            let p = MultiPoly::new(n, terms).unwrap();
            let expect = 1.0 + 2.0 * (n - k + 1) as f64 / (PI * PI);
            assert_abs_diff_eq!(p.bargmann_fock_norm_sq(), expect, epsilon = 1e-12);
        }
        // n=3, k=1 numeric value
        let terms: Vec<(Vec<u32>, f64)> = (0..3)
            .map(|j| {
                let mut e = vec![0u32; 3];
                e[j] = 2;
                (e, 1.0)
            })
            .chain([(vec![0; 3], -1.0)])
            .collect();
        let p = MultiPoly::new(3, terms).unwrap();
        assert_abs_diff_eq!(p.bargmann_fock_norm_sq(), 1.6079271018540267, epsilon = 1e-12);
    }

    #[test]
    fn bargmann_fock_additive_and_quadratic() {
        let p = p_of(2, &[(&[3, 0], 1.25), (&[1, 1], -0.5)]);
        let q = p_of(2, &[(&[0, 2], 2.0)]);
        let map = PolyMap::new(vec![p.clone(), q.clone()]).unwrap();
        assert_abs_diff_eq!(
            map.bargmann_fock_norm_sq(),
            p.bargmann_fock_norm_sq() + q.bargmann_fock_norm_sq(),
            epsilon = 1e-14
        );
        let c = 3.7;
        assert_abs_diff_eq!(
            map.scale(c).bargmann_fock_norm_sq(),
            c * c * map.bargmann_fock_norm_sq(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn dehomogenize_cases() {
        let p = p_of(2, &[(&[2, 0], 1.0), (&[0, 2], 1.0)]);
        let d = p.dehomogenize(0).unwrap();
        assert_eq!(d.nvars(), 1);
        assert_eq!(d.evaluate(&[2.0]).unwrap(), 5.0);

        let q = p_of(2, &[(&[1, 1], 1.0)]);
        let dq = q.dehomogenize(1).unwrap();
        assert_eq!(dq.evaluate(&[3.0]).unwrap(), 3.0);

        let not_h = p_of(2, &[(&[1, 0], 1.0), (&[0, 2], 1.0)]);
        assert_eq!(not_h.dehomogenize(0).unwrap_err(), PolyError::NotHomogeneous);

        // substitution cannot raise the degree
        let r = p_of(3, &[(&[3, 1, 2], 1.0), (&[0, 6, 0], -2.0)]);
        let dr = r.dehomogenize(1).unwrap();
        assert!(dr.degree().unwrap() <= r.degree().unwrap());
    }

    #[test]
    fn dehomogenize_evaluation_identity() {
        let p = p_of(3, &[(&[2, 1, 0], 1.5), (&[0, 0, 3], -2.0), (&[1, 1, 1], 0.25)]);
        let chart = 1;
        let d = p.dehomogenize(chart).unwrap();
        let x = [0.5, -2.0];
        let lifted = [0.5, 1.0, -2.0];
        assert_eq!(d.evaluate(&x).unwrap(), p.evaluate(&lifted).unwrap());
    }

    #[test]
    fn literal_roundtrip() {
        let p = p_of(2, &[(&[2, 0], 1.0), (&[0, 1], -0.5)]);
        let parsed = MultiPoly::from_literal(2, &p.to_literal()).unwrap();
        assert_eq!(p, parsed);

        let map = PolyMap::new(vec![p.clone(), MultiPoly::var(2, 1)]).unwrap();
        let parsed = PolyMap::from_literal(2, &map.to_literal()).unwrap();
        assert_eq!(map, parsed);

        let lit = r#"[{"exps":[1,0],"coef":2.0},{"exps":[1,0],"coef":-2.0}]"#;
        assert!(MultiPoly::from_literal(2, lit).unwrap().is_zero());
    }

    #[test]
    fn fast_map_matches_reference() {
        let p = p_of(3, &[(&[2, 1, 0], 1.5), (&[0, 0, 3], -2.0), (&[1, 1, 1], 0.25)]);
        let q = p_of(3, &[(&[0, 2, 0], 1.0), (&[1, 0, 0], -1.0)]);
        let map = PolyMap::new(vec![p, q]).unwrap();
        let fast = FastPolyMap::compile(&map);
        let mut pow = fast.workspace();
        let x = [0.3, -1.2, 0.8];
        let vals = map.evaluate(&x).unwrap();
        assert_abs_diff_eq!(
            fast.norm_sq(&x, &mut pow),
            vals.iter().map(|v| v * v).sum::<f64>(),
            epsilon = 1e-12
        );
        let mut values = vec![0.0; 2];
        let mut jac = vec![vec![0.0; 3]; 2];
        fast.values_and_jacobian(&x, &mut pow, &mut values, &mut jac);
        let jref = map.jacobian(&x).unwrap();
        for i in 0..2 {
            assert_abs_diff_eq!(values[i], vals[i], epsilon = 1e-12);
            for v in 0..3 {
                assert_abs_diff_eq!(jac[i][v], jref.entry(i, v), epsilon = 1e-12);
            }
        }
    }
}
