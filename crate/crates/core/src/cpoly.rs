//! Dense complex polynomials: univariate root finding (Aberth–Ehrlich) and
//! the bivariate Sylvester machinery needed for tangency counts on complex
//! plane curves.

use num_complex::Complex64;

use crate::linalg::complex_lu_logabsdet;

/// Dense univariate polynomial over ℂ, coefficients low → high.
#[derive(Debug, Clone)]
pub struct CUniPoly(pub Vec<Complex64>);

impl CUniPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        CUniPoly(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.norm_sqr() == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.0.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> CUniPoly {
        if self.0.len() <= 1 {
            return CUniPoly::new(vec![Complex64::new(0.0, 0.0)]);
        }
        CUniPoly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    /// All complex roots by Aberth–Ehrlich simultaneous iteration.
    pub fn roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        // Initial guesses on a circle sized by the Cauchy bound, slightly
        // de-symmetrized to avoid stalling on symmetric polynomials.
        let lead = self.0[d].norm();
        let bound = 1.0
            + self.0[..d]
                .iter()
                .fold(0.0f64, |a, c| a.max(c.norm()))
                / lead;
        let radius = bound.min(1e6);
        let mut z: Vec<Complex64> = (0..d)
            .map(|i| {
                let angle = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / d as f64 + 0.4;
                Complex64::from_polar(radius * (0.5 + 0.5 * (i as f64 + 1.0) / d as f64), angle)
            })
            .collect();
        let deriv = self.derivative();
        for _ in 0..200 {
            let mut moved = 0.0f64;
            for i in 0..d {
                let p = self.eval(z[i]);
                let dp = deriv.eval(z[i]);
                if p.norm_sqr() == 0.0 {
                    continue;
                }
                let newton = if dp.norm_sqr() > 0.0 {
                    p / dp
                } else {
                    Complex64::new(1e-8, 1e-8)
                };
                let mut rep = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    if j != i {
                        let diff = z[i] - z[j];
                        if diff.norm_sqr() > 1e-300 {
                            rep += diff.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * rep;
                let step = if denom.norm_sqr() > 1e-300 {
                    newton / denom
                } else {
                    newton
                };
                z[i] -= step;
                moved = moved.max(step.norm());
            }
            if moved < 1e-13 * radius.max(1.0) {
                break;
            }
        }
        z
    }
}

/// Bivariate complex polynomial stored as columns in the second variable:
/// f(u, v) = Σ_j col_j(u) v^j.
#[derive(Debug, Clone)]
pub struct CBivar {
    pub cols: Vec<CUniPoly>,
}

impl CBivar {
    /// From sparse trivariate homogeneous terms, dehomogenized at chart 0:
    /// exponents (e₀, e₁, e₂) → u^{e₁} v^{e₂}.
    pub fn from_homogeneous_chart0(terms: &[(Vec<u32>, Complex64)]) -> Self {
        let du = terms.iter().map(|(e, _)| e[1]).max().unwrap_or(0) as usize;
        let dv = terms.iter().map(|(e, _)| e[2]).max().unwrap_or(0) as usize;
        let mut cols = vec![vec![Complex64::new(0.0, 0.0); du + 1]; dv + 1];
        for (e, c) in terms {
            cols[e[2] as usize][e[1] as usize] += c;
        }
        CBivar {
            cols: cols.into_iter().map(CUniPoly::new).collect(),
        }
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for col in self.cols.iter().rev() {
            acc = acc * v + col.eval(u);
        }
        acc
    }

    /// Coefficients in v at fixed u, trimmed.
    pub fn at_u(&self, u: Complex64) -> CUniPoly {
        CUniPoly::new(self.cols.iter().map(|c| c.eval(u)).collect())
    }

    pub fn dv(&self) -> CBivar {
        if self.cols.len() <= 1 {
            return CBivar {
                cols: vec![CUniPoly::new(vec![Complex64::new(0.0, 0.0)])],
            };
        }
        CBivar {
            cols: self.cols[1..]
                .iter()
                .enumerate()
                .map(|(j, c)| CUniPoly::new(c.0.iter().map(|x| x * (j as f64 + 1.0)).collect()))
                .collect(),
        }
    }

    pub fn du(&self) -> CBivar {
        CBivar {
            cols: self.cols.iter().map(|c| c.derivative()).collect(),
        }
    }
}

/// ln|Res_v(f, g)| at fixed u, via the Sylvester determinant; the structural
/// v-degrees are supplied so the matrix shape does not fluctuate with u.
pub fn sylvester_logabs(f: &CUniPoly, g: &CUniPoly, dm: usize, dn: usize) -> f64 {
    let size = dm + dn;
    if size == 0 {
        return 0.0;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut mat = vec![zero; size * size];
    let fc = |j: usize| f.0.get(j).copied().unwrap_or(zero);
    let gc = |j: usize| g.0.get(j).copied().unwrap_or(zero);
    for r in 0..dn {
        for j in 0..=dm {
            mat[r * size + r + j] = fc(dm - j);
        }
    }
    for r in 0..dm {
        for j in 0..=dn {
            mat[(dn + r) * size + r + j] = gc(dn - j);
        }
    }
    complex_lu_logabsdet(&mut mat, size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn aberth_finds_roots_of_cubic() {
        // (z - 1)(z - 2i)(z + 3) = z³ + (2 - 2i)z² + (-3 - 4i)z - 6i... build
        // by convolution instead of typing the expansion.
        let roots = [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            coeffs = next;
        }
        let p = CUniPoly::new(coeffs);
        let mut found = p.roots();
        assert_eq!(found.len(), 3);
        for r in roots {
            let best = found
                .iter()
                .map(|z| (z - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "missing root {r}, best distance {best}");
        }
        found.retain(|z| z.norm() < 10.0);
        assert_eq!(found.len(), 3);
    }

    #[test]
    fn bivar_eval_consistency() {
        // f = u² + v² - 1 as chart-0 dehomogenization of x₁² + x₂² - x₀².
        let terms = vec![
            (vec![0u32, 2, 0], c(1.0, 0.0)),
            (vec![0, 0, 2], c(1.0, 0.0)),
            (vec![2, 0, 0], c(-1.0, 0.0)),
        ];
        let f = CBivar::from_homogeneous_chart0(&terms);
        let v = f.eval(c(0.6, 0.0), c(0.8, 0.0));
        assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-14);
        let fv = f.dv();
        assert_abs_diff_eq!(fv.eval(c(0.0, 0.0), c(1.0, 0.0)).re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn sylvester_detects_common_roots() {
        // f = v - u, g = v + u share a root only at u = 0.
        let f = CBivar {
            cols: vec![
                CUniPoly::new(vec![c(0.0, 0.0), c(-1.0, 0.0)]),
                CUniPoly::new(vec![c(1.0, 0.0)]),
            ],
        };
        let g = CBivar {
            cols: vec![
                CUniPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
                CUniPoly::new(vec![c(1.0, 0.0)]),
            ],
        };
        let at0 = sylvester_logabs(&f.at_u(c(0.0, 0.0)), &g.at_u(c(0.0, 0.0)), 1, 1);
        let at1 = sylvester_logabs(&f.at_u(c(1.0, 0.0)), &g.at_u(c(1.0, 0.0)), 1, 1);
        assert_eq!(at0, f64::NEG_INFINITY);
        assert!(at1.is_finite());
    }
}
