//! Euler characteristics of smooth complete intersections in CPⁿ by
//! truncated power series in the hyperplane class.
//!
//! With c(CPⁿ) = (1+t)^{n+1} and c(O(d)ᵏ) = (1+dt)ᵏ, adjunction gives the
//! total Chern class of the vanishing locus as the quotient series; the
//! Euler characteristic is dᵏ times the t^{n-k} coefficient. All arithmetic
//! is integer-exact in i128 (the inverse of a series with constant term 1
//! stays integral).

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChernError {
    #[error("series inverse needs constant term ±1, got {0}")]
    NonUnitConstant(i128),
    #[error("parameters out of range: need 1 ≤ k ≤ n, got (n,k) = ({0},{1})")]
    BadRange(u32, u32),
}

/// Truncated integer power series: coefficients c₀..c_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<i128>,
}

impl FormalSeries {
    pub fn new(coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty());
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// (1 + a·t)^m truncated at `order`.
    pub fn binomial_power(a: i128, m: u32, order: usize) -> Self {
        let mut coeffs = vec![0i128; order + 1];
        let mut binom: i128 = 1;
        let mut apow: i128 = 1;
        for j in 0..=order.min(m as usize) {
            coeffs[j] = binom * apow;
            binom = binom * (m as i128 - j as i128) / (j as i128 + 1);
            apow *= a;
        }
        FormalSeries::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        let mut coeffs = vec![0i128; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        FormalSeries::new(coeffs)
    }

    /// Multiplicative inverse; requires constant term ±1 for integrality.
    pub fn inverse(&self) -> Result<Self, ChernError> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(ChernError::NonUnitConstant(c0));
        }
        let order = self.order();
        let mut inv = vec![0i128; order + 1];
        inv[0] = c0; // 1/c0 = c0 for ±1
        for m in 1..=order {
            let mut acc = 0i128;
            for j in 1..=m {
                acc += self.coeff(j) * inv[m - j];
            }
            inv[m] = -c0 * acc;
        }
        Ok(FormalSeries::new(inv))
    }
}

/// χ of the vanishing locus of a generic section of O(d)ᵏ on CPⁿ:
/// dᵏ · [t^{n-k}] (1+t)^{n+1} (1+dt)^{-k}.
pub fn euler_char(n: u32, k: u32, d: i128) -> Result<i128, ChernError> {
    if k < 1 || k > n {
        return Err(ChernError::BadRange(n, k));
    }
    let order = n as usize;
    let cx = FormalSeries::binomial_power(1, n + 1, order);
    let ce = FormalSeries::binomial_power(d, k, order);
    let quotient = cx.mul(&ce.inverse()?);
    let mut dpow: i128 = 1;
    for _ in 0..k {
        dpow *= d;
    }
    Ok(dpow * quotient.coeff((n - k) as usize))
}

/// Coefficient of dⁿ in χ(n, k, d) as a polynomial in d, extracted by
/// finite differences over d = 1..=n+2 (one more point than the degree
/// needs, as an integrality cross-check). Equals (-1)^{n-k}·C(n-1, k-1).
pub fn leading_coefficient(n: u32, k: u32) -> Result<i128, ChernError> {
    if k < 1 || k > n {
        return Err(ChernError::BadRange(n, k));
    }
    let points = n as usize + 2;
    let mut table: Vec<i128> = (1..=points as i128)
        .map(|d| euler_char(n, k, d))
        .collect::<Result<_, _>>()?;
    // Finite differences: after n rounds, entries are n!·(leading coeff),
    // and one extra entry must agree (degree exactly n).
    for _ in 0..n {
        for i in 0..table.len() - 1 {
            table[i] = table[i + 1] - table[i];
        }
        table.pop();
    }
    assert!(
        table.windows(2).all(|w| w[0] == w[1]),
        "χ(d) is not a degree-n polynomial"
    );
    let mut fact: i128 = 1;
    for j in 2..=n as i128 {
        fact *= j;
    }
    assert_eq!(table[0] % fact, 0);
    Ok(table[0] / fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_inverse_reproduces_alternating_binomials() {
        // (1+x)^{-k} = Σ (-1)^j C(k-1+j, j) x^j
        let k = 3u32;
        let inv = FormalSeries::binomial_power(1, k, 6).inverse().unwrap();
        for j in 0..=6usize {
            let expect = (-1i128).pow(j as u32) * binom(k as usize - 1 + j, j);
            assert_eq!(inv.coeff(j), expect);
        }
    }

    fn binom(n: usize, k: usize) -> i128 {
        let mut acc: i128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as i128 / (i + 1) as i128;
        }
        acc
    }

    #[test]
    fn plane_curves_match_genus_formula() {
        for d in 1..=10i128 {
            let chi = euler_char(2, 1, d).unwrap();
            assert_eq!(chi, 2 - (d - 1) * (d - 2));
        }
        assert_eq!(euler_char(2, 1, 3).unwrap(), 0);
        assert_eq!(euler_char(2, 1, 4).unwrap(), -4);
    }

    #[test]
    fn full_intersections_give_bezout() {
        for n in 1..=6u32 {
            for d in 1..=10i128 {
                let chi = euler_char(n, n, d).unwrap();
                assert_eq!(chi, d.pow(n));
            }
        }
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(leading_coefficient(2, 1).unwrap(), -1);
        assert_eq!(leading_coefficient(3, 2).unwrap(), -2);
        assert_eq!(leading_coefficient(4, 2).unwrap(), 3);
        assert_eq!(leading_coefficient(3, 1).unwrap(), 1);
        for n in 1..=6u32 {
            for k in 1..=n {
                let expect = (-1i128).pow(n - k) * binom(n as usize - 1, k as usize - 1);
                assert_eq!(leading_coefficient(n, k).unwrap(), expect);
            }
        }
        assert_eq!(leading_coefficient(2, 3).unwrap_err(), ChernError::BadRange(2, 3));
    }
}
