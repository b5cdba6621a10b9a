//! Closed-form Gamma-function constants for the density and bound formulas.
//!
//! All arguments that occur here are integers or half-integers, so log-Gamma
//! is evaluated by exact recursion from Γ(1) and Γ(1/2) rather than a series
//! approximation; products are assembled in log space and exponentiated at
//! the end. Relative error stays near machine epsilon for arguments ≤ 50,
//! which the exact-identity checks (1e-12 absolute) rely on.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("k = n has no matrix factor; use zero_density_kn")]
    KEqualsN,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

const LN_TABLE_SIZE: usize = 4096;

fn ln_fact_table() -> &'static Vec<f64> {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; LN_TABLE_SIZE];
        for i in 2..LN_TABLE_SIZE {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    })
}

/// ln(n!)
pub fn ln_fact(n: u64) -> f64 {
    let t = ln_fact_table();
    assert!((n as usize) < t.len(), "ln_fact table exhausted at {n}");
    t[n as usize]
}

fn ln_gamma_half_table() -> &'static Vec<f64> {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; 2 * LN_TABLE_SIZE];
        // Entries indexed by m, holding ln Γ(m/2). Γ(1/2) = √π, Γ(1) = 1,
        // and Γ(x+1) = x Γ(x).
        t[1] = 0.5 * PI.ln();
        t[2] = 0.0;
        for m in 3..t.len() {
            t[m] = t[m - 2] + ((m as f64 - 2.0) / 2.0).ln();
        }
        t
    })
}

/// ln Γ(m/2) for integer m ≥ 1.
pub fn ln_gamma_half(m: u64) -> f64 {
    let t = ln_gamma_half_table();
    assert!(m >= 1 && (m as usize) < t.len(), "ln_gamma_half out of range: {m}");
    t[m as usize]
}

/// Exact binomial coefficient as f64 (n ≤ 60 keeps the u128 path exact).
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// Fubini–Study volume of RPⁿ: √π / Γ((n+1)/2).
pub fn vol_fs_rp(n: u32) -> f64 {
    assert!(n >= 1);
    (0.5 * PI.ln() - ln_gamma_half(n as u64 + 1)).exp()
}

/// Riemannian volume of the Grassmannian Gr(k-1, n-1) of (k-1)-planes in
/// ℝ^{n-1}, with the √Tr(A*A) metric on tangent spaces:
/// C(n-1,k-1) · √π^{(k-1)(n-k)} · ∏_{j=1}^{k-1} Γ(1+j/2) / ∏_{j=n-k+1}^{n-1} Γ(1+j/2).
pub fn vol_grassmann(n: u32, k: u32) -> f64 {
    assert!(1 <= k && k <= n);
    let mut ln = binomial(n as u64 - 1, k as u64 - 1).ln();
    ln += (((k - 1) * (n - k)) as f64) * 0.5 * PI.ln();
    for j in 1..k as u64 {
        ln += ln_gamma_half(j + 2);
    }
    for j in (n - k + 1) as u64..n as u64 {
        ln -= ln_gamma_half(j + 2);
    }
    ln.exp()
}

/// The Grassmannian volume for the metric rescaled by 1/√π, i.e.
/// `vol_grassmann` divided by √π^{(k-1)(n-k)}.
pub fn v_rescaled(n: u32, k: u32) -> f64 {
    assert!(1 <= k && k <= n);
    let mut ln = binomial(n as u64 - 1, k as u64 - 1).ln();
    for j in 1..k as u64 {
        ln += ln_gamma_half(j + 2);
    }
    for j in (n - k + 1) as u64..n as u64 {
        ln -= ln_gamma_half(j + 2);
    }
    ln.exp()
}

/// Moments of |det| for m×m Gaussian matrices with i.i.d. N(0, 1/2) entries:
/// E_m(|det|^p) = ∏_{j=1}^{m} Γ((p+j)/2) / Γ(j/2). Returns 1 for m = 0.
pub fn mehta_closed(m: u32, p: u32) -> f64 {
    let mut ln = 0.0;
    for j in 1..=m as u64 {
        ln += ln_gamma_half(p as u64 + j) - ln_gamma_half(j);
    }
    ln.exp()
}

/// A density constant with the parameters it was instantiated at.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityConstant {
    pub n: u32,
    pub k: u32,
    pub i: u32,
    pub value: f64,
    pub formula_id: String,
}

/// Limit density of index-i critical points per unit volume and per √dⁿ:
/// (1/Γ(k/2)) · V_{k-1,n-1} · E_{k-1}(|det|^{n-k+2}) · e_R(i, n-k-i).
///
/// The e_R factor has no closed form for sizes ≥ 2 and is supplied by the
/// caller (Monte Carlo or the 1×1 / empty-matrix special cases).
pub fn crit_density(n: u32, k: u32, i: u32, e_r_value: f64) -> Result<DensityConstant, ConstantsError> {
    if k >= n {
        return Err(ConstantsError::KEqualsN);
    }
    if k < 1 || i > n - k {
        return Err(ConstantsError::OutOfRange(format!("(n,k,i)=({n},{k},{i})")));
    }
    let value = (-ln_gamma_half(k as u64)).exp()
        * v_rescaled(n, k)
        * mehta_closed(k - 1, n - k + 2)
        * e_r_value;
    Ok(DensityConstant {
        n,
        k,
        i,
        value,
        formula_id: "crit-density-limit".into(),
    })
}

/// Limit density of the zero count for k = n systems: Γ((n+1)/2)/√π,
/// the reciprocal of the Fubini–Study volume of RPⁿ.
pub fn zero_density_kn(n: u32) -> f64 {
    (ln_gamma_half(n as u64 + 1) - 0.5 * PI.ln()).exp()
}

/// Upper-bound constant for the i-th Betti number on RPⁿ, per √dⁿ:
/// C(n-1,k-1) · e_R · Vol_FS(RPⁿ)/Vol_FS(RPᵏ).
pub fn betti_upper_bound(n: u32, k: u32, i: u32, e_r_value: f64) -> Result<f64, ConstantsError> {
    if k >= n {
        return Err(ConstantsError::KEqualsN);
    }
    if k < 1 || i > n - k {
        return Err(ConstantsError::OutOfRange(format!("(n,k,i)=({n},{k},{i})")));
    }
    Ok(binomial(n as u64 - 1, k as u64 - 1) * e_r_value * vol_fs_rp(n) / vol_fs_rp(k))
}

/// Limit constant of the Lefschetz critical-point measure: C(n-1, k-1).
pub fn lefschetz_constant(n: u32, k: u32) -> f64 {
    assert!(1 <= k && k <= n);
    binomial(n as u64 - 1, k as u64 - 1)
}

/// The same constant assembled from its factor chain:
/// (1/2)·Vol(S^{2k-1})·Vol(Gr_ℂ(k-1,n-1))·E^ℂ_{k-1}(|det|^{2(n-k+2)})·e_ℂ(n-k)
/// / (π^{(n-k)(k-1)+k} · n!),
/// with Vol(S^{2k-1}) = 2π^k/(k-1)!, e_ℂ(m) = (m+1)!,
/// E^ℂ_{k-1} = ∏_{j=n-k+3}^{n+1} Γ(j) / ∏_{j=1}^{k-1} Γ(j) and
/// Vol(Gr_ℂ) = π^{(k-1)(n-k)} ∏_{j=1}^{k-1} Γ(j) / ∏_{j=n-k+1}^{n-1} Γ(j).
/// The division by n! converts the ωⁿ/n! volume normalization of the chain
/// into the ωⁿ normalization of the limit measure.
pub fn lefschetz_factor_chain(n: u32, k: u32) -> f64 {
    assert!(1 <= k && k <= n);
    let (n64, k64) = (n as u64, k as u64);
    // ln of (1/2) Vol(S^{2k-1}) = ln(π^k/(k-1)!)
    let mut ln = k as f64 * PI.ln() - ln_fact(k64 - 1);
    // Vol(Gr_C(k-1, n-1))
    ln += ((k - 1) * (n - k)) as f64 * PI.ln();
    for j in 1..k64 {
        ln += ln_fact(j - 1);
    }
    for j in (n64 - k64 + 1)..n64 {
        ln -= ln_fact(j - 1);
    }
    // E^C_{k-1}(|det|^{2(n-k+2)})
    for j in 1..k64 {
        ln += ln_fact(n64 - k64 + 1 + j) - ln_fact(j - 1);
    }
    // e_C(n-k)
    ln += ln_fact(n64 - k64 + 1);
    // normalizers
    ln -= ((n - k) * (k - 1) + k) as f64 * PI.ln();
    ln -= ln_fact(n64);
    ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vol_fs_small_n() {
        assert_abs_diff_eq!(vol_fs_rp(1), PI.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(vol_fs_rp(2), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vol_fs_rp(3), PI.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn grassmann_volume_degenerate_and_explicit() {
        for n in 1..=8 {
            assert_abs_diff_eq!(v_rescaled(n, 1), 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(v_rescaled(n, n), 1.0, epsilon = 1e-13);
        }
        // Gr(1,2): C(2,1)·Γ(3/2)/Γ(2) = 2·(√π/2) = √π for the rescaled metric
        assert_abs_diff_eq!(v_rescaled(3, 2), PI.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(
            vol_grassmann(3, 2),
            PI.sqrt() * PI.sqrt(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn mehta_closed_small_cases() {
        assert_eq!(mehta_closed(0, 7), 1.0);
        assert_abs_diff_eq!(mehta_closed(1, 1), 1.0 / PI.sqrt(), epsilon = 1e-14);
        // E_2(|det|^3) = Γ(2)/Γ(1/2) · Γ(5/2)/Γ(1) = 3/4
        assert_abs_diff_eq!(mehta_closed(2, 3), 0.75, epsilon = 1e-13);
    }

    #[test]
    fn gamma_product_identity_exact() {
        // V_{k-1,n-1} · E_{k-1}(|det|^{n-k+2}) = (n-1)! / ((n-k)! 2^{k-1})
        for n in 1..=8u32 {
            for k in 1..=n {
                let lhs = v_rescaled(n, k) * mehta_closed(k - 1, n - k + 2);
                let rhs = (ln_fact(n as u64 - 1)
                    - ln_fact((n - k) as u64)
                    - (k as f64 - 1.0) * 2.0f64.ln())
                .exp();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_density_inverts_volume() {
        for n in 1..=10 {
            assert_abs_diff_eq!(zero_density_kn(n) * vol_fs_rp(n), 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn crit_density_scales_linearly_and_collapses_at_k1() {
        let base = crit_density(2, 1, 0, 1.0).unwrap().value;
        assert_abs_diff_eq!(base, 1.0 / PI.sqrt(), epsilon = 1e-14);
        let scaled = crit_density(2, 1, 0, 2.5).unwrap().value;
        assert_abs_diff_eq!(scaled, 2.5 * base, epsilon = 1e-14);
        assert_eq!(crit_density(3, 3, 0, 1.0).unwrap_err(), ConstantsError::KEqualsN);
    }

    #[test]
    fn crit_density_total_mass_at_n2() {
        // e_R(0,1) + e_R(1,0) = E|N(0,1)| = √(2/π); times (1/√π)·Vol_FS(RP²)
        // gives 2√2/π.
        let e_r_total = (2.0 / PI).sqrt();
        let total = crit_density(2, 1, 0, e_r_total).unwrap().value * vol_fs_rp(2);
        assert_abs_diff_eq!(total, 2.0 * 2.0f64.sqrt() / PI, epsilon = 1e-13);
    }

    #[test]
    fn betti_bound_values() {
        let e_r = 1.0 / (2.0 * PI).sqrt();
        let b = betti_upper_bound(2, 1, 0, e_r).unwrap();
        assert_abs_diff_eq!(b, 2.0f64.sqrt() / PI, epsilon = 1e-13);
        // k = 1 reduction: C(n-1,0)·e·Vol_FS(RPⁿ)/√π
        for n in 2..=6 {
            let b = betti_upper_bound(n, 1, 0, 0.7).unwrap();
            assert_abs_diff_eq!(b, 0.7 * vol_fs_rp(n) / PI.sqrt(), epsilon = 1e-13);
        }
    }

    #[test]
    fn upper_bound_routes_agree() {
        // C(n-1,k-1)/Vol_FS(RPᵏ) = (1/Γ(k/2)) V_{k-1,n-1} E_{k-1}(|det|^{n-k+2})
        for n in 2..=8u32 {
            for k in 1..n {
                let lhs = binomial(n as u64 - 1, k as u64 - 1) / vol_fs_rp(k);
                let rhs = (-ln_gamma_half(k as u64)).exp()
                    * v_rescaled(n, k)
                    * mehta_closed(k - 1, n - k + 2);
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn lefschetz_constant_and_chain() {
        assert_eq!(lefschetz_constant(2, 1), 1.0);
        assert_eq!(lefschetz_constant(3, 2), 2.0);
        for n in 1..=6u32 {
            for k in 1..=n {
                assert_abs_diff_eq!(
                    lefschetz_factor_chain(n, k),
                    lefschetz_constant(n, k),
                    epsilon = 1e-8
                );
            }
        }
    }

    #[test]
    fn binomial_exactness() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(60, 30), 118264581564861424.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
