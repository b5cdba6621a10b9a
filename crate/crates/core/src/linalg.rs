//! Small dense linear-algebra kernels: cyclic Jacobi eigenvalues for
//! symmetric matrices, and LU log-determinants (real and complex) that never
//! overflow. Matrix sizes here are tiny (symmetric ≤ ~8) or moderate
//! (Sylvester blocks ≤ ~100), so simplicity beats library dispatch.

use num_complex::Complex64;

/// Eigenvalues of a symmetric matrix (row-major `Vec<Vec<f64>>`), ascending.
/// Cyclic Jacobi; for the sizes used here it converges to machine precision
/// in a handful of sweeps.
pub fn sym_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![a[0][0]];
    }
    let mut m: Vec<f64> = a.iter().flat_map(|r| r.iter().copied()).collect();
    let idx = |i: usize, j: usize| i * n + j;
    let scale: f64 = m
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..40 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[idx(i, j)].abs();
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[idx(p, q)];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let arp = m[idx(r, p)];
                    let arq = m[idx(r, q)];
                    m[idx(r, p)] = c * arp - s * arq;
                    m[idx(r, q)] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = m[idx(p, r)];
                    let aqr = m[idx(q, r)];
                    m[idx(p, r)] = c * apr - s * aqr;
                    m[idx(q, r)] = s * apr + c * aqr;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[idx(i, i)]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// (sign, ln|det|) of a square row-major matrix via partial-pivot LU.
/// Returns sign 0 when a pivot vanishes. Works entirely in log space, so
/// determinants of any magnitude are fine.
pub fn lu_logdet(a: &mut [f64], n: usize) -> (i8, f64) {
    let idx = |i: usize, j: usize| i * n + j;
    let mut sign = 1i8;
    let mut logdet = 0.0f64;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[idx(col, col)].abs();
        for r in (col + 1)..n {
            let v = a[idx(r, col)].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return (0, f64::NEG_INFINITY);
        }
        if piv != col {
            for j in 0..n {
                a.swap(idx(piv, j), idx(col, j));
            }
            sign = -sign;
        }
        let p = a[idx(col, col)];
        if p < 0.0 {
            sign = -sign;
        }
        logdet += p.abs().ln();
        for r in (col + 1)..n {
            let f = a[idx(r, col)] / p;
            if f == 0.0 {
                continue;
            }
            a[idx(r, col)] = 0.0;
            for j in (col + 1)..n {
                a[idx(r, j)] -= f * a[idx(col, j)];
            }
        }
    }
    (sign, logdet)
}

/// Determinant of a small real matrix (row-major), via LU in linear space.
pub fn det_small(a: &[f64], n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => {
            let mut work = a.to_vec();
            let (sign, ld) = lu_logdet(&mut work, n);
            sign as f64 * ld.exp()
        }
    }
}

/// ln|det| of a complex square matrix via partial-pivot LU.
pub fn complex_lu_logabsdet(a: &mut [Complex64], n: usize) -> f64 {
    let idx = |i: usize, j: usize| i * n + j;
    let mut logdet = 0.0f64;
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
            return f64::NEG_INFINITY;
        }
        if piv != col {
            for j in 0..n {
                a.swap(idx(piv, j), idx(col, j));
            }
        }
        let p = a[idx(col, col)];
        logdet += 0.5 * p.norm_sqr().ln();
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
    logdet
}

/// Determinant of a small complex matrix (row-major), O(n³) Gaussian
/// elimination in linear space; adequate for the ≤ 4×4 uses here.
pub fn complex_det_small(a: &[Complex64], n: usize) -> Complex64 {
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        _ => {
            let mut m = a.to_vec();
            let idx = |i: usize, j: usize| i * n + j;
            let mut det = Complex64::new(1.0, 0.0);
            for col in 0..n {
                let mut piv = col;
                let mut best = m[idx(col, col)].norm_sqr();
                for r in (col + 1)..n {
                    let v = m[idx(r, col)].norm_sqr();
                    if v > best {
                        best = v;
                        piv = r;
                    }
                }
                if best == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                if piv != col {
                    for j in 0..n {
                        m.swap(idx(piv, j), idx(col, j));
                    }
                    det = -det;
                }
                let p = m[idx(col, col)];
                det *= p;
                for r in (col + 1)..n {
                    let f = m[idx(r, col)] / p;
                    for j in col..n {
                        let sub = f * m[idx(col, j)];
                        m[idx(r, j)] -= sub;
                    }
                }
            }
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn jacobi_matches_known_eigenvalues() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let e = sym_eigenvalues(&a);
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 3.0, epsilon = 1e-12);

        let d = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, -2.0, 0.0],
            vec![0.0, 0.0, 0.5],
        ];
        let e = sym_eigenvalues(&d);
        assert_abs_diff_eq!(e[0], -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn lu_logdet_sign_and_magnitude() {
        let mut a = vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0];
        let (sign, ld) = lu_logdet(&mut a, 3);
        // det = -90
        assert_eq!(sign, -1);
        assert_abs_diff_eq!(ld.exp(), 90.0, epsilon = 1e-9);
    }

    #[test]
    fn complex_det_agrees_with_hand_value() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = vec![one, i, -i, one + i];
        // det = 1·(1+i) - i·(-i) = 1 + i - 1 = i
        let d = complex_det_small(&a, 2);
        assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.im, 1.0, epsilon = 1e-14);
        let mut b = a.clone();
        let ld = complex_lu_logabsdet(&mut b, 2);
        assert_abs_diff_eq!(ld.exp(), 1.0, epsilon = 1e-12);
    }
}
