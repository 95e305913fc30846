//! Principal matrix logarithm: complex Schur form, repeated triangular
//! square roots until T is close to I, then a Gauss–Legendre evaluation of
//! log(I + X) = \int_0^1 X (I + tX)^{-1} dt.

use std::sync::OnceLock;

use super::{c, check_square, frobenius, identity, max_imag, quadrature, CMatrix, Tolerance, C64};
use crate::error::{Error, Result};

const MAX_ROOTS: usize = 100;
const ROOT_TARGET: f64 = 0.25;
const GL_POINTS: usize = 14;

pub fn logm_principal(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    let n = check_square(a)?;
    if n == 0 {
        return Ok(a.clone());
    }
    let real_input = max_imag(a) == 0.0;
    let (q, t) = super::schur(a)?;

    let scale = frobenius(a).max(1.0);
    for i in 0..n {
        let l = t[(i, i)];
        if l.norm() <= tol.abs * scale || (l.re < 0.0 && l.im.abs() <= tol.rel * l.norm()) {
            return Err(Error::BranchFailure(format!("{l}")));
        }
    }

    let lt = if n == 2 { log_upper_2x2(&t) } else { log_upper(&t)? };

    let mut l = &q * lt * q.adjoint();
    if real_input {
        l.iter_mut().for_each(|z| z.im = 0.0);
    }
    if l.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(l)
}

/// Inverse scaling and squaring on an upper-triangular T.
fn log_upper(t: &CMatrix) -> Result<CMatrix> {
    let n = t.nrows();
    let mut t = t.clone();
    let id = identity(n);
    let mut k = 0;
    while frobenius(&(&t - &id)) > ROOT_TARGET {
        if k == MAX_ROOTS {
            return Err(Error::InvalidParameter("logarithm square-root iteration stalled".into()));
        }
        t = sqrt_upper(&t);
        k += 1;
    }

    let x = &t - &id;
    static RULE: OnceLock<quadrature::Rule> = OnceLock::new();
    let rule = match RULE.get() {
        Some(r) => r,
        None => {
            let r = quadrature::gauss_legendre(GL_POINTS)?;
            RULE.get_or_init(|| r)
        }
    };
    let mut lt = CMatrix::zeros(n, n);
    for (node, w) in rule.nodes.iter().zip(&rule.weights) {
        let m = &id + x.scale(*node);
        let y = m
            .solve_upper_triangular(&x)
            .ok_or_else(|| Error::BranchFailure("singular shifted factor".into()))?;
        lt += y.scale(*w);
    }
    lt *= c(2f64.powi(k as i32));
    Ok(lt)
}

/// Direct formula for [[a, b], [0, d]]; the divided difference of log uses
/// atanh plus the unwinding correction so close eigenvalues stay accurate.
fn log_upper_2x2(t: &CMatrix) -> CMatrix {
    let (a, b, d) = (t[(0, 0)], t[(0, 1)], t[(1, 1)]);
    let (la, ld) = (a.ln(), d.ln());
    let dd = if d == a {
        a.inv()
    } else if (d - a).norm() >= 0.5 * (d + a).norm() {
        (ld - la) / (d - a)
    } else {
        let w = ((d - a) / (d + a)).atanh() * 2.0;
        let k = ((ld - la - w).im / (2.0 * std::f64::consts::PI)).round();
        (w + C64::new(0.0, 2.0 * std::f64::consts::PI * k)) / (d - a)
    };
    let mut lt = CMatrix::zeros(2, 2);
    lt[(0, 0)] = la;
    lt[(1, 1)] = ld;
    lt[(0, 1)] = b * dd;
    lt
}

/// Principal square root of an upper-triangular matrix (Björck–Hammarling).
fn sqrt_upper(t: &CMatrix) -> CMatrix {
    let n = t.nrows();
    let mut r = CMatrix::zeros(n, n);
    for j in 0..n {
        r[(j, j)] = t[(j, j)].sqrt();
        for i in (0..j).rev() {
            let mut s = t[(i, j)];
            for k in i + 1..j {
                s -= r[(i, k)] * r[(k, j)];
            }
            r[(i, j)] = s / (r[(i, i)] + r[(j, j)]);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, expm, real_matrix, C64};
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_has_zero_log() {
        let l = logm_principal(&identity(4), &tol()).unwrap();
        assert!(frobenius(&l) < 1e-15);
    }

    #[test]
    fn rotation_round_trip() {
        let th: f64 = 0.3;
        let r = real_matrix(2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        let l = logm_principal(&r, &tol()).unwrap();
        let want = real_matrix(2, &[0.0, -th, th, 0.0]);
        assert!(frobenius(&(&l - &want)) < 1e-13);
        assert!(frobenius(&(expm(&l).unwrap() - r)) < 1e-13);
    }

    #[test]
    fn rotation_near_pi() {
        let th = PI - 1e-6;
        let r = real_matrix(2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        let l = logm_principal(&r, &tol()).unwrap();
        assert!((l[(1, 0)].re - th).abs() < 1e-9);
    }

    #[test]
    fn negative_axis_fails() {
        let a = real_matrix(2, &[-1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(logm_principal(&a, &tol()), Err(Error::BranchFailure(_))));
        let singular = real_matrix(2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(logm_principal(&singular, &tol()), Err(Error::BranchFailure(_))));
    }

    #[test]
    fn nonnormal_round_trip() {
        let a = CMatrix::from_fn(4, 4, |i, j| {
            C64::new(((i * 7 + j * 3) as f64).sin() * 0.6, ((i + j * 5) as f64).cos() * 0.4)
        });
        let e = expm(&a).unwrap();
        let l = logm_principal(&e, &tol()).unwrap();
        assert!(frobenius(&(expm(&l).unwrap() - &e)) < 1e-11 * frobenius(&e));
        for ev in eigenvalues(&l).unwrap() {
            assert!(ev.im.abs() < PI);
        }
    }

    #[test]
    fn two_by_two_agrees_with_general_path() {
        let cases = [
            real_matrix(2, &[1.0, 1e-9, 0.0, 1.0]),
            real_matrix(2, &[1.0 + 1e-7, 0.3, -0.2, 1.0]),
            real_matrix(2, &[0.0, -1.0, 1.0, 0.0]),
            CMatrix::from_fn(2, 2, |i, j| C64::new((i as f64 - j as f64) * 0.7, (i + j) as f64 * 0.4)),
        ];
        for a in cases {
            let e = expm(&a).unwrap();
            let fast = logm_principal(&e, &tol()).unwrap();
            let (q, t) = crate::linalg::schur(&e).unwrap();
            let slow = &q * log_upper(&t).unwrap() * q.adjoint();
            assert!(frobenius(&(&fast - &slow)) < 1e-12, "{fast} vs {slow}");
            assert!(frobenius(&(expm(&fast).unwrap() - &e)) < 1e-13);
        }
    }

    #[test]
    fn large_squeeze_round_trip() {
        let a = real_matrix(2, &[3.0, 1.5, 0.2, -3.0]);
        let e = expm(&a).unwrap();
        let l = logm_principal(&e, &tol()).unwrap();
        assert!(frobenius(&(&l - &a)) < 1e-10);
    }
}
