//! Dense complex matrix primitives.
//!
//! Everything here works on `DMatrix<Complex64>`; real matrices are carried
//! with zero imaginary parts.

mod expm;
mod logm;
pub mod quadrature;
pub mod sparse;

pub use expm::expm;
pub use logm::logm_principal;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-12, abs: 1e-14 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel > 0.0) || !(abs >= 0.0) || !rel.is_finite() || !abs.is_finite() {
            return Err(Error::InvalidParameter(format!("tolerance rel={rel} abs={abs}")));
        }
        Ok(Tolerance { rel, abs })
    }

    /// Threshold for a quantity of the given magnitude.
    pub fn scaled(&self, magnitude: f64) -> f64 {
        self.abs.max(self.rel * magnitude)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    Frobenius,
    Operator,
    Scaled(f64),
}

pub fn check_square(a: &CMatrix) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::NonSquare { rows: a.nrows(), cols: a.ncols() });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(a.nrows())
}

pub fn norm(a: &CMatrix, kind: NormKind) -> f64 {
    match kind {
        NormKind::Frobenius => frobenius(a),
        NormKind::Operator => {
            if a.is_empty() {
                0.0
            } else {
                a.clone().singular_values().max()
            }
        }
        NormKind::Scaled(s) => s * frobenius(a),
    }
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max column sum.
pub fn norm1(a: &CMatrix) -> f64 {
    a.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_real(m: &DMatrix<f64>) -> CMatrix {
    m.map(c)
}

pub fn real_part(m: &CMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub fn max_imag(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

/// Row-major real matrix literal.
pub fn real_matrix(n: usize, entries: &[f64]) -> CMatrix {
    assert_eq!(entries.len(), n * n);
    CMatrix::from_row_iterator(n, n, entries.iter().map(|&x| c(x)))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn hermitian_defect(a: &CMatrix) -> f64 {
    frobenius(&(a - a.adjoint()))
}

/// Frobenius norm of `U*U - 1`.
pub fn unitary_defect(u: &CMatrix) -> f64 {
    frobenius(&(u.adjoint() * u - identity(u.nrows())))
}

pub fn inner(x: &CVector, y: &CVector) -> C64 {
    x.dotc(y)
}

pub fn expectation(a: &CMatrix, psi: &CVector) -> C64 {
    psi.dotc(&(a * psi))
}

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: DVector<f64>,
    /// Columns are eigenvectors.
    pub vectors: CMatrix,
}

pub fn eig_hermitian(a: &CMatrix, tol: &Tolerance) -> Result<HermitianEigen> {
    let n = check_square(a)?;
    let defect = hermitian_defect(a);
    if defect > tol.scaled(frobenius(a)) {
        return Err(Error::NotHermitian(defect));
    }
    if n == 0 {
        return Ok(HermitianEigen { values: DVector::zeros(0), vectors: CMatrix::zeros(0, 0) });
    }
    let sym = (a + a.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok(HermitianEigen { values, vectors })
}

const SCHUR_MAX_ITERS: usize = 10_000;

/// Complex Schur form A = QTQ* with T upper triangular. The QR iteration can
/// stall on matrices within rounding of a multiple of I, so on failure the
/// decomposition is retried on A − μI (same Q) with μ the mean eigenvalue.
pub fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = check_square(a)?;
    let finish = |q: CMatrix, mut t: CMatrix, shift: C64| {
        for j in 0..n {
            for i in j + 1..n {
                t[(i, j)] = c(0.0);
            }
            t[(j, j)] += shift;
        }
        (q, t)
    };
    if let Some(s) = a.clone().try_schur(f64::EPSILON, SCHUR_MAX_ITERS) {
        let (q, t) = s.unpack();
        return Ok(finish(q, t, c(0.0)));
    }
    let mu = a.trace() / c(n.max(1) as f64);
    let shifted = a - identity(n) * mu;
    let s = shifted
        .try_schur(f64::EPSILON, SCHUR_MAX_ITERS)
        .ok_or_else(|| Error::InvalidParameter("Schur decomposition did not converge".into()))?;
    let (q, t) = s.unpack();
    Ok(finish(q, t, mu))
}

/// Eigenvalues of a general square matrix, read off the complex Schur form.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let (_, t) = schur(a)?;
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Smallest Hermitian eigenvalue.
pub fn min_eigenvalue(a: &CMatrix, tol: &Tolerance) -> Result<f64> {
    let e = eig_hermitian(a, tol)?;
    Ok(if e.values.is_empty() { 0.0 } else { e.values[0] })
}

pub fn normalize(v: &CVector) -> CVector {
    let n = v.norm();
    if n == 0.0 {
        v.clone()
    } else {
        v.unscale(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sigma_x() -> CMatrix {
        real_matrix(2, &[0.0, 1.0, 1.0, 0.0])
    }

    #[test]
    fn norms_of_small_matrices() {
        assert_abs_diff_eq!(norm(&identity(3), NormKind::Frobenius), 3f64.sqrt(), epsilon = 1e-15);
        let d = real_matrix(2, &[3.0, 0.0, 0.0, -4.0]);
        assert_abs_diff_eq!(norm(&d, NormKind::Operator), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(norm(&sigma_x(), NormKind::Scaled(2f64.sqrt())), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_of_diag_and_sigma_x() {
        let tol = Tolerance::default();
        let e = eig_hermitian(&real_matrix(2, &[2.0, 0.0, 0.0, 1.0]), &tol).unwrap();
        assert_eq!(e.values.as_slice(), &[1.0, 2.0]);
        assert!(e.vectors[(1, 0)].norm() > 0.999);

        let e = eig_hermitian(&sigma_x(), &tol).unwrap();
        assert_abs_diff_eq!(e.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 1.0, epsilon = 1e-14);
        let h = 0.5f64.sqrt();
        for k in 0..2 {
            assert_abs_diff_eq!(e.vectors[(0, k)].norm(), h, epsilon = 1e-12);
            assert_abs_diff_eq!(e.vectors[(1, k)].norm(), h, epsilon = 1e-12);
        }

        let z = eig_hermitian(&CMatrix::zeros(3, 3), &tol).unwrap();
        assert!(z.values.iter().all(|&v| v == 0.0));
        assert!(unitary_defect(&z.vectors) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = real_matrix(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(eig_hermitian(&a, &Tolerance::default()), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 0.0).is_err());
        assert!(Tolerance::new(1e-9, -1.0).is_err());
        assert!(Tolerance::new(1e-9, 0.0).is_ok());
    }
}
