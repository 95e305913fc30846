//! Comparison bounds from the literature, evaluated exactly as printed,
//! next to the matching bounds from this crate.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::groups::{GroupId, GroupSpec};
use crate::linalg::{frobenius, identity, logm_principal, norm, CMatrix, NormKind, Tolerance};

fn same_shape(g: &CMatrix, h: &CMatrix) -> Result<()> {
    if g.shape() != h.shape() || g.nrows() != g.ncols() {
        return Err(Error::Mismatch(format!("{:?} vs {:?}", g.shape(), h.shape())));
    }
    Ok(())
}

fn check_so(spec: &GroupSpec, g: &CMatrix) -> Result<()> {
    let GroupId::So2m(_) = spec.id else {
        return Err(Error::Mismatch(format!("{} is not SO(2m)", spec.id)));
    };
    let el = spec.group_element(g.clone())?;
    let mem = spec.group_membership(&el)?;
    if !mem.member {
        return Err(Error::Mismatch(format!("not in SO(2m) (residual {:e})", mem.residual)));
    }
    Ok(())
}

/// 2m‖g − h‖_∞ for the FLO channels.
pub fn oszmaniec_bound(spec: &GroupSpec, g: &CMatrix, h: &CMatrix) -> Result<f64> {
    same_shape(g, h)?;
    check_so(spec, g)?;
    check_so(spec, h)?;
    Ok(2.0 * spec.m() as f64 * norm(&(g - h), NormKind::Operator))
}

/// √(m(2m−1)/2)‖log(g⁻¹h)‖₂, or (π/(2√2))√(m(2m−1))‖g − h‖₂ when the
/// principal log does not exist.
pub fn our_so_bound(m: usize, g: &CMatrix, h: &CMatrix) -> Result<f64> {
    same_shape(g, h)?;
    let mm = (m * (2 * m - 1)) as f64;
    let rel = g.adjoint() * h;
    match logm_principal(&rel, &Tolerance::default()) {
        Ok(l) => Ok((mm / 2.0).sqrt() * frobenius(&l)),
        Err(_) => Ok(PI / (2.0 * SQRT_2) * mm.sqrt() * frobenius(&(g - h))),
    }
}

/// ‖g⁻¹h‖_∞ and ‖g⁻¹h − 1‖₂.
fn defect(g: &CMatrix, h: &CMatrix) -> Result<(f64, f64)> {
    same_shape(g, h)?;
    let ginv = g.clone().try_inverse().ok_or_else(|| Error::Mismatch("g is singular".into()))?;
    let rel = ginv * h;
    let n = rel.nrows();
    Ok((norm(&rel, NormKind::Operator), frobenius(&(rel - identity(n)))))
}

/// 2√((√6+√10+5√2m)(E+1)) (√(π/(‖g⁻¹h‖_∞+1)) + √(2‖g⁻¹h‖_∞)) √‖g⁻¹h−1‖₂.
pub fn becker_bound(g: &CMatrix, h: &CMatrix, m: usize, energy: f64) -> Result<f64> {
    let (op, fro) = defect(g, h)?;
    let pre = 2.0 * ((6f64.sqrt() + 10f64.sqrt() + 5.0 * SQRT_2 * m as f64) * (energy + 1.0)).sqrt();
    Ok(pre * ((PI / (op + 1.0)).sqrt() + (2.0 * op).sqrt()) * fro.sqrt())
}

/// 2√(E + 3m/8) (π/(‖g⁻¹h‖_∞+1) + 2‖g⁻¹h‖_∞) ‖g⁻¹h−1‖₂.
pub fn our_symplectic_bound(g: &CMatrix, h: &CMatrix, m: usize, energy: f64) -> Result<f64> {
    let (op, fro) = defect(g, h)?;
    Ok(symplectic_prefactor(m, energy) * (PI / (op + 1.0) + 2.0 * op) * fro)
}

/// 2√(E + 3m/8); multiplied by d_best(g,h) this is the sharper form.
pub fn symplectic_prefactor(m: usize, energy: f64) -> f64 {
    2.0 * (energy + 3.0 * m as f64 / 8.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, so_generator};
    use crate::linalg::{c, expm};

    #[test]
    fn vanish_on_equal_elements() {
        let spec = make_group(GroupId::So2m(2)).unwrap();
        let g = expm(&so_generator(2, 2, 1).unwrap()).unwrap();
        assert_eq!(oszmaniec_bound(&spec, &g, &g).unwrap(), 0.0);
        assert!(our_so_bound(2, &g, &g).unwrap() < 1e-12);
        assert!(becker_bound(&g, &g, 1, 2.0).unwrap() < 1e-6);
        assert!(our_symplectic_bound(&g, &g, 1, 2.0).unwrap() < 1e-12);
    }

    #[test]
    fn oszmaniec_is_linear_to_first_order() {
        let spec = make_group(GroupId::So2m(2)).unwrap();
        let g = expm(&so_generator(2, 2, 1).unwrap()).unwrap();
        let x = so_generator(2, 4, 3).unwrap();
        let f = |e: f64| oszmaniec_bound(&spec, &g, &(&g * expm(&(&x * c(e))).unwrap())).unwrap();
        let (a, b) = (f(1e-4), f(2e-4));
        assert!(a > 0.0);
        assert!((b / a - 2.0).abs() < 1e-3);
    }

    #[test]
    fn defect_scaling() {
        // g⁻¹h − 1 scaled by ½ with ‖g⁻¹h‖_∞ held fixed
        let g = CMatrix::identity(2, 2);
        let h1 = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.96)]);
        let h2 = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.98)]);
        let r = becker_bound(&g, &h2, 1, 2.0).unwrap() / becker_bound(&g, &h1, 1, 2.0).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
        let r = our_symplectic_bound(&g, &h2, 1, 2.0).unwrap() / our_symplectic_bound(&g, &h1, 1, 2.0).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
    }

    #[test]
    fn so_bound_falls_back_without_log() {
        // rotation by π in one plane has no principal log
        let g = CMatrix::identity(4, 4);
        let mut h = CMatrix::identity(4, 4);
        h[(0, 0)] = c(-1.0);
        h[(1, 1)] = c(-1.0);
        let v = our_so_bound(2, &g, &h).unwrap();
        assert!((v - PI / (2.0 * SQRT_2) * 6f64.sqrt() * 8f64.sqrt()).abs() < 1e-12);
    }
}
