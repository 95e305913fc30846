//! Trotter product words g = e^{−t(X+Y)}, h = (e^{−tX/L}e^{−tY/L})^L.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{omega, AlgebraElement, GroupSpec};
use crate::linalg::{expm, from_real, CMatrix, I};
use crate::reps::{sp_element, Representation};

/// Where Ω sits in the product formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TrotterReading {
    /// h = (e^{−tX/L}e^{−tY/L})^L as in the figure caption.
    #[default]
    Plain,
    /// h = (e^{−ΩXt/L}e^{−ΩYt/L})^L and g = e^{−tΩ(X+Y)}.
    OmegaApplied,
}

impl TrotterReading {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(TrotterReading::Plain),
            "omega" | "omega_applied" => Ok(TrotterReading::OmegaApplied),
            _ => Err(Error::Config(format!("unknown trotter reading '{s}'"))),
        }
    }
}

/// Real 2m×2m matrices by name: `Omega`, `Omega*sigma_x`, `Omega*sigma_z`, `zero`.
pub fn named_generator(name: &str, m: usize) -> Result<DMatrix<f64>> {
    let om = omega(m);
    let n = 2 * m;
    let sx = DMatrix::from_fn(n, n, |i, j| if (i + m) % n == j { 1.0 } else { 0.0 });
    let sz = DMatrix::from_fn(n, n, |i, j| if i != j { 0.0 } else if i < m { 1.0 } else { -1.0 });
    match name.replace(' ', "").as_str() {
        "Omega" => Ok(om),
        "Omega*sigma_x" => Ok(om * sx),
        "Omega*sigma_z" => Ok(om * sz),
        "zero" | "0" => Ok(DMatrix::zeros(n, n)),
        other => Err(Error::Config(format!("unknown generator '{other}'"))),
    }
}

/// g_word = [−t(X+Y)], h_word = L copies of [−tX/L, −tY/L].
pub fn trotter_word(
    spec: &GroupSpec,
    t: f64,
    steps: usize,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
) -> Result<(Vec<AlgebraElement>, Vec<AlgebraElement>)> {
    if steps == 0 {
        return Err(Error::InvalidParameter("L must be at least 1".into()));
    }
    let xs = sp_element(spec, &(x * (-t / steps as f64)))?;
    let ys = sp_element(spec, &(y * (-t / steps as f64)))?;
    let g = sp_element(spec, &((x + y) * -t))?;
    let mut h = Vec::with_capacity(2 * steps);
    for _ in 0..steps {
        h.push(xs.clone());
        h.push(ys.clone());
    }
    Ok((vec![g], h))
}

fn power(a: &CMatrix, mut e: usize) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::identity(n, n);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            out = &out * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    out
}

/// Group-level matrices (g, h) for either reading. The Ω-applied reading
/// leaves sp(2m) when X or Y is not symmetric, so it is built from plain
/// matrices.
pub fn trotter_matrices(
    t: f64,
    steps: usize,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    reading: TrotterReading,
) -> Result<(CMatrix, CMatrix)> {
    if steps == 0 {
        return Err(Error::InvalidParameter("L must be at least 1".into()));
    }
    let (x, y) = match reading {
        TrotterReading::Plain => (x.clone(), y.clone()),
        TrotterReading::OmegaApplied => {
            let om = omega(x.nrows() / 2);
            (&om * x, &om * y)
        }
    };
    let g = expm(&from_real(&((&x + &y) * -t)))?;
    let step = expm(&from_real(&(&x * (-t / steps as f64))))? * expm(&from_real(&(&y * (-t / steps as f64))))?;
    Ok((g, power(&step, steps)))
}

/// (U_g, U_h) on the representation space, with U_h by repeated squaring.
pub fn trotter_unitaries(
    rep: &Representation,
    t: f64,
    steps: usize,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
) -> Result<(CMatrix, CMatrix)> {
    let (g, h) = trotter_word(&rep.group, t, steps, x, y)?;
    let ug = rep.unitary(&g)?;
    let ux = expm(&(rep.generator(&h[0])? * (-I)))?;
    let uy = expm(&(rep.generator(&h[1])? * (-I)))?;
    Ok((ug, power(&(ux * uy), steps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group, GroupId};
    use crate::linalg::{frobenius, identity};

    #[test]
    fn words_match_matrices() {
        let spec = make_group(GroupId::Sp2m(1)).unwrap();
        let x = named_generator("Omega", 1).unwrap();
        let y = named_generator("Omega*sigma_x", 1).unwrap();
        let (gw, hw) = trotter_word(&spec, 1.0, 8, &x, &y).unwrap();
        assert_eq!(hw.len(), 16);
        let (g, h) = trotter_matrices(1.0, 8, &x, &y, TrotterReading::Plain).unwrap();
        let ge = spec.exp_word(&gw).unwrap();
        let he = spec.exp_word(&hw).unwrap();
        assert!(frobenius(&(ge.matrix().unwrap() - g)) < 1e-12);
        assert!(frobenius(&(he.matrix().unwrap() - h)) < 1e-10);
    }

    #[test]
    fn error_decreases_with_steps() {
        let x = named_generator("Omega", 1).unwrap();
        let y = named_generator("Omega*sigma_x", 1).unwrap();
        let mut last = f64::INFINITY;
        for k in 0..=10 {
            let (g, h) = trotter_matrices(1.0, 1 << k, &x, &y, TrotterReading::Plain).unwrap();
            let d = frobenius(&(g.try_inverse().unwrap() * h - identity(2)));
            assert!(d < last);
            last = d;
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn zero_generators_and_omega_reading() {
        let z = named_generator("zero", 1).unwrap();
        let (g, h) = trotter_matrices(1.0, 3, &z, &z, TrotterReading::Plain).unwrap();
        assert!(frobenius(&(g - identity(2))) < 1e-15 && frobenius(&(h - identity(2))) < 1e-15);
        // with Ω applied both generators become multiples of commuting matrices
        let x = named_generator("Omega", 1).unwrap();
        let y = named_generator("Omega*sigma_x", 1).unwrap();
        let (g, h) = trotter_matrices(1.0, 4, &x, &y, TrotterReading::OmegaApplied).unwrap();
        assert!(frobenius(&(g - h)) < 1e-12);
        assert!(named_generator("sigma_y", 1).is_err());
    }
}
