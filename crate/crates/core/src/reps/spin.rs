use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, I};

/// Spin matrices (S_x, S_y, S_z) for j = twice_j/2, basis m = j, j−1, …, −j.
pub fn spin_matrices(twice_j: u32) -> Result<[CMatrix; 3]> {
    if twice_j == 0 {
        return Err(Error::InvalidParameter("spin j must be at least 1/2".into()));
    }
    let n = twice_j as usize + 1;
    let j = twice_j as f64 / 2.0;
    let mval = |k: usize| j - k as f64;
    let mut sp = CMatrix::zeros(n, n);
    for k in 1..n {
        // S_+ |m⟩ = √(j(j+1) − m(m+1)) |m+1⟩, |m+1⟩ sits one index up
        let m = mval(k);
        sp[(k - 1, k)] = c((j * (j + 1.0) - m * (m + 1.0)).sqrt());
    }
    let sm = sp.adjoint();
    let sx = (&sp + &sm) * c(0.5);
    let sy = (&sp - &sm) * (-I * 0.5);
    let sz = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, (0..n).map(|k| c(mval(k)))));
    Ok([sx, sy, sz])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius, identity};

    #[test]
    fn commutation_and_casimir() {
        for tj in 1..=8 {
            let [sx, sy, sz] = spin_matrices(tj).unwrap();
            assert!(frobenius(&(commutator(&sx, &sy) - &sz * I)) < 1e-12);
            assert!(frobenius(&(commutator(&sy, &sz) - &sx * I)) < 1e-12);
            let j = tj as f64 / 2.0;
            let cas = &sx * &sx + &sy * &sy + &sz * &sz;
            assert!(frobenius(&(cas - identity(tj as usize + 1) * c(j * (j + 1.0)))) < 1e-10);
        }
        let [_, _, sz] = spin_matrices(1).unwrap();
        assert_eq!(sz[(0, 0)], c(0.5));
        assert_eq!(sz[(1, 1)], c(-0.5));
    }
}
