//! Two-mode SU(1,1) operators restricted to the sector D_n = {n_1 − n_2 = n}.
//! Sector basis index k ↦ |k+|n|, k⟩ (n ≥ 0) or |k, k+|n|⟩ (n < 0).

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseMatrix};
use crate::linalg::{c, I};

#[derive(Clone, Debug)]
pub struct Su11Ops {
    pub n: i64,
    pub cutoff: usize,
    pub k0: SparseMatrix,
    pub k1: SparseMatrix,
    pub k2: SparseMatrix,
    /// 2K₀² + (1−n²)/4.
    pub laplacian: SparseMatrix,
}

pub fn su11_sector_ops(n: i64, cutoff: usize) -> Result<Su11Ops> {
    if cutoff < 4 {
        return Err(Error::InvalidParameter(format!("su11 cutoff {cutoff} below 4")));
    }
    let an = n.unsigned_abs() as f64;
    let k0 = sparse::from_triplets(cutoff, (0..cutoff).map(|k| (k, k, c((2.0 * k as f64 + an + 1.0) / 2.0))));
    // K_+ = a_1†a_2†
    let kp = sparse::from_triplets(
        cutoff,
        (0..cutoff - 1).map(|k| (k + 1, k, c(((k as f64 + 1.0) * (k as f64 + an + 1.0)).sqrt()))),
    );
    let km = sparse::adjoint(&kp);
    let k1 = sparse::lin_comb(cutoff, &[(c(0.5), &kp), (c(0.5), &km)]);
    let k2 = sparse::lin_comb(cutoff, &[(-I * 0.5, &kp), (I * 0.5, &km)]);
    let shift = (1.0 - an * an) / 4.0;
    let laplacian = sparse::from_triplets(
        cutoff,
        (0..cutoff).map(|k| {
            let v = (2.0 * k as f64 + an + 1.0) / 2.0;
            (k, k, c(2.0 * v * v + shift))
        }),
    );
    Ok(Su11Ops { n, cutoff, k0, k1, k2, laplacian })
}
