//! Truncated bosonic modes. Mode k of m lives in the k-th tensor factor;
//! R = (Q_1..Q_m, P_1..P_m).
//!
//! Quadratic operators are built one level above the cutoff and then
//! truncated, so they are exact compressions of the true operators.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::sparse::{self, SparseMatrix};
use crate::linalg::{c, CMatrix, CVector, C64, I};

#[derive(Clone, Debug)]
pub struct BosonOps {
    pub m: usize,
    pub cutoff: usize,
    pub q: Vec<SparseMatrix>,
    pub p: Vec<SparseMatrix>,
    pub a: Vec<SparseMatrix>,
    pub adag: Vec<SparseMatrix>,
    /// Total number operator.
    pub n: SparseMatrix,
    /// ½Σ(Q_k² + P_k²) = N + m/2.
    pub h: SparseMatrix,
}

pub fn check(m: usize, cutoff: usize) -> Result<usize> {
    if m < 1 || cutoff < 4 {
        return Err(Error::InvalidParameter(format!("boson modes m={m} cutoff={cutoff}")));
    }
    cutoff
        .checked_pow(m as u32)
        .filter(|&d| d <= 1 << 22)
        .ok_or_else(|| Error::InvalidParameter(format!("Fock space {cutoff}^{m} too large")))
}

fn lower(d: usize) -> SparseMatrix {
    sparse::from_triplets(d, (1..d).map(|n| (n - 1, n, c((n as f64).sqrt()))))
}

/// Single-mode Q and P at dimension d.
fn qp(d: usize) -> (SparseMatrix, SparseMatrix) {
    let a = lower(d);
    let ad = sparse::adjoint(&a);
    let s = FRAC_1_SQRT_2;
    let q = sparse::lin_comb(d, &[(c(s), &a), (c(s), &ad)]);
    let p = sparse::lin_comb(d, &[(-I * s, &a), (I * s, &ad)]);
    (q, p)
}

/// Places a single-mode operator on mode k.
pub fn embed(op: &SparseMatrix, k: usize, m: usize, cutoff: usize) -> SparseMatrix {
    let mut out = if k == 0 { op.clone() } else { sparse::identity(cutoff) };
    for j in 1..m {
        let f = if j == k { op.clone() } else { sparse::identity(cutoff) };
        out = sparse::kron(&out, &f);
    }
    out
}

pub fn boson_ops(m: usize, cutoff: usize) -> Result<BosonOps> {
    let dim = check(m, cutoff)?;
    let a1 = lower(cutoff);
    let (q1, p1) = qp(cutoff);
    let mut q = Vec::new();
    let mut p = Vec::new();
    let mut a = Vec::new();
    let mut adag = Vec::new();
    for k in 0..m {
        q.push(embed(&q1, k, m, cutoff));
        p.push(embed(&p1, k, m, cutoff));
        a.push(embed(&a1, k, m, cutoff));
        adag.push(sparse::adjoint(a.last().unwrap()));
    }
    let n = sparse::from_triplets(dim, (0..dim).map(|i| (i, i, c(occupations(i, m, cutoff).iter().sum::<usize>() as f64))));
    let h = sparse::from_triplets(dim, (0..dim).map(|i| {
        (i, i, c(occupations(i, m, cutoff).iter().sum::<usize>() as f64 + 0.5 * m as f64))
    }));
    Ok(BosonOps { m, cutoff, q, p, a, adag, n, h })
}

pub fn occupations(index: usize, m: usize, cutoff: usize) -> Vec<usize> {
    let mut occ = vec![0; m];
    let mut r = index;
    for k in (0..m).rev() {
        occ[k] = r % cutoff;
        r /= cutoff;
    }
    occ
}

pub fn fock_index(occ: &[usize], cutoff: usize) -> usize {
    occ.iter().fold(0, |acc, &n| acc * cutoff + n)
}

/// Basis indices whose every mode occupation is at most `max_occ`.
pub fn low_block(m: usize, cutoff: usize, max_occ: usize) -> Vec<usize> {
    let dim = cutoff.pow(m as u32);
    (0..dim).filter(|&i| occupations(i, m, cutoff).iter().all(|&n| n <= max_occ)).collect()
}

pub fn fock_state(occ: &[usize], cutoff: usize) -> CVector {
    let m = occ.len() as u32;
    let mut v = CVector::zeros(cutoff.pow(m));
    v[fock_index(occ, cutoff)] = c(1.0);
    v
}

/// Single-mode coherent state |α⟩ truncated and renormalized.
pub fn coherent_state(alpha: C64, cutoff: usize) -> CVector {
    let mut v = CVector::zeros(cutoff);
    let mut amp = c((-0.5 * alpha.norm_sqr()).exp());
    for n in 0..cutoff {
        v[n] = amp;
        amp *= alpha / (n as f64 + 1.0).sqrt();
    }
    crate::linalg::normalize(&v)
}

/// Exact compressions of R_iR_j for all i, j.
#[derive(Clone, Debug)]
pub struct Quadratics {
    pub m: usize,
    pub cutoff: usize,
    ops: Vec<SparseMatrix>,
}

impl Quadratics {
    pub fn new(m: usize, cutoff: usize) -> Result<Self> {
        check(m, cutoff)?;
        let (qb, pb) = qp(cutoff + 2);
        let (q1, p1) = qp(cutoff);
        let single = |i: bool, j: bool| -> SparseMatrix {
            let x = if i { &pb } else { &qb };
            let y = if j { &pb } else { &qb };
            sparse::leading(&sparse::mul(x, y), cutoff)
        };
        let same = [[single(false, false), single(false, true)], [single(true, false), single(true, true)]];
        let lin = [q1, p1];
        let mut ops = Vec::with_capacity(4 * m * m);
        for i in 0..2 * m {
            for j in 0..2 * m {
                let (ki, pi) = (i % m, i >= m);
                let (kj, pj) = (j % m, j >= m);
                let op = if ki == kj {
                    embed(&same[pi as usize][pj as usize], ki, m, cutoff)
                } else {
                    sparse::mul(&embed(&lin[pi as usize], ki, m, cutoff), &embed(&lin[pj as usize], kj, m, cutoff))
                };
                ops.push(op);
            }
        }
        Ok(Quadratics { m, cutoff, ops })
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseMatrix {
        &self.ops[i * 2 * self.m + j]
    }

    /// Σ_ij S_ij R_iR_j.
    pub fn form(&self, s: &nalgebra::DMatrix<f64>) -> SparseMatrix {
        let n = 2 * self.m;
        let dim = self.cutoff.pow(self.m as u32);
        let terms: Vec<(C64, &SparseMatrix)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| s[(i, j)] != 0.0)
            .map(|(i, j)| (c(s[(i, j)]), self.get(i, j)))
            .collect();
        sparse::lin_comb(dim, &terms)
    }
}

/// D(ξ) = exp(−i ξ·ΩR) on the truncated space.
pub fn displacement(m: usize, cutoff: usize, xi: &[f64]) -> Result<CMatrix> {
    if xi.len() != 2 * m {
        return Err(Error::InvalidParameter(format!("xi has {} entries, expected {}", xi.len(), 2 * m)));
    }
    let ops = boson_ops(m, cutoff)?;
    let gen = displacement_generator(&ops, xi);
    crate::linalg::expm(&(sparse::to_dense(&gen) * (-I)))
}

/// ξ·ΩR = Σ_k ξ_k P_k − ξ_{m+k} Q_k.
pub fn displacement_generator(ops: &BosonOps, xi: &[f64]) -> SparseMatrix {
    let m = ops.m;
    let dim = ops.cutoff.pow(m as u32);
    let mut terms = Vec::new();
    for k in 0..m {
        terms.push((c(xi[k]), &ops.p[k]));
        terms.push((c(-xi[m + k]), &ops.q[k]));
    }
    sparse::lin_comb(dim, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, expectation};

    #[test]
    fn number_operator_and_spectrum() {
        let ops = boson_ops(1, 16).unwrap();
        let one = fock_state(&[1], 16);
        let nn = sparse::mul(&ops.adag[0], &ops.a[0]);
        assert!((sparse::expectation(&nn, &one) - c(1.0)).norm() < 1e-15);
        let h = sparse::to_dense(&ops.h);
        for n in 0..15 {
            assert!((h[(n, n)].re - (n as f64 + 0.5)).abs() < 1e-15);
        }
        let q = Quadratics::new(1, 16).unwrap();
        let h2 = sparse::lin_comb(16, &[(c(0.5), q.get(0, 0)), (c(0.5), q.get(1, 1))]);
        // compressed ½(Q²+P²) equals the diagonal H everywhere
        assert!(crate::linalg::frobenius(&(sparse::to_dense(&h2) - h)) < 1e-12);
    }

    #[test]
    fn ccr_on_vacuum() {
        let ops = boson_ops(2, 8).unwrap();
        for k in 0..2 {
            let cm = commutator(&sparse::to_dense(&ops.q[k]), &sparse::to_dense(&ops.p[k]));
            let vac = fock_state(&[0, 0], 8);
            assert!((&cm * &vac - &vac * I).norm() < 1e-14);
        }
    }

    #[test]
    fn displacement_identities() {
        let d0 = displacement(1, 16, &[0.0, 0.0]).unwrap();
        assert!(crate::linalg::unitary_defect(&d0) < 1e-14);
        assert!((d0[(3, 3)] - c(1.0)).norm() < 1e-15);

        let xi = [0.6, 0.8];
        let mxi = [-0.6, -0.8];
        let a = displacement(1, 64, &xi).unwrap();
        let b = displacement(1, 64, &mxi).unwrap();
        let vac = fock_state(&[0], 64);
        assert!((&a * (&b * &vac) - &vac).norm() < 1e-8);
        // ⟨0|D(ξ)|0⟩ = exp(−|ξ|²/4)
        let amp = expectation(&a, &vac);
        assert!((amp - c((-0.25f64).exp())).norm() < 1e-6);
    }

    #[test]
    fn coherent_states_are_eigenvectors() {
        let alpha = C64::new(0.7, -0.4);
        let v = coherent_state(alpha, 40);
        let a = sparse::to_dense(&lower(40));
        assert!((&a * &v - &v * alpha).norm() < 1e-10);
    }
}
