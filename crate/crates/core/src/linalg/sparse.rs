//! CSR helpers for the large truncated Fock-space generators.

use nalgebra_sparse::{CooMatrix, CsrMatrix};

use super::{c, CMatrix, CVector, C64};

pub type SparseMatrix = CsrMatrix<C64>;

pub fn from_triplets(n: usize, trips: impl IntoIterator<Item = (usize, usize, C64)>) -> SparseMatrix {
    let mut coo = CooMatrix::new(n, n);
    for (i, j, v) in trips {
        if v != c(0.0) {
            coo.push(i, j, v);
        }
    }
    CsrMatrix::from(&coo)
}

pub fn identity(n: usize) -> SparseMatrix {
    from_triplets(n, (0..n).map(|i| (i, i, c(1.0))))
}

pub fn zeros(n: usize) -> SparseMatrix {
    CsrMatrix::zeros(n, n)
}

pub fn triplets(a: &SparseMatrix) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
    a.triplet_iter().map(|(i, j, v)| (i, j, *v))
}

pub fn kron(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let nb = b.nrows();
    let n = a.nrows() * nb;
    let mut out = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, j, x) in a.triplet_iter() {
        for (k, l, y) in b.triplet_iter() {
            out.push((i * nb + k, j * nb + l, x * y));
        }
    }
    from_triplets(n, out)
}

pub fn scale(a: &SparseMatrix, s: C64) -> SparseMatrix {
    let mut out = a.clone();
    out.values_mut().iter_mut().for_each(|v| *v *= s);
    out
}

/// Σ_k s_k A_k for operators of the same dimension.
pub fn lin_comb(n: usize, terms: &[(C64, &SparseMatrix)]) -> SparseMatrix {
    from_triplets(
        n,
        terms
            .iter()
            .filter(|(s, _)| *s != c(0.0))
            .flat_map(|(s, a)| a.triplet_iter().map(move |(i, j, v)| (i, j, s * v))),
    )
}

pub fn add(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    lin_comb(a.nrows(), &[(c(1.0), a), (c(1.0), b)])
}

pub fn mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a * b
}

pub fn adjoint(a: &SparseMatrix) -> SparseMatrix {
    from_triplets(a.nrows(), a.triplet_iter().map(|(i, j, v)| (j, i, v.conj())))
}

pub fn to_dense(a: &SparseMatrix) -> CMatrix {
    let mut d = CMatrix::zeros(a.nrows(), a.ncols());
    for (i, j, v) in a.triplet_iter() {
        d[(i, j)] += *v;
    }
    d
}

pub fn from_dense(a: &CMatrix) -> SparseMatrix {
    let n = a.nrows();
    from_triplets(
        n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, a[(i, j)])),
    )
}

pub fn matvec(a: &SparseMatrix, v: &CVector) -> CVector {
    let mut out = CVector::zeros(a.nrows());
    for (i, j, x) in a.triplet_iter() {
        out[i] += x * v[j];
    }
    out
}

/// ⟨v, A v⟩.
pub fn expectation(a: &SparseMatrix, v: &CVector) -> C64 {
    v.dotc(&matvec(a, v))
}

/// Dense compression onto the listed basis indices.
pub fn block(a: &SparseMatrix, idx: &[usize]) -> CMatrix {
    let mut pos = vec![usize::MAX; a.nrows()];
    for (k, &i) in idx.iter().enumerate() {
        pos[i] = k;
    }
    let mut d = CMatrix::zeros(idx.len(), idx.len());
    for (i, j, v) in a.triplet_iter() {
        if pos[i] != usize::MAX && pos[j] != usize::MAX {
            d[(pos[i], pos[j])] += *v;
        }
    }
    d
}

/// Truncation to the leading n×n corner.
pub fn leading(a: &SparseMatrix, n: usize) -> SparseMatrix {
    from_triplets(n, a.triplet_iter().filter(|(i, j, _)| *i < n && *j < n).map(|(i, j, v)| (i, j, *v)))
}

/// Diagonal entries when the operator is diagonal.
pub fn diagonal(a: &SparseMatrix) -> Option<Vec<f64>> {
    let mut d = vec![0.0; a.nrows()];
    for (i, j, v) in a.triplet_iter() {
        if i != j {
            if v.norm() != 0.0 {
                return None;
            }
        } else {
            d[i] += v.re;
        }
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, kron as dense_kron, real_matrix};

    #[test]
    fn kron_matches_dense() {
        let a = real_matrix(2, &[1.0, 2.0, 0.0, -1.0]);
        let b = CMatrix::from_fn(3, 3, |i, j| C64::new(i as f64, j as f64 - 1.0));
        let s = kron(&from_dense(&a), &from_dense(&b));
        assert!(frobenius(&(to_dense(&s) - dense_kron(&a, &b))) < 1e-15);
    }

    #[test]
    fn block_and_products() {
        let a = from_triplets(3, [(0, 1, c(2.0)), (1, 0, c(2.0)), (2, 2, c(5.0))]);
        let p = mul(&a, &a);
        assert_eq!(to_dense(&p)[(0, 0)], c(4.0));
        let b = block(&a, &[0, 2]);
        assert_eq!(b[(1, 1)], c(5.0));
        assert_eq!(b[(0, 1)], c(0.0));
        assert!(diagonal(&a).is_none());
        assert_eq!(diagonal(&p).unwrap(), vec![4.0, 4.0, 25.0]);
    }
}
