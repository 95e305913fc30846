use crate::error::{Error, Result};
use crate::groups::pauli;
use crate::linalg::{identity, kron, CMatrix};

/// Jordan–Wigner Majorana operators c_1..c_{2m} on (ℂ²)^{⊗m}.
pub fn majoranas(m: usize) -> Result<Vec<CMatrix>> {
    if m < 1 || m > 10 {
        return Err(Error::InvalidParameter(format!("flo needs 1 <= m <= 10, got {m}")));
    }
    let [x, y, z] = pauli();
    let mut out = Vec::with_capacity(2 * m);
    for j in 0..m {
        for s in [&x, &y] {
            let mut op = CMatrix::identity(1, 1);
            for k in 0..m {
                let f = match k.cmp(&j) {
                    std::cmp::Ordering::Less => z.clone(),
                    std::cmp::Ordering::Equal => s.clone(),
                    std::cmp::Ordering::Greater => identity(2),
                };
                op = kron(&op, &f);
            }
            out.push(op);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anticommutator, c, frobenius};

    #[test]
    fn clifford_relations() {
        for m in 1..=3 {
            let cs = majoranas(m).unwrap();
            let d = 1 << m;
            for (a, ca) in cs.iter().enumerate() {
                for (b, cb) in cs.iter().enumerate() {
                    let want = if a == b { identity(d) * c(2.0) } else { CMatrix::zeros(d, d) };
                    assert!(frobenius(&(anticommutator(ca, cb) - want)) < 1e-12);
                }
            }
        }
    }
}
