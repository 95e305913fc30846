//! Concrete representations X ↦ A(X) with U(e^X) = e^{−iA(X)}.

pub mod boson;
pub mod flo;
pub mod lorentz;
pub mod spin;
pub mod su11;

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{make_group, omega, pauli, AlgebraElement, Element, GroupId, GroupSpec};
use crate::linalg::sparse::{self, SparseMatrix};
use crate::linalg::{c, expm, from_real, real_part, CMatrix, CVector, C64, I};

pub use boson::{boson_ops, displacement, BosonOps};
pub use su11::{su11_sector_ops, Su11Ops};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RepKind {
    Spin { twice_j: u32 },
    Flo { m: usize },
    Displacement { m: usize, cutoff: usize },
    Metaplectic { m: usize, cutoff: usize },
    Su11Sector { n: i64, cutoff: usize },
    LorentzScalar { mass: f64 },
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Spin { twice_j } if twice_j % 2 == 0 => write!(f, "spin({})", twice_j / 2),
            RepKind::Spin { twice_j } => write!(f, "spin({twice_j}/2)"),
            RepKind::Flo { m } => write!(f, "flo({m})"),
            RepKind::Displacement { m, cutoff } => write!(f, "displacement({m},{cutoff})"),
            RepKind::Metaplectic { m, cutoff } => write!(f, "metaplectic({m},{cutoff})"),
            RepKind::Su11Sector { n, cutoff } => write!(f, "su11({n},{cutoff})"),
            RepKind::LorentzScalar { mass } => write!(f, "lorentz({mass})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub kind: RepKind,
    pub group: GroupSpec,
    /// None for the functional Lorentz representation.
    pub hilbert_dim: Option<usize>,
    pub truncated: bool,
    pub projective: bool,
    basis_ops: Vec<SparseMatrix>,
    boson: Option<BosonOps>,
    su11: Option<Su11Ops>,
    quadratics: Option<boson::Quadratics>,
}

impl Representation {
    pub fn new(kind: RepKind) -> Result<Self> {
        let gid = match kind {
            RepKind::Spin { .. } => GroupId::Su2,
            RepKind::Flo { m } => GroupId::So2m(m),
            RepKind::Displacement { m, .. } => GroupId::Heisenberg(m),
            RepKind::Metaplectic { m, .. } => GroupId::Sp2m(m),
            RepKind::Su11Sector { .. } => GroupId::Su11,
            RepKind::LorentzScalar { .. } => GroupId::Lorentz,
        };
        let group = make_group(gid)?;
        let mut rep = Representation {
            kind,
            group,
            hilbert_dim: None,
            truncated: false,
            projective: matches!(kind, RepKind::Flo { .. } | RepKind::Metaplectic { .. } | RepKind::Displacement { .. }),
            basis_ops: Vec::new(),
            boson: None,
            su11: None,
            quadratics: None,
        };
        match kind {
            RepKind::Spin { twice_j } => {
                let s = spin::spin_matrices(twice_j)?;
                rep.hilbert_dim = Some(twice_j as usize + 1);
                rep.basis_ops = rep
                    .group
                    .basis
                    .iter()
                    .map(|x| sparse::from_dense(&spin_generator(&s, x.matrix().unwrap())))
                    .collect();
            }
            RepKind::Flo { m } => {
                let cs = flo::majoranas(m)?;
                rep.hilbert_dim = Some(1 << m);
                rep.basis_ops = rep
                    .group
                    .basis
                    .iter()
                    .map(|x| sparse::from_dense(&flo_generator(&cs, x.matrix().unwrap())))
                    .collect();
            }
            RepKind::Displacement { m, cutoff } => {
                let ops = boson_ops(m, cutoff)?;
                let dim = cutoff.pow(m as u32);
                rep.hilbert_dim = Some(dim);
                rep.truncated = true;
                rep.basis_ops = rep
                    .group
                    .basis
                    .iter()
                    .map(|x| match &x.data {
                        Element::Heisenberg { xi, t } => {
                            let g = boson::displacement_generator(&ops, xi.as_slice());
                            sparse::add(&g, &sparse::scale(&sparse::identity(dim), c(*t)))
                        }
                        Element::Matrix(_) => unreachable!(),
                    })
                    .collect();
                rep.boson = Some(ops);
            }
            RepKind::Metaplectic { m, cutoff } => {
                let ops = boson_ops(m, cutoff)?;
                let quad = boson::Quadratics::new(m, cutoff)?;
                rep.hilbert_dim = Some(cutoff.pow(m as u32));
                rep.truncated = true;
                let om = omega(m);
                rep.basis_ops = rep
                    .group
                    .basis
                    .iter()
                    .map(|x| {
                        let s = &om * real_part(x.matrix().unwrap());
                        quad.form(&(s * -0.5))
                    })
                    .collect();
                rep.boson = Some(ops);
                rep.quadratics = Some(quad);
            }
            RepKind::Su11Sector { n, cutoff } => {
                let ops = su11_sector_ops(n, cutoff)?;
                rep.hilbert_dim = Some(cutoff);
                rep.truncated = true;
                let ks = [&ops.k0, &ops.k1, &ops.k2];
                let mut gens = Vec::new();
                for x in &rep.group.basis {
                    let terms: Vec<(C64, &SparseMatrix)> = rep
                        .group
                        .raw_basis
                        .iter()
                        .zip(ks)
                        .map(|(xi, k)| Ok((c(rep.group.inner(x, xi)?), k)))
                        .collect::<Result<_>>()?;
                    gens.push(sparse::lin_comb(cutoff, &terms));
                }
                rep.basis_ops = gens;
                rep.su11 = Some(ops);
            }
            RepKind::LorentzScalar { mass } => {
                if !(mass > 0.0) || !mass.is_finite() {
                    return Err(Error::InvalidParameter(format!("mass {mass}")));
                }
            }
        }
        Ok(rep)
    }

    pub fn dim(&self) -> Result<usize> {
        self.hilbert_dim.ok_or_else(|| Error::NotMaterializable(self.kind.to_string()))
    }

    /// Whether Hilbert-space comparisons need the local regime. The
    /// displacement representation carries its phase in the central
    /// coordinate of ℍ_m and so needs no guard.
    pub fn needs_local_regime(&self) -> bool {
        matches!(self.kind, RepKind::Flo { .. } | RepKind::Metaplectic { .. })
    }

    /// A(X_j) for the orthonormal basis of the group spec.
    pub fn basis_generators(&self) -> Result<&[SparseMatrix]> {
        self.dim()?;
        Ok(&self.basis_ops)
    }

    pub fn boson(&self) -> Option<&BosonOps> {
        self.boson.as_ref()
    }

    pub fn su11(&self) -> Option<&Su11Ops> {
        self.su11.as_ref()
    }

    pub fn quadratics(&self) -> Option<&boson::Quadratics> {
        self.quadratics.as_ref()
    }

    pub fn generator_sparse(&self, x: &AlgebraElement) -> Result<SparseMatrix> {
        let dim = self.dim()?;
        if x.group != self.group.id {
            return Err(Error::Mismatch(format!("{} element for {}", x.group, self.kind)));
        }
        let v = self.group.coords(x)?;
        let terms: Vec<(C64, &SparseMatrix)> = v.iter().zip(&self.basis_ops).map(|(&a, op)| (c(a), op)).collect();
        Ok(sparse::lin_comb(dim, &terms))
    }

    /// Hermitian A(X).
    pub fn generator(&self, x: &AlgebraElement) -> Result<CMatrix> {
        Ok(sparse::to_dense(&self.generator_sparse(x)?))
    }

    /// Π_j exp(−i A(Y_j)).
    pub fn unitary(&self, word: &[AlgebraElement]) -> Result<CMatrix> {
        let n = self.dim()?;
        let mut u = CMatrix::identity(n, n);
        for y in word {
            u *= expm(&(self.generator(y)? * (-I)))?;
        }
        Ok(u)
    }

    /// Basis indices on which truncated comparisons are trusted: mode
    /// occupations at most cutoff/2 (everything for untruncated reps).
    pub fn valid_block(&self) -> Vec<usize> {
        match self.kind {
            RepKind::Displacement { m, cutoff } | RepKind::Metaplectic { m, cutoff } => {
                boson::low_block(m, cutoff, cutoff / 2)
            }
            RepKind::Su11Sector { cutoff, .. } => (0..cutoff / 2).collect(),
            _ => (0..self.hilbert_dim.unwrap_or(0)).collect(),
        }
    }

    /// Indices with every mode occupation (or sector level) at most `max_occ`.
    pub fn low_block(&self, max_occ: usize) -> Vec<usize> {
        match self.kind {
            RepKind::Displacement { m, cutoff } | RepKind::Metaplectic { m, cutoff } => {
                boson::low_block(m, cutoff, max_occ)
            }
            RepKind::Su11Sector { cutoff, .. } => (0..cutoff.min(max_occ + 1)).collect(),
            _ => (0..self.hilbert_dim.unwrap_or(0)).collect(),
        }
    }
}

/// Σ_k 2Re tr(F_k* X) S_k with F_k = −(i/2)σ_k, so that e^{F_k} ↦ e^{−iS_k}.
fn spin_generator(s: &[CMatrix; 3], x: &CMatrix) -> CMatrix {
    let n = s[0].nrows();
    let mut out = CMatrix::zeros(n, n);
    for (sig, sk) in pauli().iter().zip(s) {
        let f = sig * (-I * 0.5);
        let coef: f64 = 2.0 * f.iter().zip(x.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        out += sk * c(coef);
    }
    out
}

/// (i/4) Σ_ab X_ab c_a c_b.
fn flo_generator(cs: &[CMatrix], x: &CMatrix) -> CMatrix {
    let n = cs[0].nrows();
    let mut out = CMatrix::zeros(n, n);
    for a in 0..cs.len() {
        for b in 0..cs.len() {
            let v = x[(a, b)].re;
            if v != 0.0 {
                out += &cs[a] * &cs[b] * c(v);
            }
        }
    }
    out * (I * 0.25)
}

/// Algebra element of sp(2m) from a real 2m×2m matrix, e.g. `Ω`.
pub fn sp_element(group: &GroupSpec, m: &nalgebra::DMatrix<f64>) -> Result<AlgebraElement> {
    group.algebra_element(from_real(m))
}

/// Parses one complex amplitude per line as "re im"; blank lines and `#` comments are skipped.
pub fn parse_state(text: &str) -> Result<CVector> {
    let mut amps = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<f64> {
            s.ok_or_else(|| Error::Config(format!("line {}: expected 're im'", ln + 1)))?
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("line {}: {e}", ln + 1)))
        };
        let re = parse(it.next())?;
        let im = parse(it.next())?;
        amps.push(C64::new(re, im));
    }
    Ok(CVector::from_vec(amps))
}

#[cfg(test)]
mod tests;
