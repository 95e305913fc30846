//! Nelson Laplacians Δ = Σ_j A(X_j)², their closed forms, improved K
//! operators and rescaled-inner-product comparisons.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::linalg::sparse::{self, SparseMatrix};
use crate::linalg::{c, eig_hermitian, CMatrix, CVector, Tolerance, C64};
use crate::reps::{RepKind, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyKind {
    Nelson,
    ImprovedK,
    ClosedForm,
    /// Total number operator of a bosonic rep, used as an energy reference.
    Number,
}

#[derive(Clone, Debug)]
pub struct EnergyOperator {
    pub rep: RepKind,
    pub mat: SparseMatrix,
    pub kind: EnergyKind,
    pub inner_product_tag: String,
}

impl EnergyOperator {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn to_dense(&self) -> CMatrix {
        sparse::to_dense(&self.mat)
    }

    /// Re⟨ψ, Kψ⟩.
    pub fn expectation(&self, psi: &CVector) -> f64 {
        sparse::expectation(&self.mat, psi).re
    }

    pub fn block(&self, idx: &[usize]) -> CMatrix {
        sparse::block(&self.mat, idx)
    }

    pub fn diagonal(&self) -> Option<Vec<f64>> {
        sparse::diagonal(&self.mat)
    }

    /// The constant when K = κ𝟙.
    pub fn scalar(&self) -> Option<f64> {
        let d = self.diagonal()?;
        let first = *d.first()?;
        d.iter().all(|&v| (v - first).abs() <= 1e-12 * first.abs().max(1.0)).then_some(first)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        if let Some(d) = self.diagonal() {
            return Ok(d.into_iter().fold(f64::INFINITY, f64::min));
        }
        let e = eig_hermitian(&self.to_dense(), &Tolerance::new(1e-10, 1e-12)?)?;
        Ok(e.values[0])
    }

    /// A normalized eigenvector for the smallest eigenvalue.
    pub fn ground_state(&self) -> Result<CVector> {
        let n = self.dim();
        if let Some(d) = self.diagonal() {
            let (i, _) = d.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
            let mut v = CVector::zeros(n);
            v[i] = c(1.0);
            return Ok(v);
        }
        let e = eig_hermitian(&self.to_dense(), &Tolerance::new(1e-10, 1e-12)?)?;
        Ok(e.vectors.column(0).into_owned())
    }
}

fn op(rep: &Representation, mat: SparseMatrix, kind: EnergyKind) -> EnergyOperator {
    EnergyOperator { rep: rep.kind, mat, kind, inner_product_tag: rep.group.inner_tag.clone() }
}

fn diag_op(n: usize, f: impl Fn(usize) -> f64) -> SparseMatrix {
    sparse::from_triplets(n, (0..n).map(|i| (i, i, c(f(i)))))
}

fn sum_of_squares(n: usize, gens: &[SparseMatrix], weights: Option<&[f64]>) -> SparseMatrix {
    let squares: Vec<SparseMatrix> = gens.iter().map(|a| sparse::mul(a, a)).collect();
    let terms: Vec<(C64, &SparseMatrix)> = squares
        .iter()
        .enumerate()
        .map(|(j, s)| (c(weights.map_or(1.0, |w| 1.0 / w[j])), s))
        .collect();
    sparse::lin_comb(n, &terms)
}

/// Σ_j A(X_j)² over the stored orthonormal basis.
pub fn nelson_basis_sum(rep: &Representation) -> Result<EnergyOperator> {
    let gens = rep.basis_generators()?;
    Ok(op(rep, sum_of_squares(rep.dim()?, gens, None), EnergyKind::Nelson))
}

fn occupation(rep: &Representation, i: usize) -> f64 {
    let b = rep.boson().expect("bosonic rep");
    crate::reps::boson::occupations(i, b.m, b.cutoff).iter().sum::<usize>() as f64
}

pub fn nelson_closed_form(rep: &Representation) -> Result<EnergyOperator> {
    let mat = match rep.kind {
        RepKind::Spin { twice_j } => {
            let j = twice_j as f64 / 2.0;
            diag_op(rep.dim()?, |_| j * (j + 1.0))
        }
        RepKind::Flo { m } => {
            let m = m as f64;
            diag_op(rep.dim()?, |_| m * (2.0 * m - 1.0) / 8.0)
        }
        RepKind::Displacement { m, .. } => {
            // 𝟙 + Σ(P² + Q²) = 𝟙 + 2N + m
            diag_op(rep.dim()?, |i| 1.0 + 2.0 * occupation(rep, i) + m as f64)
        }
        RepKind::Metaplectic { m, .. } => {
            let m = m as f64;
            diag_op(rep.dim()?, |i| {
                let h = occupation(rep, i) + m / 2.0;
                h * h + 3.0 * m / 8.0
            })
        }
        RepKind::Su11Sector { .. } => rep.su11().expect("su11 ops").laplacian.clone(),
        RepKind::LorentzScalar { .. } => return Err(Error::NotMaterializable(rep.kind.to_string())),
    };
    Ok(op(rep, mat, EnergyKind::ClosedForm))
}

/// j²𝟙 for spin, 2H for displacement.
pub fn improved_k(rep: &Representation) -> Result<EnergyOperator> {
    let mat = match rep.kind {
        RepKind::Spin { twice_j } => {
            let j = twice_j as f64 / 2.0;
            diag_op(rep.dim()?, |_| j * j)
        }
        RepKind::Displacement { m, .. } => diag_op(rep.dim()?, |i| 2.0 * occupation(rep, i) + m as f64),
        _ => return Err(Error::NotAvailable(rep.kind.to_string())),
    };
    Ok(op(rep, mat, EnergyKind::ImprovedK))
}

/// N = Σ a_k*a_k for displacement and metaplectic reps.
pub fn number_operator(rep: &Representation) -> Result<EnergyOperator> {
    match rep.kind {
        RepKind::Displacement { .. } | RepKind::Metaplectic { .. } => {
            Ok(op(rep, diag_op(rep.dim()?, |i| occupation(rep, i)), EnergyKind::Number))
        }
        _ => Err(Error::NotAvailable(format!("number operator for {}", rep.kind))),
    }
}

/// Which algebra directions a certification samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Directions {
    Full,
    /// Drops the central direction of ℍ_m; identical to `Full` elsewhere.
    NonCentral,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KCertificate {
    pub samples: usize,
    /// max over samples of λ_max(A(X)² − ‖X‖²K) on the trusted block.
    pub max_violation: f64,
    pub certified: bool,
}

/// Block on which A(X)² is an exact compression for every X.
pub fn square_block(rep: &Representation) -> Vec<usize> {
    match rep.kind {
        RepKind::Displacement { cutoff, .. } | RepKind::Su11Sector { cutoff, .. } => rep.low_block(cutoff - 3),
        RepKind::Metaplectic { cutoff, .. } => rep.low_block(cutoff - 5),
        _ => rep.valid_block(),
    }
}

/// Samples the operator inequality A(X)² ≤ ‖X‖²K.
pub fn certify_energy_operator(
    rep: &Representation,
    k: &EnergyOperator,
    samples: usize,
    seed: u64,
    directions: Directions,
) -> Result<KCertificate> {
    let idx = square_block(rep);
    let kb = k.block(&idx);
    let scale = kb.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let dim = rep.group.dim();
    let tol = Tolerance::new(1e-9, 1e-12)?;
    for _ in 0..samples {
        let mut v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        if directions == Directions::NonCentral {
            if let Element::Heisenberg { .. } = rep.group.basis[0].data {
                v[dim - 1] = 0.0;
            }
        }
        let x = rep.group.from_coords(&v)?;
        let n2 = rep.group.inner(&x, &x)?;
        let a = rep.generator_sparse(&x)?;
        let a2 = sparse::block(&sparse::mul(&a, &a), &idx);
        let m = a2 - &kb * c(n2);
        let e = eig_hermitian(&m, &tol)?;
        worst = worst.max(e.values[e.values.len() - 1] / n2.max(1e-300));
    }
    Ok(KCertificate { samples, max_violation: worst, certified: worst <= 1e-9 * scale })
}

#[derive(Clone, Debug)]
pub struct RescaledBounds {
    pub laplacian: EnergyOperator,
    pub c: f64,
    pub cap_c: f64,
    /// λ_min(Δ − cΔ') on the trusted block.
    pub lower_gap: f64,
    /// λ_min(CΔ' − Δ) on the trusted block.
    pub upper_gap: f64,
    /// cΔ' ≤ Δ ≤ CΔ'.
    pub display_holds: bool,
    /// CΔ' ≤ Δ ≤ cΔ', the reversed orientation.
    pub reversed_holds: bool,
}

/// Δ' for ⟨X,Y⟩' = Σ_j w_j x_j y_j in orthonormal coordinates, with c = min w, C = max w.
pub fn rescaled_laplacian_bounds(rep: &Representation, weights: &[f64]) -> Result<RescaledBounds> {
    let gens = rep.basis_generators()?;
    if weights.len() != gens.len() {
        return Err(Error::InvalidParameter(format!("{} weights for {} directions", weights.len(), gens.len())));
    }
    if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    let n = rep.dim()?;
    let dp = sum_of_squares(n, gens, Some(weights));
    let d = sum_of_squares(n, gens, None);
    let cmin = weights.iter().cloned().fold(f64::INFINITY, f64::min);
    let cmax = weights.iter().cloned().fold(0.0, f64::max);
    let idx = square_block(rep);
    let (bd, bdp) = (sparse::block(&d, &idx), sparse::block(&dp, &idx));
    let tol = Tolerance::new(1e-9, 1e-12)?;
    let gap = |m: CMatrix| -> Result<f64> { Ok(eig_hermitian(&m, &tol)?.values[0]) };
    let lower_gap = gap(&bd - &bdp * c(cmin))?;
    let upper_gap = gap(&bdp * c(cmax) - &bd)?;
    let rev_lower = gap(&bd - &bdp * c(cmax))?;
    let rev_upper = gap(&bdp * c(cmin) - &bd)?;
    let ok = |g: f64| g >= -1e-8;
    Ok(RescaledBounds {
        laplacian: EnergyOperator {
            rep: rep.kind,
            mat: dp,
            kind: EnergyKind::Nelson,
            inner_product_tag: format!("{}·diag(w)", rep.group.inner_tag),
        },
        c: cmin,
        cap_c: cmax,
        lower_gap,
        upper_gap,
        display_holds: ok(lower_gap) && ok(upper_gap),
        reversed_holds: ok(rev_lower) && ok(rev_upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius;

    fn rep(k: RepKind) -> Representation {
        Representation::new(k).unwrap()
    }

    #[test]
    fn spin_and_flo_are_scalar() {
        for tj in 1..=10 {
            let r = rep(RepKind::Spin { twice_j: tj });
            let d = nelson_basis_sum(&r).unwrap().to_dense();
            let cf = nelson_closed_form(&r).unwrap().to_dense();
            assert!(frobenius(&(d - cf)) < 1e-10);
        }
        let r = rep(RepKind::Flo { m: 2 });
        let d = nelson_basis_sum(&r).unwrap();
        assert!((d.to_dense()[(0, 0)].re - 0.75).abs() < 1e-12);
        let cf = nelson_closed_form(&r).unwrap();
        assert_eq!(cf.scalar(), Some(0.75));
    }

    #[test]
    fn spin_three_halves() {
        let r = rep(RepKind::Spin { twice_j: 3 });
        assert_eq!(nelson_closed_form(&r).unwrap().scalar(), Some(3.75));
    }

    #[test]
    fn su11_and_displacement_closed_forms() {
        for n in [0i64, 1, -2] {
            let r = rep(RepKind::Su11Sector { n, cutoff: 24 });
            let idx = square_block(&r);
            let d = nelson_basis_sum(&r).unwrap().block(&idx);
            let cf = nelson_closed_form(&r).unwrap().block(&idx);
            assert!(frobenius(&(d - cf)) < 1e-8, "n={n}");
        }
        let r = rep(RepKind::Displacement { m: 1, cutoff: 24 });
        let idx = square_block(&r);
        let d = nelson_basis_sum(&r).unwrap().block(&idx);
        let cf = nelson_closed_form(&r).unwrap().block(&idx);
        assert!(frobenius(&(d - &cf)) < 1e-8);
        // Δ − 𝟙 = 2H
        let k = improved_k(&r).unwrap().block(&idx);
        let one = CMatrix::identity(idx.len(), idx.len());
        assert!(frobenius(&(&cf - one - k)) < 1e-12);
    }

    #[test]
    fn improved_k_examples() {
        let r = rep(RepKind::Spin { twice_j: 4 });
        let k = improved_k(&r).unwrap();
        assert_eq!(k.scalar(), Some(4.0));
        assert_eq!(nelson_closed_form(&r).unwrap().scalar(), Some(6.0));
        for tj in 1..=8 {
            let r = rep(RepKind::Spin { twice_j: tj });
            let cert = certify_energy_operator(&r, &improved_k(&r).unwrap(), 200, tj as u64, Directions::Full).unwrap();
            assert!(cert.certified, "j={}: {}", tj as f64 / 2.0, cert.max_violation);
        }
        assert!(matches!(improved_k(&rep(RepKind::Flo { m: 2 })), Err(Error::NotAvailable(_))));
    }

    #[test]
    fn displacement_k_needs_noncentral_directions() {
        let r = rep(RepKind::Displacement { m: 1, cutoff: 32 });
        let k = improved_k(&r).unwrap();
        let nc = certify_energy_operator(&r, &k, 100, 3, Directions::NonCentral).unwrap();
        assert!(nc.certified, "{}", nc.max_violation);
        let full = certify_energy_operator(&r, &k, 100, 3, Directions::Full).unwrap();
        assert!(!full.certified);
        // Δ itself always dominates
        let d = nelson_closed_form(&r).unwrap();
        assert!(certify_energy_operator(&r, &d, 100, 3, Directions::Full).unwrap().certified);
    }

    #[test]
    fn rescaling_examples() {
        let r = rep(RepKind::Spin { twice_j: 2 });
        let one = rescaled_laplacian_bounds(&r, &[1.0; 3]).unwrap();
        assert!(one.display_holds && one.reversed_holds);
        assert_eq!((one.c, one.cap_c), (1.0, 1.0));
        let four = rescaled_laplacian_bounds(&r, &[4.0; 3]).unwrap();
        let d = nelson_basis_sum(&r).unwrap().to_dense();
        assert!(frobenius(&(four.laplacian.to_dense() * c(4.0) - d)) < 1e-12);
        assert_eq!((four.c, four.cap_c), (4.0, 4.0));

        let so4 = rep(RepKind::Flo { m: 2 });
        let w = [1.0, 1.0, 1.0, 1.0, 1.0, 9.0];
        let b = rescaled_laplacian_bounds(&so4, &w).unwrap();
        assert!(b.display_holds);
        assert!(!b.reversed_holds);
        assert!(rescaled_laplacian_bounds(&so4, &[1.0, 0.0, 1.0, 1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn lorentz_not_materializable() {
        let r = rep(RepKind::LorentzScalar { mass: 1.0 });
        assert!(matches!(nelson_basis_sum(&r), Err(Error::NotMaterializable(_))));
        assert!(matches!(nelson_closed_form(&r), Err(Error::NotMaterializable(_))));
    }
}
