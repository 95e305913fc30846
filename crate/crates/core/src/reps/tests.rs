use super::*;
use crate::groups::{random_algebra_element, so_generator};
use crate::linalg::{commutator, frobenius, identity, unitary_defect};

fn finite_reps() -> Vec<Representation> {
    [
        RepKind::Spin { twice_j: 1 },
        RepKind::Spin { twice_j: 2 },
        RepKind::Spin { twice_j: 5 },
        RepKind::Flo { m: 1 },
        RepKind::Flo { m: 2 },
        RepKind::Flo { m: 3 },
        RepKind::Displacement { m: 1, cutoff: 24 },
        RepKind::Displacement { m: 2, cutoff: 8 },
        RepKind::Metaplectic { m: 1, cutoff: 24 },
        RepKind::Metaplectic { m: 2, cutoff: 10 },
        RepKind::Su11Sector { n: 0, cutoff: 24 },
        RepKind::Su11Sector { n: -2, cutoff: 24 },
    ]
    .into_iter()
    .map(|k| Representation::new(k).unwrap())
    .collect()
}

/// Block on which a product of two truncated generators is exact.
fn exact_block(rep: &Representation) -> Vec<usize> {
    match rep.kind {
        RepKind::Displacement { cutoff, .. } | RepKind::Su11Sector { cutoff, .. } => rep.low_block(cutoff - 3),
        RepKind::Metaplectic { cutoff, .. } => rep.low_block(cutoff - 5),
        _ => rep.valid_block(),
    }
}

#[test]
fn lie_algebra_homomorphism() {
    for rep in finite_reps() {
        let idx = exact_block(&rep);
        for seed in 0..5 {
            let x = random_algebra_element(&rep.group, 1.0, seed).unwrap();
            let y = random_algebra_element(&rep.group, 1.0, seed + 50).unwrap();
            let ax = rep.generator(&x).unwrap();
            let ay = rep.generator(&y).unwrap();
            let lhs = commutator(&ax, &ay);
            let rhs = rep.generator(&rep.group.bracket(&x, &y).unwrap()).unwrap() * I;
            let d = sparse::block(&sparse::from_dense(&(lhs - rhs)), &idx);
            assert!(frobenius(&d) < 1e-8, "{}: {}", rep.kind, frobenius(&d));
            assert!(crate::linalg::hermitian_defect(&ax) < 1e-12);
        }
    }
}

#[test]
fn linearity() {
    for rep in finite_reps() {
        let x = random_algebra_element(&rep.group, 1.0, 1).unwrap();
        let y = random_algebra_element(&rep.group, 1.0, 2).unwrap();
        let z = x.scale(0.7).add(&y.scale(-1.3)).unwrap();
        let lhs = rep.generator(&z).unwrap();
        let rhs = rep.generator(&x).unwrap() * c(0.7) - rep.generator(&y).unwrap() * c(1.3);
        assert!(frobenius(&(lhs - rhs)) < 1e-12);
    }
}

#[test]
fn unitaries_are_unitary() {
    for rep in finite_reps() {
        let w: Vec<_> = (0..2).map(|s| random_algebra_element(&rep.group, 1.0, s).unwrap()).collect();
        let u = rep.unitary(&w).unwrap();
        assert!(unitary_defect(&u) < 1e-8, "{}", rep.kind);
        let zero = rep.unitary(&[rep.group.zero_algebra()]).unwrap();
        assert!(frobenius(&(zero - identity(rep.dim().unwrap()))) < 1e-14);
    }
}

#[test]
fn spin_half_sz() {
    let rep = Representation::new(RepKind::Spin { twice_j: 1 }).unwrap();
    // F_3 = −(i/2)σ_3 maps to S_z
    let f3 = rep.group.algebra_element(pauli()[2].clone() * (-I * 0.5)).unwrap();
    let a = rep.generator(&f3).unwrap();
    assert!((a[(0, 0)] - c(0.5)).norm() < 1e-15 && (a[(1, 1)] + c(0.5)).norm() < 1e-15);
    let alpha = 0.8;
    let u = rep.unitary(&[f3.scale(alpha)]).unwrap();
    assert!((u[(0, 0)] - C64::from_polar(1.0, -alpha / 2.0)).norm() < 1e-14);
    assert!((u[(1, 1)] - C64::from_polar(1.0, alpha / 2.0)).norm() < 1e-14);
}

#[test]
fn flo_single_mode() {
    let rep = Representation::new(RepKind::Flo { m: 1 }).unwrap();
    let b21 = rep.group.algebra_element(so_generator(1, 2, 1).unwrap()).unwrap();
    let a = rep.generator(&b21).unwrap();
    let k = 1.0 / (2.0 * 2f64.sqrt());
    // Jordan–Wigner with c_1 = X, c_2 = Y gives +σ_z/(2√2)
    assert!((a[(0, 0)] - c(k)).norm() < 1e-15 && (a[(1, 1)] + c(k)).norm() < 1e-15);
    assert!(frobenius(&(&a * &a - identity(2) * c(0.125))) < 1e-15);
}

#[test]
fn metaplectic_oscillator() {
    let rep = Representation::new(RepKind::Metaplectic { m: 1, cutoff: 32 }).unwrap();
    let om = rep.group.algebra_element(from_real(&omega(1))).unwrap();
    let a = rep.generator(&om).unwrap();
    let h = sparse::to_dense(&rep.boson().unwrap().h);
    assert!(frobenius(&(&a - &h)) < 1e-12);
    // e^{2πΩ} = 1 lifts to −1
    let u = rep.unitary(&[om.scale(2.0 * std::f64::consts::PI)]).unwrap();
    for n in 0..16 {
        assert!((u[(n, n)] + c(1.0)).norm() < 1e-10);
    }
}

#[test]
fn state_file_format() {
    let v = parse_state("# psi\n1 0\n0 -0.5\n\n").unwrap();
    assert_eq!(v.len(), 2);
    assert_eq!(v[1], C64::new(0.0, -0.5));
    assert!(parse_state("1").is_err());
}

#[test]
fn lorentz_is_functional() {
    let rep = Representation::new(RepKind::LorentzScalar { mass: 1.0 }).unwrap();
    let x = rep.group.basis[0].clone();
    assert!(matches!(rep.generator(&x), Err(Error::NotMaterializable(_))));
}
