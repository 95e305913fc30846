//! The concrete groups: SU(2), SO(2m), Sp(2m,ℝ), SU(1,1), SO⁺(1,3) and the
//! Heisenberg group ℍ_m, each with an algebra basis orthonormal for its
//! inner product.

mod random;

pub use random::{algebra_element_rng, group_element_rng, random_algebra_element, random_group_element, random_word, RandomWord};

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{
    c, expm, frobenius, from_real, identity, logm_principal, max_imag, CMatrix, Tolerance, I,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Su2,
    So2m(usize),
    Sp2m(usize),
    Su11,
    Lorentz,
    Heisenberg(usize),
}

impl GroupId {
    /// Parses CLI/config vocabulary: `su2`, `so2m`, `sp2m`, `su11`, `lorentz`, `heisenberg`.
    pub fn parse(name: &str, m: usize) -> Result<GroupId> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "su2" => GroupId::Su2,
            "so2m" | "so" => GroupId::So2m(m),
            "sp2m" | "sp" => GroupId::Sp2m(m),
            "su11" => GroupId::Su11,
            "lorentz" | "so13" => GroupId::Lorentz,
            "heisenberg" => GroupId::Heisenberg(m),
            other => return Err(Error::Unknown(other.to_string())),
        })
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Su2 => write!(f, "su2"),
            GroupId::So2m(m) => write!(f, "so2m({m})"),
            GroupId::Sp2m(m) => write!(f, "sp2m({m})"),
            GroupId::Su11 => write!(f, "su11"),
            GroupId::Lorentz => write!(f, "lorentz"),
            GroupId::Heisenberg(m) => write!(f, "heisenberg({m})"),
        }
    }
}

/// Which trace normalization su(2) uses.
///
/// `Normalized` is 2·Re tr[X*Y], under which (i/2)σ_j is orthonormal.
/// `Frobenius` is the literal Re tr[X*Y]; the listed basis then has Gram
/// matrix I/2 and is rescaled internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Su2Convention {
    #[default]
    Normalized,
    Frobenius,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Matrix(CMatrix),
    /// (ξ ∈ ℝ^{2m}, t ∈ ℝ).
    Heisenberg { xi: DVector<f64>, t: f64 },
}

impl Element {
    pub fn matrix(&self) -> Option<&CMatrix> {
        match self {
            Element::Matrix(m) => Some(m),
            Element::Heisenberg { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub group: GroupId,
    pub data: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub group: GroupId,
    pub data: Element,
}

impl AlgebraElement {
    pub fn matrix(&self) -> Option<&CMatrix> {
        self.data.matrix()
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        let data = match &self.data {
            Element::Matrix(m) => Element::Matrix(m * c(s)),
            Element::Heisenberg { xi, t } => Element::Heisenberg { xi: xi * s, t: t * s },
        };
        AlgebraElement { group: self.group, data }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        same(self.group, other.group)?;
        let data = match (&self.data, &other.data) {
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a + b),
            (Element::Heisenberg { xi, t }, Element::Heisenberg { xi: eta, t: s }) => {
                Element::Heisenberg { xi: xi + eta, t: t + s }
            }
            _ => return Err(Error::Mismatch("element kinds differ".into())),
        };
        Ok(AlgebraElement { group: self.group, data })
    }
}

impl GroupElement {
    pub fn matrix(&self) -> Option<&CMatrix> {
        self.data.matrix()
    }
}

fn same(a: GroupId, b: GroupId) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("{a} vs {b}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub residual: f64,
}

pub const ALGEBRA_TOL: f64 = 1e-10;
pub const GROUP_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub id: GroupId,
    pub matrix_dim: usize,
    /// ⟨X,Y⟩ = inner_scale · Re tr[X*Y] for matrix groups.
    pub inner_scale: f64,
    pub inner_tag: String,
    pub raw_basis: Vec<AlgebraElement>,
    /// Gram matrix of `raw_basis`.
    pub gram: DMatrix<f64>,
    /// Orthonormal basis.
    pub basis: Vec<AlgebraElement>,
    pub omega: Option<DMatrix<f64>>,
    pub eta: Option<DMatrix<f64>>,
    /// Whether the inner product is Ad-invariant (declared; see `ad_invariance_test`).
    pub ad_invariant: bool,
}

/// Ω = [[0, 1], [−1, 0]] in m×m blocks.
pub fn omega(m: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        o[(k, m + k)] = 1.0;
        o[(m + k, k)] = -1.0;
    }
    o
}

pub fn eta() -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0, 1.0, 1.0]))
}

/// Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli() -> [CMatrix; 3] {
    let o = c(0.0);
    let l = c(1.0);
    [
        CMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        CMatrix::from_row_slice(2, 2, &[o, -I, I, o]),
        CMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
    ]
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut e = DMatrix::zeros(n, n);
    e[(i, j)] = 1.0;
    e
}

/// B_jk = (E_jk − E_kj)/√2 with 1-based j > k.
pub fn so_generator(m: usize, j: usize, k: usize) -> Result<CMatrix> {
    let n = 2 * m;
    if j == 0 || k == 0 || j > n || k > n || j == k {
        return Err(Error::InvalidParameter(format!("B_{j}{k} in so({n})")));
    }
    Ok(from_real(&((unit(n, j - 1, k - 1) - unit(n, k - 1, j - 1)) * FRAC_1_SQRT_2)))
}

pub fn make_group(id: GroupId) -> Result<GroupSpec> {
    make_group_with(id, Su2Convention::default())
}

pub fn make_group_with(id: GroupId, su2: Su2Convention) -> Result<GroupSpec> {
    let mat = |g: GroupId, m: CMatrix| AlgebraElement { group: g, data: Element::Matrix(m) };
    let (dim, scale, tag, raw, om, et, adinv): (usize, f64, String, Vec<AlgebraElement>, _, _, bool) = match id {
        GroupId::Su2 => {
            let (scale, tag) = match su2 {
                Su2Convention::Normalized => (2.0, "2tr[X*Y]"),
                Su2Convention::Frobenius => (1.0, "tr[X*Y]"),
            };
            let raw = pauli().iter().map(|s| mat(id, s * (I * 0.5))).collect();
            (2, scale, tag.to_string(), raw, None, None, true)
        }
        GroupId::So2m(m) => {
            check_m(m)?;
            let n = 2 * m;
            let mut raw = Vec::new();
            for j in 2..=n {
                for k in 1..j {
                    raw.push(mat(id, so_generator(m, j, k)?));
                }
            }
            (n, 1.0, "tr[X^T Y]".into(), raw, None, None, true)
        }
        GroupId::Sp2m(m) => {
            check_m(m)?;
            let n = 2 * m;
            let o = omega(m);
            let mut raw = Vec::new();
            for k in 0..n {
                for l in k..n {
                    let s = if k == l {
                        unit(n, k, k)
                    } else {
                        (unit(n, k, l) + unit(n, l, k)) * FRAC_1_SQRT_2
                    };
                    raw.push(mat(id, from_real(&(&o * s))));
                }
            }
            (n, 1.0, "tr[X^T Y]".into(), raw, Some(o), None, false)
        }
        GroupId::Su11 => {
            let o = c(0.0);
            let h = c(0.5);
            let x0 = CMatrix::from_row_slice(2, 2, &[I * 0.5, o, o, -I * 0.5]);
            let x1 = CMatrix::from_row_slice(2, 2, &[o, -I * 0.5, I * 0.5, o]);
            let x2 = CMatrix::from_row_slice(2, 2, &[o, h, h, o]);
            let raw = vec![mat(id, x0), mat(id, x1), mat(id, x2)];
            (2, 2.0, "2tr[X^dag Y]".into(), raw, None, None, false)
        }
        GroupId::Lorentz => {
            let mut raw = Vec::new();
            // J_1, J_2, J_3
            for (a, b) in [(3, 2), (1, 3), (2, 1)] {
                raw.push(mat(id, from_real(&(unit(4, a, b) - unit(4, b, a)))));
            }
            for i in 1..4 {
                raw.push(mat(id, from_real(&(unit(4, 0, i) + unit(4, i, 0)))));
            }
            (4, 0.5, "tr[X^T Y]/2".into(), raw, None, Some(eta()), false)
        }
        GroupId::Heisenberg(m) => {
            check_m(m)?;
            let n = 2 * m;
            let mut raw = Vec::new();
            for i in 0..=n {
                let mut xi = DVector::zeros(n);
                let mut t = 0.0;
                if i < n {
                    xi[i] = 1.0;
                } else {
                    t = 1.0;
                }
                raw.push(AlgebraElement { group: id, data: Element::Heisenberg { xi, t } });
            }
            (n + 1, 1.0, "euclidean".into(), raw, Some(omega(m)), None, false)
        }
    };

    let mut spec = GroupSpec {
        id,
        matrix_dim: dim,
        inner_scale: scale,
        inner_tag: tag,
        raw_basis: raw,
        gram: DMatrix::zeros(0, 0),
        basis: Vec::new(),
        omega: om,
        eta: et,
        ad_invariant: adinv,
    };
    let k = spec.raw_basis.len();
    let mut gram = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = spec.inner(&spec.raw_basis[i], &spec.raw_basis[j])?;
        }
    }
    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidParameter("Gram matrix not positive definite".into()))?;
    let linv = chol.l().try_inverse().expect("triangular factor invertible");
    let mut basis = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = spec.raw_basis[0].scale(0.0);
        for j in 0..=i {
            acc = acc.add(&spec.raw_basis[j].scale(linv[(i, j)]))?;
        }
        basis.push(acc);
    }
    spec.gram = gram;
    spec.basis = basis;
    Ok(spec)
}

fn check_m(m: usize) -> Result<()> {
    if m < 1 {
        Err(Error::InvalidParameter("m must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn sq(x: f64) -> f64 {
    x * x
}

impl GroupSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        match self.id {
            GroupId::So2m(m) | GroupId::Sp2m(m) | GroupId::Heisenberg(m) => m,
            _ => 1,
        }
    }

    fn check(&self, g: GroupId) -> Result<()> {
        same(self.id, g)
    }

    pub fn inner(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
        self.check(x.group)?;
        self.check(y.group)?;
        match (&x.data, &y.data) {
            (Element::Matrix(a), Element::Matrix(b)) => {
                let tr: f64 = a.iter().zip(b.iter()).map(|(p, q)| (p.conj() * q).re).sum();
                Ok(self.inner_scale * tr)
            }
            (Element::Heisenberg { xi, t }, Element::Heisenberg { xi: eta, t: s }) => Ok(xi.dot(eta) + t * s),
            _ => Err(Error::Mismatch("element kinds differ".into())),
        }
    }

    pub fn norm(&self, x: &AlgebraElement) -> Result<f64> {
        Ok(self.inner(x, x)?.max(0.0).sqrt())
    }

    /// Coordinates in the orthonormal basis.
    pub fn coords(&self, x: &AlgebraElement) -> Result<DVector<f64>> {
        let mut v = DVector::zeros(self.dim());
        for (i, e) in self.basis.iter().enumerate() {
            v[i] = self.inner(e, x)?;
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[f64]) -> Result<AlgebraElement> {
        if v.len() != self.dim() {
            return Err(Error::InvalidParameter(format!("{} coordinates for {}", v.len(), self.id)));
        }
        let mut acc = self.zero_algebra();
        for (e, &x) in self.basis.iter().zip(v) {
            if x != 0.0 {
                acc = acc.add(&e.scale(x))?;
            }
        }
        Ok(acc)
    }

    pub fn zero_algebra(&self) -> AlgebraElement {
        self.basis[0].scale(0.0)
    }

    pub fn identity(&self) -> GroupElement {
        let data = match self.id {
            GroupId::Heisenberg(m) => Element::Heisenberg { xi: DVector::zeros(2 * m), t: 0.0 },
            _ => Element::Matrix(identity(self.matrix_dim)),
        };
        GroupElement { group: self.id, data }
    }

    /// Wraps a matrix, checking the algebra predicate.
    pub fn algebra_element(&self, m: CMatrix) -> Result<AlgebraElement> {
        if matches!(self.id, GroupId::Heisenberg(_)) {
            return Err(Error::Mismatch("heisenberg elements are (xi, t) pairs".into()));
        }
        let x = AlgebraElement { group: self.id, data: Element::Matrix(m) };
        let mem = self.algebra_membership(&x)?;
        if !mem.member {
            return Err(Error::Mismatch(format!("not in {} (residual {:e})", self.id, mem.residual)));
        }
        Ok(x)
    }

    pub fn heisenberg_algebra(&self, xi: &[f64], t: f64) -> Result<AlgebraElement> {
        match self.id {
            GroupId::Heisenberg(m) if xi.len() == 2 * m => Ok(AlgebraElement {
                group: self.id,
                data: Element::Heisenberg { xi: DVector::from_column_slice(xi), t },
            }),
            _ => Err(Error::Mismatch(format!("heisenberg pair for {}", self.id))),
        }
    }

    pub fn heisenberg_group(&self, xi: &[f64], t: f64) -> Result<GroupElement> {
        let x = self.heisenberg_algebra(xi, t)?;
        Ok(GroupElement { group: self.id, data: x.data })
    }

    /// Wraps a matrix, checking the group predicate.
    pub fn group_element(&self, m: CMatrix) -> Result<GroupElement> {
        if matches!(self.id, GroupId::Heisenberg(_)) {
            return Err(Error::Mismatch("heisenberg elements are (xi, t) pairs".into()));
        }
        let g = GroupElement { group: self.id, data: Element::Matrix(m) };
        let mem = self.group_membership(&g)?;
        if !mem.member {
            return Err(Error::Mismatch(format!("not in {} (residual {:e})", self.id, mem.residual)));
        }
        Ok(g)
    }

    pub fn algebra_residual(&self, x: &AlgebraElement) -> Result<f64> {
        self.check(x.group)?;
        let a = match &x.data {
            Element::Heisenberg { xi, t } => {
                let ok = xi.len() == 2 * self.m() && xi.iter().all(|v| v.is_finite()) && t.is_finite();
                return Ok(if ok { 0.0 } else { f64::INFINITY });
            }
            Element::Matrix(a) => a,
        };
        if a.nrows() != self.matrix_dim || a.ncols() != self.matrix_dim {
            return Ok(f64::INFINITY);
        }
        let tr = a.trace().norm();
        let r = match self.id {
            GroupId::Su2 => (sq(frobenius(&(a + a.adjoint()))) + sq(tr)).sqrt(),
            GroupId::So2m(_) => (sq(frobenius(&(a + a.transpose()))) + sq(imag_norm(a))).sqrt(),
            GroupId::Sp2m(_) => {
                let o = from_real(self.omega.as_ref().unwrap());
                (sq(frobenius(&(&o * a + a.transpose() * &o))) + sq(imag_norm(a))).sqrt()
            }
            GroupId::Su11 => {
                let z = &pauli()[2];
                (sq(frobenius(&(a * z + z * a.adjoint()))) + sq(tr)).sqrt()
            }
            GroupId::Lorentz => {
                let e = from_real(self.eta.as_ref().unwrap());
                (sq(frobenius(&(a.transpose() * &e + &e * a))) + sq(tr) + sq(imag_norm(a))).sqrt()
            }
            GroupId::Heisenberg(_) => unreachable!(),
        };
        Ok(r)
    }

    pub fn group_residual(&self, g: &GroupElement) -> Result<f64> {
        self.check(g.group)?;
        let a = match &g.data {
            Element::Heisenberg { xi, t } => {
                let ok = xi.len() == 2 * self.m() && xi.iter().all(|v| v.is_finite()) && t.is_finite();
                return Ok(if ok { 0.0 } else { f64::INFINITY });
            }
            Element::Matrix(a) => a,
        };
        if a.nrows() != self.matrix_dim || a.ncols() != self.matrix_dim {
            return Ok(f64::INFINITY);
        }
        let n = self.matrix_dim;
        let det = (a.determinant() - c(1.0)).norm();
        let r = match self.id {
            GroupId::Su2 => (sq(frobenius(&(a.adjoint() * a - identity(n)))) + sq(det)).sqrt(),
            GroupId::So2m(_) => {
                (sq(frobenius(&(a.transpose() * a - identity(n)))) + sq(det) + sq(imag_norm(a))).sqrt()
            }
            GroupId::Sp2m(_) => {
                let o = from_real(self.omega.as_ref().unwrap());
                (sq(frobenius(&(a.transpose() * &o * a - &o))) + sq(imag_norm(a))).sqrt()
            }
            GroupId::Su11 => {
                let z = &pauli()[2];
                (sq(frobenius(&(a * z * a.adjoint() - z))) + sq(det)).sqrt()
            }
            GroupId::Lorentz => {
                let e = from_real(self.eta.as_ref().unwrap());
                let orth = (1.0 - a[(0, 0)].re).max(0.0);
                (sq(frobenius(&(a.transpose() * &e * a - &e))) + sq(det) + sq(imag_norm(a)) + sq(orth)).sqrt()
            }
            GroupId::Heisenberg(_) => unreachable!(),
        };
        Ok(r)
    }

    pub fn algebra_membership(&self, x: &AlgebraElement) -> Result<Membership> {
        let r = self.algebra_residual(x)?;
        let scale = x.matrix().map(frobenius).unwrap_or(0.0).max(1.0);
        Ok(Membership { member: r <= ALGEBRA_TOL * scale, residual: r })
    }

    pub fn group_membership(&self, g: &GroupElement) -> Result<Membership> {
        let r = self.group_residual(g)?;
        let scale = g.matrix().map(|m| sq(frobenius(m))).unwrap_or(0.0).max(1.0);
        Ok(Membership { member: r <= GROUP_TOL * scale, residual: r })
    }

    fn sform(&self, xi: &DVector<f64>, eta: &DVector<f64>) -> f64 {
        xi.dot(&(self.omega.as_ref().unwrap() * eta))
    }

    pub fn exp(&self, x: &AlgebraElement) -> Result<GroupElement> {
        self.check(x.group)?;
        let data = match &x.data {
            Element::Matrix(a) => Element::Matrix(expm(a)?),
            h @ Element::Heisenberg { .. } => h.clone(),
        };
        Ok(GroupElement { group: self.id, data })
    }

    /// Product of exponentials e^{Y_1} ⋯ e^{Y_n}.
    pub fn exp_word(&self, word: &[AlgebraElement]) -> Result<GroupElement> {
        let mut g = self.identity();
        for y in word {
            g = self.mul(&g, &self.exp(y)?)?;
        }
        Ok(g)
    }

    /// Group law; for ℍ_m, (ξ,t)(η,s) = (ξ+η, t+s+½ξ·Ωη).
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g.group)?;
        self.check(h.group)?;
        let data = match (&g.data, &h.data) {
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a * b),
            (Element::Heisenberg { xi, t }, Element::Heisenberg { xi: eta, t: s }) => Element::Heisenberg {
                xi: xi + eta,
                t: t + s + 0.5 * self.sform(xi, eta),
            },
            _ => return Err(Error::Mismatch("element kinds differ".into())),
        };
        Ok(GroupElement { group: self.id, data })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g.group)?;
        let data = match &g.data {
            Element::Matrix(a) => Element::Matrix(
                a.clone().try_inverse().ok_or_else(|| Error::Mismatch("singular group element".into()))?,
            ),
            Element::Heisenberg { xi, t } => Element::Heisenberg { xi: -xi, t: -t },
        };
        Ok(GroupElement { group: self.id, data })
    }

    /// g⁻¹h.
    pub fn relative(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.mul(&self.inv(g)?, h)
    }

    /// Principal logarithm, projected onto the algebra basis once the
    /// defect is verified to be small.
    pub fn log(&self, g: &GroupElement, tol: &Tolerance) -> Result<AlgebraElement> {
        self.check(g.group)?;
        match &g.data {
            Element::Heisenberg { .. } => Ok(AlgebraElement { group: self.id, data: g.data.clone() }),
            Element::Matrix(a) => {
                let l = logm_principal(a, tol)?;
                let x = AlgebraElement { group: self.id, data: Element::Matrix(l) };
                let r = self.algebra_residual(&x)?;
                let scale = x.matrix().map(frobenius).unwrap_or(0.0).max(1.0);
                if r > 1e-8 * scale {
                    return Err(Error::InvalidLog(r));
                }
                let v = self.coords(&x)?;
                self.from_coords(v.as_slice())
            }
        }
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x.group)?;
        self.check(y.group)?;
        let data = match (&x.data, &y.data) {
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a * b - b * a),
            (Element::Heisenberg { xi, .. }, Element::Heisenberg { xi: eta, .. }) => {
                Element::Heisenberg { xi: DVector::zeros(xi.len()), t: self.sform(xi, eta) }
            }
            _ => return Err(Error::Mismatch("element kinds differ".into())),
        };
        Ok(AlgebraElement { group: self.id, data })
    }

    /// Ad_g X = g X g⁻¹.
    pub fn ad(&self, g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(g.group)?;
        self.check(x.group)?;
        let data = match (&g.data, &x.data) {
            (Element::Matrix(a), Element::Matrix(b)) => {
                let inv = self.inv(g)?;
                Element::Matrix(a * b * inv.matrix().unwrap())
            }
            (Element::Heisenberg { xi, .. }, Element::Heisenberg { xi: eta, t: s }) => {
                Element::Heisenberg { xi: eta.clone(), t: s + self.sform(xi, eta) }
            }
            _ => return Err(Error::Mismatch("element kinds differ".into())),
        };
        Ok(AlgebraElement { group: self.id, data })
    }

    /// Frobenius distance between group elements (coordinates for ℍ_m).
    pub fn element_distance(&self, g: &GroupElement, h: &GroupElement) -> Result<f64> {
        self.check(g.group)?;
        self.check(h.group)?;
        match (&g.data, &h.data) {
            (Element::Matrix(a), Element::Matrix(b)) => Ok(frobenius(&(a - b))),
            (Element::Heisenberg { xi, t }, Element::Heisenberg { xi: eta, t: s }) => {
                Ok(((xi - eta).norm_squared() + sq(t - s)).sqrt())
            }
            _ => Err(Error::Mismatch("element kinds differ".into())),
        }
    }

    /// Samples g, X, Y and checks ⟨Ad_g X, Ad_g Y⟩ = ⟨X, Y⟩ within 1e−8.
    pub fn ad_invariance_test(&self, samples: usize, seed: u64) -> Result<bool> {
        let mut rng = random::rng(seed);
        for _ in 0..samples.max(1) {
            let g = random::group_element_rng(self, 1.0, &mut rng)?.element;
            let x = random::algebra_element_rng(self, 1.0, &mut rng)?;
            let y = random::algebra_element_rng(self, 1.0, &mut rng)?;
            let lhs = self.inner(&self.ad(&g, &x)?, &self.ad(&g, &y)?)?;
            let rhs = self.inner(&x, &y)?;
            if (lhs - rhs).abs() > 1e-8 * (1.0 + rhs.abs()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn imag_norm(a: &CMatrix) -> f64 {
    if max_imag(a) == 0.0 {
        0.0
    } else {
        a.iter().map(|z| z.im * z.im).sum::<f64>().sqrt()
    }
}
