//! The left-invariant metric d(g,h) = inf Σ‖Y_j‖ over factorizations
//! g⁻¹h = e^{Y_1}⋯e^{Y_n}.
//!
//! Only Ad-invariant inner products get exact values (the principal log is
//! then a minimizing geodesic). Everything else is an upper bound witnessed
//! by an explicit decomposition.

mod nelder_mead;

pub use nelder_mead::minimize as nelder_mead;

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groups::{self, AlgebraElement, Element, GroupElement, GroupId, GroupSpec};
use crate::linalg::{frobenius, norm, NormKind, Tolerance};

/// Below this value the base-group metric is used for covering/projective reps.
pub const LOCAL_RADIUS: f64 = PI / 2.0;
/// Exactness is certified only when ‖log‖_op is below this.
pub const CERTIFY_RADIUS: f64 = PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricKind {
    ExactClosedForm,
    LogUpperBound,
    RefinedUpperBound,
}

impl MetricKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MetricKind::ExactClosedForm => "exact_closed_form",
            MetricKind::LogUpperBound => "log_upper_bound",
            MetricKind::RefinedUpperBound => "refined_upper_bound",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MetricResult {
    pub value: f64,
    pub kind: MetricKind,
    pub decomposition: Vec<AlgebraElement>,
    pub certified_exact: bool,
    pub local_regime: bool,
}

impl MetricResult {
    fn new(spec: &GroupSpec, kind: MetricKind, decomposition: Vec<AlgebraElement>, certified: bool) -> Result<Self> {
        let value = decomposition.iter().map(|y| spec.norm(y)).sum::<Result<f64>>()?;
        Ok(MetricResult { value, kind, decomposition, certified_exact: certified, local_regime: value < LOCAL_RADIUS })
    }

    /// Distance between e^{Y_1}⋯e^{Y_n} and g⁻¹h.
    pub fn witness_residual(&self, spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<f64> {
        let target = spec.relative(g, h)?;
        let prod = spec.exp_word(&self.decomposition)?;
        spec.element_distance(&prod, &target)
    }

    pub fn decomposition_norm(&self, spec: &GroupSpec) -> Result<f64> {
        self.decomposition.iter().map(|y| spec.norm(y)).sum()
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Exact value for Ad-invariant inner products; the §4.3 formula for ℍ_m.
pub fn distance_closed_form(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<MetricResult> {
    let target = spec.relative(g, h)?;
    if let GroupId::Heisenberg(_) = spec.id {
        // the exponential map is the identity; Euclidean norm of g⁻¹h
        let y = spec.log(&target, &tol())?;
        return MetricResult::new(spec, MetricKind::ExactClosedForm, vec![y], false);
    }
    if !spec.ad_invariant {
        return Err(Error::NotApplicable(format!("{} inner product is not Ad-invariant", spec.id)));
    }
    let y = spec.log(&target, &tol()).map_err(|e| Error::NotApplicable(e.to_string()))?;
    let op = norm(y.matrix().expect("matrix group"), NormKind::Operator);
    if op < CERTIFY_RADIUS {
        MetricResult::new(spec, MetricKind::ExactClosedForm, vec![y], true)
    } else {
        MetricResult::new(spec, MetricKind::LogUpperBound, vec![y], false)
    }
}

/// ‖log(g⁻¹h)‖, always an upper bound.
pub fn distance_log_bound(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<MetricResult> {
    let target = spec.relative(g, h)?;
    let y = spec.log(&target, &tol())?;
    MetricResult::new(spec, MetricKind::LogUpperBound, vec![y], false)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefineOptions {
    pub segments: usize,
    /// Round-robin sweeps over the intermediate points.
    pub iters: usize,
    pub seed: u64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { segments: 8, iters: 6, seed: 0 }
    }
}

const DECOMPOSITION_RETRIES: usize = 40;

/// Minimizes Σ‖log(g_{j−1}⁻¹g_j)‖ over the K−1 intermediate points.
pub fn distance_refined(
    spec: &GroupSpec,
    g: &GroupElement,
    h: &GroupElement,
    opts: &RefineOptions,
) -> Result<MetricResult> {
    if opts.segments == 0 {
        return Err(Error::InvalidParameter("segments must be at least 1".into()));
    }
    let target = spec.relative(g, h)?;
    let mut rng = groups_rng(opts.seed);
    let points = refine_path(spec, &target, opts.segments, opts.iters, &mut rng)?;
    let mut decomposition = Vec::with_capacity(opts.segments);
    for w in points.windows(2) {
        decomposition.push(spec.log(&spec.relative(&w[0], &w[1])?, &tol())?);
    }
    MetricResult::new(spec, MetricKind::RefinedUpperBound, decomposition, false)
}

/// Closed form when one exists and is certified, otherwise the refined
/// bound with eight segments.
pub fn distance_best(spec: &GroupSpec, g: &GroupElement, h: &GroupElement) -> Result<MetricResult> {
    if spec.ad_invariant || matches!(spec.id, GroupId::Heisenberg(_)) {
        if let Ok(r) = distance_closed_form(spec, g, h) {
            if r.certified_exact || matches!(spec.id, GroupId::Heisenberg(_)) {
                return Ok(r);
            }
        }
    }
    distance_refined(spec, g, h, &RefineOptions::default())
}

fn groups_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x6d65_7472_6963)
}

fn segment(spec: &GroupSpec, a: &GroupElement, b: &GroupElement) -> f64 {
    spec.relative(a, b)
        .and_then(|r| spec.log(&r, &tol()))
        .and_then(|y| spec.norm(&y))
        .unwrap_or(f64::INFINITY)
}

fn path_length(spec: &GroupSpec, pts: &[GroupElement]) -> f64 {
    pts.windows(2).map(|w| segment(spec, &w[0], &w[1])).sum()
}

/// Some factorization target = e^{Y_1}⋯e^{Y_n} with every factor a principal log.
fn initial_decomposition<R: Rng>(spec: &GroupSpec, target: &GroupElement, rng: &mut R) -> Result<Vec<AlgebraElement>> {
    match spec.log(target, &tol()) {
        Ok(y) => return Ok(vec![y]),
        Err(Error::BranchFailure(_)) | Err(Error::InvalidLog(_)) => {}
        Err(e) => return Err(e),
    }
    for attempt in 0..DECOMPOSITION_RETRIES {
        let scale = 0.5 + 0.05 * attempt as f64;
        let z = groups::random_word(spec, scale, 1, rng)?;
        let rest = spec.mul(target, &spec.inv(&z.element)?)?;
        if let Ok(y) = spec.log(&rest, &tol()) {
            return Ok(vec![y, z.word[0].clone()]);
        }
    }
    Err(Error::NoDecomposition(DECOMPOSITION_RETRIES))
}

fn points_from_decomposition(spec: &GroupSpec, ys: &[AlgebraElement], k: usize) -> Result<Vec<GroupElement>> {
    if k < ys.len() {
        return Err(Error::BranchFailure("target has no principal logarithm".into()));
    }
    // distribute k segments over the factors
    let mut counts = vec![k / ys.len(); ys.len()];
    for c in counts.iter_mut().take(k % ys.len()) {
        *c += 1;
    }
    let mut pts = vec![spec.identity()];
    for (y, &n) in ys.iter().zip(&counts) {
        let step = spec.exp(&y.scale(1.0 / n as f64))?;
        for _ in 0..n {
            let last = pts.last().unwrap().clone();
            pts.push(spec.mul(&last, &step)?);
        }
    }
    Ok(pts)
}

fn refine_path<R: Rng>(
    spec: &GroupSpec,
    target: &GroupElement,
    k: usize,
    iters: usize,
    rng: &mut R,
) -> Result<Vec<GroupElement>> {
    let mut pts = None;
    if k >= 2 && k % 2 == 0 {
        // start from the optimized half-resolution path, each segment halved
        if let Ok(coarse) = refine_path(spec, target, k / 2, iters, rng) {
            let mut fine = vec![coarse[0].clone()];
            for w in coarse.windows(2) {
                let y = spec.log(&spec.relative(&w[0], &w[1])?, &tol())?;
                fine.push(spec.mul(&w[0], &spec.exp(&y.scale(0.5))?)?);
                fine.push(w[1].clone());
            }
            pts = Some(fine);
        }
    }
    let mut pts = match pts {
        Some(p) => p,
        None => {
            let ys = initial_decomposition(spec, target, rng)?;
            points_from_decomposition(spec, &ys, k)?
        }
    };
    // pin the endpoint exactly
    *pts.last_mut().unwrap() = target.clone();
    if !path_length(spec, &pts).is_finite() {
        return Err(Error::NoDecomposition(1));
    }

    let dim = spec.dim();
    for _ in 0..iters {
        let before = path_length(spec, &pts);
        for j in 1..k {
            let (prev, here, next) = (pts[j - 1].clone(), pts[j].clone(), pts[j + 1].clone());
            let local = |d: &[f64]| -> f64 {
                let p = spec
                    .from_coords(d)
                    .and_then(|x| spec.exp(&x))
                    .and_then(|e| spec.mul(&here, &e));
                match p {
                    Ok(p) => segment(spec, &prev, &p) + segment(spec, &p, &next),
                    Err(_) => f64::INFINITY,
                }
            };
            let f0 = local(&vec![0.0; dim]);
            let step = (0.25 * f0).clamp(1e-4, 0.5);
            let out = nelder_mead::minimize(local, &vec![0.0; dim], step, 40 * dim + 40, 1e-13);
            if out.f < f0 {
                let x = spec.from_coords(&out.x)?;
                pts[j] = spec.mul(&here, &spec.exp(&x)?)?;
            }
        }
        let after = path_length(spec, &pts);
        if before - after <= 1e-12 * (1.0 + after) {
            break;
        }
    }
    Ok(pts)
}

/// Frobenius-norm residual helper for matrix-valued witnesses.
pub fn matrix_residual(a: &Element, b: &Element) -> f64 {
    match (a, b) {
        (Element::Matrix(x), Element::Matrix(y)) => frobenius(&(x - y)),
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests;
