//! State, channel and energy-constrained diamond bounds together with the
//! exact quantities they are checked against.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::AlgebraElement;
use crate::linalg::{c, eigenvalues, expm, inner, unitary_defect, CMatrix, CVector, I};
use crate::metric::{distance_best, MetricResult};
use crate::nelson::EnergyOperator;
use crate::reps::{RepKind, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Global,
    LocalOnly,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Global => "global",
            Regime::LocalOnly => "local_only",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound_value: f64,
    pub metric: MetricResult,
    /// √⟨ψ,Kψ⟩, 2√⟨ψ,Kψ⟩ or 2√E depending on the bound.
    pub energy_term: f64,
    pub oracle_value: Option<f64>,
    pub slack: Option<f64>,
    pub regime: Regime,
}

#[derive(Serialize)]
struct Record<'a> {
    bound_value: f64,
    metric_value: f64,
    metric_kind: &'a str,
    certified_exact: bool,
    local_regime: bool,
    energy_term: f64,
    oracle_value: Option<f64>,
    slack: Option<f64>,
    regime: Regime,
}

impl BoundReport {
    fn new(metric: MetricResult, energy_term: f64, regime: Regime) -> Self {
        BoundReport { bound_value: energy_term * metric.value, metric, energy_term, oracle_value: None, slack: None, regime }
    }

    pub fn with_oracle(mut self, oracle: f64) -> Self {
        self.oracle_value = Some(oracle);
        self.slack = Some(self.bound_value - oracle);
        self
    }

    fn record(&self) -> Record<'_> {
        Record {
            bound_value: self.bound_value,
            metric_value: self.metric.value,
            metric_kind: self.metric.kind.as_str(),
            certified_exact: self.metric.certified_exact,
            local_regime: self.metric.local_regime,
            energy_term: self.energy_term,
            oracle_value: self.oracle_value,
            slack: self.slack,
            regime: self.regime,
        }
    }

    /// Flat JSON object.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("flat record serializes")
    }

    pub const CSV_HEADER: &'static str =
        "bound_value,metric_value,metric_kind,certified_exact,local_regime,energy_term,oracle_value,slack,regime";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.16e}"));
        format!(
            "{:.16e},{:.16e},{},{},{},{:.16e},{},{},{}",
            self.bound_value,
            self.metric.value,
            self.metric.kind.as_str(),
            self.metric.certified_exact,
            self.metric.local_regime,
            self.energy_term,
            opt(self.oracle_value),
            opt(self.slack),
            self.regime.as_str()
        )
    }
}

/// d_best(g, h) for two words in the representation's group.
pub fn metric_for(rep: &Representation, g_word: &[AlgebraElement], h_word: &[AlgebraElement]) -> Result<MetricResult> {
    let g = rep.group.exp_word(g_word)?;
    let h = rep.group.exp_word(h_word)?;
    distance_best(&rep.group, &g, &h)
}

fn check_state(rep: &Representation, psi: &CVector) -> Result<()> {
    if psi.len() != rep.dim()? {
        return Err(Error::InvalidParameter(format!("state of length {} for dimension {}", psi.len(), rep.dim()?)));
    }
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidParameter(format!("state not normalized (norm {n})")));
    }
    Ok(())
}

fn energy(k: &EnergyOperator, psi: &CVector) -> f64 {
    k.expectation(psi).max(0.0)
}

/// ‖(U_g − U_h)ψ‖ from materialized unitaries.
pub fn exact_state_distance(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    psi: &CVector,
) -> Result<f64> {
    let ug = rep.unitary(g_word)?;
    let uh = rep.unitary(h_word)?;
    Ok(((ug - uh) * psi).norm())
}

/// For projective reps: U_h ψ must agree with U_g Π e^{−iA(Y_j)} ψ,
/// otherwise the two words sit on different lifts.
fn lift_mismatch(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    metric: &MetricResult,
    psi: &CVector,
) -> Result<f64> {
    let mut v = psi.clone();
    for y in metric.decomposition.iter().rev() {
        v = expm(&(rep.generator(y)? * (-I)))? * v;
    }
    let lhs = rep.unitary(g_word)? * v;
    let rhs = rep.unitary(h_word)? * psi;
    Ok((lhs - rhs).norm())
}

/// √⟨ψ,Kψ⟩ · d_best(g,h).
pub fn state_bound(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    psi: &CVector,
    k: &EnergyOperator,
) -> Result<BoundReport> {
    let metric = metric_for(rep, g_word, h_word)?;
    state_bound_with_metric(rep, g_word, h_word, psi, k, metric)
}

pub fn state_bound_with_metric(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    psi: &CVector,
    k: &EnergyOperator,
    metric: MetricResult,
) -> Result<BoundReport> {
    check_state(rep, psi)?;
    let regime = if rep.needs_local_regime() {
        if !metric.local_regime {
            return Err(Error::LocalRegimeViolation(metric.value));
        }
        if lift_mismatch(rep, g_word, h_word, &metric, psi)? > 0.5 {
            return Err(Error::LocalRegimeViolation(metric.value));
        }
        Regime::LocalOnly
    } else {
        Regime::Global
    };
    Ok(BoundReport::new(metric, energy(k, psi).sqrt(), regime))
}

/// 2√(1 − |⟨φ,χ⟩|²), the trace distance of two pure states.
pub fn pure_trace_distance(phi: &CVector, chi: &CVector) -> f64 {
    2.0 * (1.0 - inner(phi, chi).norm_sqr()).max(0.0).sqrt()
}

/// ‖𝒰_g(ρ_ψ) − 𝒰_h(ρ_ψ)‖₁.
pub fn exact_channel_distance(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    psi: &CVector,
) -> Result<f64> {
    let a = rep.unitary(g_word)? * psi;
    let b = rep.unitary(h_word)? * psi;
    Ok(pure_trace_distance(&a, &b))
}

/// 2√⟨ψ,Kψ⟩ · d_best(g,h); phases cancel so this holds globally.
pub fn channel_trace_bound(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    psi: &CVector,
    k: &EnergyOperator,
) -> Result<BoundReport> {
    let metric = metric_for(rep, g_word, h_word)?;
    channel_trace_bound_with_metric(rep, psi, k, metric)
}

pub fn channel_trace_bound_with_metric(
    rep: &Representation,
    psi: &CVector,
    k: &EnergyOperator,
    metric: MetricResult,
) -> Result<BoundReport> {
    check_state(rep, psi)?;
    Ok(BoundReport::new(metric, 2.0 * energy(k, psi).sqrt(), Regime::Global))
}

fn check_budget(budget: f64, floor: f64) -> Result<()> {
    // equality is allowed so that constant Laplacians have a usable budget
    if !budget.is_finite() || budget < floor - 1e-12 * floor.abs().max(1.0) {
        return Err(Error::InvalidEnergyBudget { budget, floor });
    }
    Ok(())
}

/// 2√E · d_best(g,h) for the ECD norm with respect to K.
pub fn ecd_bound(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    budget: f64,
    k: &EnergyOperator,
) -> Result<BoundReport> {
    check_budget(budget, k.min_eigenvalue()?)?;
    let metric = metric_for(rep, g_word, h_word)?;
    Ok(BoundReport::new(metric, 2.0 * budget.sqrt(), Regime::Global))
}

/// ECD bound for an SU(1,1) sector with the budget measured by K₀²:
/// √(8E − n² + 1) · d, from Δ = 2K₀² + (1−n²)/4.
pub fn ecd_bound_su11(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    budget: f64,
) -> Result<BoundReport> {
    let RepKind::Su11Sector { n, .. } = rep.kind else {
        return Err(Error::InvalidParameter(format!("{} is not an SU(1,1) sector", rep.kind)));
    };
    let k0_min = (n.unsigned_abs() as f64 + 1.0) / 2.0;
    check_budget(budget, k0_min * k0_min)?;
    let nn = (n * n) as f64;
    let metric = metric_for(rep, g_word, h_word)?;
    Ok(BoundReport::new(metric, (8.0 * budget - nn + 1.0).sqrt(), Regime::Global))
}

/// ECD bound for the metaplectic rep with the budget measured by H²:
/// 2√(E + 3m/8) · d.
pub fn ecd_bound_metaplectic(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    budget: f64,
) -> Result<BoundReport> {
    let RepKind::Metaplectic { m, .. } = rep.kind else {
        return Err(Error::InvalidParameter(format!("{} is not metaplectic", rep.kind)));
    };
    let m = m as f64;
    check_budget(budget, m * m / 4.0)?;
    let metric = metric_for(rep, g_word, h_word)?;
    Ok(BoundReport::new(metric, 2.0 * (budget + 3.0 * m / 8.0).sqrt(), Regime::Global))
}

/// Diamond distance of the unitary channels U·U* and V·V*: 2√(1 − δ²) with
/// δ the distance from 0 to the convex hull of spec(U*V).
pub fn exact_diamond_unitary(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    for m in [u, v] {
        let d = unitary_defect(m);
        if d > 1e-8 * (m.nrows() as f64).max(1.0) {
            return Err(Error::NotUnitary(d));
        }
    }
    let w = u.adjoint() * v;
    let mut angles: Vec<f64> = eigenvalues(&w)?.iter().map(|z| z.arg()).collect();
    angles.sort_by(f64::total_cmp);
    let n = angles.len();
    let mut gap = angles[0] + 2.0 * PI - angles[n - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    // the smallest arc holding every eigenvalue
    let arc = (2.0 * PI - gap).max(0.0);
    Ok(if arc >= PI { 2.0 } else { 2.0 * (arc / 2.0).sin() })
}

#[derive(Clone, Copy, Debug)]
pub struct SupOptions {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions { restarts: 8, iters: 300, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct PureStateSup {
    /// Best feasible 2√(1 − |⟨ψ,U_g*U_hψ⟩|²); a lower bound on the ECD distance.
    pub value: f64,
    pub state: CVector,
    pub energy: f64,
    /// Set when no start reached a stationary point within the iteration budget.
    pub warning: bool,
}

struct Problem {
    w: CMatrix,
    k: CMatrix,
    ground: CVector,
    budget: f64,
}

impl Problem {
    fn overlap(&self, psi: &CVector) -> f64 {
        inner(psi, &(&self.w * psi)).norm_sqr()
    }

    fn energy(&self, psi: &CVector) -> f64 {
        inner(psi, &(&self.k * psi)).re
    }

    /// Mixes towards the ground state of K until the budget holds.
    fn repair(&self, psi: CVector) -> CVector {
        if self.energy(&psi) <= self.budget {
            return psi;
        }
        let mix = |s: f64| -> CVector {
            let v = &psi * c(1.0 - s) + &self.ground * c(s);
            let n = v.norm();
            if n < 1e-14 {
                self.ground.clone()
            } else {
                v / c(n)
            }
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if self.energy(&mix(mid)) <= self.budget {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        mix(hi)
    }

    /// Descent on |⟨ψ,Wψ⟩|² over the feasible set; returns (overlap, state, converged).
    fn run(&self, start: CVector, iters: usize) -> (f64, CVector, bool) {
        let mut psi = self.repair(start.normalize());
        let mut f = self.overlap(&psi);
        let mut eta = 0.5;
        for _ in 0..iters {
            let wpsi = &self.w * &psi;
            let z = inner(&psi, &wpsi);
            let grad = wpsi * z.conj() + self.w.adjoint() * &psi * z;
            let mut improved = false;
            while eta > 1e-12 {
                let trial = self.repair((&psi - &grad * c(eta)).normalize());
                let ft = self.overlap(&trial);
                if ft < f {
                    psi = trial;
                    f = ft;
                    eta *= 1.5;
                    improved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !improved || f < 1e-15 {
                return (f, psi, true);
            }
        }
        (f, psi, false)
    }
}

fn barycentric_origin(a: (f64, f64), b: (f64, f64), d: (f64, f64)) -> Option<[f64; 3]> {
    let det = (b.0 - a.0) * (d.1 - a.1) - (d.0 - a.0) * (b.1 - a.1);
    if det.abs() < 1e-12 {
        return None;
    }
    let u = ((0.0 - a.0) * (d.1 - a.1) - (d.0 - a.0) * (0.0 - a.1)) / det;
    let v = ((b.0 - a.0) * (0.0 - a.1) - (0.0 - a.0) * (b.1 - a.1)) / det;
    let p = [1.0 - u - v, u, v];
    p.iter().all(|&x| x >= 0.0).then_some(p)
}

/// Maximizes the pure-state trace distance 2√(1 − |⟨U_gψ, U_hψ⟩|²) over
/// unit ψ on the trusted block with ⟨ψ,Kψ⟩ ≤ E.
pub fn ecd_pure_state_sup(
    rep: &Representation,
    g_word: &[AlgebraElement],
    h_word: &[AlgebraElement],
    k: &EnergyOperator,
    budget: f64,
    opts: &SupOptions,
) -> Result<PureStateSup> {
    let idx = rep.valid_block();
    let full = rep.unitary(g_word)?.adjoint() * rep.unitary(h_word)?;
    let n = idx.len();
    let w = CMatrix::from_fn(n, n, |i, j| full[(idx[i], idx[j])]);
    let kb = k.block(&idx);
    let ke = crate::linalg::eig_hermitian(&kb, &crate::linalg::Tolerance::new(1e-10, 1e-12)?)?;
    check_budget(budget, ke.values[0])?;
    let problem = Problem { w, k: kb, ground: ke.vectors.column(0).into_owned(), budget };

    let mut starts = vec![problem.ground.clone()];
    // eigenvector pairs spanning the widest chords of the spectrum
    let (q, t) = crate::linalg::schur(&problem.w)?;
    let ev: Vec<f64> = (0..n).map(|i| t[(i, i)].arg()).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let d = (ev[a] - ev[b]).abs();
            pairs.push((d.min(2.0 * PI - d), a, b));
        }
    }
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    for &(_, a, b) in pairs.iter().take(6) {
        starts.push((q.column(a) + q.column(b)) * c(std::f64::consts::FRAC_1_SQRT_2));
    }
    // Σ√p_i v_i with p the barycentric weights of 0 in an eigenvalue triangle
    let lam: Vec<(f64, f64)> = ev.iter().map(|a| (a.cos(), a.sin())).collect();
    let limit = n.min(40);
    'outer: for a in 0..limit {
        for b in a + 1..limit {
            for d in b + 1..limit {
                if let Some(p) = barycentric_origin(lam[a], lam[b], lam[d]) {
                    let v = q.column(a) * c(p[0].sqrt()) + q.column(b) * c(p[1].sqrt()) + q.column(d) * c(p[2].sqrt());
                    starts.push(v);
                    if starts.len() > 16 {
                        break 'outer;
                    }
                }
            }
        }
    }
    starts.push(q.column_sum() / c((n as f64).sqrt()));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        starts.push(CVector::from_fn(n, |_, _| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            c(re) + I * im
        }));
    }
    let runs: Vec<(f64, CVector, bool)> = starts.into_par_iter().map(|s| problem.run(s, opts.iters)).collect();
    let (mut best, mut state, mut any_converged) = (f64::INFINITY, problem.ground.clone(), false);
    for (f, psi, conv) in runs {
        any_converged |= conv;
        if f < best {
            best = f;
            state = psi;
        }
    }
    let energy = problem.energy(&state);
    let mut full_state = CVector::zeros(rep.dim()?);
    for (i, &j) in idx.iter().enumerate() {
        full_state[j] = state[i];
    }
    Ok(PureStateSup {
        value: 2.0 * (1.0 - best).max(0.0).sqrt(),
        state: full_state,
        energy,
        warning: !any_converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, Tolerance};
    use crate::nelson::{improved_k, nelson_closed_form};

    fn spin_half() -> Representation {
        Representation::new(RepKind::Spin { twice_j: 1 }).unwrap()
    }

    fn z_rotation(rep: &Representation, alpha: f64) -> AlgebraElement {
        // unit-norm element with A(X) = S_z
        let x = rep.group.basis[2].scale(-1.0);
        assert!((rep.generator(&x).unwrap()[(0, 0)].re - 0.5).abs() < 1e-12);
        x.scale(alpha)
    }

    #[test]
    fn spin_half_rotation_example() {
        let rep = spin_half();
        let k = improved_k(&rep).unwrap();
        let up = CVector::from_vec(vec![c(1.0), c(0.0)]);
        for alpha in [0.1, 1.0, 2.0, PI] {
            let g = [z_rotation(&rep, alpha)];
            let r = state_bound(&rep, &g, &[], &up, &k).unwrap();
            assert!((r.bound_value - alpha / 2.0).abs() < 1e-9);
            let exact = exact_state_distance(&rep, &g, &[], &up).unwrap();
            assert!((exact - 2.0 * (alpha / 4.0).sin().abs()).abs() < 1e-12);
            assert!(exact <= r.bound_value + 1e-12);
        }
        // first-order tightness
        let g = [z_rotation(&rep, 1e-3)];
        let r = state_bound(&rep, &g, &[], &up, &k).unwrap();
        assert!(exact_state_distance(&rep, &g, &[], &up).unwrap() / r.bound_value >= 0.999);
    }

    #[test]
    fn equal_elements_give_zero() {
        let rep = Representation::new(RepKind::Flo { m: 2 }).unwrap();
        let k = nelson_closed_form(&rep).unwrap();
        let g = [crate::groups::random_algebra_element(&rep.group, 0.3, 1).unwrap()];
        let psi = CVector::from_fn(4, |i, _| c(i as f64 + 1.0)).normalize();
        assert!(state_bound(&rep, &g, &g, &psi, &k).unwrap().bound_value < 1e-12);
        assert!(channel_trace_bound(&rep, &g, &g, &psi, &k).unwrap().bound_value < 1e-12);
        assert!(exact_state_distance(&rep, &g, &g, &psi).unwrap() < 1e-12);
        let sup = ecd_pure_state_sup(&rep, &g, &g, &k, 0.75, &SupOptions::default()).unwrap();
        assert!(sup.value < 1e-6);
    }

    #[test]
    fn diamond_hull_examples() {
        let one = CMatrix::identity(2, 2);
        let flip = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(-1.0)]));
        assert!((exact_diamond_unitary(&one, &flip).unwrap() - 2.0).abs() < 1e-12);
        for theta in [0.1, 1.0, 2.5] {
            let v = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), (I * theta).exp()]));
            let want = 2.0 * (theta / 2.0).sin();
            assert!((exact_diamond_unitary(&one, &v).unwrap() - want).abs() < 1e-12);
            // Bloch sweep cross-check
            let mut best: f64 = 0.0;
            for s in 0..=200 {
                let t = s as f64 / 200.0 * PI;
                let psi = CVector::from_vec(vec![c((t / 2.0).cos()), c((t / 2.0).sin())]);
                best = best.max(pure_trace_distance(&psi, &(&v * &psi)));
            }
            assert!((best - want).abs() < 1e-6);
        }
        let phase = &one * (I * 0.7).exp();
        assert!(exact_diamond_unitary(&one, &phase).unwrap() < 1e-7);
        assert!(matches!(exact_diamond_unitary(&one, &(&one * c(2.0))), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn trace_distance_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut v = || {
                CVector::from_fn(4, |_, _| {
                    let a: f64 = StandardNormal.sample(&mut rng);
                    let b: f64 = StandardNormal.sample(&mut rng);
                    c(a) + I * b
                })
                .normalize()
            };
            let (phi, chi) = (v(), v());
            let d = &phi * phi.adjoint() - &chi * chi.adjoint();
            let e = eig_hermitian(&d, &Tolerance::default()).unwrap();
            let tn: f64 = e.values.iter().map(|x| x.abs()).sum();
            assert!((tn - pure_trace_distance(&phi, &chi)).abs() < 1e-10);
        }
    }

    #[test]
    fn spin_sup_matches_hull() {
        for tj in [1, 2, 3] {
            let rep = Representation::new(RepKind::Spin { twice_j: tj }).unwrap();
            let k = nelson_closed_form(&rep).unwrap();
            let e = k.scalar().unwrap();
            for seed in 0..3 {
                let g = [crate::groups::random_algebra_element(&rep.group, 2.0, seed).unwrap()];
                let h = [crate::groups::random_algebra_element(&rep.group, 2.0, seed + 100).unwrap()];
                let exact = exact_diamond_unitary(&rep.unitary(&g).unwrap(), &rep.unitary(&h).unwrap()).unwrap();
                let sup = ecd_pure_state_sup(&rep, &g, &h, &k, e, &SupOptions::default()).unwrap();
                assert!((sup.value - exact).abs() < 1e-6, "j={tj}: {} vs {exact}", sup.value);
                let b = ecd_bound(&rep, &g, &h, e, &k).unwrap();
                assert!(exact <= b.bound_value + 1e-7);
            }
        }
    }

    #[test]
    fn budget_floor_and_helpers() {
        let rep = Representation::new(RepKind::Su11Sector { n: 1, cutoff: 24 }).unwrap();
        let g = [crate::groups::random_algebra_element(&rep.group, 0.3, 2).unwrap()];
        let r = ecd_bound_su11(&rep, &g, &[], 3.0).unwrap();
        assert!((r.energy_term - 24f64.sqrt()).abs() < 1e-12);
        assert!(matches!(ecd_bound_su11(&rep, &g, &[], 0.5), Err(Error::InvalidEnergyBudget { .. })));
        let k = nelson_closed_form(&rep).unwrap();
        // Δ = 2K₀² here, so both routes agree
        let via_k = ecd_bound(&rep, &g, &[], 6.0, &k).unwrap();
        assert!((via_k.bound_value - r.bound_value).abs() < 1e-12);

        let flo = Representation::new(RepKind::Flo { m: 2 }).unwrap();
        let k = nelson_closed_form(&flo).unwrap();
        let g = [crate::groups::random_algebra_element(&flo.group, 0.5, 4).unwrap()];
        let r = ecd_bound(&flo, &g, &[], 0.75, &k).unwrap();
        assert!((r.energy_term - 3f64.sqrt()).abs() < 1e-12);
        assert!(ecd_bound(&flo, &g, &[], 0.5, &k).is_err());
    }

    #[test]
    fn projective_lift_is_guarded() {
        let rep = Representation::new(RepKind::Metaplectic { m: 1, cutoff: 24 }).unwrap();
        let k = nelson_closed_form(&rep).unwrap();
        let om = crate::reps::sp_element(&rep.group, &crate::groups::omega(1)).unwrap();
        // e^{2πΩ} is the identity in Sp(2) but −𝟙 on the Fock space
        let g = [om.scale(2.0 * PI)];
        let psi = crate::reps::boson::fock_state(&[0], 24);
        assert!(matches!(state_bound(&rep, &g, &[], &psi, &k), Err(Error::LocalRegimeViolation(_))));
        let ch = channel_trace_bound(&rep, &g, &[], &psi, &k).unwrap();
        assert!(ch.bound_value < 1e-8);
        assert!(exact_channel_distance(&rep, &g, &[], &psi).unwrap() < 1e-8);
    }

    #[test]
    fn serialization() {
        let rep = spin_half();
        let k = improved_k(&rep).unwrap();
        let up = CVector::from_vec(vec![c(1.0), c(0.0)]);
        let g = [z_rotation(&rep, 1.0)];
        let r = state_bound(&rep, &g, &[], &up, &k).unwrap().with_oracle(0.4);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["regime"], "global");
        assert!((json["slack"].as_f64().unwrap() - 0.1).abs() < 1e-12);
        assert_eq!(r.csv_row().split(',').count(), BoundReport::CSV_HEADER.split(',').count());
    }
}
