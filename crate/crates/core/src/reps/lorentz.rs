//! Scalar representation of SO⁺(1,3) on L²(𝓜_m, d³p/(2p₀)),
//! (U_Λψ)(p) = ψ(Λ⁻¹p), evaluated with tensor Gauss–Hermite quadrature
//! adapted to a Gaussian packet.
//!
//! ⟨ψ,Δψ⟩ = ‖|p|∇ψ‖² − ‖η(p,∇ψ)‖² with |p| the Euclidean norm of the
//! 4-vector and ∇ψ taken from the p₀-independent extension.

use nalgebra::{DMatrix, Vector4};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};
use crate::linalg::quadrature::{gauss_hermite, Rule};
use crate::linalg::real_part;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wavepacket {
    pub mass: f64,
    pub mean_momentum: [f64; 3],
    pub width: f64,
}

impl Wavepacket {
    pub fn new(mass: f64, mean_momentum: [f64; 3], width: f64) -> Result<Self> {
        if !(mass > 0.0) || !(width > 0.0) || mean_momentum.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("wavepacket mass={mass} width={width}")));
        }
        Ok(Wavepacket { mass, mean_momentum, width })
    }

    pub fn energy(&self, p: &[f64; 3]) -> f64 {
        (self.mass * self.mass + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
    }

    /// exp(−|p − p̄|²/(4σ²)), without normalization.
    pub fn shape(&self, p: &[f64; 3]) -> f64 {
        let d2: f64 = (0..3).map(|i| (p[i] - self.mean_momentum[i]).powi(2)).sum();
        (-d2 / (4.0 * self.width * self.width)).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss–Hermite nodes per dimension.
    pub nodes: usize,
    /// Re-evaluate with more nodes and fail on relative disagreement above this.
    pub check_rel: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { nodes: 28, check_rel: Some(1e-4) }
    }
}

impl QuadratureConfig {
    fn refined(&self) -> QuadratureConfig {
        QuadratureConfig { nodes: self.nodes + self.nodes / 2, check_rel: None }
    }
}

/// Σ_w f(p̄ + s·x) over the tensor rule, in fixed order.
fn tensor_sum<F: Fn(&[f64; 3]) -> f64 + Sync>(rule: &Rule, center: &[f64; 3], s: f64, f: F) -> f64 {
    let n = rule.nodes.len();
    let partial: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for j in 0..n {
                for k in 0..n {
                    let p = [
                        center[0] + s * rule.nodes[i],
                        center[1] + s * rule.nodes[j],
                        center[2] + s * rule.nodes[k],
                    ];
                    acc += rule.weights[i] * rule.weights[j] * rule.weights[k] * f(&p);
                }
            }
            acc
        })
        .collect();
    partial.iter().sum::<f64>() * s.powi(3)
}

fn checked<F: Fn(&QuadratureConfig) -> Result<f64>>(q: &QuadratureConfig, f: F) -> Result<f64> {
    if q.nodes == 0 {
        return Err(Error::InvalidParameter("quadrature needs nodes".into()));
    }
    let v = f(q)?;
    if let Some(rel) = q.check_rel {
        let w = f(&q.refined())?;
        let scale = v.abs().max(w.abs()).max(1e-300);
        let dis = (v - w).abs() / scale;
        if dis > rel && (v - w).abs() > 1e-12 {
            return Err(Error::Quadrature(dis));
        }
        return Ok(w);
    }
    Ok(v)
}

/// ∫ shape² d³p/(2p₀); the normalization constant is its inverse square root.
fn norm_sq(wp: &Wavepacket, q: &QuadratureConfig) -> Result<f64> {
    let rule = gauss_hermite(q.nodes)?;
    let s = std::f64::consts::SQRT_2 * wp.width;
    // shape² = exp(−|x|²) under p = p̄ + √2σx
    Ok(tensor_sum(&rule, &wp.mean_momentum, s, |p| 1.0 / (2.0 * wp.energy(p))))
}

/// ∫|ψ|² d³p/(2p₀) of the unnormalized shape.
pub fn lorentz_norm_sq(wp: &Wavepacket, q: &QuadratureConfig) -> Result<f64> {
    checked(q, |q| norm_sq(wp, q))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelsonTerms {
    /// ‖|p|∇ψ‖².
    pub gradient: f64,
    /// ‖η(p,∇ψ)‖².
    pub eta: f64,
    pub value: f64,
}

fn terms(wp: &Wavepacket, q: &QuadratureConfig) -> Result<(f64, f64)> {
    let rule = gauss_hermite(q.nodes)?;
    let s = std::f64::consts::SQRT_2 * wp.width;
    let n0 = norm_sq(wp, q)?;
    let s4 = 4.0 * wp.width.powi(4);
    let pb = wp.mean_momentum;
    let grad = tensor_sum(&rule, &pb, s, |p| {
        let p0 = wp.energy(p);
        let d2: f64 = (0..3).map(|i| (p[i] - pb[i]).powi(2)).sum();
        let p2: f64 = p.iter().map(|v| v * v).sum();
        (p0 * p0 + p2) * d2 / s4 / (2.0 * p0)
    });
    let eta = tensor_sum(&rule, &pb, s, |p| {
        let p0 = wp.energy(p);
        let dot: f64 = (0..3).map(|i| p[i] * (p[i] - pb[i])).sum();
        dot * dot / s4 / (2.0 * p0)
    });
    Ok((grad / n0, eta / n0))
}

pub fn lorentz_nelson_terms(wp: &Wavepacket, q: &QuadratureConfig) -> Result<NelsonTerms> {
    let g = checked(q, |q| terms(wp, q).map(|t| t.0))?;
    let e = checked(q, |q| terms(wp, q).map(|t| t.1))?;
    Ok(NelsonTerms { gradient: g, eta: e, value: g - e })
}

/// ⟨ψ, Δψ⟩ for the normalized packet.
pub fn lorentz_nelson_expectation(wp: &Wavepacket, q: &QuadratureConfig) -> Result<f64> {
    let t = lorentz_nelson_terms(wp, q)?;
    if t.value < -1e-6 * t.gradient.max(1.0) {
        return Err(Error::Quadrature(t.value));
    }
    Ok(t.value.max(0.0))
}

fn lorentz_matrix(spec: &GroupSpec, l: &GroupElement) -> Result<DMatrix<f64>> {
    let m = spec.group_membership(l)?;
    if !m.member {
        return Err(Error::Mismatch(format!("not in SO+(1,3) (residual {:e})", m.residual)));
    }
    Ok(real_part(l.matrix().ok_or_else(|| Error::Mismatch("lorentz element".into()))?))
}

fn overlap(wp: &Wavepacket, m: &DMatrix<f64>, q: &QuadratureConfig) -> Result<f64> {
    let rule = gauss_hermite(q.nodes)?;
    // under q = p̄ + √2σx the weight exp(−|x|²) is ψ(q)², so divide one factor out
    let s = std::f64::consts::SQRT_2 * wp.width;
    let n0 = norm_sq(wp, q)?;
    let raw = tensor_sum(&rule, &wp.mean_momentum, s, |p| {
        let v = Vector4::new(wp.energy(p), p[0], p[1], p[2]);
        let w = m.fixed_view::<4, 4>(0, 0) * v;
        wp.shape(&[w[1], w[2], w[3]]) / wp.shape(p) / (2.0 * v[0])
    });
    Ok(raw / n0)
}

/// ‖U_Λψ − U_Λ̃ψ‖ = √(2 − 2∫ψ(q)ψ(Λ̃⁻¹Λq) dμ(q)).
pub fn lorentz_exact_distance(
    spec: &GroupSpec,
    wp: &Wavepacket,
    lam: &GroupElement,
    lam_t: &GroupElement,
    q: &QuadratureConfig,
) -> Result<f64> {
    let a = lorentz_matrix(spec, lam)?;
    let b = lorentz_matrix(spec, lam_t)?;
    let binv = b.clone().try_inverse().ok_or_else(|| Error::Mismatch("singular".into()))?;
    let m = binv * a;
    let ov = checked(q, |q| overlap(wp, &m, q))?;
    Ok((2.0 - 2.0 * ov).max(0.0).sqrt())
}
