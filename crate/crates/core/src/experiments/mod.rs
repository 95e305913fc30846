//! Reproducible experiments: SO(2m) bound comparison, symplectic Trotter
//! bounds, bound sweeps over random elements and a Lorentz demo.

pub mod competitors;
pub mod trotter;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{channel_trace_bound, exact_channel_distance, exact_state_distance, state_bound};
use crate::error::{Error, Result};
use crate::groups::{self, make_group, so_generator, GroupId};
use crate::linalg::{c, expm, CVector, I};
use crate::metric::{distance_best, distance_log_bound};
use crate::nelson::nelson_closed_form;
use crate::reps::lorentz::{lorentz_exact_distance, lorentz_nelson_expectation, QuadratureConfig, Wavepacket};
use crate::reps::{RepKind, Representation};

pub use competitors::{becker_bound, oszmaniec_bound, our_so_bound, our_symplectic_bound, symplectic_prefactor};
pub use trotter::{named_generator, trotter_matrices, trotter_unitaries, trotter_word, TrotterReading};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    SoCompare,
    TrotterCompare,
    BoundSweep,
    LorentzDemo,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::SoCompare => "so_compare",
            ExperimentKind::TrotterCompare => "trotter_compare",
            ExperimentKind::BoundSweep => "bound_sweep",
            ExperimentKind::LorentzDemo => "lorentz_demo",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub m: usize,
    pub twice_j: u32,
    pub n: i64,
    pub mass: f64,
    /// Representation for bound sweeps: spin, flo, displacement, metaplectic or su11.
    pub rep: String,
    pub grid: Vec<f64>,
    pub t: f64,
    pub x: String,
    pub y: String,
    pub energy: f64,
    pub cutoff: usize,
    pub seed: u64,
    pub reading: TrotterReading,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

fn so_grid() -> Vec<f64> {
    (1..=40).map(|k| k as f64 * 0.05).collect()
}

fn trotter_grid() -> Vec<f64> {
    (0..=10).map(|k| (1u64 << k) as f64).collect()
}

impl ExperimentConfig {
    fn base(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            m: 1,
            twice_j: 1,
            n: 0,
            mass: 1.0,
            rep: "spin".into(),
            grid: Vec::new(),
            t: 1.0,
            x: "Omega".into(),
            y: "Omega*sigma_x".into(),
            energy: 2.0,
            cutoff: 32,
            seed: 0,
            reading: TrotterReading::Plain,
            output: None,
        }
    }

    /// m = 2, g = exp(B₂₁), h = exp(B₂₁ + aB₃₁), a = 0.05, …, 2.
    pub fn so_compare() -> Self {
        ExperimentConfig { m: 2, grid: so_grid(), ..Self::base(ExperimentKind::SoCompare) }
    }

    /// m = 1, t = 1, X = Ω, Y = Ωσ_x, E = 2, L = 1, 2, …, 1024.
    pub fn trotter_compare() -> Self {
        ExperimentConfig { grid: trotter_grid(), cutoff: 64, ..Self::base(ExperimentKind::TrotterCompare) }
    }

    pub fn bound_sweep() -> Self {
        ExperimentConfig { grid: vec![0.1, 0.2, 0.4, 0.8, 1.2], ..Self::base(ExperimentKind::BoundSweep) }
    }

    pub fn lorentz_demo() -> Self {
        ExperimentConfig { grid: vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3], ..Self::base(ExperimentKind::LorentzDemo) }
    }

    pub fn default_for(kind: ExperimentKind) -> Self {
        match kind {
            ExperimentKind::SoCompare => Self::so_compare(),
            ExperimentKind::TrotterCompare => Self::trotter_compare(),
            ExperimentKind::BoundSweep => Self::bound_sweep(),
            ExperimentKind::LorentzDemo => Self::lorentz_demo(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::Config("grid is empty".into()));
        }
        if self.grid.iter().any(|v| !v.is_finite()) || self.grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("grid must be finite and strictly increasing".into()));
        }
        match self.experiment {
            ExperimentKind::SoCompare if self.m < 2 => {
                return Err(Error::Config("so_compare needs m ≥ 2".into()));
            }
            ExperimentKind::TrotterCompare => {
                if self.grid.iter().any(|&l| l < 1.0 || l.fract() != 0.0) {
                    return Err(Error::Config("Trotter steps must be positive integers".into()));
                }
                if self.m < 1 {
                    return Err(Error::Config("m must be at least 1".into()));
                }
            }
            ExperimentKind::BoundSweep => {
                let kind = self.rep_kind()?;
                if matches!(kind, RepKind::Displacement { .. } | RepKind::Metaplectic { .. } | RepKind::Su11Sector { .. })
                    && self.cutoff < 16
                {
                    return Err(Error::Config("cutoff must be at least 16 for bosonic experiments".into()));
                }
                if self.grid[0] < 0.0 {
                    return Err(Error::Config("scales must be nonnegative".into()));
                }
            }
            ExperimentKind::LorentzDemo if !(self.mass > 0.0) => {
                return Err(Error::Config("mass must be positive".into()));
            }
            _ => {}
        }
        if !(self.energy >= 0.0) || !self.t.is_finite() {
            return Err(Error::Config("energy must be nonnegative and t finite".into()));
        }
        Ok(())
    }

    pub fn rep_kind(&self) -> Result<RepKind> {
        let (m, cutoff) = (self.m, self.cutoff);
        Ok(match self.rep.as_str() {
            "spin" => RepKind::Spin { twice_j: self.twice_j },
            "flo" => RepKind::Flo { m },
            "displacement" => RepKind::Displacement { m, cutoff },
            "metaplectic" => RepKind::Metaplectic { m, cutoff },
            "su11" => RepKind::Su11Sector { n: self.n, cutoff },
            other => return Err(Error::Config(format!("unknown representation '{other}'"))),
        })
    }

    /// SHA-256 of the serialized configuration (output path excluded).
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub provenance: String,
}

impl ResultTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        writeln!(out, "# {}", self.provenance).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    /// Rows where an exact column exceeds its bound column by more than `tol`.
    pub fn soundness_violations(&self, tol: f64) -> usize {
        let pairs = [("exact_state", "state_bound"), ("exact_channel", "channel_bound"), ("exact", "bound")];
        pairs
            .iter()
            .filter_map(|(e, b)| Some((self.column(e)?, self.column(b)?)))
            .map(|(e, b)| e.iter().zip(&b).filter(|(x, y)| **x > **y + tol).count())
            .sum()
    }
}

/// Least-squares slope of log y against log x over the second half of the rows.
pub fn fit_loglog_slope(table: &ResultTable, x_col: &str, y_col: &str) -> Result<f64> {
    let xs = table.column(x_col).ok_or_else(|| Error::Config(format!("no column {x_col}")))?;
    let ys = table.column(y_col).ok_or_else(|| Error::Config(format!("no column {y_col}")))?;
    if xs.len() < 4 {
        return Err(Error::InvalidParameter("slope fit needs at least 4 rows".into()));
    }
    if xs.iter().chain(&ys).any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidParameter("slope fit needs positive data".into()));
    }
    let start = xs.len() / 2;
    let pts: Vec<(f64, f64)> = xs[start..].iter().zip(&ys[start..]).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Runs the experiment, writing the CSV when an output path is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let (columns, rows) = match config.experiment {
        ExperimentKind::SoCompare => so_compare(config)?,
        ExperimentKind::TrotterCompare => trotter_compare(config)?,
        ExperimentKind::BoundSweep => bound_sweep(config)?,
        ExperimentKind::LorentzDemo => lorentz_demo(config)?,
    };
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let table = ResultTable {
        columns: columns.into_iter().map(String::from).collect(),
        rows,
        provenance: format!(
            "lie-bounds {} experiment={} config_sha256={} seed={}",
            env!("CARGO_PKG_VERSION"),
            config.experiment.as_str(),
            config.hash(),
            config.seed
        ),
    };
    if let Some(path) = &config.output {
        table.write_csv(path)?;
    }
    Ok(table)
}

type Rows = (Vec<&'static str>, Vec<Vec<f64>>);

fn so_compare(cfg: &ExperimentConfig) -> Result<Rows> {
    let m = cfg.m;
    let spec = make_group(GroupId::So2m(m))?;
    let b21 = so_generator(m, 2, 1)?;
    let b31 = so_generator(m, 3, 1)?;
    let g = expm(&b21)?;
    let rows = cfg
        .grid
        .par_iter()
        .map(|&a| -> Result<Vec<f64>> {
            let h = expm(&(&b21 + &b31 * c(a)))?;
            Ok(vec![a, our_so_bound(m, &g, &h)?, oszmaniec_bound(&spec, &g, &h)?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vec!["a", "ours", "oszmaniec"], rows))
}

fn trotter_compare(cfg: &ExperimentConfig) -> Result<Rows> {
    let m = cfg.m;
    let x = named_generator(&cfg.x, m)?;
    let y = named_generator(&cfg.y, m)?;
    let plain = cfg.reading == TrotterReading::Plain;
    let spec = make_group(GroupId::Sp2m(m))?;
    let rows = cfg
        .grid
        .par_iter()
        .map(|&l| -> Result<Vec<f64>> {
            let steps = l as usize;
            let (g, h) = trotter_matrices(cfg.t, steps, &x, &y, cfg.reading)?;
            let mut row = vec![l, our_symplectic_bound(&g, &h, m, cfg.energy)?, becker_bound(&g, &h, m, cfg.energy)?];
            if plain {
                let (gw, hw) = trotter_word(&spec, cfg.t, steps, &x, &y)?;
                let d = distance_best(&spec, &spec.exp_word(&gw)?, &spec.exp_word(&hw)?)?;
                row.push(symplectic_prefactor(m, cfg.energy) * d.value);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cols = vec!["L", "ours", "becker"];
    if plain {
        cols.push("ours_metric");
    }
    Ok((cols, rows))
}

/// Random normalized state on the lower part of the trusted block.
pub fn random_state(rep: &Representation, rng: &mut ChaCha8Rng) -> Result<CVector> {
    let idx = match rep.kind {
        RepKind::Displacement { cutoff, .. } | RepKind::Metaplectic { cutoff, .. } | RepKind::Su11Sector { cutoff, .. } => {
            rep.low_block(cutoff / 4)
        }
        _ => rep.valid_block(),
    };
    let mut v = CVector::zeros(rep.dim()?);
    for &i in &idx {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        v[i] = c(re) + I * im;
    }
    Ok(v.normalize())
}

fn bound_sweep(cfg: &ExperimentConfig) -> Result<Rows> {
    let rep = Representation::new(cfg.rep_kind()?)?;
    let k = nelson_closed_form(&rep)?;
    let rows = cfg
        .grid
        .par_iter()
        .enumerate()
        .map(|(i, &a)| -> Result<Vec<f64>> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
            let g = groups::random_word(&rep.group, 0.5, 1, &mut rng)?.word;
            let step = groups::algebra_element_rng(&rep.group, a, &mut rng)?;
            let mut h = g.clone();
            h.push(step);
            let psi = random_state(&rep, &mut rng)?;
            let sb = state_bound(&rep, &g, &h, &psi, &k)?;
            let cb = channel_trace_bound(&rep, &g, &h, &psi, &k)?;
            Ok(vec![
                a,
                sb.bound_value,
                exact_state_distance(&rep, &g, &h, &psi)?,
                cb.bound_value,
                exact_channel_distance(&rep, &g, &h, &psi)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vec!["a", "state_bound", "exact_state", "channel_bound", "exact_channel"], rows))
}

/// Boost along z by rapidity a·√2 (unit algebra norm a) on a packet with mean momentum (0, 0, 0.5).
fn lorentz_demo(cfg: &ExperimentConfig) -> Result<Rows> {
    let spec = make_group(GroupId::Lorentz)?;
    let wp = Wavepacket::new(cfg.mass, [0.0, 0.0, 0.5], 0.5)?;
    let q = QuadratureConfig::default();
    let energy = lorentz_nelson_expectation(&wp, &q)?.sqrt();
    let boost = spec.basis[5].clone();
    let one = spec.identity();
    let rows = cfg
        .grid
        .iter()
        .map(|&a| -> Result<Vec<f64>> {
            let lam = spec.exp(&boost.scale(a))?;
            let d = distance_log_bound(&spec, &lam, &one)?;
            Ok(vec![a, energy * d.value, lorentz_exact_distance(&spec, &wp, &lam, &one, &q)?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vec!["a", "bound", "exact"], rows))
}
