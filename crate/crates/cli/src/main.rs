//! `liebounds`: metrics, Nelson Laplacians, bounds and the two comparison
//! experiments from the command line.

mod config;

/// stdout writes that end the process quietly once the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => { write_stdout(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { write_stdout(format_args!("{}\n", format_args!($($t)*))) };
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lie_bounds::bounds::{
    channel_trace_bound, ecd_bound, ecd_pure_state_sup, exact_channel_distance, exact_diamond_unitary,
    exact_state_distance, state_bound, BoundReport, SupOptions,
};
use lie_bounds::experiments::{run_experiment, ExperimentConfig, ExperimentKind, ResultTable, TrotterReading};
use lie_bounds::groups::{make_group_with, AlgebraElement, GroupId, GroupSpec, Su2Convention};
use lie_bounds::linalg::{c, eig_hermitian, CVector, Tolerance};
use lie_bounds::metric::{distance_best, distance_closed_form, distance_log_bound, distance_refined, RefineOptions};
use lie_bounds::nelson::{improved_k, nelson_basis_sum, nelson_closed_form, number_operator, EnergyOperator};
use lie_bounds::reps::boson::fock_state;
use lie_bounds::reps::{parse_state, RepKind, Representation};
use lie_bounds::Error;

#[derive(Parser, Debug)]
#[command(name = "liebounds", version, about = "Error bounds for Lie group representations")]
struct Cli {
    /// Flat `key = value` file supplying any flag; the command line takes precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Distance d(g,h) with its witness decomposition.
    #[command(args_override_self = true)]
    Metric(MetricArgs),
    /// Spectrum of a Nelson Laplacian or energy operator as CSV.
    #[command(args_override_self = true)]
    Nelson(NelsonArgs),
    /// State, channel or ECD bound with its exact oracle.
    #[command(args_override_self = true)]
    Bound(BoundArgs),
    /// SO(2m) comparison against the 2m‖g−h‖ bound.
    #[command(name = "so-compare", args_override_self = true)]
    SoCompare(SoArgs),
    /// Symplectic Trotter comparison.
    #[command(args_override_self = true)]
    Trotter(TrotterArgs),
    /// Scalar Lorentz representation: boosts of a Gaussian packet.
    #[command(args_override_self = true)]
    Lorentz(LorentzArgs),
}

#[derive(Args, Debug)]
struct RepArgs {
    /// spin, flo, displacement, metaplectic, su11 or lorentz.
    #[arg(long, default_value = "spin")]
    rep: String,
    #[arg(long, default_value_t = 0.5)]
    j: f64,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// SU(1,1) sector label.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, default_value_t = 32)]
    cutoff: usize,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    Best,
    Closed,
    Log,
    Refined,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Convention {
    Normalized,
    Frobenius,
}

#[derive(Args, Debug)]
struct MetricArgs {
    /// su2, so2m, sp2m, su11, lorentz or heisenberg.
    #[arg(long, default_value = "su2")]
    group: String,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, value_enum, default_value_t = Convention::Normalized)]
    su2_convention: Convention,
    /// Word for g: factors separated by ';', each a comma list of orthonormal coordinates.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    g: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    h: String,
    #[arg(long, value_enum, default_value_t = Method::Best)]
    method: Method,
    #[arg(long, default_value_t = 8)]
    segments: usize,
    #[arg(long, default_value_t = 6)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum EnergyKindArg {
    Basis,
    Closed,
    Improved,
    Number,
}

#[derive(Args, Debug)]
struct NelsonArgs {
    #[command(flatten)]
    rep: RepArgs,
    #[arg(long, value_enum, default_value_t = EnergyKindArg::Closed)]
    kind: EnergyKindArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BoundKind {
    State,
    Channel,
    Ecd,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    rep: RepArgs,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    g: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    h: String,
    /// State file, one "re im" amplitude per line.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Fock occupations for bosonic reps, e.g. "2" or "1,0"; otherwise a basis index.
    #[arg(long)]
    fock: Option<String>,
    #[arg(long, value_enum, default_value_t = BoundKind::State)]
    kind: BoundKind,
    #[arg(long, value_enum, default_value_t = EnergyKindArg::Closed)]
    energy_op: EnergyKindArg,
    /// Energy budget E for ECD bounds.
    #[arg(long)]
    energy: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Sweep random pairs over these scales instead of a single pair.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SoArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Comma list or `start:stop:step`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TrotterArgs {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value = "Omega")]
    x: String,
    #[arg(long, default_value = "Omega*sigma_x")]
    y: String,
    #[arg(long, default_value_t = 2.0)]
    energy: f64,
    #[arg(long)]
    grid: Option<String>,
    /// plain or omega.
    #[arg(long, default_value = "plain")]
    reading: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LorentzArgs {
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Soundness(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonFinite
        | Error::Overflow(_)
        | Error::BranchFailure(_)
        | Error::InvalidLog(_)
        | Error::NoDecomposition(_)
        | Error::Quadrature(_)
        | Error::NotHermitian(_)
        | Error::NotUnitary(_) => 3,
        _ => 2,
    }
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let bad = |what: &str| Error::Config(format!("grid '{s}': {what}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad("not a number"))?;
        let (a, b, step) = (v[0], v[1], v[2]);
        if !(step > 0.0) || b < a {
            return Err(bad("need start ≤ stop and step > 0"));
        }
        let n = ((b - a) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|k| a + k as f64 * step).collect());
    }
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect()
}

fn parse_word(spec: &GroupSpec, s: &str) -> Result<Vec<AlgebraElement>, Error> {
    s.split(';')
        .filter(|f| !f.trim().is_empty())
        .map(|f| {
            let v: Vec<f64> = f
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::Config(format!("word factor '{f}': {e}")))?;
            if v.len() != spec.dim() {
                return Err(Error::Config(format!("factor has {} coordinates, {} needs {}", v.len(), spec.id, spec.dim())));
            }
            spec.from_coords(&v)
        })
        .collect()
}

fn rep_kind(a: &RepArgs) -> Result<RepKind, Error> {
    let twice_j = (2.0 * a.j).round();
    Ok(match a.rep.as_str() {
        "spin" => {
            if !(twice_j >= 1.0) || (2.0 * a.j - twice_j).abs() > 1e-12 {
                return Err(Error::Config(format!("j = {} is not a positive half-integer", a.j)));
            }
            RepKind::Spin { twice_j: twice_j as u32 }
        }
        "flo" => RepKind::Flo { m: a.m },
        "displacement" => RepKind::Displacement { m: a.m, cutoff: a.cutoff },
        "metaplectic" => RepKind::Metaplectic { m: a.m, cutoff: a.cutoff },
        "su11" => RepKind::Su11Sector { n: a.n, cutoff: a.cutoff },
        "lorentz" => RepKind::LorentzScalar { mass: a.mass },
        other => return Err(Error::Unknown(other.into())),
    })
}

fn energy_op(rep: &Representation, k: EnergyKindArg) -> Result<EnergyOperator, Error> {
    match k {
        EnergyKindArg::Basis => nelson_basis_sum(rep),
        EnergyKindArg::Closed => nelson_closed_form(rep),
        EnergyKindArg::Improved => improved_k(rep),
        EnergyKindArg::Number => number_operator(rep),
    }
}

fn emit(table: &ResultTable, out: &Option<PathBuf>) -> Res<()> {
    match out {
        Some(p) => table.write_csv(p)?,
        None => out!("{}", table.to_csv()),
    }
    Ok(())
}

fn cmd_metric(a: &MetricArgs) -> Res<()> {
    let conv = match a.su2_convention {
        Convention::Normalized => Su2Convention::Normalized,
        Convention::Frobenius => Su2Convention::Frobenius,
    };
    let spec = make_group_with(GroupId::parse(&a.group, a.m)?, conv)?;
    let g = spec.exp_word(&parse_word(&spec, &a.g)?)?;
    let h = spec.exp_word(&parse_word(&spec, &a.h)?)?;
    let r = match a.method {
        Method::Best => distance_best(&spec, &g, &h)?,
        Method::Closed => distance_closed_form(&spec, &g, &h)?,
        Method::Log => distance_log_bound(&spec, &g, &h)?,
        Method::Refined => {
            distance_refined(&spec, &g, &h, &RefineOptions { segments: a.segments, iters: a.iters, seed: a.seed })?
        }
    };
    outln!("group={}", spec.id);
    outln!("inner_product={}", spec.inner_tag);
    outln!("value={:.16e}", r.value);
    outln!("kind={}", r.kind.as_str());
    outln!("certified_exact={}", r.certified_exact);
    outln!("local_regime={}", r.local_regime);
    outln!("factors={}", r.decomposition.len());
    outln!("witness_residual={:.3e}", r.witness_residual(&spec, &g, &h)?);
    Ok(())
}

fn cmd_nelson(a: &NelsonArgs) -> Res<()> {
    let rep = Representation::new(rep_kind(&a.rep)?)?;
    let k = energy_op(&rep, a.kind)?;
    let idx = rep.valid_block();
    let values: Vec<f64> = match k.diagonal() {
        Some(d) => {
            let mut v: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
            v.sort_by(f64::total_cmp);
            v
        }
        None => eig_hermitian(&k.block(&idx), &Tolerance::new(1e-10, 1e-12)?)?.values.iter().cloned().collect(),
    };
    let table = ResultTable {
        columns: vec!["index".into(), "eigenvalue".into()],
        rows: values.iter().enumerate().map(|(i, &v)| vec![i as f64, v]).collect(),
        provenance: format!("lie-bounds {} rep={} operator={:?} block={}", env!("CARGO_PKG_VERSION"), rep.kind, k.kind, idx.len()),
    };
    emit(&table, &a.out)
}

fn load_state(rep: &Representation, a: &BoundArgs) -> Result<CVector, Error> {
    let dim = rep.dim()?;
    if let Some(p) = &a.state {
        return parse_state(&fs::read_to_string(p)?);
    }
    let spec = a.fock.as_deref().unwrap_or("0");
    let occ: Vec<usize> = spec
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Config(format!("fock '{spec}': {e}")))?;
    match rep.kind {
        RepKind::Displacement { m, cutoff } | RepKind::Metaplectic { m, cutoff } if occ.len() == m => {
            if occ.iter().any(|&n| n >= cutoff) {
                return Err(Error::Config(format!("occupation above cutoff {cutoff}")));
            }
            Ok(fock_state(&occ, cutoff))
        }
        _ if occ.len() == 1 && occ[0] < dim => {
            let mut v = CVector::zeros(dim);
            v[occ[0]] = c(1.0);
            Ok(v)
        }
        _ => Err(Error::Config(format!("fock '{spec}' does not fit {}", rep.kind))),
    }
}

fn report(r: &BoundReport, fmt: Format) {
    match fmt {
        Format::Json => outln!("{}", r.to_json()),
        Format::Csv => outln!("{}\n{}", BoundReport::CSV_HEADER, r.csv_row()),
    }
}

fn cmd_bound(a: &BoundArgs) -> Res<()> {
    let kind = rep_kind(&a.rep)?;
    if let Some(grid) = &a.grid {
        let mut cfg = ExperimentConfig::bound_sweep();
        cfg.rep = a.rep.rep.clone();
        cfg.twice_j = (2.0 * a.rep.j).round() as u32;
        cfg.m = a.rep.m;
        cfg.n = a.rep.n;
        cfg.cutoff = a.rep.cutoff;
        cfg.grid = parse_grid(grid)?;
        cfg.seed = a.seed;
        cfg.output = a.out.clone();
        let t = run_experiment(&cfg)?;
        if a.out.is_none() {
            out!("{}", t.to_csv());
        }
        let bad = t.soundness_violations(1e-7);
        if bad > 0 {
            return Err(Failure::Soundness(format!("{bad} rows exceed their bound")));
        }
        return Ok(());
    }
    let rep = Representation::new(kind)?;
    let g = parse_word(&rep.group, &a.g)?;
    let h = parse_word(&rep.group, &a.h)?;
    let k = energy_op(&rep, a.energy_op)?;
    let (r, tol) = match a.kind {
        BoundKind::State => {
            let psi = load_state(&rep, a)?;
            let r = state_bound(&rep, &g, &h, &psi, &k)?;
            (r.with_oracle(exact_state_distance(&rep, &g, &h, &psi)?), 1e-7)
        }
        BoundKind::Channel => {
            let psi = load_state(&rep, a)?;
            let r = channel_trace_bound(&rep, &g, &h, &psi, &k)?;
            (r.with_oracle(exact_channel_distance(&rep, &g, &h, &psi)?), 1e-7)
        }
        BoundKind::Ecd => {
            let budget = a.energy.ok_or_else(|| Error::Config("--energy is required for ECD bounds".into()))?;
            let r = ecd_bound(&rep, &g, &h, budget, &k)?;
            let oracle = match k.scalar() {
                Some(_) => exact_diamond_unitary(&rep.unitary(&g)?, &rep.unitary(&h)?)?,
                None => {
                    let sup = ecd_pure_state_sup(&rep, &g, &h, &k, budget, &SupOptions { seed: a.seed, ..Default::default() })?;
                    if sup.warning {
                        eprintln!("warning: pure-state optimizer did not converge");
                    }
                    sup.value
                }
            };
            (r.with_oracle(oracle), 1e-6)
        }
    };
    report(&r, a.format);
    if r.slack.is_some_and(|s| s < -tol) {
        return Err(Failure::Soundness(format!("oracle exceeds bound by {:e}", -r.slack.unwrap())));
    }
    Ok(())
}

fn run(cfg: ExperimentConfig, out: &Option<PathBuf>) -> Res<()> {
    let t = run_experiment(&cfg)?;
    if out.is_none() {
        out!("{}", t.to_csv());
    }
    let bad = t.soundness_violations(1e-7);
    if bad > 0 {
        return Err(Failure::Soundness(format!("{bad} rows exceed their bound")));
    }
    Ok(())
}

fn write_stdout(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn dispatch(cli: Cli) -> Res<()> {
    match cli.cmd {
        Cmd::Metric(a) => cmd_metric(&a),
        Cmd::Nelson(a) => cmd_nelson(&a),
        Cmd::Bound(a) => cmd_bound(&a),
        Cmd::SoCompare(a) => {
            let mut cfg = ExperimentConfig::default_for(ExperimentKind::SoCompare);
            cfg.m = a.m;
            cfg.seed = a.seed;
            if let Some(g) = &a.grid {
                cfg.grid = parse_grid(g)?;
            }
            cfg.output = a.out.clone();
            run(cfg, &a.out)
        }
        Cmd::Trotter(a) => {
            let mut cfg = ExperimentConfig::default_for(ExperimentKind::TrotterCompare);
            cfg.m = a.m;
            cfg.t = a.t;
            cfg.x = a.x.clone();
            cfg.y = a.y.clone();
            cfg.energy = a.energy;
            cfg.reading = TrotterReading::parse(&a.reading)?;
            cfg.seed = a.seed;
            if let Some(g) = &a.grid {
                cfg.grid = parse_grid(g)?;
            }
            cfg.output = a.out.clone();
            run(cfg, &a.out)
        }
        Cmd::Lorentz(a) => {
            let mut cfg = ExperimentConfig::default_for(ExperimentKind::LorentzDemo);
            cfg.mass = a.mass;
            cfg.seed = a.seed;
            if let Some(g) = &a.grid {
                cfg.grid = parse_grid(g)?;
            }
            cfg.output = a.out.clone();
            run(cfg, &a.out)
        }
    }
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("config: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Soundness(msg)) => {
            eprintln!("soundness violation: {msg}");
            ExitCode::from(4)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1,2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        let g = parse_grid("0.05:2.0:0.05").unwrap();
        assert_eq!(g.len(), 40);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::NoDecomposition(3)), 3);
        assert_eq!(exit_code(&Error::LocalRegimeViolation(2.0)), 2);
    }
}
