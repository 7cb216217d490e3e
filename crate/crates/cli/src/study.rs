use gjf_core::solvers::{
    error_norms_with, solve, ErrorNorm, ErrorOptions, Kind, ProblemSpec, Reference, SchemeParams, SpectralSolution,
};
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, StudyConfig};
use crate::rate::pair_rate;
use crate::registry::{self, Resolved};

#[derive(Debug, Error)]
pub enum StudyError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("ν = {nu}, N = {n}: {source}")]
    Numerical {
        nu: f64,
        n: usize,
        source: gjf_core::Error,
    },
}

impl StudyError {
    /// Process exit status: 2 for configuration problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            StudyError::Config(_) => 2,
            StudyError::Numerical { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub kind: String,
    pub nu: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub error_l2: Option<f64>,
    pub error_frac: Option<f64>,
    /// Observed rate against the previous row of the same sweep.
    pub rate_frac: Option<f64>,
}

/// What the errors of one sweep are measured against.
enum Target {
    Exact { n_exact: usize },
    Spectral(SpectralSolution),
}

struct Sweep {
    params: SchemeParams,
    resolved: Resolved,
    target: Target,
}

fn numerical(nu: f64, n: usize) -> impl Fn(gjf_core::Error) -> StudyError {
    move |source| StudyError::Numerical { nu, n, source }
}

fn prepare(cfg: &StudyConfig, kind: Kind, nu: f64) -> Result<Sweep, StudyError> {
    let params = SchemeParams::new(kind, nu).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    let entry = registry::lookup(&cfg.rhs).ok_or_else(|| ConfigError::UnknownRhs(cfg.rhs.clone()))?;
    let n_max = cfg.n_list.iter().copied().max().unwrap_or(0);
    let resolved = registry::resolve(entry, &params).map_err(numerical(nu, n_max))?;
    let target = if resolved.exact.is_some() {
        Target::Exact { n_exact: 8 * n_max }
    } else {
        let n_ref = cfg.n_ref();
        let spec = ProblemSpec {
            quad_extra: cfg.quad_extra,
            ..ProblemSpec::new(kind, nu, n_ref, resolved.rhs.as_ref())
        };
        Target::Spectral(solve(&spec).map_err(numerical(nu, n_ref))?)
    };
    Ok(Sweep {
        params,
        resolved,
        target,
    })
}

fn run_cell(cfg: &StudyConfig, sweep: &Sweep, n: usize) -> Result<(SpectralSolution, StudyRow), StudyError> {
    let nu = sweep.params.nu;
    let spec = ProblemSpec {
        quad_extra: cfg.quad_extra,
        ..ProblemSpec::new(sweep.params.kind, nu, n, sweep.resolved.rhs.as_ref())
    };
    let sol = solve(&spec).map_err(numerical(nu, n))?;
    let (reference, opts) = match (&sweep.target, &sweep.resolved.exact) {
        (Target::Exact { n_exact }, Some((u, image))) => (
            Reference::Exact { u, image },
            ErrorOptions {
                n_exact: Some((*n_exact).max(256)),
                quad_extra: cfg.quad_extra,
                ..Default::default()
            },
        ),
        (Target::Spectral(r), _) => (Reference::Spectral(r), ErrorOptions::default()),
        (Target::Exact { .. }, None) => unreachable!("exact target without a solution"),
    };
    let measure = |which| error_norms_with(&sol, reference, which, &opts).map_err(numerical(nu, n));
    let error_l2 = if cfg.wants_l2() { Some(measure(ErrorNorm::L2)?) } else { None };
    let error_frac = if cfg.wants_frac() {
        Some(measure(ErrorNorm::FracEnergy)?)
    } else {
        None
    };
    let row = StudyRow {
        kind: cfg.kind.clone(),
        nu,
        n,
        error_l2,
        error_frac,
        rate_frac: None,
    };
    Ok((sol, row))
}

/// Solves every `(ν, N)` cell and returns the rows ordered by `ν`, then `N`.
///
/// Cells run on scoped threads; the result does not depend on scheduling.
pub fn run_study(cfg: &StudyConfig) -> Result<Vec<StudyRow>, StudyError> {
    cfg.validate()?;
    let kind = cfg.kind()?;
    let nus = cfg.nu.values();
    let sweeps: Vec<Sweep> = std::thread::scope(|scope| {
        let handles: Vec<_> = nus.iter().map(|&nu| scope.spawn(move || prepare(cfg, kind, nu))).collect();
        handles.into_iter().map(|h| h.join().expect("sweep thread panicked")).collect::<Vec<_>>()
    })
    .into_iter()
    .collect::<Result<_, _>>()?;

    let cells: Vec<Result<StudyRow, StudyError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sweeps
            .iter()
            .flat_map(|sw| cfg.n_list.iter().map(move |&n| (sw, n)))
            .map(|(sw, n)| scope.spawn(move || run_cell(cfg, sw, n).map(|(_, row)| row)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("cell thread panicked")).collect()
    });
    let mut rows = cells.into_iter().collect::<Result<Vec<_>, _>>()?;
    for sweep in rows.chunks_mut(cfg.n_list.len()) {
        for i in 1..sweep.len() {
            sweep[i].rate_frac = match (sweep[i - 1].error_frac, sweep[i].error_frac) {
                (Some(a), Some(b)) => pair_rate((sweep[i - 1].n, a), (sweep[i].n, b)),
                _ => None,
            };
        }
    }
    Ok(rows)
}

/// One solve with its error row, for the `solve` subcommand.
pub fn solve_single(cfg: &StudyConfig) -> Result<(SpectralSolution, StudyRow), StudyError> {
    cfg.validate()?;
    let kind = cfg.kind()?;
    let nu = cfg.nu.values()[0];
    let n = cfg.n_list[0];
    let sweep = prepare(cfg, kind, nu)?;
    run_cell(cfg, &sweep, n)
}
