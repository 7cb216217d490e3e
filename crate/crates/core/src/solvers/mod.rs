//! GJF-Petrov-Galerkin solvers with diagonal linear systems.
//!
//! All four problems are written as `D₊^ν u = f` on `(-1, 1)`:
//!
//! | kind | order | trial | test | conditions |
//! |---|---|---|---|---|
//! | [`Kind::Fivp`] | `s ∈ (k-1,k)` | `⁺J_n^{(-s,-s)}`, `0 ≤ n ≤ N` | `P_n` | `u^{(l)}(1) = 0, l < k` |
//! | [`Kind::FbvpIntegral2`] | `2-μ` | `⁺J_n^{(μ-1,μ-1)}`, `1 ≤ n < N` | `I₊¹P_n` | `I₊^μ u(±1) = 0` |
//! | [`Kind::FbvpIntegral3`] | `3-μ` | `⁺J_n^{(μ-2,μ-1)}`, `1 ≤ n ≤ N-2` | `⁻J_n^{(-1,-2)}` | `I₊^μ u(±1) = (I₊^μ u)'(1) = 0` |
//! | [`Kind::FbvpDirichlet`] | `s+k` | `⁺J_n^{(-s,-k)}`, `k ≤ n ≤ N` | `⁻J_n^{(-k,-s)}` | `u^{(l)}(±1) = 0, l < k` |
//!
//! In every case the weak form reads `(D₊^σ u_N, D^j ψ) = (f, ψ)` where `σ`
//! is the trial prefactor exponent and `j` the integer order carried by the
//! test family. The trial images `D₊^σ φ_n` are multiples of `P_n^{(0,c)}`
//! and the test images `D^j ψ_m` are multiples of `ω^{(0,c)} P_m^{(0,c)}`, so
//! the system is diagonal.

mod exact;
mod norms;

pub use exact::PowerSeries;
pub use norms::{error_norms, error_norms_with, ErrorNorm, ErrorOptions, Reference};

use crate::error::{inadmissible, Error, Result};
use crate::function::RealFn;
use crate::gjf::{gjf_rl_deriv, jacobi_moments, CoeffVector, Family, GjfLabel, Side};
use crate::jacobi::{gauss_jacobi_rule, jacobi_negint_factorize, jacobi_norm_gamma, JacobiParam};
use crate::specfun::gamma_ratio;

const INTEGER_TOL: f64 = 1e-12;
/// Relative change allowed when the right-hand side rule is doubled.
const RHS_REFINE_TOL: f64 = 1e-8;

/// The four problem classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Fivp,
    FbvpIntegral2,
    FbvpIntegral3,
    FbvpDirichlet,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Fivp, Kind::FbvpIntegral2, Kind::FbvpIntegral3, Kind::FbvpDirichlet];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Fivp => "fivp",
            Kind::FbvpIntegral2 => "fbvp-int2",
            Kind::FbvpIntegral3 => "fbvp-int3",
            Kind::FbvpDirichlet => "fbvp-dirichlet",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// One problem instance.
#[derive(Clone, Copy)]
pub struct ProblemSpec<'a> {
    pub kind: Kind,
    pub nu: f64,
    /// Truncation `N`.
    pub n: usize,
    pub rhs: &'a dyn RealFn,
    /// Quadrature points beyond `N` for the right-hand side.
    pub quad_extra: usize,
}

impl<'a> ProblemSpec<'a> {
    pub fn new(kind: Kind, nu: f64, n: usize, rhs: &'a dyn RealFn) -> Self {
        ProblemSpec {
            kind,
            nu,
            n,
            rhs,
            quad_extra: 16,
        }
    }

    /// Derived parameters, checked against the admissible order range.
    pub fn params(&self) -> Result<SchemeParams> {
        SchemeParams::new(self.kind, self.nu)
    }
}

impl std::fmt::Debug for ProblemSpec<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("kind", &self.kind)
            .field("nu", &self.nu)
            .field("n", &self.n)
            .field("quad_extra", &self.quad_extra)
            .finish_non_exhaustive()
    }
}

/// `s`, `k` and `μ` as they apply to each kind, plus the trial parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub kind: Kind,
    pub nu: f64,
    /// Fractional part of the scheme: `s` for FIVP and Dirichlet, `μ` for the integral kinds.
    pub s: f64,
    pub k: usize,
    /// Trial family `⁺J^{(-a,b)}` as Jacobi parameters `(a, b)`.
    pub trial_alpha: f64,
    pub trial_beta: f64,
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < INTEGER_TOL
}

impl SchemeParams {
    pub fn new(kind: Kind, nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 || is_integer(nu) {
            return Err(inadmissible(format!("order ν = {nu} must be positive and non-integer")));
        }
        let p = match kind {
            Kind::Fivp => {
                let k = nu.ceil() as usize;
                SchemeParams { kind, nu, s: nu, k, trial_alpha: nu, trial_beta: -nu }
            }
            Kind::FbvpIntegral2 => {
                if !(nu > 1.0 && nu < 2.0) {
                    return Err(inadmissible(format!("integral-condition problem needs ν ∈ (1,2), got {nu}")));
                }
                let mu = 2.0 - nu;
                SchemeParams { kind, nu, s: mu, k: 1, trial_alpha: 1.0 - mu, trial_beta: mu - 1.0 }
            }
            Kind::FbvpIntegral3 => {
                if !(nu > 2.0 && nu < 3.0) {
                    return Err(inadmissible(format!("third-order integral-condition problem needs ν ∈ (2,3), got {nu}")));
                }
                let mu = 3.0 - nu;
                SchemeParams { kind, nu, s: mu, k: 1, trial_alpha: 2.0 - mu, trial_beta: mu - 1.0 }
            }
            Kind::FbvpDirichlet => {
                let k = (nu / 2.0).ceil() as usize;
                let s = nu - k as f64;
                if !(s > k as f64 - 1.0 && s < k as f64) {
                    return Err(inadmissible(format!(
                        "Dirichlet problem needs ν = s+k with s ∈ (k-1,k), got ν = {nu}"
                    )));
                }
                SchemeParams { kind, nu, s, k, trial_alpha: s, trial_beta: -(k as f64) }
            }
        };
        Ok(p)
    }

    /// Order `σ` of the trial-side fractional derivative in the weak form.
    pub fn sigma(&self) -> f64 {
        self.trial_alpha
    }

    /// `c` such that the trial images are `P_n^{(0,c)}`.
    pub fn image_beta(&self) -> f64 {
        self.trial_alpha + self.trial_beta
    }

    /// First and last trial degree for truncation `N`.
    pub fn degree_range(&self, n: usize) -> Result<(usize, usize)> {
        let (lo, hi) = match self.kind {
            Kind::Fivp => (0, n as isize),
            Kind::FbvpIntegral2 => (1, n as isize - 1),
            Kind::FbvpIntegral3 => (1, n as isize - 2),
            Kind::FbvpDirichlet => (self.k, n as isize),
        };
        if hi < lo as isize {
            return Err(inadmissible(format!("truncation {n} leaves no unknowns for {:?}", self.kind)));
        }
        Ok((lo, hi as usize))
    }

    pub fn trial_label(&self, n: usize) -> Result<GjfLabel> {
        GjfLabel::plus(self.trial_alpha, self.trial_beta, n)
    }

    /// Test function of degree `m` as a GJF label, and the integer order of
    /// its derivative in the weak form.
    pub fn test_label(&self, m: usize) -> Result<(GjfLabel, f64, usize)> {
        match self.kind {
            Kind::Fivp => Ok((GjfLabel::plus(0.0, 0.0, m)?, 1.0, 0)),
            Kind::FbvpIntegral2 => {
                // I₊¹ P_m = ⁺J_m^{(-1,-1)} / (m+1)
                Ok((GjfLabel::plus(1.0, -1.0, m)?, 1.0 / (m as f64 + 1.0), 1))
            }
            Kind::FbvpIntegral3 => Ok((GjfLabel::minus(-1.0, 2.0, m)?, 1.0, 1)),
            Kind::FbvpDirichlet => Ok((GjfLabel::minus(-(self.k as f64), self.s, m)?, 1.0, self.k)),
        }
    }

    /// Test function of degree `m` written as `c_m ω^{(a,b)} P_{m-shift}^{(a,b)}`.
    /// Returns `(c_m, (a, b), shift)`.
    fn test_factorized(&self, m: usize) -> Result<(f64, JacobiParam, usize)> {
        match self.kind {
            Kind::Fivp => Ok((1.0, JacobiParam::LEGENDRE, 0)),
            Kind::FbvpIntegral2 => Ok((0.5 / m as f64, JacobiParam::new(1.0, 1.0), 1)),
            Kind::FbvpIntegral3 => {
                let d = jacobi_negint_factorize(1, 2.0, m)?;
                Ok((-0.5 * d, JacobiParam::new(1.0, 2.0), 1))
            }
            Kind::FbvpDirichlet => {
                let k = self.k;
                let d = jacobi_negint_factorize(k, self.s, m)?;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Ok((sign * d * 0.5f64.powi(k as i32), JacobiParam::new(k as f64, self.s), k))
            }
        }
    }

    /// Closed-form diagonal entry `(D₊^σ φ_n, D^j ψ_n)`.
    pub fn diagonal(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let fact = |a: f64| gamma_ratio(nf + a + 1.0, nf + 1.0);
        match self.kind {
            Kind::Fivp => Ok(fact(self.s)? * 2.0 / (2.0 * nf + 1.0)),
            Kind::FbvpIntegral2 => Ok(-fact(1.0 - self.s)? * 2.0 / (2.0 * nf + 1.0)),
            Kind::FbvpIntegral3 => {
                Ok(fact(2.0 - self.s)? * (nf + 2.0) * jacobi_norm_gamma(JacobiParam::new(0.0, 1.0), n)?)
            }
            Kind::FbvpDirichlet => {
                let s = self.s;
                let k = self.k as f64;
                Ok(fact(s)?
                    * gamma_ratio(nf + s + 1.0, nf + s - k + 1.0)?
                    * jacobi_norm_gamma(JacobiParam::new(0.0, s - k), n)?)
            }
        }
    }
}

/// The coefficients of `u_N` together with the scheme that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSolution {
    pub params: SchemeParams,
    /// Coefficients against `⁺J_n^{(-a,b)}`, starting at the first trial degree.
    pub coeffs: CoeffVector,
    /// Diagonal of the Petrov-Galerkin matrix, aligned with `coeffs`.
    pub diag: Vec<f64>,
}

impl SpectralSolution {
    pub fn n(&self) -> usize {
        self.coeffs.degree()
    }

    pub fn basis(&self) -> Result<GjfLabel> {
        self.params.trial_label(self.coeffs.start)
    }
}

fn solve_kind(spec: &ProblemSpec, expected: Kind) -> Result<SpectralSolution> {
    if spec.kind != expected {
        return Err(inadmissible(format!("expected a {:?} problem, got {:?}", expected, spec.kind)));
    }
    let params = spec.params()?;
    let (lo, hi) = params.degree_range(spec.n)?;
    params.trial_label(hi)?;

    let (_, q, shift) = params.test_factorized(lo.max(1))?;
    let moments = jacobi_moments(spec.rhs, q, hi - shift, spec.quad_extra + shift)?;
    if params.kind == Kind::FbvpDirichlet {
        // the rule of size M must agree with one of size 2M
        let m = hi + spec.quad_extra;
        let refined = jacobi_moments(spec.rhs, q, hi - shift, m + spec.quad_extra + shift)?;
        let size = refined.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let gap = moments.iter().zip(&refined).fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        if !(gap <= RHS_REFINE_TOL * size.max(f64::MIN_POSITIVE)) {
            return Err(Error::SingularQuadrature(format!(
                "right-hand side moments change by {gap:.3e} when the rule is doubled"
            )));
        }
    }
    let mut coeffs = Vec::with_capacity(hi - lo + 1);
    let mut diag = Vec::with_capacity(hi - lo + 1);
    for m in lo..=hi {
        let (c, _, _) = params.test_factorized(m)?;
        let b = c * moments[m - shift];
        let d = params.diagonal(m)?;
        coeffs.push(b / d);
        diag.push(d);
    }
    Ok(SpectralSolution {
        params,
        coeffs: CoeffVector {
            family: Family::Gjf {
                side: Side::Plus,
                alpha: params.trial_alpha,
                beta: params.trial_beta,
            },
            start: lo,
            coeffs,
        },
        diag,
    })
}

/// `D₊^s u = f` with `u^{(l)}(1) = 0`: `ũ_n = n! f̃_n / Γ(n+s+1)` with Legendre coefficients `f̃_n`.
pub fn solve_fivp(spec: &ProblemSpec) -> Result<SpectralSolution> {
    solve_kind(spec, Kind::Fivp)
}

/// `D₊^ν u = f`, `ν = 2-μ`, with `I₊^μ u(±1) = 0`.
pub fn solve_fbvp_integral2(spec: &ProblemSpec) -> Result<SpectralSolution> {
    solve_kind(spec, Kind::FbvpIntegral2)
}

/// `D₊^ν u = f`, `ν = 3-μ`, with `I₊^μ u(±1) = (I₊^μ u)'(1) = 0`.
pub fn solve_fbvp_integral3(spec: &ProblemSpec) -> Result<SpectralSolution> {
    solve_kind(spec, Kind::FbvpIntegral3)
}

/// `D₊^ν u = f`, `ν = s+k`, with `u^{(l)}(±1) = 0` for `l < k`.
pub fn solve_fbvp_dirichlet(spec: &ProblemSpec) -> Result<SpectralSolution> {
    solve_kind(spec, Kind::FbvpDirichlet)
}

/// Dispatches on `spec.kind`.
pub fn solve(spec: &ProblemSpec) -> Result<SpectralSolution> {
    solve_kind(spec, spec.kind)
}

/// `u_N` at each point.
pub fn eval_solution(sol: &SpectralSolution, xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter().map(|&x| sol.coeffs.eval(x)).collect()
}

/// Closed-form image of a label under an integer derivative `D^j`, as the
/// label of the result and its factor.
fn integer_derivative(label: &GjfLabel, j: usize) -> Result<(GjfLabel, f64)> {
    if j == 0 {
        return Ok((*label, 1.0));
    }
    let (img, scale) = gjf_rl_deriv(label, j as f64)?;
    // D₋^j = D^j and D₊^j = (-1)^j D^j
    let sign = if label.side == Side::Plus && j % 2 == 1 { -1.0 } else { 1.0 };
    Ok((img, sign * scale))
}

/// The full Petrov-Galerkin matrix `A[m][n] = (D₊^σ φ_n, D^j ψ_m)` for the
/// kind and order, assembled by Gauss-Jacobi quadrature of the closed-form
/// derivative images. Rows and columns run over the trial degree range.
pub fn assemble_full_matrix(kind: Kind, nu: f64, n: usize) -> Result<Vec<Vec<f64>>> {
    let params = SchemeParams::new(kind, nu)?;
    let (lo, hi) = params.degree_range(n)?;
    let trial: Vec<(GjfLabel, f64)> = (lo..=hi)
        .map(|d| gjf_rl_deriv(&params.trial_label(d)?, params.sigma()))
        .collect::<Result<_>>()?;
    let test: Vec<(GjfLabel, f64)> = (lo..=hi)
        .map(|d| {
            let (label, c, j) = params.test_label(d)?;
            let (img, scale) = integer_derivative(&label, j)?;
            Ok((img, c * scale))
        })
        .collect::<Result<_>>()?;

    let powers = |l: &GjfLabel| l.endpoint_powers();
    let (ta, tb) = powers(&trial[0].0);
    let (sa, sb) = powers(&test[0].0);
    let rule = gauss_jacobi_rule(JacobiParam::new(ta + sa, tb + sb), hi + 8)?;
    let mut trial_vals = vec![vec![0.0; rule.len()]; trial.len()];
    let mut test_vals = vec![vec![0.0; rule.len()]; test.len()];
    for (i, (x, _)) in rule.iter().enumerate() {
        for (row, (l, c)) in trial_vals.iter_mut().zip(&trial) {
            row[i] = c * l.eval_smooth(x);
        }
        for (row, (l, c)) in test_vals.iter_mut().zip(&test) {
            row[i] = c * l.eval_smooth(x);
        }
    }
    Ok(test_vals
        .iter()
        .map(|tv| {
            trial_vals
                .iter()
                .map(|uv| rule.weights.iter().zip(tv.iter().zip(uv)).map(|(w, (a, b))| w * a * b).sum())
                .collect()
        })
        .collect())
}
