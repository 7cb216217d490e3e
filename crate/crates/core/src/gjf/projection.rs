//! Orthogonal projections onto GJF families and coefficient-space norms.
//!
//! For a Plus family with parameters `(α, β)`, `α > 0` and `α+β > -1`,
//! three regimes are distinguished by `β`:
//!
//! * `β > -1`: plain `L²_{ω^{(-α,β)}}` projection;
//! * `β = -k`: the same inner product, basis starting at `n = k`;
//! * `β < -1` non-integer: the weighted space is not an `L²` space, so
//!   `D₊^α u` is expanded in `P_n^{(0,α+β)}` and the coefficients are
//!   rescaled by `n!/Γ(n+α+1)`.
//!
//! Minus families are handled by reflecting `x -> -x`.

use crate::error::{inadmissible, Error, Result};
use crate::fracops::{frac_deriv_quad, FracOrder, FracSide, DEFAULT_STEP};
use crate::function::{RealFn, Reflected};
use crate::jacobi::{gauss_jacobi_rule, jacobi_negint_factorize, jacobi_norm_gamma, JacobiParam};
use crate::specfun::{gamma_ratio, pochhammer};

use super::{GjfLabel, Side};

const INTEGER_TOL: f64 = 1e-12;
const PARAM_TOL: f64 = 1e-12;

/// The basis a coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// GJFs with the given side and Jacobi parameters.
    Gjf { side: Side, alpha: f64, beta: f64 },
    /// Jacobi polynomials `P_n^{(α,β)}`.
    Jacobi(JacobiParam),
}

impl Family {
    fn same_as(&self, other: &Family) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= PARAM_TOL * (1.0 + a.abs());
        match (self, other) {
            (
                Family::Gjf { side, alpha, beta },
                Family::Gjf {
                    side: s2,
                    alpha: a2,
                    beta: b2,
                },
            ) => side == s2 && close(*alpha, *a2) && close(*beta, *b2),
            (Family::Jacobi(p), Family::Jacobi(q)) => close(p.alpha, q.alpha) && close(p.beta, q.beta),
            _ => false,
        }
    }
}

/// Coefficients `c_start, ..., c_N` against a basis family.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    pub family: Family,
    pub start: usize,
    pub coeffs: Vec<f64>,
}

impl CoeffVector {
    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.start + self.coeffs.len() - 1
    }

    /// Coefficient of degree `n`, zero outside the stored range.
    pub fn get(&self, n: usize) -> f64 {
        if n < self.start {
            0.0
        } else {
            self.coeffs.get(n - self.start).copied().unwrap_or(0.0)
        }
    }

    /// `Σ c_n φ_n(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let n_max = self.degree();
        let vals = match self.family {
            Family::Gjf { side, alpha, beta } => super::gjf_eval_all(side, alpha, beta, n_max, x)?,
            Family::Jacobi(p) => crate::jacobi::jacobi_eval(p, n_max, x)?,
        };
        Ok(self.coeffs.iter().zip(&vals[self.start..]).map(|(c, v)| c * v).sum())
    }
}

/// Which quantity [`gjf_coeff_norms`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seminorm {
    /// `‖u‖` in `L²_{ω^{(-α,β)}}`.
    L2,
    /// `‖D₊^{α+l} u‖` in `L²_{ω^{(l,α+β+l)}}`.
    Derivative(usize),
}

/// Where the fractional derivative needed for `β < -1` comes from.
#[derive(Clone, Copy)]
pub enum CaseThreeSource<'a> {
    /// `D₊^α f` supplied in closed form (for Minus families: `D₋^β f`).
    Analytic(&'a dyn RealFn),
    /// Computed by the singular-kernel oracle with the given difference step
    /// and inner rule size. The step shrinks near the endpoints.
    Oracle { step: f64, points: usize },
}

impl std::fmt::Debug for CaseThreeSource<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseThreeSource::Analytic(_) => f.write_str("Analytic(..)"),
            CaseThreeSource::Oracle { step, points } => {
                write!(f, "Oracle {{ step: {step}, points: {points} }}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ProjectOptions<'a> {
    /// Surplus of quadrature points over the truncation degree.
    pub quad_extra: usize,
    pub case_three: CaseThreeSource<'a>,
}

impl Default for ProjectOptions<'_> {
    fn default() -> Self {
        ProjectOptions {
            quad_extra: 16,
            case_three: CaseThreeSource::Oracle {
                step: DEFAULT_STEP,
                points: 40,
            },
        }
    }
}

enum Case {
    Regular,
    Constrained(usize),
    Derivative,
}

fn classify(alpha: f64, beta: f64) -> Result<Case> {
    if !(alpha > 0.0) || !(alpha + beta > -1.0) {
        return Err(inadmissible(format!(
            "projection needs α > 0 and α+β > -1, got ({alpha}, {beta})"
        )));
    }
    let r = beta.round();
    if beta > -1.0 + INTEGER_TOL {
        Ok(Case::Regular)
    } else if (beta - r).abs() < INTEGER_TOL {
        Ok(Case::Constrained((-r) as usize))
    } else {
        Ok(Case::Derivative)
    }
}

/// `(1/γ_n) ∫ f P_n ω^{(a,b)}` for `n = 0..=n_max`, with `f`'s endpoint
/// powers folded into the rule.
pub(crate) fn jacobi_coefficients(f: &dyn RealFn, p: JacobiParam, n_max: usize, extra: usize) -> Result<Vec<f64>> {
    let moments = jacobi_moments(f, p, n_max, extra)?;
    moments
        .into_iter()
        .enumerate()
        .map(|(n, m)| Ok(m / jacobi_norm_gamma(p, n)?))
        .collect()
}

/// `∫ f P_n ω^{(a,b)}` for `n = 0..=n_max`.
pub(crate) fn jacobi_moments(f: &dyn RealFn, p: JacobiParam, n_max: usize, extra: usize) -> Result<Vec<f64>> {
    let (fp, fq) = f.endpoint_powers();
    let rule = gauss_jacobi_rule(JacobiParam::new(p.alpha + fp, p.beta + fq), n_max + extra)?;
    let mut out = vec![0.0; n_max + 1];
    let mut vals = vec![0.0; n_max + 1];
    for (x, w) in rule.iter() {
        p.fill(x, &mut vals);
        let g = w * f.eval_smooth(x);
        out.iter_mut().zip(&vals).for_each(|(o, v)| *o += g * v);
    }
    Ok(out)
}

/// Coefficients of `df` in `{P_n^{(0,c)}}_{n ≤ N}`, where `df` plays the
/// role of `D₊^α u` and `c = α+β`.
pub fn project_derivative_image(df: &dyn RealFn, c: f64, n_max: usize, quad_extra: usize) -> Result<CoeffVector> {
    let p = JacobiParam::new(0.0, c);
    Ok(CoeffVector {
        family: Family::Jacobi(p),
        start: 0,
        coeffs: jacobi_coefficients(df, p, n_max, quad_extra)?,
    })
}

/// `D₊^α f` evaluated by the quadrature oracle, with the difference step
/// reduced so the stencil stays inside the interval.
struct OracleDerivative<'a> {
    f: &'a dyn RealFn,
    ord: FracOrder,
    step: f64,
    points: usize,
}

impl RealFn for OracleDerivative<'_> {
    fn eval(&self, x: f64) -> f64 {
        let h = self.step.min((1.0 - x.abs()) / (2.0 * self.ord.k as f64));
        frac_deriv_quad(self.f, self.ord, x, FracSide::Right, self.points, h).unwrap_or(f64::NAN)
    }

    fn endpoint_powers(&self) -> (f64, f64) {
        let (p, _) = self.f.endpoint_powers();
        ((p - self.ord.s).max(0.0), 0.0)
    }
}

fn project_plus(f: &dyn RealFn, alpha: f64, beta: f64, n_max: usize, opts: &ProjectOptions) -> Result<CoeffVector> {
    let family = Family::Gjf {
        side: Side::Plus,
        alpha,
        beta,
    };
    GjfLabel::plus(alpha, beta, n_max)?;
    match classify(alpha, beta)? {
        Case::Regular => {
            // ⁺J_n ω^{(-α,β)} = P_n (1+x)^β
            let (fp, fq) = f.endpoint_powers();
            let rule = gauss_jacobi_rule(JacobiParam::new(fp, fq + beta), n_max + opts.quad_extra)?;
            let p = JacobiParam::new(alpha, beta);
            let mut acc = vec![0.0; n_max + 1];
            let mut vals = vec![0.0; n_max + 1];
            for (x, w) in rule.iter() {
                p.fill(x, &mut vals);
                let g = w * f.eval_smooth(x);
                acc.iter_mut().zip(&vals).for_each(|(a, v)| *a += g * v);
            }
            let coeffs = acc
                .into_iter()
                .enumerate()
                .map(|(n, a)| Ok(a / jacobi_norm_gamma(p, n)?))
                .collect::<Result<_>>()?;
            Ok(CoeffVector {
                family,
                start: 0,
                coeffs,
            })
        }
        Case::Constrained(k) => {
            if n_max < k {
                return Err(inadmissible(format!("truncation {n_max} below start index {k}")));
            }
            // ⁺J_n ω^{(-α,-k)} = d_n 2^{-k} P_{n-k}^{(α,k)}
            let q = JacobiParam::new(alpha, k as f64);
            let moments = plain_moments(f, q, n_max - k, opts.quad_extra + k)?;
            let coeffs = (k..=n_max)
                .map(|n| {
                    let d = jacobi_negint_factorize(k, alpha, n)?;
                    let g = jacobi_norm_gamma(q, n - k)?;
                    Ok((2f64).powi(k as i32) * moments[n - k] / (d * g))
                })
                .collect::<Result<_>>()?;
            Ok(CoeffVector {
                family,
                start: k,
                coeffs,
            })
        }
        Case::Derivative => {
            let c = alpha + beta;
            let v_hat = match opts.case_three {
                CaseThreeSource::Analytic(df) => project_derivative_image(df, c, n_max, opts.quad_extra)?,
                CaseThreeSource::Oracle { step, points } => {
                    let df = OracleDerivative {
                        f,
                        ord: FracOrder::new(alpha)?,
                        step,
                        points,
                    };
                    project_derivative_image(&df, c, n_max, opts.quad_extra)?
                }
            };
            let coeffs = v_hat
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, v)| Ok(v * gamma_ratio(n as f64 + 1.0, n as f64 + alpha + 1.0)?))
                .collect::<Result<_>>()?;
            Ok(CoeffVector {
                family,
                start: 0,
                coeffs,
            })
        }
    }
}

/// `∫ f P_n dx`, the rule carrying only `f`'s own endpoint powers.
fn plain_moments(f: &dyn RealFn, q: JacobiParam, n_max: usize, extra: usize) -> Result<Vec<f64>> {
    let (fp, fq) = f.endpoint_powers();
    let rule = gauss_jacobi_rule(JacobiParam::new(fp, fq), n_max + extra)?;
    let mut out = vec![0.0; n_max + 1];
    let mut vals = vec![0.0; n_max + 1];
    for (x, w) in rule.iter() {
        q.fill(x, &mut vals);
        let g = w * f.eval_smooth(x);
        out.iter_mut().zip(&vals).for_each(|(o, v)| *o += g * v);
    }
    Ok(out)
}

/// Projection onto `span{J_n : n ≤ N}` for the chosen side, with default options.
pub fn gjf_project(f: &dyn RealFn, side: Side, alpha: f64, beta: f64, n_max: usize) -> Result<CoeffVector> {
    gjf_project_with(f, side, alpha, beta, n_max, &ProjectOptions::default())
}

/// Projection with explicit quadrature surplus and derivative source.
///
/// For a Minus family the roles of `α` and `β` swap: `β > 0`, `α+β > -1`,
/// and the regime is decided by `α`.
pub fn gjf_project_with(
    f: &dyn RealFn,
    side: Side,
    alpha: f64,
    beta: f64,
    n_max: usize,
    opts: &ProjectOptions,
) -> Result<CoeffVector> {
    match side {
        Side::Plus => project_plus(f, alpha, beta, n_max, opts),
        Side::Minus => {
            let reflected = Reflected(f);
            let mirrored_df;
            let mut mirror_opts = *opts;
            if let CaseThreeSource::Analytic(df) = opts.case_three {
                mirrored_df = Reflected(df);
                mirror_opts.case_three = CaseThreeSource::Analytic(&mirrored_df);
            }
            let cv = project_plus(&reflected, beta, alpha, n_max, &mirror_opts)?;
            let coeffs = cv
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (cv.start + i) % 2 == 0 { *c } else { -c })
                .collect();
            Ok(CoeffVector {
                family: Family::Gjf {
                    side: Side::Minus,
                    alpha,
                    beta,
                },
                start: cv.start,
                coeffs,
            })
        }
    }
}

/// `h_{n,l}`: squared norm of `D₊^{α+l} ⁺J_n^{(-α,β)}` in `L²_{ω^{(l,α+β+l)}}`.
pub(crate) fn h_coeff(alpha: f64, beta: f64, n: usize, l: usize) -> Result<f64> {
    let c = alpha + beta;
    let nf = n as f64;
    let r = gamma_ratio(nf + alpha + 1.0, nf + 1.0)?;
    Ok((2f64).powf(c + 1.0) / (2.0 * nf + c + 1.0)
        * r
        * r
        * pochhammer(nf - l as f64 + 1.0, l)
        * pochhammer(nf + c + 1.0, l))
}

/// Squared `L²_{ω^{(-α,β)}}` norm of one basis function, including the
/// boundary-constrained families `β = -k`.
pub(crate) fn gamma_plus(alpha: f64, beta: f64, n: usize) -> Result<f64> {
    match classify(alpha, beta) {
        Ok(Case::Constrained(k)) => {
            let d = jacobi_negint_factorize(k, alpha, n)?;
            Ok((0.25f64).powi(k as i32) * d * d * jacobi_norm_gamma(JacobiParam::new(alpha, k as f64), n - k)?)
        }
        Ok(Case::Derivative) => Err(inadmissible(format!(
            "β = {beta} < -1: the weighted L² norm is not defined"
        ))),
        _ => jacobi_norm_gamma(JacobiParam::new(alpha, beta), n),
    }
}

/// A norm computed from coefficients alone.
///
/// `Seminorm::L2` gives `(Σ γ_n c_n²)^{1/2}` and `Seminorm::Derivative(l)` gives
/// `(Σ h_{n,l} c_n²)^{1/2}`. For a Minus family the parameters are mirrored.
pub fn gjf_coeff_norms(c: &CoeffVector, alpha: f64, beta: f64, which: Seminorm) -> Result<f64> {
    let side = match c.family {
        Family::Gjf { side, .. } => side,
        Family::Jacobi(_) => {
            return Err(Error::FamilyMismatch("expected a GJF family, got Jacobi".into()));
        }
    };
    if !c.family.same_as(&Family::Gjf { side, alpha, beta }) {
        return Err(Error::FamilyMismatch(format!(
            "coefficients belong to {:?}, norm requested for ({alpha}, {beta})",
            c.family
        )));
    }
    let (a, b) = match side {
        Side::Plus => (alpha, beta),
        Side::Minus => (beta, alpha),
    };
    let mut total = 0.0;
    for (i, v) in c.coeffs.iter().enumerate() {
        let n = c.start + i;
        let w = match which {
            Seminorm::L2 => gamma_plus(a, b, n)?,
            Seminorm::Derivative(l) => h_coeff(a, b, n, l)?,
        };
        total += w * v * v;
    }
    Ok(total.sqrt())
}
