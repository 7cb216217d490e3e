use super::SpectralSolution;
use crate::error::{Error, Result};
use crate::function::RealFn;
use crate::gjf::{gjf_coeff_norms, jacobi_coefficients, CoeffVector, Seminorm};
use crate::jacobi::{gauss_jacobi_rule, gauss_legendre, jacobi_norm_gamma, JacobiParam};
use crate::specfun::gamma_ratio;

/// Which error to measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorNorm {
    /// Plain `L²(-1,1)` norm of `u - u_N`.
    L2,
    /// `‖D₊^σ(u - u_N)‖` in `L²_{ω^{(0,c)}}`, with `σ` and `c` taken from the trial family.
    FracEnergy,
}

/// What `u_N` is compared against.
#[derive(Clone, Copy)]
pub enum Reference<'a> {
    /// The same scheme at a larger truncation.
    Spectral(&'a SpectralSolution),
    /// A known solution together with its image `D₊^σ u`.
    Exact { u: &'a dyn RealFn, image: &'a dyn RealFn },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorOptions {
    /// Degree at which the image of an exact solution is expanded. Defaults to `max(8N, 256)`.
    pub n_exact: Option<usize>,
    pub quad_extra: usize,
    /// Gauss-Legendre points per panel for the exact-solution `L²` error. Defaults to `2N + 32`.
    pub l2_points: Option<usize>,
}

impl Default for ErrorOptions {
    fn default() -> Self {
        ErrorOptions {
            n_exact: None,
            quad_extra: 16,
            l2_points: None,
        }
    }
}

/// Ratio between consecutive panel widths of the graded rule.
const GRADING: f64 = 0.2;
const PANELS: usize = 22;

pub fn error_norms(sol: &SpectralSolution, reference: Reference, which: ErrorNorm) -> Result<f64> {
    error_norms_with(sol, reference, which, &ErrorOptions::default())
}

pub fn error_norms_with(
    sol: &SpectralSolution,
    reference: Reference,
    which: ErrorNorm,
    opts: &ErrorOptions,
) -> Result<f64> {
    match reference {
        Reference::Spectral(r) => spectral_error(sol, r, which, opts),
        Reference::Exact { u, image } => match which {
            ErrorNorm::FracEnergy => exact_frac_error(sol, image, opts),
            ErrorNorm::L2 => exact_l2_error(sol, u, opts),
        },
    }
}

fn spectral_error(sol: &SpectralSolution, r: &SpectralSolution, which: ErrorNorm, opts: &ErrorOptions) -> Result<f64> {
    let (a, b) = (sol.params.trial_alpha, sol.params.trial_beta);
    if sol.params.kind != r.params.kind || sol.coeffs.family != r.coeffs.family {
        return Err(Error::FamilyMismatch(format!(
            "solution in {:?}, reference in {:?}",
            sol.coeffs.family, r.coeffs.family
        )));
    }
    let start = sol.coeffs.start.min(r.coeffs.start);
    let top = sol.coeffs.degree().max(r.coeffs.degree());
    let diff = CoeffVector {
        family: sol.coeffs.family,
        start,
        coeffs: (start..=top).map(|n| r.coeffs.get(n) - sol.coeffs.get(n)).collect(),
    };
    match which {
        ErrorNorm::FracEnergy => gjf_coeff_norms(&diff, a, b, Seminorm::Derivative(0)),
        ErrorNorm::L2 => {
            // the difference is (1-x)^a times a polynomial of degree `top`
            let m = opts.l2_points.unwrap_or(0).max(top + 1);
            let rule = gauss_jacobi_rule(JacobiParam::new(2.0 * a, 0.0), m)?;
            let p = JacobiParam::new(a, b);
            let mut vals = vec![0.0; top + 1];
            let mut total = 0.0;
            for (x, w) in rule.iter() {
                p.fill(x, &mut vals);
                let v: f64 = diff.coeffs.iter().zip(&vals[start..]).map(|(c, v)| c * v).sum();
                total += w * v * v;
            }
            Ok(total.sqrt())
        }
    }
}

fn exact_frac_error(sol: &SpectralSolution, image: &dyn RealFn, opts: &ErrorOptions) -> Result<f64> {
    let a = sol.params.trial_alpha;
    let c = sol.params.image_beta();
    let n = sol.coeffs.degree();
    let n_exact = opts.n_exact.unwrap_or((8 * n).max(256)).max(n);
    let p = JacobiParam::new(0.0, c);
    let v = jacobi_coefficients(image, p, n_exact, opts.quad_extra)?;
    let mut total = 0.0;
    for (k, vk) in v.iter().enumerate() {
        let uk = sol.coeffs.get(k);
        let approx = if uk == 0.0 {
            0.0
        } else {
            gamma_ratio(k as f64 + a + 1.0, k as f64 + 1.0)? * uk
        };
        let d = vk - approx;
        total += jacobi_norm_gamma(p, k)? * d * d;
    }
    Ok(total.sqrt())
}

/// Composite Gauss-Legendre on panels that shrink geometrically towards
/// `x = 1`, where trial functions and exact solutions carry fractional powers.
fn exact_l2_error(sol: &SpectralSolution, u: &dyn RealFn, opts: &ErrorOptions) -> Result<f64> {
    let n = sol.coeffs.degree();
    let m = opts.l2_points.unwrap_or(2 * n + 32);
    let rule = gauss_legendre(m)?;
    let mut edges = Vec::with_capacity(PANELS + 2);
    edges.push(-1.0);
    for j in 0..=PANELS {
        edges.push(1.0 - GRADING.powi(j as i32));
    }
    edges.push(1.0);
    let mut total = 0.0;
    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi <= lo {
            continue;
        }
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (y, w) in rule.iter() {
            let x = mid + half * y;
            let d = u.eval(x) - sol.coeffs.eval(x)?;
            total += half * w * d * d;
        }
    }
    Ok(total.sqrt())
}
