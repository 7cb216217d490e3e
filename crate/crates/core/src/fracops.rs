//! Fractional integrals and derivatives computed by brute force.
//!
//! These oracles are deliberately independent of the closed forms in
//! [`crate::gjf`]: the kernel `(x-y)^{ρ-1}` is absorbed into a Gauss-Jacobi
//! weight after an affine change of variables, and integer derivatives are
//! taken by central finite differences. Accuracy is limited by the
//! difference step (roughly `1e-6..1e-4` relative for derivatives).

use crate::error::{inadmissible, Error, Result};
use crate::function::{endpoint_pow, RealFn};
use crate::gjf::{GjfLabel, Side};
use crate::jacobi::{gauss_jacobi_rule, JacobiParam};
use crate::specfun::{gamma, gamma_ratio};

/// Which endpoint the integral starts from.
///
/// `Left` is `I₋`/`D₋` (integration from `-1`), `Right` is `I₊`/`D₊`
/// (integration up to `1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FracSide {
    Left,
    Right,
}

/// A fractional order `s` together with the integer `k` with `s ∈ [k-1, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    pub s: f64,
    pub k: usize,
}

impl FracOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(inadmissible(format!("fractional order must be positive, got {s}")));
        }
        let k = s.floor() as usize + 1;
        Ok(FracOrder { s, k })
    }
}

/// Default central-difference step for [`frac_deriv_quad`].
pub const DEFAULT_STEP: f64 = 1e-4;

/// `I₋^ρ v(x)` (Left) or `I₊^ρ v(x)` (Right) by an `M`-point Gauss-Jacobi rule.
///
/// The endpoint power of `v` declared by [`RealFn::endpoint_powers`] at the
/// integration endpoint is folded into the weight together with the kernel,
/// so GJFs are integrated exactly once `M` exceeds half their degree.
pub fn frac_integral_quad(v: &dyn RealFn, rho: f64, x: f64, side: FracSide, m: usize) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(inadmissible(format!("integral order must be positive, got {rho}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            x,
            reason: "fractional integrals live on [-1, 1]".into(),
        });
    }
    let (p, q) = v.endpoint_powers();
    let total = match side {
        FracSide::Left => {
            let len = 0.5 * (x + 1.0);
            if len == 0.0 {
                return Ok(0.0);
            }
            let rule = gauss_jacobi_rule(JacobiParam::new(rho - 1.0, q), m)?;
            let s = rule.integrate(|tau| {
                let y = -1.0 + len * (1.0 + tau);
                endpoint_pow(1.0 - y, p) * v.eval_smooth(y)
            });
            endpoint_pow(len, rho + q) * s
        }
        FracSide::Right => {
            let len = 0.5 * (1.0 - x);
            if len == 0.0 {
                return Ok(0.0);
            }
            let rule = gauss_jacobi_rule(JacobiParam::new(p, rho - 1.0), m)?;
            let s = rule.integrate(|tau| {
                let y = x + len * (1.0 + tau);
                endpoint_pow(1.0 + y, q) * v.eval_smooth(y)
            });
            endpoint_pow(len, rho + p) * s
        }
    };
    Ok(total / gamma(rho)?)
}

/// Closed-form fractional integral of a weighted Jacobi polynomial.
///
/// Right: `I₊^ρ{(1-x)^α P_n^{(α,β)}} = Γ(n+α+1)/Γ(n+α+ρ+1) (1-x)^{α+ρ} P_n^{(α+ρ,β-ρ)}`.
/// Left: `I₋^ρ{(1+x)^β P_n^{(α,β)}} = Γ(n+β+1)/Γ(n+β+ρ+1) (1+x)^{β+ρ} P_n^{(α-ρ,β+ρ)}`.
pub fn bateman_integral(side: FracSide, rho: f64, p: JacobiParam, n: usize) -> Result<(GjfLabel, f64)> {
    if !(rho > 0.0) {
        return Err(inadmissible(format!("integral order must be positive, got {rho}")));
    }
    let nf = n as f64;
    match side {
        FracSide::Right => {
            if p.alpha <= -1.0 {
                return Err(inadmissible("right Bateman rule needs α > -1"));
            }
            let scale = gamma_ratio(nf + p.alpha + 1.0, nf + p.alpha + rho + 1.0)?;
            Ok((GjfLabel::plus(p.alpha + rho, p.beta - rho, n)?, scale))
        }
        FracSide::Left => {
            if p.beta <= -1.0 {
                return Err(inadmissible("left Bateman rule needs β > -1"));
            }
            let scale = gamma_ratio(nf + p.beta + 1.0, nf + p.beta + rho + 1.0)?;
            Ok((GjfLabel::minus(p.alpha - rho, p.beta + rho, n)?, scale))
        }
    }
}

/// The side of the fractional calculus that acts in closed form on a label.
pub fn natural_side(label: &GjfLabel) -> FracSide {
    match label.side {
        Side::Plus => FracSide::Right,
        Side::Minus => FracSide::Left,
    }
}

fn binomial(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

fn check_stencil(x: f64, k: usize, h: f64) -> Result<()> {
    if !(h > 0.0) || x.abs() + 0.5 * k as f64 * h >= 1.0 {
        return Err(Error::Domain {
            x,
            reason: format!("difference stencil of width {} leaves the interval", k as f64 * h),
        });
    }
    Ok(())
}

/// Central `k`-th difference of `f` at `x`, second order in `h`.
fn central_difference<F: Fn(f64) -> Result<f64>>(f: F, k: usize, x: f64, h: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(k, j) * f(x + (0.5 * k as f64 - j as f64) * h)?;
    }
    Ok(acc / h.powi(k as i32))
}

/// Riemann-Liouville derivative oracle.
///
/// `D₋^s v = D^k I₋^{k-s} v` and `D₊^s v = (-1)^k D^k I₊^{k-s} v`, with the
/// integer derivative replaced by a central difference of step `h`.
pub fn frac_deriv_quad(v: &dyn RealFn, ord: FracOrder, x: f64, side: FracSide, m: usize, h: f64) -> Result<f64> {
    let k = ord.k;
    check_stencil(x, k, h)?;
    let rho = k as f64 - ord.s;
    let d = central_difference(|y| frac_integral_quad(v, rho, y, side, m), k, x, h)?;
    Ok(match side {
        FracSide::Right if k % 2 == 1 => -d,
        _ => d,
    })
}

/// Caputo derivative oracle from the `k`-th derivative `vk` of the function.
///
/// `ᶜD₋^s v = I₋^{k-s} v^{(k)}` and `ᶜD₊^s v = (-1)^k I₊^{k-s} v^{(k)}`.
pub fn caputo_deriv_quad(vk: &dyn RealFn, ord: FracOrder, x: f64, side: FracSide, m: usize) -> Result<f64> {
    let k = ord.k;
    let i = frac_integral_quad(vk, k as f64 - ord.s, x, side, m)?;
    Ok(match side {
        FracSide::Right if k % 2 == 1 => -i,
        _ => i,
    })
}

/// The boundary terms separating the Riemann-Liouville and Caputo derivatives.
///
/// `boundary_derivs[j]` is `v^{(j)}(-1)` (Left) or `v^{(j)}(1)` (Right) for
/// `j < k`. Returns `D^s v - ᶜD^s v`, i.e.
/// `Σ_j v^{(j)}(-1)/Γ(1+j-s) (1+x)^{j-s}` on the left and
/// `Σ_j (-1)^j v^{(j)}(1)/Γ(1+j-s) (1-x)^{j-s}` on the right.
/// Terms whose `1/Γ(1+j-s)` vanishes (integer `s`) drop out.
pub fn rl_caputo_correction(boundary_derivs: &[f64], ord: FracOrder, x: f64, side: FracSide) -> Result<f64> {
    let dist = match side {
        FracSide::Left => 1.0 + x,
        FracSide::Right => 1.0 - x,
    };
    let mut total = 0.0;
    for (j, &dv) in boundary_derivs.iter().take(ord.k).enumerate() {
        if dv == 0.0 {
            continue;
        }
        let exponent = j as f64 - ord.s;
        let inv_gamma = gamma_ratio(1.0, 1.0 + exponent)?;
        if inv_gamma == 0.0 {
            continue;
        }
        if dist <= 0.0 {
            return Err(Error::Domain {
                x,
                reason: "correction terms are singular at the base point".into(),
            });
        }
        let sign = match side {
            FracSide::Right if j % 2 == 1 => -1.0,
            _ => 1.0,
        };
        total += sign * dv * inv_gamma * dist.powf(exponent);
    }
    Ok(total)
}
