use std::f64::consts::PI;

use super::JacobiParam;
use crate::error::{inadmissible, Error, Result};
use crate::specfun::gamma_ratio;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// Gauss-Jacobi nodes and weights for `∫ g(x) (1-x)^α (1+x)^β dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k g(x_k)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// `P_M(x)` and `P_M'(x)` from two interleaved recurrences.
fn value_and_slope(p: &JacobiParam, shifted: &JacobiParam, m: usize, x: f64) -> (f64, f64) {
    let v = p.value_unchecked(m, x);
    let d = 0.5 * (m as f64 + p.alpha + p.beta + 1.0) * shifted.value_unchecked(m - 1, x);
    (v, d)
}

/// Newton polish of a root of `P_M(1 - t)` in the gap variable `t`.
/// Returns the gap and `|P_M'|` there.
fn refine_gap(p: &JacobiParam, shifted: &JacobiParam, m: usize, t0: f64) -> (f64, f64) {
    let scale = 0.5 * (m as f64 + p.alpha + p.beta + 1.0);
    let mut t = t0;
    for _ in 0..8 {
        let v = p.value_at_gap(m, t);
        let d = scale * shifted.value_at_gap(m - 1, t);
        let dt = v / d;
        let next = t + dt;
        if !(next > 0.0 && next.is_finite()) {
            break;
        }
        t = next;
        if dt.abs() <= 4.0 * f64::EPSILON * t {
            break;
        }
    }
    (t, (scale * shifted.value_at_gap(m - 1, t)).abs())
}

/// M-point Gauss-Jacobi rule, nodes in increasing order.
///
/// Roots of `P_M` are found by Newton's method from the asymptotic angle
/// estimates, deflating the roots already found so each start converges
/// to a new root.
pub fn gauss_jacobi_rule(p: JacobiParam, m: usize) -> Result<QuadRule> {
    p.check_classical()?;
    if m == 0 {
        return Err(inadmissible("quadrature needs at least one node"));
    }
    let (a, b) = (p.alpha, p.beta);
    let shifted = JacobiParam::new(a + 1.0, b + 1.0);
    let mf = m as f64;

    let mut nodes: Vec<f64> = Vec::with_capacity(m);
    for k in 1..=m {
        let theta = (k as f64 + 0.5 * a - 0.25) * PI / (mf + 0.5 * (a + b + 1.0));
        let mut x = theta.cos();
        if k > 1 {
            // keep the start strictly left of the previous root
            let prev = nodes[k - 2];
            if x >= prev {
                x = prev - 0.5 * (prev + 1.0).min(1e-3);
            }
        }
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (v, d) = value_and_slope(&p, &shifted, m, x);
            let defl: f64 = nodes.iter().map(|&r| 1.0 / (x - r)).sum();
            let dx = v / (d - v * defl);
            x -= dx;
            if !x.is_finite() {
                break;
            }
            if dx.abs() <= NEWTON_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence(format!(
                "root {k} of P_{m}^({a}, {b}) did not settle"
            )));
        }
        nodes.push(x);
    }

    // Refine each root in the distance to its nearer endpoint, so that
    // (1-x)(1+x) keeps full relative accuracy in the weight formula.
    let swapped = JacobiParam::new(b, a);
    let swapped_shift = JacobiParam::new(b + 1.0, a + 1.0);
    let mut refined: Vec<(f64, f64, f64)> = nodes
        .iter()
        .map(|&x| {
            if x > 0.0 {
                let (t, d) = refine_gap(&p, &shifted, m, 1.0 - x);
                (1.0 - t, t * (2.0 - t), d)
            } else {
                let (u, d) = refine_gap(&swapped, &swapped_shift, m, 1.0 + x);
                (u - 1.0, u * (2.0 - u), d)
            }
        })
        .collect();
    refined.sort_by(|l, r| l.0.total_cmp(&r.0));
    let strictly_inside = refined.iter().all(|&(x, g, _)| x > -1.0 && x < 1.0 && g > 0.0);
    let increasing = refined.windows(2).all(|w| w[0].0 < w[1].0);
    if !strictly_inside || !increasing {
        return Err(Error::Convergence(format!(
            "nodes of P_{m}^({a}, {b}) are not distinct interior points"
        )));
    }

    let c = (2f64).powf(a + b + 1.0)
        * gamma_ratio(mf + a + 1.0, mf + 1.0)?
        * gamma_ratio(mf + b + 1.0, mf + a + b + 1.0)?;
    let (nodes, weights) = refined
        .into_iter()
        .map(|(x, g, d)| (x, c / (g * d * d)))
        .unzip();
    Ok(QuadRule {
        alpha: a,
        beta: b,
        nodes,
        weights,
    })
}

/// M-point Gauss-Legendre rule.
pub fn gauss_legendre(m: usize) -> Result<QuadRule> {
    gauss_jacobi_rule(JacobiParam::LEGENDRE, m)
}
