//! Named right-hand sides and exact solutions.
//!
//! Smooth sources are plain closures. Exact solutions are stored as finite
//! series in `t = 1-x`; their right-hand side `f = D₊^ν u` and the image
//! `D₊^σ u` used by the fractional-norm error are obtained termwise from
//! [`PowerSeries::frac_deriv`].

use gjf_core::solvers::{PowerSeries, SchemeParams};
use gjf_core::{RealFn, Result};

/// Terms kept in the Taylor tails. The omitted remainders are below `2^60/60!`.
const EXP_TERMS: usize = 60;
const SIN_TERMS: usize = 40;

#[derive(Debug, Clone, Copy)]
pub enum Entry {
    /// `f` given directly; errors are measured against a reference solution.
    Source(fn(f64) -> f64),
    /// `u` given as a series, possibly depending on `μ` of the scheme.
    Exact(fn(&SchemeParams) -> PowerSeries),
}

pub const NAMES: [&str; 7] = [
    "one",
    "1+x+cos(x)",
    "sin(x)",
    "x*exp(x)",
    "(1-x^3)*(1-exp(1-x))",
    "(1-x)^2*(1-x-6/(3+mu))",
    "(1-x)*sin(pi*x)",
];

pub fn lookup(name: &str) -> Option<Entry> {
    let e = match name {
        "one" => Entry::Source(|_| 1.0),
        "1+x+cos(x)" => Entry::Source(|x| 1.0 + x + x.cos()),
        "sin(x)" => Entry::Source(f64::sin),
        "x*exp(x)" => Entry::Source(|x| x * x.exp()),
        "(1-x^3)*(1-exp(1-x))" => Entry::Exact(|_| cubic_times_exp()),
        "(1-x)^2*(1-x-6/(3+mu))" => Entry::Exact(|p| integral_condition_cubic(p.s)),
        "(1-x)*sin(pi*x)" => Entry::Exact(|_| damped_sine()),
        _ => return None,
    };
    Some(e)
}

/// `(1-x³)(1-e^{1-x}) = (3t - 3t² + t³)(-Σ_{i≥1} tⁱ/i!)`.
pub fn cubic_times_exp() -> PowerSeries {
    let mut tail = Vec::with_capacity(EXP_TERMS);
    let mut fact = 1.0;
    for i in 1..=EXP_TERMS {
        fact *= i as f64;
        tail.push((i as f64, -1.0 / fact));
    }
    let poly = PowerSeries {
        terms: vec![(1.0, 3.0), (2.0, -3.0), (3.0, 1.0)],
    };
    poly.mul(&PowerSeries { terms: tail })
}

/// `(1-x)²(1-x-6/(3+μ)) = t³ - 6t²/(3+μ)`. The constant makes `I₊^μ u(-1) = 0`.
pub fn integral_condition_cubic(mu: f64) -> PowerSeries {
    PowerSeries {
        terms: vec![(2.0, -6.0 / (3.0 + mu)), (3.0, 1.0)],
    }
}

/// `(1-x) sin(πx) = t sin(πt) = Σ (-1)ⁱ π^{2i+1} t^{2i+2} / (2i+1)!`.
pub fn damped_sine() -> PowerSeries {
    let pi = std::f64::consts::PI;
    let mut terms = Vec::with_capacity(SIN_TERMS + 1);
    let mut c = pi;
    for i in 0..=SIN_TERMS {
        if i > 0 {
            let k = (2 * i) as f64;
            c *= -pi * pi / (k * (k + 1.0));
        }
        terms.push(((2 * i + 2) as f64, c));
    }
    PowerSeries { terms }
}

/// A resolved right-hand side for one order.
pub struct Resolved {
    pub rhs: Box<dyn RealFn + Send>,
    /// `(u, D₊^σ u)` when the solution is known.
    pub exact: Option<(PowerSeries, PowerSeries)>,
}

pub fn resolve(entry: Entry, params: &SchemeParams) -> Result<Resolved> {
    match entry {
        Entry::Source(f) => Ok(Resolved {
            rhs: Box::new(f),
            exact: None,
        }),
        Entry::Exact(build) => {
            let u = build(params);
            let f = u.frac_deriv(params.nu)?;
            let image = u.frac_deriv(params.sigma())?;
            Ok(Resolved {
                rhs: Box::new(f),
                exact: Some((u, image)),
            })
        }
    }
}
