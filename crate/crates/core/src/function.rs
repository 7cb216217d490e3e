//! Evaluable real functions on `[-1, 1]` with optional endpoint-singularity hints.

/// A real function on `[-1, 1]`.
///
/// `endpoint_powers` may declare `f(x) = (1-x)^p (1+x)^q g(x)` with `g`
/// smooth. Quadrature routines then fold the two powers into the
/// Gauss-Jacobi weight and only sample `eval_smooth`.
pub trait RealFn: Sync {
    fn eval(&self, x: f64) -> f64;

    fn endpoint_powers(&self) -> (f64, f64) {
        (0.0, 0.0)
    }

    /// The smooth factor `g`. Must agree with `eval` divided by the declared powers.
    fn eval_smooth(&self, x: f64) -> f64 {
        let (p, q) = self.endpoint_powers();
        if p == 0.0 && q == 0.0 {
            self.eval(x)
        } else {
            self.eval(x) / ((1.0 - x).powf(p) * (1.0 + x).powf(q))
        }
    }
}

impl<F> RealFn for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// `(1-x)^p (1+x)^q g(x)` with the singular powers declared.
pub struct Singular<G> {
    pub p: f64,
    pub q: f64,
    pub g: G,
}

impl<G: Fn(f64) -> f64 + Sync> Singular<G> {
    pub fn new(p: f64, q: f64, g: G) -> Self {
        Singular { p, q, g }
    }
}

impl<G: Fn(f64) -> f64 + Sync> RealFn for Singular<G> {
    fn eval(&self, x: f64) -> f64 {
        weight(self.p, self.q, x) * (self.g)(x)
    }

    fn endpoint_powers(&self) -> (f64, f64) {
        (self.p, self.q)
    }

    fn eval_smooth(&self, x: f64) -> f64 {
        (self.g)(x)
    }
}

/// `x -> f(-x)`, with the endpoint powers swapped.
pub struct Reflected<'a>(pub &'a dyn RealFn);

impl RealFn for Reflected<'_> {
    fn eval(&self, x: f64) -> f64 {
        self.0.eval(-x)
    }

    fn endpoint_powers(&self) -> (f64, f64) {
        let (p, q) = self.0.endpoint_powers();
        (q, p)
    }

    fn eval_smooth(&self, x: f64) -> f64 {
        self.0.eval_smooth(-x)
    }
}

/// `(1-x)^a (1+x)^b`, with `0^0 = 1` and exact zeros at an endpoint with a positive power.
pub fn weight(a: f64, b: f64, x: f64) -> f64 {
    endpoint_pow(1.0 - x, a) * endpoint_pow(1.0 + x, b)
}

pub(crate) fn endpoint_pow(base: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if base == 0.0 {
        if e > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (e * base.ln()).exp()
    }
}
