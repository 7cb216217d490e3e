//! Generalized Jacobi functions (GJFs).
//!
//! A GJF is a Jacobi polynomial times a fractional power of one endpoint
//! distance:
//!
//! * `Plus`:  `(1-x)^a P_n^{(a,b)}(x)`, written `⁺J_n^{(-a,b)}`, needs `a > -1`;
//! * `Minus`: `(1+x)^b P_n^{(a,b)}(x)`, written `⁻J_n^{(a,-b)}`, needs `b > -1`.
//!
//! A [`GjfLabel`] always stores the Jacobi parameters `(a, b)` of the
//! polynomial factor, never the signed superscripts of the written form.
//! Right-sided operators (`D₊`, `I₊`) act in closed form on `Plus` labels
//! and left-sided ones (`D₋`, `I₋`) on `Minus` labels.

mod projection;

pub use projection::{
    gjf_coeff_norms, gjf_project, gjf_project_with, project_derivative_image, CaseThreeSource,
    CoeffVector, Family, ProjectOptions, Seminorm,
};
pub(crate) use projection::{jacobi_coefficients, jacobi_moments};

use crate::error::{inadmissible, Error, Result};
use crate::function::{endpoint_pow, RealFn};
use crate::jacobi::JacobiParam;
use crate::specfun::gamma_ratio;

/// Which endpoint carries the fractional prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Prefactor `(1-x)^a`, singular or vanishing at `x = 1`.
    Plus,
    /// Prefactor `(1+x)^b`, singular or vanishing at `x = -1`.
    Minus,
}

/// One GJF: side, Jacobi parameters of the polynomial factor, degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GjfLabel {
    pub side: Side,
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
}

impl GjfLabel {
    pub fn new(side: Side, alpha: f64, beta: f64, n: usize) -> Result<Self> {
        let label = GjfLabel {
            side,
            alpha,
            beta,
            n,
        };
        label.validate()?;
        Ok(label)
    }

    /// `(1-x)^alpha P_n^{(alpha,beta)}`.
    pub fn plus(alpha: f64, beta: f64, n: usize) -> Result<Self> {
        Self::new(Side::Plus, alpha, beta, n)
    }

    /// `(1+x)^beta P_n^{(alpha,beta)}`.
    pub fn minus(alpha: f64, beta: f64, n: usize) -> Result<Self> {
        Self::new(Side::Minus, alpha, beta, n)
    }

    pub fn param(&self) -> JacobiParam {
        JacobiParam::new(self.alpha, self.beta)
    }

    /// Exponent of the prefactor.
    pub fn power(&self) -> f64 {
        match self.side {
            Side::Plus => self.alpha,
            Side::Minus => self.beta,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.power() <= -1.0 {
            return Err(inadmissible(format!(
                "{:?} GJF needs prefactor exponent > -1, got {}",
                self.side,
                self.power()
            )));
        }
        self.param().check_degree(self.n)
    }

    /// The same degree in the family with the other prefactor, i.e. the label
    /// obtained by multiplying with `ω^{(-a,b)}` (Plus) or `ω^{(a,-b)}` (Minus).
    pub fn flip_side(&self) -> Result<GjfLabel> {
        let side = match self.side {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        };
        GjfLabel::new(side, self.alpha, self.beta, self.n)
    }

    /// The mirror image `x -> -x` as a label, with its sign `(-1)^n`.
    pub fn reflect(&self) -> (GjfLabel, f64) {
        let side = match self.side {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        };
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        (
            GjfLabel {
                side,
                alpha: self.beta,
                beta: self.alpha,
                n: self.n,
            },
            sign,
        )
    }
}

/// A label is itself a function, with its prefactor declared as an endpoint power.
impl RealFn for GjfLabel {
    fn eval(&self, x: f64) -> f64 {
        gjf_eval(self, x).unwrap_or(f64::NAN)
    }

    fn endpoint_powers(&self) -> (f64, f64) {
        match self.side {
            Side::Plus => (self.alpha, 0.0),
            Side::Minus => (0.0, self.beta),
        }
    }

    fn eval_smooth(&self, x: f64) -> f64 {
        self.param().value_unchecked(self.n, x)
    }
}

fn prefactor(side: Side, power: f64, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            x,
            reason: "GJFs live on [-1, 1]".into(),
        });
    }
    let base = match side {
        Side::Plus => 1.0 - x,
        Side::Minus => 1.0 + x,
    };
    if base == 0.0 && power < 0.0 {
        return Err(Error::Domain {
            x,
            reason: format!("prefactor with exponent {power} is singular here"),
        });
    }
    Ok(endpoint_pow(base, power))
}

/// Value of one GJF at `x`.
pub fn gjf_eval(label: &GjfLabel, x: f64) -> Result<f64> {
    label.validate()?;
    let w = prefactor(label.side, label.power(), x)?;
    if w == 0.0 {
        return Ok(0.0);
    }
    Ok(w * label.param().value_unchecked(label.n, x))
}

/// Values of the GJFs of degree `0..=n_max` at `x`, sharing one recurrence.
pub fn gjf_eval_all(side: Side, alpha: f64, beta: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    GjfLabel::new(side, alpha, beta, n_max)?;
    let w = prefactor(side, if side == Side::Plus { alpha } else { beta }, x)?;
    let mut out = vec![0.0; n_max + 1];
    if w != 0.0 {
        JacobiParam::new(alpha, beta).fill(x, &mut out);
        out.iter_mut().for_each(|v| *v *= w);
    }
    Ok(out)
}

/// Closed-form Riemann-Liouville derivative of order `s >= 0`.
///
/// `D₊^s ⁺J_n^{(-a,b)} = Γ(n+a+1)/Γ(n+a-s+1) ⁺J_n^{(-a+s,b+s)}` for `a > s-1`, and
/// `D₋^s ⁻J_n^{(a,-b)} = Γ(n+b+1)/Γ(n+b-s+1) ⁻J_n^{(a+s,-b+s)}` for `b > s-1`.
/// Returns the image label and the scalar factor.
pub fn gjf_rl_deriv(label: &GjfLabel, s: f64) -> Result<(GjfLabel, f64)> {
    if !(s >= 0.0) {
        return Err(inadmissible(format!("derivative order must be >= 0, got {s}")));
    }
    let power = label.power();
    if power <= s - 1.0 {
        return Err(inadmissible(format!(
            "order {s} needs prefactor exponent > {}, got {power}",
            s - 1.0
        )));
    }
    let nf = label.n as f64;
    let scale = gamma_ratio(nf + power + 1.0, nf + power - s + 1.0)?;
    let (a, b) = match label.side {
        Side::Plus => (label.alpha - s, label.beta + s),
        Side::Minus => (label.alpha + s, label.beta - s),
    };
    Ok((GjfLabel::new(label.side, a, b, label.n)?, scale))
}

/// Closed-form Caputo derivative of order `s ∈ [k-1, k)`.
///
/// Agrees with [`gjf_rl_deriv`] whenever the prefactor exponent exceeds
/// `k-1`, since the boundary terms separating the two derivatives vanish.
pub fn gjf_caputo_deriv(label: &GjfLabel, s: f64, k: usize) -> Result<(GjfLabel, f64)> {
    let kf = k as f64;
    if k == 0 || s < kf - 1.0 || s >= kf {
        return Err(inadmissible(format!("order {s} is not in [{}, {k})", kf - 1.0)));
    }
    if label.power() <= kf - 1.0 {
        return Err(inadmissible(format!(
            "Caputo order {s} needs prefactor exponent > {}, got {}",
            kf - 1.0,
            label.power()
        )));
    }
    gjf_rl_deriv(label, s)
}

/// `λ_{n,s} = Γ(n+α+1)/Γ(n+α-s+1) · Γ(n+β+s+1)/Γ(n+β+1)`.
pub fn gjf_sl_eigenvalue(alpha: f64, beta: f64, s: f64, n: usize) -> Result<f64> {
    if alpha <= s - 1.0 || beta <= -1.0 {
        return Err(inadmissible(format!(
            "eigenrelation needs α > s-1 and β > -1, got α = {alpha}, β = {beta}, s = {s}"
        )));
    }
    let nf = n as f64;
    Ok(gamma_ratio(nf + alpha + 1.0, nf + alpha - s + 1.0)?
        * gamma_ratio(nf + beta + s + 1.0, nf + beta + 1.0)?)
}

/// The intermediate stages of `ω^{(α,-β)} D₋^s { ω^{(-α+s,β+s)} D₊^s ⁺J_n^{(-α,β)} }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SturmLiouvilleChain {
    /// `D₊^s` of the input: a Plus label and its factor.
    pub first: (GjfLabel, f64),
    /// After reweighting: the same polynomial as a Minus label.
    pub reweighted: GjfLabel,
    /// `D₋^s` of the reweighted label.
    pub second: (GjfLabel, f64),
    /// After the outer weight: back on the Plus side.
    pub result: GjfLabel,
    /// Product of the two factors, which is `λ_{n,s}`.
    pub scale: f64,
}

/// Applies the fractional Sturm-Liouville operator to a Plus label step by step.
pub fn gjf_sl_apply(label: &GjfLabel, s: f64) -> Result<SturmLiouvilleChain> {
    if label.side != Side::Plus {
        return Err(inadmissible("the chain is defined for Plus labels"));
    }
    let first = gjf_rl_deriv(label, s)?;
    let reweighted = first.0.flip_side()?;
    let second = gjf_rl_deriv(&reweighted, s)?;
    let result = second.0.flip_side()?;
    Ok(SturmLiouvilleChain {
        first,
        reweighted,
        second,
        result,
        scale: first.1 * second.1,
    })
}
