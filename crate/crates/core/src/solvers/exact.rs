use crate::error::{inadmissible, Result};
use crate::function::{weight, RealFn};
use crate::specfun::gamma_ratio;

/// `Σ c_i (1-x)^{p_i}`, a finite series in `t = 1-x`.
///
/// Right-sided fractional derivatives act termwise in closed form, so a
/// series serves both as an exact solution and, after [`PowerSeries::frac_deriv`],
/// as the matching right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    /// `(power, coefficient)` pairs. Powers must exceed `-1`.
    pub terms: Vec<(f64, f64)>,
}

impl PowerSeries {
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(inadmissible("a power series needs at least one term"));
        }
        if let Some((p, _)) = terms.iter().find(|(p, _)| !(*p > -1.0)) {
            return Err(inadmissible(format!("power {p} is not integrable")));
        }
        Ok(PowerSeries { terms })
    }

    /// `(t^a, t^b) -> t^{a+b}` products of two series.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(p, c) in &self.terms {
            for &(q, d) in &other.terms {
                match terms.iter_mut().find(|(r, _): &&mut (f64, f64)| (*r - (p + q)).abs() < 1e-14) {
                    Some((_, e)) => *e += c * d,
                    None => terms.push((p + q, c * d)),
                }
            }
        }
        PowerSeries { terms }
    }

    /// `D₊^σ`, using `D₊^σ t^j = Γ(j+1)/Γ(j+1-σ) t^{j-σ}`. Terms hitting a
    /// pole of the denominator vanish and are dropped.
    pub fn frac_deriv(&self, sigma: f64) -> Result<PowerSeries> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(p, c) in &self.terms {
            let r = gamma_ratio(p + 1.0, p + 1.0 - sigma)?;
            if r != 0.0 && c != 0.0 {
                terms.push((p - sigma, c * r));
            }
        }
        if terms.is_empty() {
            terms.push((0.0, 0.0));
        }
        PowerSeries::new(terms)
    }

    pub fn min_power(&self) -> f64 {
        self.terms.iter().map(|t| t.0).fold(f64::INFINITY, f64::min)
    }
}

impl RealFn for PowerSeries {
    fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(p, c)| c * weight(p, 0.0, x)).sum()
    }

    fn endpoint_powers(&self) -> (f64, f64) {
        (self.min_power(), 0.0)
    }

    fn eval_smooth(&self, x: f64) -> f64 {
        let p0 = self.min_power();
        self.terms.iter().map(|&(p, c)| c * weight(p - p0, 0.0, x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracops::{frac_deriv_quad, FracOrder, FracSide, DEFAULT_STEP};
    use crate::specfun::gamma;

    #[test]
    fn derivative_of_power() {
        let u = PowerSeries::new(vec![(2.0, 1.0)]).unwrap();
        let d = u.frac_deriv(0.5).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!((d.terms[0].0 - 1.5).abs() < 1e-15);
        assert!((d.terms[0].1 - 2.0 / gamma(2.5).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn integer_orders_annihilate_low_powers() {
        let u = PowerSeries::new(vec![(0.0, 3.0), (1.0, 1.0), (3.0, 1.0)]).unwrap();
        let d = u.frac_deriv(2.0).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!((d.terms[0].1 - 6.0).abs() < 1e-13);
    }

    #[test]
    fn smooth_factor_consistent() {
        let u = PowerSeries::new(vec![(0.4, 2.0), (1.4, -1.0)]).unwrap();
        for &x in &[-0.9, 0.0, 0.7] {
            let t: f64 = 1.0 - x;
            assert!((u.eval(x) - t.powf(0.4) * u.eval_smooth(x)).abs() < 1e-14);
        }
        assert_eq!(u.eval(1.0), 0.0);
    }

    #[test]
    fn product_matches_pointwise() {
        let a = PowerSeries::new(vec![(1.0, 3.0), (2.0, -3.0)]).unwrap();
        let b = PowerSeries::new(vec![(0.5, 1.0), (1.0, 2.0)]).unwrap();
        let ab = a.mul(&b);
        assert!((ab.eval(0.2) - a.eval(0.2) * b.eval(0.2)).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_oracle() {
        let u = PowerSeries::new(vec![(2.0, 1.0), (3.0, -0.5)]).unwrap();
        let s = 0.6;
        let d = u.frac_deriv(s).unwrap();
        let ord = FracOrder::new(s).unwrap();
        for &x in &[-0.5, 0.1, 0.6] {
            let q = frac_deriv_quad(&u, ord, x, FracSide::Right, 40, DEFAULT_STEP).unwrap();
            assert!((q - d.eval(x)).abs() < 1e-5 * d.eval(x).abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PowerSeries::new(vec![]).is_err());
        assert!(PowerSeries::new(vec![(-1.5, 1.0)]).is_err());
    }
}
