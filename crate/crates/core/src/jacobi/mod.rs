//! Jacobi polynomials `P_n^{(α,β)}` with arbitrary real parameters.
//!
//! Evaluation runs the classical three-term recurrence, which stays valid
//! outside the orthogonality regime as long as no degree collapses.

mod quadrature;

pub use quadrature::{gauss_jacobi_rule, gauss_legendre, QuadRule};

use crate::error::{inadmissible, Result};
use crate::specfun::{gamma_ratio, pochhammer};

const DENOM_TOL: f64 = 1e-10;
const INT_TOL: f64 = 1e-12;

/// A parameter pair `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParam {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParam {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        JacobiParam { alpha, beta }
    }

    pub const LEGENDRE: JacobiParam = JacobiParam::new(0.0, 0.0);

    /// Checks that the recurrence can produce `P_0 .. P_{n_max}`.
    pub fn check_degree(&self, n_max: usize) -> Result<()> {
        let ab = self.alpha + self.beta;
        if !ab.is_finite() {
            return Err(inadmissible("non-finite Jacobi parameter"));
        }
        for n in 1..=n_max {
            let t = n as f64 + ab;
            if t <= -1.0 + INT_TOL && (t - t.round()).abs() < INT_TOL {
                return Err(inadmissible(format!(
                    "P_{n}^({}, {}) drops degree: n+α+β = {t}",
                    self.alpha, self.beta
                )));
            }
        }
        for n in 1..n_max {
            let nf = n as f64;
            if (nf + ab + 1.0).abs() < DENOM_TOL || (2.0 * nf + ab).abs() < DENOM_TOL {
                return Err(inadmissible(format!(
                    "recurrence denominator vanishes at n = {n} for (α, β) = ({}, {})",
                    self.alpha, self.beta
                )));
            }
        }
        Ok(())
    }

    /// Checks the classical regime `α, β > -1`.
    pub fn check_classical(&self) -> Result<()> {
        if self.alpha > -1.0 && self.beta > -1.0 {
            Ok(())
        } else {
            Err(inadmissible(format!(
                "weight (1-x)^{} (1+x)^{} is not integrable",
                self.alpha, self.beta
            )))
        }
    }

    /// Recurrence coefficients `(a_n, b_n, c_n)`, valid for `n >= 1`.
    fn coefficients(&self, n: usize) -> (f64, f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        let n = n as f64;
        let s = 2.0 * n + a + b;
        let d = (n + 1.0) * (n + a + b + 1.0);
        let an = (s + 1.0) * (s + 2.0) / (2.0 * d);
        let bn = (b * b - a * a) * (s + 1.0) / (2.0 * d * s);
        let cn = (n + a) * (n + b) * (s + 2.0) / (d * s);
        (an, bn, cn)
    }

    /// `Some(k)` when `β = -k` for an integer `k >= 1`.
    fn negint_beta(&self) -> Option<usize> {
        let r = self.beta.round();
        (r <= -1.0 && (self.beta - r).abs() < INT_TOL && self.alpha > -1.0).then(|| (-r) as usize)
    }

    /// `Some(l)` when `α = -l` for an integer `l >= 1`.
    fn negint_alpha(&self) -> Option<usize> {
        let r = self.alpha.round();
        (r <= -1.0 && (self.alpha - r).abs() < INT_TOL && self.beta > -1.0).then(|| (-r) as usize)
    }

    /// Writes `P_0(x) .. P_{out.len()-1}(x)` into `out`. Admissibility is the caller's job.
    ///
    /// A negative integer parameter is handled through the factorization
    /// `P_n^{(α,-k)} = d_n^{k,α} ((1+x)/2)^k P_{n-k}^{(α,k)}` (and its mirror)
    /// for `n >= k`, which avoids the near-cancelling recurrence steps.
    pub(crate) fn fill(&self, x: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        let negint = self
            .negint_beta()
            .map(|k| (k, JacobiParam::new(self.alpha, k as f64), 0.5 * (1.0 + x), self.alpha))
            .or_else(|| {
                self.negint_alpha()
                    .map(|l| (l, JacobiParam::new(l as f64, self.beta), 0.5 * (x - 1.0), self.beta))
            });
        if let Some((k, q, base, other)) = negint {
            if out.len() > k {
                self.fill_recurrence(x, &mut out[..k]);
                let mut inner = vec![0.0; out.len() - k];
                q.fill(x, &mut inner);
                let pw = base.powi(k as i32);
                for (j, v) in inner.into_iter().enumerate() {
                    let n = j + k;
                    let d = pochhammer(other + j as f64 + 1.0, k) / pochhammer(j as f64 + 1.0, k);
                    out[n] = d * pw * v;
                }
                return;
            }
        }
        self.fill_recurrence(x, out);
    }

    fn fill_recurrence(&self, x: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        if out.len() == 1 {
            return;
        }
        out[1] = 0.5 * (self.alpha + self.beta + 2.0) * x + 0.5 * (self.alpha - self.beta);
        for n in 1..out.len() - 1 {
            let (an, bn, cn) = self.coefficients(n);
            out[n + 1] = (an * x - bn) * out[n] - cn * out[n - 1];
        }
    }

    /// `P_n(x)` alone, in O(n) with constant memory.
    pub(crate) fn value_unchecked(&self, n: usize, x: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        if let Some(k) = self.negint_beta().filter(|&k| n >= k) {
            let d = pochhammer(self.alpha + (n - k) as f64 + 1.0, k) / pochhammer((n - k) as f64 + 1.0, k);
            let q = JacobiParam::new(self.alpha, k as f64);
            return d * (0.5 * (1.0 + x)).powi(k as i32) * q.value_unchecked(n - k, x);
        }
        if let Some(l) = self.negint_alpha().filter(|&l| n >= l) {
            let d = pochhammer(self.beta + (n - l) as f64 + 1.0, l) / pochhammer((n - l) as f64 + 1.0, l);
            let q = JacobiParam::new(l as f64, self.beta);
            return d * (0.5 * (x - 1.0)).powi(l as i32) * q.value_unchecked(n - l, x);
        }
        let mut prev = 1.0;
        let mut cur = 0.5 * (self.alpha + self.beta + 2.0) * x + 0.5 * (self.alpha - self.beta);
        for k in 1..n {
            let (an, bn, cn) = self.coefficients(k);
            let next = (an * x - bn) * cur - cn * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `(P_{n-1}(1 - t), P_n(1 - t))` with the gap `t` kept exact, so small
    /// `t` retains full relative accuracy. Requires `n >= 1`.
    fn pair_at_gap(&self, n: usize, t: f64) -> (f64, f64) {
        let mut prev = 1.0;
        let mut cur = (self.alpha + 1.0) - 0.5 * (self.alpha + self.beta + 2.0) * t;
        for k in 1..n {
            let (an, bn, cn) = self.coefficients(k);
            let next = ((an - bn) - an * t) * cur - cn * prev;
            prev = cur;
            cur = next;
        }
        (prev, cur)
    }

    /// `P_n(1 - t)`.
    ///
    /// Very close to `x = 1` the hypergeometric sum in `t/2` is used instead
    /// of the recurrence: there it has little cancellation, while the
    /// recurrence loses a few digits for `α` near `-1` and large `n`.
    pub(crate) fn value_at_gap(&self, n: usize, t: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        let z = nf * (nf + a + b + 1.0).abs() * t / 2.0;
        if a > -1.0 && z <= 8.0 {
            let mut term = 1.0;
            let mut sum = 1.0;
            for j in 0..n {
                let jf = j as f64;
                term *= (jf - nf) * (nf + a + b + 1.0 + jf) / ((a + 1.0 + jf) * (jf + 1.0)) * (t / 2.0);
                sum += term;
                if term.abs() < 1e-17 * sum.abs() {
                    break;
                }
            }
            let lead = (0..n).fold(1.0, |acc, i| acc * (a + 1.0 + i as f64) / (1.0 + i as f64));
            return lead * sum;
        }
        self.pair_at_gap(n, t).1
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        self.check_degree(n)?;
        Ok(self.value_unchecked(n, x))
    }

    /// `D P_n(x)` through `(n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}(x)`.
    pub fn eval_deriv(&self, n: usize, x: f64) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let shifted = JacobiParam::new(self.alpha + 1.0, self.beta + 1.0);
        shifted.check_degree(n - 1)?;
        let scale = 0.5 * (n as f64 + self.alpha + self.beta + 1.0);
        Ok(scale * shifted.value_unchecked(n - 1, x))
    }
}

/// Values `P_0(x) .. P_{n_max}(x)`.
pub fn jacobi_eval(p: JacobiParam, n_max: usize, x: f64) -> Result<Vec<f64>> {
    p.check_degree(n_max)?;
    let mut out = vec![0.0; n_max + 1];
    p.fill(x, &mut out);
    Ok(out)
}

/// The squared norm `γ_n` of `P_n` under `(1-x)^α (1+x)^β`.
pub fn jacobi_norm_gamma(p: JacobiParam, n: usize) -> Result<f64> {
    p.check_classical()?;
    let (a, b) = (p.alpha, p.beta);
    let nf = n as f64;
    let lead = (2f64).powf(a + b + 1.0) / (2.0 * nf + a + b + 1.0);
    Ok(lead * gamma_ratio(nf + a + 1.0, nf + 1.0)? * gamma_ratio(nf + b + 1.0, nf + a + b + 1.0)?)
}

/// `κ_{n,l}` with `D^l P_n^{(α,β)} = κ_{n,l} P_{n-l}^{(α+l,β+l)}`.
pub fn jacobi_deriv_coeff(p: JacobiParam, n: usize, l: usize) -> Result<f64> {
    if l > n {
        return Err(inadmissible(format!("derivative order {l} exceeds degree {n}")));
    }
    let t = n as f64 + p.alpha + p.beta + 1.0;
    Ok(pochhammer(t, l) / (2f64).powi(l as i32))
}

/// `d_n^{l,β} = (n-l)! (β+n-l+1)_l / n!`, the constant in
/// `P_n^{(-l,β)}(x) = d ((x-1)/2)^l P_{n-l}^{(l,β)}(x)`.
pub fn jacobi_negint_factorize(l: usize, beta: f64, n: usize) -> Result<f64> {
    if l == 0 || n < l {
        return Err(inadmissible(format!("need n >= l >= 1, got n = {n}, l = {l}")));
    }
    Ok(pochhammer(beta + (n - l) as f64 + 1.0, l) / pochhammer((n - l) as f64 + 1.0, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_degree_at_origin() {
        let p = JacobiParam::new(0.7, -0.4);
        let v = jacobi_eval(p, 1, 0.0).unwrap();
        assert!((v[1] - 0.5 * (0.7 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn legendre_right_endpoint() {
        let v = jacobi_eval(JacobiParam::LEGENDRE, 2, 1.0).unwrap();
        assert_eq!(v, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn endpoint_example() {
        let v = jacobi_eval(JacobiParam::new(0.5, -0.3), 2, 1.0).unwrap();
        assert!((v[2] - 1.875).abs() < 1e-14);
    }

    #[test]
    fn collapsing_degree_is_rejected() {
        assert!(jacobi_eval(JacobiParam::new(-2.0, 0.0), 3, 0.1).is_err());
        assert!(jacobi_eval(JacobiParam::new(-1.5, -1.5), 2, 0.1).is_err());
        assert!(jacobi_eval(JacobiParam::new(-1.0, 0.0), 5, 0.1).is_ok());
    }

    #[test]
    fn removable_denominator_is_rejected() {
        // α+β = -2 makes n+α+β+1 vanish at n = 1
        assert!(JacobiParam::new(-0.5, -1.5).check_degree(3).is_err());
    }

    #[test]
    fn factorized_path_is_used_for_negative_integers() {
        let p = JacobiParam::new(0.3, -2.0);
        let all = jacobi_eval(p, 6, 0.4).unwrap();
        for n in 2..=6 {
            let d = jacobi_negint_factorize(2, 0.3, n).unwrap();
            let expect = d * 0.7f64.powi(2) * JacobiParam::new(0.3, 2.0).eval(n - 2, 0.4).unwrap();
            assert!((all[n] - expect).abs() < 1e-15 * expect.abs().max(1.0));
            assert!((p.eval(n, 0.4).unwrap() - all[n]).abs() < 1e-14 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn gap_evaluation_matches_recurrence() {
        for &(a, b) in &[(-0.6, 0.3), (0.4, -0.8), (1.5, 2.0), (-0.95, -0.95)] {
            let p = JacobiParam::new(a, b);
            for &t in &[1e-3, 0.2, 0.9, 1.7] {
                for n in [1, 2, 7, 30] {
                    let direct = p.value_unchecked(n, 1.0 - t);
                    let gap = p.value_at_gap(n, t);
                    assert!((direct - gap).abs() < 1e-12 * direct.abs().max(1.0), "{a} {b} {t} {n}");
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert!((jacobi_norm_gamma(JacobiParam::LEGENDRE, 0).unwrap() - 2.0).abs() < 1e-15);
        for n in 0..20 {
            let g = jacobi_norm_gamma(JacobiParam::new(0.0, 1.0), n).unwrap();
            assert!((g - 2.0 / (n as f64 + 1.0)).abs() < 1e-14);
        }
        let g = jacobi_norm_gamma(JacobiParam::new(0.5, 0.5), 0).unwrap();
        assert!((g - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert!(jacobi_norm_gamma(JacobiParam::new(-1.0, 0.0), 0).is_err());
    }

    #[test]
    fn deriv_coeff_examples() {
        let p = JacobiParam::new(0.3, 1.1);
        assert_eq!(jacobi_deriv_coeff(p, 4, 0).unwrap(), 1.0);
        assert_eq!(jacobi_deriv_coeff(JacobiParam::LEGENDRE, 1, 1).unwrap(), 1.0);
        // (0, c) at l = 2: Γ(n+c+3)/(4 Γ(n+c+1))
        let c = 0.4;
        let k = jacobi_deriv_coeff(JacobiParam::new(0.0, c), 5, 2).unwrap();
        assert!((k - (5.0 + c + 1.0) * (5.0 + c + 2.0) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn deriv_matches_finite_difference() {
        let p = JacobiParam::new(0.4, -0.6);
        let h = 1e-5;
        for &x in &[-0.7, 0.0, 0.55] {
            let fd = (p.eval(7, x + h).unwrap() - p.eval(7, x - h).unwrap()) / (2.0 * h);
            assert!((p.eval_deriv(7, x).unwrap() - fd).abs() < 1e-6 * fd.abs().max(1.0));
        }
    }

    #[test]
    fn negint_examples() {
        assert_eq!(jacobi_negint_factorize(1, 0.0, 1).unwrap(), 1.0);
        let d = jacobi_negint_factorize(2, 0.5, 3).unwrap();
        assert!((d - 35.0 / 24.0).abs() < 1e-15);
        for (l, m, n) in [(1, 1, 3), (2, 1, 5), (1, 3, 6), (2, 2, 7)] {
            let prod = jacobi_negint_factorize(l, -(m as f64), n).unwrap()
                * jacobi_negint_factorize(m, l as f64, n - l).unwrap();
            assert!((prod - 1.0).abs() < 1e-14, "l={l} m={m} n={n}");
        }
    }

    fn grid() -> Vec<f64> {
        (0..=20).map(|i| -1.0 + 0.1 * i as f64).collect()
    }

    proptest! {
        #[test]
        fn parity(a in -0.95f64..4.0, b in -0.95f64..4.0) {
            let p = JacobiParam::new(a, b);
            let q = JacobiParam::new(b, a);
            for x in grid() {
                let u = jacobi_eval(p, 20, x).unwrap();
                let v = jacobi_eval(q, 20, -x).unwrap();
                let scale = u.iter().fold(1.0f64, |m, t| m.max(t.abs()));
                for n in 0..=20 {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    prop_assert!((u[n] - sign * v[n]).abs() <= 1e-11 * scale);
                }
            }
        }

        #[test]
        fn right_endpoint(a in -0.95f64..4.0, b in -0.95f64..4.0) {
            let u = jacobi_eval(JacobiParam::new(a, b), 20, 1.0).unwrap();
            for (n, v) in u.iter().enumerate() {
                let expect = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
                prop_assert!((v - expect).abs() <= 1e-11 * expect.abs().max(1.0));
            }
        }

        #[test]
        fn negative_integer_alpha_factorizes(l in 1usize..=3, b in 0.05f64..2.95, n_extra in 0usize..8) {
            prop_assume!((b - b.round()).abs() > 0.05);
            let n = l + n_extra;
            let d = jacobi_negint_factorize(l, b, n).unwrap();
            let lower = JacobiParam::new(-(l as f64), b);
            let upper = JacobiParam::new(l as f64, b);
            for x in grid() {
                let lhs = {
                    // plain recurrence, independent of the factorized path
                    let mut v = vec![0.0; n + 1];
                    lower.fill_recurrence(x, &mut v);
                    v[n]
                };
                let rhs = d * ((x - 1.0) / 2.0).powi(l as i32) * upper.eval(n - l, x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
            }
        }

        #[test]
        fn negative_integer_beta_factorizes(m in 1usize..=3, a in 0.05f64..2.95, n_extra in 0usize..8) {
            prop_assume!((a - a.round()).abs() > 0.05);
            let n = m + n_extra;
            let d = jacobi_negint_factorize(m, a, n).unwrap();
            let lower = JacobiParam::new(a, -(m as f64));
            let upper = JacobiParam::new(a, m as f64);
            for x in grid() {
                let lhs = {
                    // plain recurrence, independent of the factorized path
                    let mut v = vec![0.0; n + 1];
                    lower.fill_recurrence(x, &mut v);
                    v[n]
                };
                let rhs = d * ((x + 1.0) / 2.0).powi(m as i32) * upper.eval(n - m, x).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
            }
        }
    }
}
