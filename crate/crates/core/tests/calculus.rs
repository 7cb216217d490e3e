use gjf_core::fracops::{bateman_integral, FracSide};
use gjf_core::gjf::{gjf_coeff_norms, gjf_eval, gjf_project, gjf_rl_deriv, GjfLabel, Seminorm, Side};
use gjf_core::jacobi::{gauss_jacobi_rule, JacobiParam};
use gjf_core::Singular;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivative_orders_compose(a in 1.2f64..3.0, b in -0.9f64..1.5, s1 in 0.05f64..0.6, s2 in 0.05f64..0.6, n in 0usize..9) {
        let l = GjfLabel::plus(a, b, n).unwrap();
        let (one, c1) = gjf_rl_deriv(&l, s1).unwrap();
        let (two, c2) = gjf_rl_deriv(&one, s2).unwrap();
        let (direct, c) = gjf_rl_deriv(&l, s1 + s2).unwrap();
        for &x in &[-0.6, 0.2, 0.7] {
            let lhs = c1 * c2 * gjf_eval(&two, x).unwrap();
            let rhs = c * gjf_eval(&direct, x).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-11 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_undoes_integral(a in -0.9f64..2.0, b in -0.9f64..2.0, rho in 0.1f64..1.9, n in 0usize..9, left in any::<bool>()) {
        let side = if left { FracSide::Left } else { FracSide::Right };
        let p = JacobiParam::new(a, b);
        let (img, scale) = bateman_integral(side, rho, p, n).unwrap();
        let (back, dscale) = gjf_rl_deriv(&img, rho).unwrap();
        let orig = if left { GjfLabel::minus(a, b, n) } else { GjfLabel::plus(a, b, n) }.unwrap();
        for &x in &[-0.5, 0.0, 0.55] {
            let lhs = scale * dscale * gjf_eval(&back, x).unwrap();
            let rhs = gjf_eval(&orig, x).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-11 * rhs.abs().max(1.0));
        }
    }
}

#[test]
fn parseval_matches_quadrature() {
    // ‖π_N u‖ in L²_{ω^{(-α,β)}} from coefficients and from a rule
    let (alpha, beta) = (0.7, 0.4);
    let u = Singular::new(alpha, 0.0, |x: f64| (0.3 * x).cos());
    let c = gjf_project(&u, Side::Plus, alpha, beta, 14).unwrap();
    let from_coeffs = gjf_coeff_norms(&c, alpha, beta, Seminorm::L2).unwrap();
    let rule = gauss_jacobi_rule(JacobiParam::new(alpha, beta), 40).unwrap();
    // π_N u = (1-x)^α q(x); the weight ω^{(-α,β)} leaves q² ω^{(α,β)}
    let q = |x: f64| c.eval(x).unwrap() / (1.0 - x).powf(alpha);
    let from_rule = rule.integrate(|x| q(x) * q(x)).sqrt();
    assert!((from_coeffs - from_rule).abs() < 1e-12 * from_rule);
}
