mod common;

use adomian::generators::gen_fourier_direct;
use adomian::solver::{
    burgers_term, burgers_term_symbolic, caputo_monomial, mittag_leffler, rl_integral_monomial, solve_schrodinger,
    FracMonomial, SchrodingerState,
};
use adomian::{ComponentSet64, QuadratureConfig, C64};
use common::{expr, rel};
use statrs::function::gamma::gamma;

/// Tanh-sinh quadrature of `f(tau, t - tau)` over `[0, t]`. Both
/// distances to the endpoints are passed exactly, so integrable
/// endpoint singularities lose no precision.
fn tanh_sinh(t: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    let h = 1.0 / 64.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut sum = 0.0;
    for k in -(6 * 64)..=(6 * 64) {
        let s = f64::from(k) * h;
        let y = half_pi * s.sinh();
        let left = t / (1.0 + (-2.0 * y).exp());
        let right = t / (1.0 + (2.0 * y).exp());
        if left == 0.0 || right == 0.0 {
            continue;
        }
        let w = half_pi * s.cosh() / y.cosh().powi(2);
        sum += f(left, right) * w;
    }
    sum * h * t / 2.0
}

fn rl_oracle(alpha: f64, p: f64, t: f64) -> f64 {
    tanh_sinh(t, |tau, rest| rest.powf(alpha - 1.0) * tau.powf(p)) / gamma(alpha)
}

fn caputo_oracle(alpha: f64, p: f64, t: f64) -> f64 {
    tanh_sinh(t, |tau, rest| rest.powf(-alpha) * p * tau.powf(p - 1.0)) / gamma(1.0 - alpha)
}

#[test]
fn quadrature_oracle_sanity() {
    // Beta(1/2, 1/2) = pi.
    let v = tanh_sinh(1.0, |a, b| 1.0 / (a * b).sqrt());
    assert!((v - std::f64::consts::PI).abs() < 1e-12, "{v}");
}

#[test]
fn riemann_liouville_matches_defining_integral() {
    for alpha in [0.25, 0.5, 0.9] {
        for p in [0.5, 1.0, 2.0] {
            let m = rl_integral_monomial(alpha, FracMonomial::real(1.0, p).unwrap()).unwrap();
            for t in [0.3, 1.0, 2.5] {
                let want = rl_oracle(alpha, p, t);
                let got = m.eval(t).re;
                assert!((got - want).abs() <= 1e-8 * want.abs(), "I^{alpha} t^{p} at {t}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn caputo_matches_defining_integral() {
    for alpha in [0.25, 0.5, 0.9] {
        for p in [0.5, 1.0, 2.0] {
            let m = caputo_monomial(alpha, FracMonomial::real(1.0, p).unwrap()).unwrap();
            for t in [0.3, 1.0, 2.5] {
                let want = caputo_oracle(alpha, p, t);
                let got = m.eval(t).re;
                assert!((got - want).abs() <= 1e-8 * want.abs(), "D^{alpha} t^{p} at {t}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn integral_semigroup_and_left_inverse() {
    for (a, b) in [(0.25, 0.5), (0.5, 0.9), (0.9, 0.25), (1.0, 0.3)] {
        for p in [0.0, 0.5, 1.0, 2.0] {
            let m = FracMonomial::new(C64::new(0.7, -0.2), p).unwrap();
            let twice = rl_integral_monomial(a, rl_integral_monomial(b, m).unwrap()).unwrap();
            let once = rl_integral_monomial(a + b, m).unwrap();
            assert!((twice.exponent - once.exponent).abs() < 1e-15);
            assert!(rel(twice.coeff, once.coeff) <= 1e-12, "I^{a} I^{b} t^{p}");
        }
    }
    for alpha in [0.25, 0.5, 0.9, 1.0] {
        for p in [0.0, 0.5, 2.0] {
            let m = FracMonomial::new(C64::new(-1.5, 0.5), p).unwrap();
            let back = caputo_monomial(alpha, rl_integral_monomial(alpha, m).unwrap()).unwrap();
            assert!((back.exponent - p).abs() < 1e-14);
            assert!(rel(back.coeff, m.coeff) <= 1e-12, "D^{alpha} I^{alpha} t^{p}");
        }
    }
}

#[test]
fn mittag_leffler_special_cases() {
    for z in [C64::new(0.3, 0.0), C64::new(-1.2, 0.7), C64::new(0.0, 2.0)] {
        let e1 = mittag_leffler(1.0, z, 60).unwrap();
        assert!(rel(e1, z.exp()) <= 1e-14, "E_1({z})");
        // E_2(z^2) = cosh(z).
        let e2 = mittag_leffler(2.0, z * z, 60).unwrap();
        assert!(rel(e2, z.cosh()) <= 1e-14, "E_2({z}^2)");
    }
    // mpmath: E_{1/2}(1) = e * erfc(-1).
    let v = mittag_leffler(0.5, C64::new(1.0, 0.0), 120).unwrap();
    assert!((v.re - 5.008980080762283).abs() < 1e-13, "{v}");
}

#[test]
fn exponential_case_is_exact() {
    let s = solve_schrodinger(1.0, 12).unwrap();
    for (n, c) in s.coeffs.iter().enumerate() {
        let want = SchrodingerState::closed_form(1.0, n);
        assert!(rel(*c, want) <= 1e-14, "c_{n}: {c} vs {want}");
    }
    for x in [0.0, 0.7, -2.0] {
        let s = solve_schrodinger(1.0, 11).unwrap();
        let want = C64::from_polar(1.0, x) * C64::new(0.0, 0.05).exp();
        assert!(rel(s.partial_sum(x, 0.1), want) <= 1e-10);
    }
}

#[test]
fn nonlinear_coefficients_are_fourier_coefficients_of_the_cubic() {
    let q = QuadratureConfig::default();
    for alpha in [0.25, 0.5, 1.0] {
        let s = solve_schrodinger(alpha, 7).unwrap();
        let c = ComponentSet64::new(s.coeffs.clone());
        for (n, a) in s.nonlinear.iter().enumerate() {
            let f = gen_fourier_direct(&expr("u^2*conj(u)"), &c, n, &q).unwrap();
            // The integrand has modulus about 1 while a_n decays, so the
            // quadrature error is absolute.
            assert!((a - f).norm() <= 1e-14, "alpha {alpha} a_{n}: {a} vs {f}");
        }
    }
}

#[test]
fn recursion_matches_hand_expansion() {
    // c_1 and c_2 agree with the closed form for every order; c_3 picks up
    // the factor 2 Gamma(a+1)^2 / Gamma(2a+1) from |c_1|^2 c_1 terms.
    for alpha in [0.25_f64, 0.5, 0.75, 1.0] {
        let s = solve_schrodinger(alpha, 3).unwrap();
        for n in 0..=2 {
            assert!(rel(s.coeffs[n], SchrodingerState::closed_form(alpha, n)) <= 1e-13);
        }
        let g = |x: f64| gamma(x);
        let c1 = C64::new(0.0, 0.5 / g(alpha + 1.0));
        let c2 = C64::new(-0.25 / g(2.0 * alpha + 1.0), 0.0);
        // a_2 = sum over k1 + k2 + k3 = 2 of c_k1 c_k2 conj(c_k3), with c_0 = 1.
        let a2 = 2.0 * c2 + c2.conj() + c1 * c1 + 2.0 * c1 * c1.conj();
        let c3 = C64::i() * (a2 - c2 * 0.5) * g(2.0 * alpha + 1.0) / g(3.0 * alpha + 1.0);
        assert!(rel(s.coeffs[3], c3) <= 1e-13, "alpha {alpha}");
    }
}

#[test]
fn burgers_term_is_a_convolution() {
    let u: Vec<C64> = (0..5).map(|k| C64::new(1.0 / (k as f64 + 1.0), 0.1 * k as f64)).collect();
    let w: Vec<C64> = (0..5).map(|k| C64::new(0.5 - 0.1 * k as f64, 0.3)).collect();
    for n in 0..5 {
        let want: C64 = (0..=n).map(|k| u[k] * w[n - k]).sum();
        assert!(rel(burgers_term(&u, &w, n).unwrap(), want) <= 1e-15);
    }
    assert_eq!(burgers_term_symbolic("u", "w", 2).to_string(), "u0*w2 + u1*w1 + u2*w0");
}
