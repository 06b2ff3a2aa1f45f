//! Fractional calculus on monomials and the decomposition solve of the
//! time-fractional cubic Schrödinger problem
//! `i D_t^a u + u_xx / 2 + |u|^2 u = 0`, `u(x, 0) = e^{ix}`.
//!
//! With the ansatz `u_n = c_n e^{ix} t^{na}` the spatial factor is fixed
//! (`d^2/dx^2 e^{ix} = -e^{ix}`), so the decomposition reduces to a scalar
//! recursion on the `c_n`.

use num_complex::{Complex, Complex64};
use num_traits::Zero;
use statrs::function::gamma::ln_gamma;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::poly::AdomianPoly;
use crate::scalar::Real;
use crate::series::enumerate_weak_compositions;

/// `coeff * t^exponent`, with `exponent > -1` so that the fractional
/// integral of the monomial exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracMonomial {
    pub coeff: Complex64,
    pub exponent: f64,
}

impl FracMonomial {
    pub fn new(coeff: Complex64, exponent: f64) -> Result<Self> {
        if !(exponent > -1.0 && exponent.is_finite()) {
            return Err(Error::Domain(format!("monomial exponent {exponent} must exceed -1")));
        }
        Ok(FracMonomial { coeff, exponent })
    }

    pub fn real(coeff: f64, exponent: f64) -> Result<Self> {
        Self::new(Complex64::new(coeff, 0.0), exponent)
    }

    pub fn zero() -> Self {
        FracMonomial {
            coeff: Complex64::zero(),
            exponent: 0.0,
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if self.coeff.is_zero() {
            return Complex64::zero();
        }
        self.coeff * t.powf(self.exponent)
    }
}

/// `Gamma(x)`: exact factorials at positive integers, a Lanczos
/// approximation elsewhere.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && (1.0..=171.0).contains(&x) {
        return (2..x as u32).fold(1.0, |acc, k| acc * f64::from(k));
    }
    statrs::function::gamma::gamma(x)
}

fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Caputo derivative of order `alpha` in `(0, 1]`:
/// `D^a t^p = Gamma(p+1)/Gamma(p-a+1) t^(p-a)` for `p > 0`, zero for constants.
pub fn caputo_monomial(alpha: f64, m: FracMonomial) -> Result<FracMonomial> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("Caputo order {alpha} is outside (0, 1]")));
    }
    let p = m.exponent;
    if p < 0.0 {
        return Err(Error::Domain(format!("Caputo derivative needs exponent >= 0, got {p}")));
    }
    if p == 0.0 || m.coeff.is_zero() {
        return Ok(FracMonomial::zero());
    }
    if alpha == 1.0 {
        return FracMonomial::new(m.coeff * p, p - 1.0);
    }
    let arg = p - alpha + 1.0;
    if is_gamma_pole(arg) {
        return Err(Error::Domain(format!("Gamma({arg}) is a pole")));
    }
    FracMonomial::new(m.coeff * (gamma(p + 1.0) / gamma(arg)), p - alpha)
}

/// Riemann–Liouville integral of order `alpha >= 0`:
/// `I^a t^p = Gamma(p+1)/Gamma(p+a+1) t^(p+a)`; the identity for `a = 0`.
pub fn rl_integral_monomial(alpha: f64, m: FracMonomial) -> Result<FracMonomial> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("integral order {alpha} must be non-negative")));
    }
    if alpha == 0.0 {
        return Ok(m);
    }
    let p = m.exponent;
    FracMonomial::new(m.coeff * (gamma(p + 1.0) / gamma(p + alpha + 1.0)), p + alpha)
}

/// `z^k / Gamma(a k + 1)`, switching to logarithms once `Gamma` overflows.
fn ml_term(alpha: f64, z: Complex64, k: usize) -> Complex64 {
    let x = alpha * k as f64 + 1.0;
    let zk = z.powu(k as u32);
    if x < 170.0 && zk.is_finite() {
        return zk / gamma(x);
    }
    if z.is_zero() {
        return Complex64::zero();
    }
    let log_mag = k as f64 * z.norm().ln() - ln_gamma(x);
    Complex64::from_polar(log_mag.exp(), k as f64 * z.arg())
}

/// Partial sum `sum_{k<terms} z^k / Gamma(a k + 1)` of the Mittag-Leffler
/// function `E_a(z)`.
pub fn mittag_leffler(alpha: f64, z: Complex64, terms: usize) -> Result<Complex64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!("Mittag-Leffler order {alpha} is outside (0, 2]")));
    }
    if terms == 0 {
        return Err(Error::Domain("Mittag-Leffler partial sum needs at least one term".into()));
    }
    Ok((0..terms).map(|k| ml_term(alpha, z, k)).sum())
}

/// Decomposition of the Schrödinger problem: `u_n = c_n e^{ix} t^{na}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerState {
    pub alpha: f64,
    /// `c_0..=c_N`, with `c_0 = 1`.
    pub coeffs: Vec<Complex64>,
    /// `a_0..a_{N-1}`, the coefficients of the Adomian polynomials of
    /// `|u|^2 u` in the same ansatz.
    pub nonlinear: Vec<Complex64>,
}

impl SchrodingerState {
    /// `(i/2)^n / Gamma(n a + 1)`, the coefficient of `E_a(i t^a / 2)`.
    pub fn closed_form(alpha: f64, n: usize) -> Complex64 {
        Complex64::new(0.0, 0.5).powu(n as u32) / gamma(n as f64 * alpha + 1.0)
    }

    /// `sum_n u_n(x, t)`.
    pub fn partial_sum(&self, x: f64, t: f64) -> Complex64 {
        let tau = t.powf(self.alpha);
        let mut power = 1.0;
        let mut s = Complex64::zero();
        for c in &self.coeffs {
            s += c * power;
            power *= tau;
        }
        Complex64::from_polar(1.0, x) * s
    }

    /// `e^{ix} E_a(i t^a / 2)` with as many terms as there are coefficients.
    pub fn mittag_leffler_value(&self, x: f64, t: f64) -> Complex64 {
        let z = Complex64::new(0.0, 0.5 * t.powf(self.alpha));
        let e = mittag_leffler(self.alpha, z, self.coeffs.len()).expect("alpha validated on construction");
        Complex64::from_polar(1.0, x) * e
    }
}

/// Complex double-double. The summands of `a_n` are up to `3^n` times
/// larger than the sum, so the recursion runs in about 32 digits and is
/// rounded once at the end.
#[derive(Debug, Clone, Copy)]
struct ComplexDd {
    re: TwoFloat,
    im: TwoFloat,
}

impl ComplexDd {
    fn new(re: impl Into<TwoFloat>, im: impl Into<TwoFloat>) -> Self {
        ComplexDd {
            re: re.into(),
            im: im.into(),
        }
    }

    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }

    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }

    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    fn scale(self, t: TwoFloat) -> Self {
        Self::new(self.re * t, self.im * t)
    }

    fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Multiplication by `i`.
    fn times_i(self) -> Self {
        Self::new(-self.im, self.re)
    }

    fn round(self) -> Complex64 {
        Complex64::new(f64::from(self.re), f64::from(self.im))
    }
}

/// `a_n = sum_{k1+k2+k3=n} c_k1 c_k2 conj(c_k3)` from `c_0..=c_n`.
fn cubic_coefficient(c: &[ComplexDd], n: usize) -> ComplexDd {
    enumerate_weak_compositions(n, 3).into_iter().fold(ComplexDd::zero(), |acc, w| {
        let k = w.parts();
        acc.add(c[k[0]].mul(c[k[1]]).mul(c[k[2]].conj()))
    })
}

/// `c_{n+1} = i (-c_n / 2 + a_n) Gamma(n a + 1) / Gamma((n+1) a + 1)` from
/// `c_0 = 1`, for `n < n_max`.
pub fn solve_schrodinger(alpha: f64, n_max: usize) -> Result<SchrodingerState> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("fractional order {alpha} is outside (0, 1]")));
    }
    let mut coeffs = vec![ComplexDd::new(1.0, 0.0)];
    let mut nonlinear = Vec::with_capacity(n_max);
    let half = TwoFloat::from(0.5);
    for n in 0..n_max {
        let a = cubic_coefficient(&coeffs, n);
        nonlinear.push(a.round());
        // TwoFloat / f64 is correctly rounded; TwoFloat / TwoFloat loses the low word.
        let ratio = TwoFloat::from(gamma(n as f64 * alpha + 1.0)) / gamma((n + 1) as f64 * alpha + 1.0);
        let next = a.sub(coeffs[n].scale(half)).times_i().scale(ratio);
        coeffs.push(next);
    }
    Ok(SchrodingerState {
        alpha,
        coeffs: coeffs.into_iter().map(ComplexDd::round).collect(),
        nonlinear,
    })
}

/// `A_n = sum_{k<=n} u_k w_{n-k}` for the advection term `u D_x^b u`, with
/// `w = D_x^b u` supplied as its own sequence.
pub fn burgers_term<T: Real>(u: &[Complex<T>], w: &[Complex<T>], n: usize) -> Result<Complex<T>> {
    for (name, s) in [("u", u), ("w", w)] {
        if s.len() <= n {
            return Err(Error::Input(format!(
                "order {n} needs {name}_0..{name}_{n}, only {} supplied",
                s.len()
            )));
        }
    }
    Ok((0..=n).fold(Complex::zero(), |acc, k| acc + u[k] * w[n - k]))
}

/// Symbolic form of [`burgers_term`] over series `u` and `w`.
pub fn burgers_term_symbolic(u: &str, w: &str, n: usize) -> AdomianPoly {
    (0..=n).fold(AdomianPoly::default(), |acc, k| {
        acc + &AdomianPoly::component(u, k) * &AdomianPoly::component(w, n - k)
    })
}
