use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use super::{univariate_name, ComponentSet};
use crate::error::{Error, Result};
use crate::expr::{CompiledExpr, EvalError, Expr};
use crate::scalar::{unit_phase, Real};

/// Environment variable capping the adaptive node count.
pub const MAX_NODES_ENV: &str = "ADOMIAN_QUAD_MAX_M";

pub const DEFAULT_MAX_NODES: usize = 1 << 16;

/// Discretization of the Fourier coefficient integrals.
///
/// `nodes` is the node count for the direct method, the starting count
/// when `adaptive` is set. Adaptive runs double `nodes` until successive
/// estimates agree to `tolerance` (relative) or `max_nodes` is reached.
/// The nested method uses `recursive_nodes` per level and refuses to run
/// when `recursive_nodes^n` exceeds `recursive_budget`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    pub nodes: usize,
    pub adaptive: bool,
    pub tolerance: f64,
    pub max_nodes: usize,
    pub recursive_nodes: usize,
    pub recursive_budget: u128,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            nodes: 64,
            adaptive: true,
            tolerance: 1e-12,
            max_nodes: DEFAULT_MAX_NODES,
            recursive_nodes: 32,
            recursive_budget: 1 << 25,
        }
    }
}

impl QuadratureConfig {
    /// A fixed, non-adaptive rule with `m` nodes.
    pub fn fixed(m: usize) -> Self {
        QuadratureConfig {
            nodes: m,
            adaptive: false,
            max_nodes: m.max(DEFAULT_MAX_NODES),
            ..Self::default()
        }
    }

    /// Defaults with `max_nodes` taken from [`MAX_NODES_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut q = Self::default();
        if let Ok(raw) = std::env::var(MAX_NODES_ENV) {
            let cap: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("{MAX_NODES_ENV}={raw:?} is not a node count")))?;
            q.max_nodes = cap;
            q.nodes = q.nodes.min(cap);
        }
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let pow2 = |name: &str, m: usize| {
            if m >= 8 && m.is_power_of_two() {
                Ok(())
            } else {
                Err(Error::Input(format!("{name} = {m} must be a power of two and at least 8")))
            }
        };
        pow2("nodes", self.nodes)?;
        pow2("max_nodes", self.max_nodes)?;
        pow2("recursive_nodes", self.recursive_nodes)?;
        if self.max_nodes < self.nodes {
            return Err(Error::Input(format!(
                "max_nodes = {} is below nodes = {}",
                self.max_nodes, self.nodes
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Input(format!("tolerance {} must be positive", self.tolerance)));
        }
        Ok(())
    }
}

/// Per-variable component sequences fed to a compiled nonlinearity whose
/// slot `j` is variable `j`.
pub(crate) struct Channels<'a, T> {
    pub sets: Vec<&'a ComponentSet<T>>,
    /// Highest component index summed into the sampled argument.
    pub upto: usize,
}

/// Smallest power of two above `bound`, and at least 8.
fn exact_nodes(bound: usize) -> usize {
    (bound + 1).next_power_of_two().max(8)
}

fn node_angle<T: Real>(j: usize, m: usize) -> T {
    let two_pi = T::PI() + T::PI();
    -T::PI() + two_pi * T::from_usize(j).unwrap() / T::from_usize(m).unwrap()
}

fn node_error<T: Real>(e: EvalError, j: usize, m: usize) -> Error {
    Error::Domain(format!(
        "{e} at quadrature node {j} of {m} (lambda = {})",
        node_angle::<T>(j, m)
    ))
}

struct Estimate<T> {
    value: Complex<T>,
    /// Largest integrand modulus over the nodes, the scale of round-off.
    scale: T,
}

/// `(1/m) sum_j f(z_j) e^{-i freq lambda_j}` with `lambda_j = -pi + 2 pi j / m`.
/// Node values are computed independently (in parallel when asked) and
/// summed in node order.
fn quadrature<T: Real>(
    m: usize,
    freq: i64,
    parallel: bool,
    f: impl Fn(usize, Complex<T>) -> Result<Complex<T>> + Sync,
) -> Result<Estimate<T>> {
    let node = |j: usize| -> Result<Complex<T>> {
        let lambda = node_angle::<T>(j, m);
        let z = unit_phase(lambda);
        let v = f(j, z)?;
        let phase = unit_phase(-lambda * T::from_i64(freq).unwrap());
        Ok(v * phase)
    };
    let values: Vec<Result<Complex<T>>> = if parallel {
        (0..m).into_par_iter().map(node).collect()
    } else {
        (0..m).map(node).collect()
    };
    let mut sum = Complex::zero();
    let mut scale = T::zero();
    for v in values {
        let v = v?;
        scale = scale.max(v.norm());
        sum = sum + v;
    }
    Ok(Estimate {
        value: sum / T::from_usize(m).unwrap(),
        scale,
    })
}

/// Fourier coefficient at `freq` of `lambda -> N(sum_{k<=upto} u_{j,k} e^{ik lambda})`.
/// With `degree = Some(d)` the integrand is a trigonometric polynomial of
/// degree at most `d * upto` and a single exact rule is used.
pub(crate) fn direct_engine<T: Real>(
    f: &CompiledExpr<T>,
    ch: &Channels<'_, T>,
    freq: i64,
    degree: Option<u32>,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    q.validate()?;
    let vars = ch.sets.len();
    let run = |m: usize| {
        quadrature(m, freq, true, |j, z| {
            let mut plain = Vec::with_capacity(vars);
            let mut conj = Vec::with_capacity(vars);
            for set in &ch.sets {
                let (p, c) = set.sample(ch.upto, z);
                plain.push(p);
                conj.push(c);
            }
            f.eval(&plain, &conj).map_err(|e| node_error::<T>(e, j, m))
        })
    };

    if let Some(d) = degree {
        let m = exact_nodes(d as usize * ch.upto + freq.unsigned_abs() as usize);
        return Ok(run(m)?.value);
    }

    let tol = T::from_f64_lossy(q.tolerance);
    let roundoff = T::from_f64_lossy(64.0) * T::epsilon();
    let mut m = q.nodes;
    let mut last = run(m)?;
    if !q.adaptive {
        return Ok(last.value);
    }
    let mut previous: Option<Complex<T>> = None;
    loop {
        if let Some(p) = previous {
            let delta = (last.value - p).norm();
            if delta <= tol * last.value.norm() || delta <= roundoff * last.scale {
                return Ok(last.value);
            }
        }
        if m * 2 > q.max_nodes {
            return Err(Error::Accuracy {
                nodes: m,
                previous: previous.map_or_else(|| "none".to_string(), |p| p.to_string()),
                last: last.value.to_string(),
            });
        }
        m *= 2;
        previous = Some(last.value);
        last = run(m)?;
    }
}

/// Nested quadrature with the node phases tabulated once. Only the top
/// level runs in parallel; inner levels reuse per-call scratch buffers.
struct Nested<'a, T> {
    f: &'a CompiledExpr<T>,
    m: usize,
    /// `e^{i lambda_j}`.
    phases: Vec<Complex<T>>,
    /// `e^{-i lambda_j}`.
    kernels: Vec<Complex<T>>,
}

/// `v_k = u_k + (k+1) u_{k+1} z` for `k < u.len() - 1`, written into `out`.
fn shift_into<T: Real>(u: &[Complex<T>], z: Complex<T>, out: &mut [Complex<T>]) {
    for k in 0..out.len() {
        out[k] = u[k] + u[k + 1] * z * T::from_usize(k + 1).unwrap();
    }
}

impl<T: Real> Nested<'_, T> {
    fn level_error(e: Error, n: usize, j: usize, m: usize) -> Error {
        match e {
            Error::Domain(msg) => Error::Domain(format!("{msg}; level {n} node {j} of {m}")),
            other => other,
        }
    }

    /// One node of level `n`: shift, then descend.
    fn node(&self, plain: &[Vec<Complex<T>>], conj: &[Vec<Complex<T>>], n: usize, j: usize) -> Result<Complex<T>> {
        let z = self.phases[j];
        let mut p: Vec<Vec<Complex<T>>> = plain.iter().map(|_| vec![Complex::zero(); n]).collect();
        let mut c = p.clone();
        for (v, out) in plain.iter().zip(p.iter_mut()) {
            shift_into(v, z, out);
        }
        for (v, out) in conj.iter().zip(c.iter_mut()) {
            shift_into(v, z, out);
        }
        self.level(&p, &c, n - 1).map_err(|e| Self::level_error(e, n, j, self.m))
    }

    fn level(&self, plain: &[Vec<Complex<T>>], conj: &[Vec<Complex<T>>], n: usize) -> Result<Complex<T>> {
        if n == 0 {
            let p: Vec<_> = plain.iter().map(|v| v[0]).collect();
            let c: Vec<_> = conj.iter().map(|v| v[0]).collect();
            return self
                .f
                .eval(&p, &c)
                .map_err(|e| Error::Domain(format!("{e} in the innermost level")));
        }
        let m_t = T::from_usize(self.m).unwrap();
        let n_t = T::from_usize(n).unwrap();
        if n == 1 {
            // Innermost sum inlined: A_0(v) = N(u_0 + u_1 z).
            let mut p = vec![Complex::zero(); plain.len()];
            let mut c = vec![Complex::zero(); conj.len()];
            let mut sum = Complex::zero();
            for j in 0..self.m {
                let z = self.phases[j];
                for (slot, v) in p.iter_mut().zip(plain) {
                    *slot = v[0] + v[1] * z;
                }
                for (slot, v) in c.iter_mut().zip(conj) {
                    *slot = v[0] + v[1] * z;
                }
                let value = self.f.eval(&p, &c).map_err(|e| {
                    Self::level_error(Error::Domain(format!("{e} in the innermost level")), 1, j, self.m)
                })?;
                sum = sum + value * self.kernels[j];
            }
            return Ok(sum / m_t / n_t);
        }
        let mut sum = Complex::zero();
        for j in 0..self.m {
            sum = sum + self.node(plain, conj, n, j)? * self.kernels[j];
        }
        Ok(sum / m_t / n_t)
    }

    fn top(&self, plain: &[Vec<Complex<T>>], conj: &[Vec<Complex<T>>], n: usize) -> Result<Complex<T>> {
        if n <= 1 {
            return self.level(plain, conj, n);
        }
        let values: Vec<Result<Complex<T>>> = (0..self.m)
            .into_par_iter()
            .map(|j| Ok(self.node(plain, conj, n, j)? * self.kernels[j]))
            .collect();
        let mut sum = Complex::zero();
        for v in values {
            sum = sum + v?;
        }
        Ok(sum / T::from_usize(self.m).unwrap() / T::from_usize(n).unwrap())
    }
}

/// Nested quadrature `A_n = (1/n)(1/m) sum_j A_{n-1}(v(lambda_j)) e^{-i lambda_j}`
/// with `A_0 = N(u_0)`, over `n` levels.
pub(crate) fn recursive_engine<T: Real>(
    f: &CompiledExpr<T>,
    ch: &Channels<'_, T>,
    n: usize,
    degree: Option<u32>,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    q.validate()?;
    let m = match degree {
        Some(d) => exact_nodes(d as usize),
        None => q.recursive_nodes,
    };
    let needed = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > q.recursive_budget {
        return Err(Error::CostBudget {
            needed,
            budget: q.recursive_budget,
        });
    }
    let phases: Vec<Complex<T>> = (0..m).map(|j| unit_phase(node_angle::<T>(j, m))).collect();
    let nested = Nested {
        f,
        m,
        kernels: phases.iter().map(|z| z.conj()).collect(),
        phases,
    };
    let plain: Vec<Vec<_>> = ch.sets.iter().map(|s| s.values()[..=n].to_vec()).collect();
    let conj: Vec<Vec<_>> = ch.sets.iter().map(|s| s.conj_values()[..=n].to_vec()).collect();
    nested.top(&plain, &conj, n)
}

/// `max` over the plain and conjugate sequences of
/// `sum_{k=1..n} k! C(n,k) |u_k| / |u_0|`. The innermost argument of the
/// order-`n` nested quadrature is `sum_k k! u_k e_k(z_1..z_n)` with `e_k`
/// the elementary symmetric polynomials of the node phases, so below one
/// it never reaches zero (or, for `Re u_0 > 0`, the branch cut).
pub fn recursive_guard_ratio<T: Real>(c: &ComponentSet<T>, n: usize) -> T {
    if c.is_empty() {
        return T::zero();
    }
    let n = n.min(c.len() - 1);
    let bound = |v: &[Complex<T>]| {
        let mut weight = T::one();
        let mut s = T::zero();
        for (k, u) in v.iter().enumerate().take(n + 1).skip(1) {
            // k! C(n, k) = n! / (n-k)! = n (n-1) ... (n-k+1)
            weight = weight * T::from_usize(n - k + 1).unwrap();
            s = s + weight * u.norm();
        }
        s
    };
    let head = c.values()[0].norm().min(c.conj_values()[0].norm());
    let tail = bound(c.values()).max(bound(c.conj_values()));
    if tail.is_zero() {
        T::zero()
    } else {
        tail / head
    }
}

fn compile_univariate<T: Real>(n_expr: &Expr) -> Result<CompiledExpr<T>> {
    let var = univariate_name(n_expr)?;
    Ok(CompiledExpr::new(n_expr, &[var.as_str()])?)
}

fn direct_guard<T: Real>(n_expr: &Expr, c: &ComponentSet<T>, upto: usize) -> Result<()> {
    if n_expr.has_branch_or_pole() {
        let r = c.guard_ratio(upto);
        if r >= T::one() {
            return Err(Error::Domain(format!(
                "`{n_expr}` has a branch cut or pole and sum_(k>=1) |u_k| / |u_0| = {r} is not below 1"
            )));
        }
    }
    Ok(())
}

/// `A_n` as the `n`-th Fourier coefficient of `N(sum_{k<=n} u_k e^{ik lambda})`.
pub fn gen_fourier_direct<T: Real>(
    n_expr: &Expr,
    c: &ComponentSet<T>,
    n: usize,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    c.require(n)?;
    direct_guard(n_expr, c, n)?;
    let f = compile_univariate(n_expr)?;
    let ch = Channels { sets: vec![c], upto: n };
    direct_engine(&f, &ch, n as i64, n_expr.polynomial_degree(), q)
}

/// Fourier coefficient at an arbitrary frequency of `N(u_lambda)` with
/// every supplied component summed into `u_lambda`.
pub fn fourier_mode<T: Real>(
    n_expr: &Expr,
    c: &ComponentSet<T>,
    freq: i64,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    let upto = c
        .max_index()
        .ok_or_else(|| Error::Input("no components supplied".into()))?;
    direct_guard(n_expr, c, upto)?;
    let f = compile_univariate(n_expr)?;
    let ch = Channels { sets: vec![c], upto };
    direct_engine(&f, &ch, freq, n_expr.polynomial_degree(), q)
}

/// `A_n` by nested quadrature over shifted components
/// `v_k = u_k + (k+1) u_{k+1} e^{i lambda}`, `v̄_k = ū_k + (k+1) ū_{k+1} e^{i lambda}`.
/// Costs `M^n` evaluations of `N`.
pub fn gen_fourier_recursive<T: Real>(
    n_expr: &Expr,
    c: &ComponentSet<T>,
    n: usize,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    c.require(n)?;
    if n_expr.has_branch_or_pole() {
        let r = recursive_guard_ratio(c, n);
        if r >= T::one() {
            return Err(Error::Domain(format!(
                "`{n_expr}` has a branch cut or pole and the nested sampling bound \
                 sum_k k! C({n},k) |u_k| / |u_0| = {r} is not below 1"
            )));
        }
    }
    let f = compile_univariate(n_expr)?;
    let ch = Channels { sets: vec![c], upto: n };
    recursive_engine(&f, &ch, n, n_expr.polynomial_degree(), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use num_complex::Complex64;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn square_examples() {
        let q = QuadratureConfig::default();
        let e = parse("u^2").unwrap();
        let c = ComponentSet::from_reals(&[1.0, 0.5, 0.25]);
        assert!(close(gen_fourier_direct(&e, &c, 2, &q).unwrap(), Complex64::new(0.75, 0.0), 1e-14));
        let c = ComponentSet::from_reals(&[1.0, 2.0]);
        assert!(close(gen_fourier_recursive(&e, &c, 1, &q).unwrap(), Complex64::new(4.0, 0.0), 1e-14));
    }

    #[test]
    fn conjugate_cubic() {
        let q = QuadratureConfig::default();
        let e = parse("u^2*conj(u)").unwrap();
        let u0 = Complex64::new(0.8, 0.3);
        let u1 = Complex64::new(-0.2, 0.4);
        let c = ComponentSet::new(vec![u0, u1]);
        let want = u0 * u0 * u1.conj() + 2.0 * u0.norm_sqr() * u1;
        assert!(close(gen_fourier_direct(&e, &c, 1, &q).unwrap(), want, 1e-14));
        assert!(close(gen_fourier_recursive(&e, &c, 1, &q).unwrap(), want, 1e-14));
    }

    #[test]
    fn exponential_nested() {
        let q = QuadratureConfig::default();
        let e = parse("exp(u)").unwrap();
        let c = ComponentSet::from_reals(&[0.0, 1.0, 1.0]);
        assert!(close(gen_fourier_recursive(&e, &c, 2, &q).unwrap(), Complex64::new(1.5, 0.0), 1e-12));
        assert!(close(gen_fourier_direct(&e, &c, 2, &q).unwrap(), Complex64::new(1.5, 0.0), 1e-12));
    }

    #[test]
    fn constant_integrand_has_no_higher_modes() {
        let q = QuadratureConfig::default();
        let c = ComponentSet::from_reals(&[0.7, 0.0, 0.0, 0.0]);
        for s in ["exp(u)", "ln(u)", "u^3", "sin(u)*cosh(u)"] {
            let e = parse(s).unwrap();
            for n in 1..=3 {
                assert!(gen_fourier_direct(&e, &c, n, &q).unwrap().norm() < 1e-15, "{s} {n}");
            }
        }
    }

    #[test]
    fn domain_guard_and_budget() {
        let q = QuadratureConfig::default();
        let ln = parse("ln(u)").unwrap();
        let c = ComponentSet::from_reals(&[0.5, 0.6]);
        assert!(matches!(gen_fourier_direct(&ln, &c, 1, &q), Err(Error::Domain(_))));
        let c = ComponentSet::from_reals(&[1.0, 0.6, 0.0]);
        assert!(gen_fourier_direct(&ln, &c, 2, &q).is_ok());
        assert!(matches!(gen_fourier_recursive(&ln, &c, 2, &q), Err(Error::Domain(_))));

        let e = parse("exp(u)").unwrap();
        let c = ComponentSet::from_reals(&[0.1; 7]);
        assert!(matches!(gen_fourier_recursive(&e, &c, 6, &q), Err(Error::CostBudget { .. })));
        assert!(matches!(gen_fourier_direct(&e, &c, 7, &q), Err(Error::Input(_))));
    }

    #[test]
    fn node_failure_names_the_node() {
        // A pole outside the guarded class: 1/(u - 1) with u_0 = 1 + 0i.
        let e = parse("(u - 1)^-1").unwrap();
        let c = ComponentSet::from_reals(&[1.0, 0.0]);
        let err = gen_fourier_direct(&e, &c, 1, &QuadratureConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("node")), "{err}");
    }

    #[test]
    fn accuracy_error_at_the_cap() {
        let e = parse("ln(u)").unwrap();
        let c = ComponentSet::from_reals(&[1.0, 0.99]);
        let q = QuadratureConfig {
            nodes: 8,
            max_nodes: 16,
            ..QuadratureConfig::default()
        };
        assert!(matches!(gen_fourier_direct(&e, &c, 1, &q), Err(Error::Accuracy { nodes: 16, .. })));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        assert!(QuadratureConfig::fixed(12).validate().is_err());
        let q = QuadratureConfig {
            tolerance: 0.0,
            ..QuadratureConfig::default()
        };
        assert!(q.validate().is_err());
    }
}
