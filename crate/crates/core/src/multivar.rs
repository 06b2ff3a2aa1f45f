//! Adomian polynomials `A_{j,n}` of nonlinearities in several variables.
//!
//! Every variable `x_i` is decomposed as `sum_k x_{i,k}` and all of them
//! are parametrized by one shared phase: `x_i(lambda) = sum_k x_{i,k} e^{ik lambda}`.
//! Linear operators inside a nonlinearity (such as a spatial derivative)
//! are not applied here; their component sequences are supplied as extra
//! variables.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{CompiledExpr, EvalError, Expr};
use crate::generators::{direct_engine, recursive_engine, recursive_guard_ratio, Channels, ComponentSet, QuadratureConfig};
use crate::poly::AdomianPoly;
use crate::scalar::Real;
use crate::series::enumerate_weak_compositions;

/// Multi-index `(a_1..a_m)` of non-negative orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Self {
        MultiIndex(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|a| = sum a_i`.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// All multi-indices of `m` entries with `|a| = n`, in ascending
    /// lexicographic order.
    pub fn all_of_order(m: usize, n: usize) -> Vec<MultiIndex> {
        enumerate_weak_compositions(n, m)
            .into_iter()
            .map(|w| MultiIndex(w.parts().to_vec()))
            .collect()
    }
}

/// Named component sequences `x_{i,0..n}`, all of the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiComponentSet<T> {
    names: Vec<String>,
    sets: Vec<ComponentSet<T>>,
}

impl<T: Real> MultiComponentSet<T> {
    pub fn new(vars: Vec<(String, ComponentSet<T>)>) -> Result<Self> {
        let Some(len) = vars.first().map(|(_, s)| s.len()) else {
            return Err(Error::Input("no variables supplied".into()));
        };
        let mut seen = BTreeSet::new();
        for (name, set) in &vars {
            if !seen.insert(name.clone()) {
                return Err(Error::Input(format!("variable `{name}` given twice")));
            }
            if set.len() != len {
                return Err(Error::Input(format!(
                    "variable `{name}` has {} components, expected {len}",
                    set.len()
                )));
            }
        }
        let (names, sets) = vars.into_iter().unzip();
        Ok(MultiComponentSet { names, sets })
    }

    /// One independent [`ComponentSet::random`] per name.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, names: &[&str], len: usize) -> Self {
        Self::new(names.iter().map(|n| (n.to_string(), ComponentSet::random(rng, len))).collect())
            .expect("distinct names and equal lengths")
    }

    /// One independent [`ComponentSet::random_for_recursive`] per name.
    pub fn random_for_recursive<R: Rng + ?Sized>(rng: &mut R, names: &[&str], len: usize, depth: usize) -> Self {
        Self::new(
            names
                .iter()
                .map(|n| (n.to_string(), ComponentSet::random_for_recursive(rng, len, depth)))
                .collect(),
        )
        .expect("distinct names and equal lengths")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<&ComponentSet<T>> {
        self.names.iter().position(|n| n == name).map(|i| &self.sets[i])
    }

    /// Components per variable.
    pub fn len(&self) -> usize {
        self.sets[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn truncated(&self, len: usize) -> Self {
        MultiComponentSet {
            names: self.names.clone(),
            sets: self.sets.iter().map(|s| s.truncated(len)).collect(),
        }
    }

    /// Append `extra[i]` to variable `i`; all extensions must have the
    /// same length.
    pub fn extended(&self, extra: &[Vec<Complex<T>>]) -> Result<Self> {
        if extra.len() != self.sets.len() {
            return Err(Error::Input(format!(
                "{} extensions for {} variables",
                extra.len(),
                self.sets.len()
            )));
        }
        Self::new(
            self.names
                .iter()
                .cloned()
                .zip(self.sets.iter().zip(extra).map(|(s, e)| s.extended(e)))
                .collect(),
        )
    }

    /// Value of a polynomial whose components name these variables.
    pub fn evaluate_poly(&self, a: &AdomianPoly) -> Result<Complex<T>> {
        for comp in a.components() {
            if self.get(&comp.series).is_none() {
                return Err(Error::Input(format!("missing component sequence `{}`", comp.series)));
            }
        }
        a.evaluate(|comp| {
            let set = self.get(&comp.series)?;
            let v = if comp.conj { set.conj_values() } else { set.values() };
            v.get(comp.index).copied()
        })
    }

    fn channels(&self, upto: usize) -> Channels<'_, T> {
        Channels {
            sets: self.sets.iter().collect(),
            upto,
        }
    }
}

fn compile<T: Real>(n_expr: &Expr, c: &MultiComponentSet<T>) -> Result<CompiledExpr<T>> {
    let names: Vec<&str> = c.names.iter().map(String::as_str).collect();
    CompiledExpr::new(n_expr, &names).map_err(|e| match e {
        EvalError::Unassigned(v) => Error::Input(format!("no component sequence for variable `{v}`")),
        other => Error::Eval(other),
    })
}

fn require<T: Real>(c: &MultiComponentSet<T>, n: usize) -> Result<()> {
    if c.len() > n {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "order {n} needs components 0..={n}, only {} supplied",
            c.len()
        )))
    }
}

/// `A_n = (1/2pi) int N(x_1(lambda), ..., x_m(lambda)) e^{-in lambda} d lambda`
/// with each `x_i(lambda)` truncated at order `n`.
pub fn gen_fourier_direct_multi<T: Real>(
    n_expr: &Expr,
    c: &MultiComponentSet<T>,
    n: usize,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    require(c, n)?;
    let f = compile(n_expr, c)?;
    if n_expr.has_branch_or_pole() {
        for (name, set) in c.names.iter().zip(&c.sets) {
            let r = set.guard_ratio(n);
            if r >= T::one() {
                return Err(Error::Domain(format!(
                    "`{n_expr}` has a branch cut or pole and variable `{name}` has sum_(k>=1) |x_k| / |x_0| = {r}"
                )));
            }
        }
    }
    direct_engine(&f, &c.channels(n), n as i64, n_expr.polynomial_degree(), q)
}

/// Nested quadrature with every variable shifted simultaneously,
/// `v_{i,k} = x_{i,k} + (k+1) x_{i,k+1} e^{i lambda}`.
pub fn gen_fourier_recursive_multi<T: Real>(
    n_expr: &Expr,
    c: &MultiComponentSet<T>,
    n: usize,
    q: &QuadratureConfig,
) -> Result<Complex<T>> {
    require(c, n)?;
    let f = compile(n_expr, c)?;
    if n_expr.has_branch_or_pole() {
        for (name, set) in c.names.iter().zip(&c.sets) {
            let r = recursive_guard_ratio(set, n);
            if r >= T::one() {
                return Err(Error::Domain(format!(
                    "`{n_expr}` has a branch cut or pole and variable `{name}` violates the nested sampling bound ({r})"
                )));
            }
        }
    }
    recursive_engine(&f, &c.channels(n), n, n_expr.polynomial_degree(), q)
}

/// `A_n` of the product `prod_i x_i` over the named variables:
/// `sum_{|a| = n} prod_i x_{i,a_i}`.
pub fn gen_product_multi<T: Real>(c: &MultiComponentSet<T>, vars: &[&str], n: usize) -> Result<Complex<T>> {
    require(c, n)?;
    let sets: Vec<&ComponentSet<T>> = vars
        .iter()
        .map(|v| {
            c.get(v)
                .ok_or_else(|| Error::Input(format!("no component sequence for variable `{v}`")))
        })
        .collect::<Result<_>>()?;
    if sets.is_empty() {
        return Ok(Complex::one());
    }
    let mut total = Complex::zero();
    for a in MultiIndex::all_of_order(sets.len(), n) {
        let term = a
            .parts()
            .iter()
            .zip(&sets)
            .fold(Complex::one(), |acc, (&k, s)| acc * s.values()[k]);
        total = total + term;
    }
    Ok(total)
}

/// Velocity series names of the advection term.
pub const VELOCITY: [&str; 3] = ["u1", "u2", "u3"];

/// Spatial coordinates paired with [`VELOCITY`].
pub const COORDINATES: [&str; 3] = ["x", "y", "z"];

/// Series name carrying the components of `d(field)/d(coord)`.
pub fn derivative_series(field: &str, coord: &str) -> String {
    format!("d{field}d{coord}")
}

/// The advection nonlinearity `u1 d(field)/dx + u2 d(field)/dy + u3 d(field)/dz`
/// with derivatives as independent variables.
pub fn advection_expr(field: &str) -> Expr {
    let terms = VELOCITY
        .iter()
        .zip(COORDINATES)
        .map(|(v, w)| Expr::Product(vec![Expr::var(v), Expr::var(&derivative_series(field, w))]))
        .collect();
    crate::expr::normalize(&Expr::Sum(terms))
}

/// `A_n = sum_{(k,w)} sum_{a+b=n} u_{k,a} d(field)_b / dw`, the Adomian
/// polynomial of the advection term for the velocity component `field`.
pub fn navier_stokes_advection(field: &str, n: usize) -> AdomianPoly {
    let mut out = AdomianPoly::default();
    for (v, w) in VELOCITY.iter().zip(COORDINATES) {
        let d = derivative_series(field, w);
        for a in 0..=n {
            out = out + &AdomianPoly::component(v, a) * &AdomianPoly::component(&d, n - a);
        }
    }
    out
}

/// Numeric advection polynomial. Fails when a velocity or derivative
/// sequence is absent or too short.
pub fn navier_stokes_advection_numeric<T: Real>(field: &str, c: &MultiComponentSet<T>, n: usize) -> Result<Complex<T>> {
    require(c, n)?;
    for v in VELOCITY {
        if c.get(v).is_none() {
            return Err(Error::Input(format!("missing velocity sequence `{v}`")));
        }
    }
    for w in COORDINATES {
        let d = derivative_series(field, w);
        if c.get(&d).is_none() {
            return Err(Error::Input(format!("missing derivative sequence `{d}`")));
        }
    }
    c.evaluate_poly(&navier_stokes_advection(field, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> AdomianPoly {
        AdomianPoly::from_expr(&parse(s).unwrap())
    }

    #[test]
    fn advection_tables() {
        assert_eq!(
            navier_stokes_advection("u1", 0),
            p("u1_0*du1dx0 + u2_0*du1dy0 + u3_0*du1dz0")
        );
        assert_eq!(navier_stokes_advection("u2", 1).len(), 6);
        assert_eq!(navier_stokes_advection("u3", 2).len(), 9);
        assert!(navier_stokes_advection("u1", 2).is_homogeneous(2));
    }

    #[test]
    fn two_variable_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = MultiComponentSet::<f64>::random(&mut rng, &["a", "b"], 4);
        let e = parse("a*b").unwrap();
        let q = QuadratureConfig::default();
        for n in 0..4 {
            let want: Complex64 = (0..=n)
                .map(|k| c.get("a").unwrap().values()[k] * c.get("b").unwrap().values()[n - k])
                .sum();
            let direct = gen_fourier_direct_multi(&e, &c, n, &q).unwrap();
            let nested = gen_fourier_recursive_multi(&e, &c, n, &q).unwrap();
            let product = gen_product_multi(&c, &["a", "b"], n).unwrap();
            for x in [direct, nested, product] {
                assert!((x - want).norm() < 1e-13 * want.norm());
            }
        }
    }

    #[test]
    fn missing_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = MultiComponentSet::<f64>::random(&mut rng, &["u1", "u2", "u3", "du1dx", "du1dy"], 3);
        let err = navier_stokes_advection_numeric("u1", &c, 1).unwrap_err();
        assert!(err.to_string().contains("du1dz"), "{err}");
        let err = gen_fourier_direct_multi(&parse("a*w").unwrap(), &c, 1, &QuadratureConfig::default());
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn rectangular() {
        let a = ComponentSet::from_reals(&[1.0, 2.0]);
        let b = ComponentSet::from_reals(&[1.0]);
        assert!(MultiComponentSet::new(vec![("a".into(), a.clone()), ("b".into(), b)]).is_err());
        assert!(MultiComponentSet::new(vec![("a".into(), a.clone()), ("a".into(), a)]).is_err());
    }
}
