//! Canonical symbolic Adomian polynomials.
//!
//! A polynomial is a map from monomials to exact rational coefficients. A
//! monomial is a product of symbols raised to integer powers, where a
//! symbol is a component `u_k` / `ū_k`, an opaque derivative `N^(k)(u_0)`,
//! or an atom: any non-polynomial subexpression such as `sin(u0)`. Like
//! terms are merged on construction and zero coefficients dropped, so
//! structural equality is canonical equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Assignment, Constant, Expr, Var};
use crate::scalar::Real;
use crate::series::Coefficient;

/// Component `u_k` of a decomposed series named `series`, or its conjugate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub series: String,
    pub index: usize,
    pub conj: bool,
}

impl Component {
    pub fn new(series: &str, index: usize) -> Self {
        Component {
            series: series.to_string(),
            index,
            conj: false,
        }
    }

    pub fn conjugate(series: &str, index: usize) -> Self {
        Component {
            series: series.to_string(),
            index,
            conj: true,
        }
    }

    /// Variable name used in expressions: `u3`, or `u1_3` when the series
    /// name itself ends in a digit.
    pub fn var_name(&self) -> String {
        if self.series.ends_with(|c: char| c.is_ascii_digit()) {
            format!("{}_{}", self.series, self.index)
        } else {
            format!("{}{}", self.series, self.index)
        }
    }

    /// Inverse of [`Component::var_name`]; `None` if the name carries no
    /// trailing index.
    pub fn from_var(v: &Var) -> Option<Component> {
        let name = v.name.as_str();
        let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
        if stem.len() == name.len() {
            return None;
        }
        let index = name[stem.len()..].parse().ok()?;
        let series = stem.strip_suffix('_').filter(|s| !s.is_empty()).unwrap_or(stem);
        if series.is_empty() {
            return None;
        }
        Some(Component {
            series: series.to_string(),
            index,
            conj: v.conj,
        })
    }

    pub fn to_var(&self) -> Var {
        Var {
            name: self.var_name(),
            conj: self.conj,
        }
    }

    /// Key used in structured output: `u_3`, `conj_u_3`.
    pub fn key(&self) -> String {
        let base = format!("{}_{}", self.series, self.index);
        if self.conj {
            format!("conj_{base}")
        } else {
            base
        }
    }

    pub fn from_key(key: &str) -> Option<Component> {
        let (conj, rest) = match key.strip_prefix("conj_") {
            Some(r) => (true, r),
            None => (false, key),
        };
        let (series, index) = rest.rsplit_once('_')?;
        if series.is_empty() {
            return None;
        }
        Some(Component {
            series: series.to_string(),
            index: index.parse().ok()?,
            conj,
        })
    }
}

/// Multiplicative building block of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Comp(Component),
    /// Opaque `func^(order)(series_0)`.
    Deriv {
        func: String,
        order: usize,
        series: String,
    },
    /// Canonical non-polynomial subexpression.
    Atom(Expr),
}

impl Symbol {
    pub fn deriv(func: &str, order: usize, series: &str) -> Symbol {
        Symbol::Deriv {
            func: func.to_string(),
            order,
            series: series.to_string(),
        }
    }

    fn write(&self, out: &mut impl Write) -> fmt::Result {
        match self {
            Symbol::Comp(c) => {
                if c.conj {
                    write!(out, "conj({})", c.var_name())
                } else {
                    out.write_str(&c.var_name())
                }
            }
            Symbol::Deriv { func, order, series } => {
                let arg = Component::new(series, 0).var_name();
                if *order == 0 {
                    write!(out, "{func}({arg})")
                } else {
                    write!(out, "{func}^({order})({arg})")
                }
            }
            Symbol::Atom(e @ (Expr::Var(_) | Expr::Apply(..))) => write!(out, "{e}"),
            Symbol::Atom(e) => write!(out, "({e})"),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Product of symbols with non-zero integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Symbol, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn of(symbol: Symbol, exp: i64) -> Self {
        let mut m = BTreeMap::new();
        if exp != 0 {
            m.insert(symbol, exp);
        }
        Monomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<Symbol, i64> {
        &self.0
    }

    pub fn exponent(&self, s: &Symbol) -> i64 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            let slot = m.entry(s.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                m.remove(s);
            }
        }
        Monomial(m)
    }

    fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), e * k)).collect())
    }

    /// Sum of component indices weighted by their exponents.
    pub fn weight(&self) -> i64 {
        self.0
            .iter()
            .filter_map(|(s, e)| match s {
                Symbol::Comp(c) => Some(c.index as i64 * e),
                _ => None,
            })
            .sum()
    }

    /// Total positive exponent of components of `series` with index at
    /// least one.
    fn raised_degree(&self, series: &str) -> i64 {
        self.0
            .iter()
            .filter_map(|(s, e)| match s {
                Symbol::Comp(c) if c.series == series && c.index >= 1 && *e > 0 => Some(*e),
                _ => None,
            })
            .sum()
    }

    /// Remove one factor of `s` (possibly leaving a negative exponent).
    fn without_one(&self, s: &Symbol) -> Monomial {
        self.mul(&Monomial::of(s.clone(), -1))
    }
}

/// Canonical sum of `coefficient * monomial` terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AdomianPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AdomianPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = AdomianPoly::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(rat(1), Monomial::of(s, 1))
    }

    pub fn component(series: &str, index: usize) -> Self {
        Self::symbol(Symbol::Comp(Component::new(series, index)))
    }

    pub fn conj_component(series: &str, index: usize) -> Self {
        Self::symbol(Symbol::Comp(Component::conjugate(series, index)))
    }

    pub fn term(coeff: BigRational, m: Monomial) -> Self {
        let mut p = AdomianPoly::default();
        p.add_term(m, coeff);
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            // Re-find the key to drop it; the entry borrow has ended.
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("just inserted");
            self.terms.remove(&key);
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in display order: by the number of factors `x_k`, `k >= 1`,
    /// of the alphabetically first series `x` (the derivative order of the
    /// term in the partition formula), then canonically.
    pub fn ordered_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let lead = self
            .terms
            .keys()
            .flat_map(|m| m.0.keys())
            .filter_map(|s| match s {
                Symbol::Comp(c) => Some(c.series.as_str()),
                _ => None,
            })
            .min()
            .map(str::to_string);
        let mut v: Vec<_> = self.terms.iter().collect();
        if let Some(lead) = lead {
            v.sort_by_key(|(m, _)| m.raised_degree(&lead));
        }
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return AdomianPoly::default();
        }
        AdomianPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self
                .try_inverse()
                .ok_or_else(|| Error::Singular(format!("cannot invert `{self}`")))?
                .powi(-k);
        }
        let mut acc = AdomianPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Component weight of every term, i.e. the Adomian order, if all
    /// terms agree. The zero polynomial has no order.
    pub fn order(&self) -> Option<i64> {
        let mut weights = self.terms.keys().map(Monomial::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Every term has component weight `n` (vacuous for zero).
    pub fn is_homogeneous(&self, n: i64) -> bool {
        self.terms.keys().all(|m| m.weight() == n)
    }

    pub fn components(&self) -> BTreeSet<Component> {
        self.terms
            .keys()
            .flat_map(|m| m.0.keys())
            .filter_map(|s| match s {
                Symbol::Comp(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn has_opaque(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0.keys().any(|s| matches!(s, Symbol::Deriv { .. })))
    }

    /// Apply a derivation: the additive map fixed by `image` on symbols and
    /// extended by the Leibniz rule, `D(s^e) = e s^(e-1) D(s)`.
    pub fn derivation(&self, image: impl Fn(&Symbol) -> Result<AdomianPoly>) -> Result<AdomianPoly> {
        let mut out = AdomianPoly::default();
        let mut cache: BTreeMap<Symbol, AdomianPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (s, e) in &m.0 {
                if !cache.contains_key(s) {
                    cache.insert(s.clone(), image(s)?);
                }
                let ds = &cache[s];
                if ds.is_empty() {
                    continue;
                }
                let rest = AdomianPoly::term(c * rat(*e), m.without_one(s));
                out = out + &rest * ds;
            }
        }
        Ok(out)
    }

    /// Replace symbols: each `s^e` with `replace(s)^e` where `replace`
    /// returns `Some`, untouched otherwise.
    pub fn map_symbols(&self, replace: impl Fn(&Symbol) -> Result<Option<AdomianPoly>>) -> Result<AdomianPoly> {
        let mut out = AdomianPoly::default();
        for (m, c) in &self.terms {
            let mut acc = AdomianPoly::constant(c.clone());
            for (s, e) in &m.0 {
                let factor = match replace(s)? {
                    Some(p) => p.powi(*e)?,
                    None => AdomianPoly::term(rat(1), Monomial::of(s.clone(), *e)),
                };
                acc = &acc * &factor;
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Expand an expression into canonical polynomial form. Variables whose
    /// names carry an index (`u0`, `u1_2`) become components; every
    /// non-polynomial subexpression becomes an atom with a canonical
    /// argument.
    pub fn from_expr(e: &Expr) -> AdomianPoly {
        match e {
            Expr::Const(Constant::Rational(r)) => AdomianPoly::constant(r.clone()),
            Expr::Const(c) => AdomianPoly::symbol(Symbol::Atom(Expr::Const(c.clone()))),
            Expr::Var(v) => match Component::from_var(v) {
                Some(c) => AdomianPoly::symbol(Symbol::Comp(c)),
                None => AdomianPoly::symbol(Symbol::Atom(e.clone())),
            },
            Expr::Sum(ts) => ts.iter().fold(AdomianPoly::default(), |acc, t| acc + Self::from_expr(t)),
            Expr::Product(fs) => fs.iter().fold(AdomianPoly::one(), |acc, f| &acc * &Self::from_expr(f)),
            Expr::Neg(b) => -Self::from_expr(b),
            Expr::IntPow(b, k) => {
                let base = Self::from_expr(b);
                if *k >= 0 || base.len() == 1 {
                    base.powi(*k).expect("single terms and non-negative powers never fail")
                } else {
                    let atom = base.to_expr().expect("expanded expressions carry no opaque symbols");
                    AdomianPoly::term(rat(1), Monomial::of(Symbol::Atom(atom), *k))
                }
            }
            Expr::RealPow(b, r) => {
                let base = Self::from_expr(b).to_expr().expect("no opaque symbols");
                AdomianPoly::symbol(Symbol::Atom(Expr::RealPow(Box::new(base), *r)))
            }
            Expr::Apply(f, a) => {
                let arg = Self::from_expr(a).to_expr().expect("no opaque symbols");
                match expr::normalize(&Expr::apply(*f, arg)) {
                    Expr::Apply(..) => {}
                    folded => return Self::from_expr(&folded),
                }
                let arg = Self::from_expr(a).to_expr().expect("no opaque symbols");
                AdomianPoly::symbol(Symbol::Atom(Expr::apply(*f, arg)))
            }
        }
    }

    /// Back to a normalized expression; fails on opaque derivative symbols.
    pub fn to_expr(&self) -> Result<Expr> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut factors = vec![Expr::rational(c.clone())];
            for (s, e) in &m.0 {
                let base = match s {
                    Symbol::Comp(comp) => Expr::Var(comp.to_var()),
                    Symbol::Atom(x) => x.clone(),
                    Symbol::Deriv { .. } => {
                        return Err(Error::Unsupported(format!(
                            "opaque factor `{s}` has no expression form"
                        )))
                    }
                };
                factors.push(Expr::pow(base, *e));
            }
            terms.push(Expr::Product(factors));
        }
        Ok(expr::normalize(&Expr::Sum(terms)))
    }

    /// Numeric value given component values. Atoms are evaluated with
    /// their indexed variables looked up the same way.
    pub fn evaluate<T: Real>(&self, lookup: impl Fn(&Component) -> Option<Complex<T>>) -> Result<Complex<T>> {
        let value_of = |s: &Symbol| -> Result<Complex<T>> {
            match s {
                Symbol::Comp(c) => lookup(c).ok_or_else(|| {
                    Error::Input(format!("no value for component `{}`", Symbol::Comp(c.clone())))
                }),
                Symbol::Deriv { .. } => Err(Error::Unsupported(format!(
                    "cannot evaluate opaque factor `{s}`; substitute a concrete nonlinearity first"
                ))),
                Symbol::Atom(e) => {
                    let mut a = Assignment::new();
                    for v in e.variables() {
                        let comp = Component::from_var(&v)
                            .ok_or_else(|| Error::Input(format!("no value for variable `{}`", v.name)))?;
                        let value = lookup(&comp).ok_or_else(|| {
                            Error::Input(format!("no value for component `{}`", Symbol::Comp(comp.clone())))
                        })?;
                        a.set(v, value);
                    }
                    Ok(expr::evaluate(e, &a)?)
                }
            }
        };

        let mut cache: BTreeMap<&Symbol, Complex<T>> = BTreeMap::new();
        let mut total = Complex::new(T::zero(), T::zero());
        for (m, c) in &self.terms {
            let mut prod = Complex::new(ratio_to_real::<T>(c), T::zero());
            for (s, e) in &m.0 {
                let v = match cache.get(s) {
                    Some(v) => *v,
                    None => {
                        let v = value_of(s)?;
                        cache.insert(s, v);
                        v
                    }
                };
                if *e < 0 && v.norm_sqr().is_zero() {
                    return Err(Error::Eval(expr::EvalError::DivZero(s.to_string())));
                }
                prod = prod * v.powi(*e as i32);
            }
            total = total + prod;
        }
        Ok(total)
    }
}

fn ratio_to_real<T: Real>(c: &BigRational) -> T {
    T::from_f64_lossy(c.to_f64().unwrap_or(f64::NAN))
}

impl Zero for AdomianPoly {
    fn zero() -> Self {
        AdomianPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for AdomianPoly {
    fn one() -> Self {
        AdomianPoly::constant(rat(1))
    }
}

impl Coefficient for AdomianPoly {
    fn from_int(n: i64) -> Self {
        AdomianPoly::constant(rat(n))
    }

    /// Single terms invert exactly. Multi-term polynomials without opaque
    /// symbols invert to an atom `(p)^-1`; anything else is not invertible.
    fn try_inverse(&self) -> Option<Self> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                Some(AdomianPoly::term(c.recip(), m.pow(-1)))
            }
            _ => {
                let e = self.to_expr().ok()?;
                Some(AdomianPoly::term(rat(1), Monomial::of(Symbol::Atom(e), -1)))
            }
        }
    }
}

impl Add for AdomianPoly {
    type Output = AdomianPoly;

    fn add(mut self, rhs: AdomianPoly) -> AdomianPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for AdomianPoly {
    type Output = AdomianPoly;

    fn sub(self, rhs: AdomianPoly) -> AdomianPoly {
        self + (-rhs)
    }
}

impl Neg for AdomianPoly {
    type Output = AdomianPoly;

    fn neg(self) -> AdomianPoly {
        AdomianPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &AdomianPoly {
    type Output = AdomianPoly;

    fn mul(self, rhs: &AdomianPoly) -> AdomianPoly {
        let mut out = AdomianPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for AdomianPoly {
    type Output = AdomianPoly;

    fn mul(self, rhs: AdomianPoly) -> AdomianPoly {
        &self * &rhs
    }
}

fn write_term(out: &mut impl Write, m: &Monomial, c: &BigRational, leading: bool) -> fmt::Result {
    let negative = c.is_negative();
    if leading {
        if negative {
            out.write_char('-')?;
        }
    } else {
        out.write_str(if negative { " - " } else { " + " })?;
    }
    let numer = c.numer().abs();
    let denom = c.denom().clone();

    let mut top: Vec<String> = Vec::new();
    let mut bottom: Vec<String> = Vec::new();
    for (s, e) in &m.0 {
        let mut piece = s.to_string();
        if e.abs() != 1 {
            write!(piece, "^{}", e.abs())?;
        }
        if *e > 0 {
            top.push(piece);
        } else {
            bottom.push(piece);
        }
    }
    if !numer.is_one() || top.is_empty() {
        top.insert(0, numer.to_string());
    }
    if !denom.is_one() {
        bottom.insert(0, denom.to_string());
    }
    out.write_str(&top.join("*"))?;
    match bottom.len() {
        0 => Ok(()),
        1 => write!(out, "/{}", bottom[0]),
        _ => write!(out, "/({})", bottom.join("*")),
    }
}

impl fmt::Display for AdomianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.ordered_terms().into_iter().enumerate() {
            write_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> AdomianPoly {
        AdomianPoly::from_expr(&parse(s).unwrap())
    }

    #[test]
    fn component_names_round_trip() {
        for c in [
            Component::new("u", 3),
            Component::new("u1", 0),
            Component::conjugate("u", 12),
            Component::new("dudx", 2),
        ] {
            assert_eq!(Component::from_var(&c.to_var()), Some(c.clone()));
            assert_eq!(Component::from_key(&c.key()), Some(c.clone()));
        }
        assert_eq!(Component::from_var(&Var::plain("x")), None);
        assert_eq!(Component::from_var(&Var::plain("12")), None);
    }

    #[test]
    fn expansion_is_canonical() {
        assert_eq!(p("(u0 + u1)^2"), p("u0^2 + 2*u0*u1 + u1^2"));
        assert_eq!(p("u1*(sinh(u0) + cos(u0))"), p("cos(u0)*u1 + u1*sinh(u0)"));
        assert_eq!(p("u2/u0 - u1^2/(2*u0^2)").len(), 2);
        assert_eq!(p("(1 + u0)^-1 * (u0 + 1)^-1"), p("(u0+1)^-2"));
        assert!(p("u0 - u0").is_empty());
    }

    #[test]
    fn weights_and_order() {
        let a = p("u0^2*u3 + 2*u0*u1*u2 + conj(u3)*u0");
        assert_eq!(a.order(), Some(3));
        assert!(a.is_homogeneous(3));
        assert_eq!(p("u1 + u2").order(), None);
        assert_eq!(p("u0^-2*u1^2").order(), Some(2));
    }

    #[test]
    fn printing() {
        assert_eq!(p("u2/u0 - u1^2/(2*u0^2)").to_string(), "u2/u0 - u1^2/(2*u0^2)");
        assert_eq!(p("2*u0*u3 + 2*u1*u2").to_string(), "2*u0*u3 + 2*u1*u2");
        assert_eq!(p("u1^3*sinh(u0)/6").to_string(), "u1^3*sinh(u0)/6");
        assert_eq!(AdomianPoly::zero().to_string(), "0");
        let opaque = AdomianPoly::symbol(Symbol::deriv("N", 3, "u"));
        assert_eq!(opaque.to_string(), "N^(3)(u0)");
    }

    #[test]
    fn printed_form_reparses() {
        for s in [
            "u2/u0 - u1^2/(2*u0^2)",
            "u0^2*conj(u1) + 2*u0*conj(u0)*u1",
            "(u2 + u1^2/2)*exp(u0)",
            "u1^3*(sinh(u0) - cos(u0))/6 + u3*(sinh(u0) + cos(u0))",
            "u1*(u0 + 1)^-2 + u0^0.5*u1",
        ] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s} -> {a}");
        }
    }

    #[test]
    fn derivation_is_leibniz() {
        // D(u0^2 u1) with D(u_k) = (k+1) u_{k+1}
        let a = p("u0^2*u1");
        let d = a
            .derivation(|s| match s {
                Symbol::Comp(c) => Ok(AdomianPoly::component(&c.series, c.index + 1).scale(&rat(c.index as i64 + 1))),
                _ => Ok(AdomianPoly::zero()),
            })
            .unwrap();
        assert_eq!(d, p("2*u0*u1^2 + 2*u0^2*u2"));
    }

    #[test]
    fn evaluation() {
        use num_complex::Complex64;
        let a = p("u1*cos(u0) - u2/u0");
        let vals = [Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)];
        let v = a.evaluate(|c| vals.get(c.index).copied()).unwrap();
        assert!((v.re - (2.0 * 0.5f64.cos() - 2.0)).abs() < 1e-15);
        let opaque = AdomianPoly::symbol(Symbol::deriv("N", 1, "u"));
        assert!(opaque.evaluate(|c| vals.get(c.index).copied()).is_err());
    }

    #[test]
    fn inverse() {
        let a = p("2*u0^2");
        assert_eq!(&a * &a.try_inverse().unwrap(), AdomianPoly::one());
        assert!(AdomianPoly::zero().try_inverse().is_none());
        let opaque = AdomianPoly::symbol(Symbol::deriv("N", 0, "u")) + AdomianPoly::one();
        assert!(opaque.try_inverse().is_none());
    }
}
