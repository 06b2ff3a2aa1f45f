//! Expression trees for nonlinearities `N(u)` and `N(u_1, ..., u_m)`.
//!
//! Trees are parsed from text, kept in a canonical normal form, and can be
//! differentiated symbolically and evaluated over complex numbers. The
//! grammar accepted by [`parse`] is documented in `GRAMMAR.md` at the crate
//! root; [`Expr`]'s `Display` emits the same grammar.

mod diff;
mod eval;
mod normalize;
mod parse;
mod print;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use ordered_float::OrderedFloat;

pub use diff::{differentiate, differentiate_wrt, nth_derivative};
pub use eval::{evaluate, Assignment, CompiledExpr, EvalError};
pub use normalize::normalize;
pub use parse::{parse, ParseError};

/// Elementary functions accepted inside `Apply` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }
}

/// A variable occurrence. `conj` marks the complex conjugate `ū`, which is
/// an independent atom for differentiation purposes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: String,
    pub conj: bool,
}

impl Var {
    pub fn plain(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            conj: false,
        }
    }

    pub fn conj(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            conj: true,
        }
    }
}

/// Literal constant. Exact rationals are the norm; complex floating
/// literals are accepted but make the tree inexact (see [`Expr::is_exact`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Rational(BigRational),
    Complex(OrderedFloat<f64>, OrderedFloat<f64>),
}

impl Constant {
    pub fn int(n: i64) -> Self {
        Constant::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Constant::Rational(r) => r.is_zero(),
            Constant::Complex(re, im) => re.0 == 0.0 && im.0 == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Constant::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Constant::Rational(r) => Some(r),
            Constant::Complex(..) => None,
        }
    }

    /// `(re, im)` as `f64`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            Constant::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            Constant::Complex(re, im) => (re.0, im.0),
        }
    }

    pub(crate) fn add(&self, other: &Constant) -> Constant {
        match (self, other) {
            (Constant::Rational(a), Constant::Rational(b)) => Constant::Rational(a + b),
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                Constant::Complex(OrderedFloat(a + c), OrderedFloat(b + d))
            }
        }
    }

    pub(crate) fn mul(&self, other: &Constant) -> Constant {
        match (self, other) {
            (Constant::Rational(a), Constant::Rational(b)) => Constant::Rational(a * b),
            _ => {
                let (a, b) = self.to_f64_pair();
                let (c, d) = other.to_f64_pair();
                Constant::Complex(OrderedFloat(a * c - b * d), OrderedFloat(a * d + b * c))
            }
        }
    }

    pub(crate) fn neg(&self) -> Constant {
        match self {
            Constant::Rational(r) => Constant::Rational(-r),
            Constant::Complex(re, im) => Constant::Complex(OrderedFloat(-re.0), OrderedFloat(-im.0)),
        }
    }

    /// Integer power; `None` for a zero base with negative exponent.
    pub(crate) fn powi(&self, k: i64) -> Option<Constant> {
        if k < 0 && self.is_zero() {
            return None;
        }
        Some(match self {
            Constant::Rational(r) => {
                let e = i32::try_from(k).ok()?;
                Constant::Rational(num_traits::Pow::pow(r, e))
            }
            Constant::Complex(re, im) => {
                let z = num_complex::Complex64::new(re.0, im.0).powi(i32::try_from(k).ok()?);
                Constant::Complex(OrderedFloat(z.re), OrderedFloat(z.im))
            }
        })
    }

    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(self, Constant::Rational(r) if r.is_negative())
    }
}

/// Expression node.
///
/// After [`normalize`]: `Sum`/`Product` are flattened and sorted under the
/// canonical ordering, `Product` carries at most one leading constant,
/// `IntPow` exponents are outside `{0, 1}`, and `Neg` does not occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Constant),
    Var(Var),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    IntPow(Box<Expr>, i64),
    RealPow(Box<Expr>, OrderedFloat<f64>),
    Apply(Func, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(Constant::int(n))
    }

    pub fn rational(r: BigRational) -> Expr {
        Expr::Const(Constant::Rational(r))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(Var::plain(name))
    }

    pub fn conj_var(name: &str) -> Expr {
        Expr::Var(Var::conj(name))
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    pub fn pow(base: Expr, k: i64) -> Expr {
        Expr::IntPow(Box::new(base), k)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    pub fn as_constant(&self) -> Option<&Constant> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(_) => 1,
            Expr::IntPow(..) => 2,
            Expr::RealPow(..) => 3,
            Expr::Apply(..) => 4,
            Expr::Neg(_) => 5,
            Expr::Product(_) => 6,
            Expr::Sum(_) => 7,
        }
    }

    fn child_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 0,
            Expr::Sum(v) | Expr::Product(v) => v.len(),
            Expr::IntPow(..) | Expr::RealPow(..) | Expr::Apply(..) | Expr::Neg(_) => 1,
        }
    }

    /// Every variable occurrence, conjugated or not.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    /// Base names of all variables; `conj(x)` registers `x`.
    pub fn base_names(&self) -> BTreeSet<String> {
        self.variables().into_iter().map(|v| v.name).collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|c| c.collect_vars(out)),
            Expr::IntPow(b, _) | Expr::RealPow(b, _) | Expr::Apply(_, b) | Expr::Neg(b) => {
                b.collect_vars(out)
            }
        }
    }

    pub fn has_conjugate(&self) -> bool {
        self.variables().iter().any(|v| v.conj)
    }

    /// `false` when a complex floating literal occurs anywhere.
    pub fn is_exact(&self) -> bool {
        match self {
            Expr::Const(c) => matches!(c, Constant::Rational(_)),
            Expr::Var(_) => true,
            Expr::Sum(v) | Expr::Product(v) => v.iter().all(Expr::is_exact),
            Expr::IntPow(b, _) | Expr::Apply(_, b) | Expr::Neg(b) => b.is_exact(),
            Expr::RealPow(..) => false,
        }
    }

    /// Total degree when the tree is a polynomial in its variables
    /// (conjugates counted as separate variables), `None` otherwise.
    pub fn polynomial_degree(&self) -> Option<u32> {
        match self {
            Expr::Const(_) => Some(0),
            Expr::Var(_) => Some(1),
            Expr::Sum(v) => v.iter().map(Expr::polynomial_degree).try_fold(0, |m, d| Some(m.max(d?))),
            Expr::Product(v) => v.iter().map(Expr::polynomial_degree).try_fold(0, |s, d| Some(s + d?)),
            Expr::IntPow(b, k) => {
                let d = b.polynomial_degree()?;
                if d == 0 {
                    Some(0)
                } else if *k >= 0 {
                    u32::try_from(*k).ok().map(|k| k * d)
                } else {
                    None
                }
            }
            Expr::RealPow(b, _) | Expr::Apply(_, b) => (b.polynomial_degree()? == 0).then_some(0),
            Expr::Neg(b) => b.polynomial_degree(),
        }
    }

    /// Whether evaluation involves a branch cut or a pole: `ln`, real
    /// powers, or negative integer powers of non-constant subterms.
    pub fn has_branch_or_pole(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) => false,
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(Expr::has_branch_or_pole),
            Expr::IntPow(b, k) => (*k < 0 && !b.variables().is_empty()) || b.has_branch_or_pole(),
            Expr::RealPow(b, _) => !b.variables().is_empty() || b.has_branch_or_pole(),
            Expr::Apply(f, b) => {
                (*f == Func::Ln && !b.variables().is_empty()) || b.has_branch_or_pole()
            }
            Expr::Neg(b) => b.has_branch_or_pole(),
        }
    }

    /// Replace every occurrence of `target` by `with`, then normalize.
    pub fn substitute(&self, target: &Var, with: &Expr) -> Expr {
        normalize(&self.substitute_raw(target, with))
    }

    fn substitute_raw(&self, target: &Var, with: &Expr) -> Expr {
        match self {
            Expr::Var(v) if v == target => with.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|c| c.substitute_raw(target, with)).collect()),
            Expr::Product(v) => {
                Expr::Product(v.iter().map(|c| c.substitute_raw(target, with)).collect())
            }
            Expr::IntPow(b, k) => Expr::IntPow(Box::new(b.substitute_raw(target, with)), *k),
            Expr::RealPow(b, r) => Expr::RealPow(Box::new(b.substitute_raw(target, with)), *r),
            Expr::Apply(f, b) => Expr::Apply(*f, Box::new(b.substitute_raw(target, with))),
            Expr::Neg(b) => Expr::Neg(Box::new(b.substitute_raw(target, with))),
        }
    }
}

/// Canonical ordering: node kind rank, then child count, then children
/// recursively.
impl Ord for Expr {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| self.child_count().cmp(&other.child_count()))
            .then_with(|| match (self, other) {
                (Expr::Const(a), Expr::Const(b)) => a.cmp(b),
                (Expr::Var(a), Expr::Var(b)) => a.cmp(b),
                (Expr::Sum(a), Expr::Sum(b)) | (Expr::Product(a), Expr::Product(b)) => a.cmp(b),
                (Expr::IntPow(a, j), Expr::IntPow(b, k)) => a.cmp(b).then(j.cmp(k)),
                (Expr::RealPow(a, r), Expr::RealPow(b, s)) => a.cmp(b).then(r.cmp(s)),
                (Expr::Apply(f, a), Expr::Apply(g, b)) => f.cmp(g).then_with(|| a.cmp(b)),
                (Expr::Neg(a), Expr::Neg(b)) => a.cmp(b),
                _ => unreachable!("equal kind ranks imply equal variants"),
            })
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
