use num_traits::Zero;
use ordered_float::OrderedFloat;

use super::{Constant, Expr, Func};

/// Bring an expression into canonical form.
///
/// Flattens and sorts sums and products, folds constants, merges like terms
/// and like factors, and applies the power rules that hold for integer
/// exponents. No identities beyond that (no trig rewrites, no factoring,
/// no distribution of products over sums). Idempotent.
pub fn normalize(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(c) => normalize_product(vec![Expr::int(-1), normalize(c)]),
        Expr::Sum(children) => normalize_sum(children.iter().map(normalize).collect()),
        Expr::Product(children) => normalize_product(children.iter().map(normalize).collect()),
        Expr::IntPow(b, k) => normalize_intpow(normalize(b), *k),
        Expr::RealPow(b, r) => normalize_realpow(normalize(b), *r),
        Expr::Apply(f, a) => normalize_apply(*f, normalize(a)),
    }
}

/// Split a normalized term into its constant coefficient and the rest.
/// `None` for the rest means the term is a bare constant.
pub(crate) fn split_coefficient(term: Expr) -> (Constant, Option<Expr>) {
    match term {
        Expr::Const(c) => (c, None),
        Expr::Product(mut factors) => {
            if let Some(Expr::Const(_)) = factors.first() {
                let Expr::Const(c) = factors.remove(0) else {
                    unreachable!()
                };
                let rest = if factors.len() == 1 {
                    factors.pop().unwrap()
                } else {
                    Expr::Product(factors)
                };
                (c, Some(rest))
            } else {
                (Constant::int(1), Some(Expr::Product(factors)))
            }
        }
        other => (Constant::int(1), Some(other)),
    }
}

/// Rebuild `coefficient * rest` for already-normalized pieces.
pub(crate) fn with_coefficient(c: Constant, rest: Option<Expr>) -> Expr {
    match rest {
        None => Expr::Const(c),
        Some(r) if c.is_one() => r,
        Some(_) if c.is_zero() => Expr::Const(c),
        Some(Expr::Product(mut fs)) => {
            fs.insert(0, Expr::Const(c));
            Expr::Product(fs)
        }
        Some(r) => Expr::Product(vec![Expr::Const(c), r]),
    }
}

fn normalize_sum(children: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(children.len());
    for c in children {
        match c {
            Expr::Sum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }

    // Like terms share the same non-constant part.
    let mut constant = Constant::int(0);
    let mut collected: Vec<(Expr, Constant)> = Vec::new();
    for term in flat {
        let (c, rest) = split_coefficient(term);
        match rest {
            None => constant = constant.add(&c),
            Some(r) => match collected.iter_mut().find(|(x, _)| *x == r) {
                Some((_, acc)) => *acc = acc.add(&c),
                None => collected.push((r, c)),
            },
        }
    }

    let mut terms: Vec<Expr> = collected
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| with_coefficient(c, Some(r)))
        .collect();
    if !constant.is_zero() {
        terms.push(Expr::Const(constant));
    }
    terms.sort();
    match terms.len() {
        0 => Expr::zero(),
        1 => terms.pop().unwrap(),
        _ => Expr::Sum(terms),
    }
}

fn normalize_product(children: Vec<Expr>) -> Expr {
    let mut flat = Vec::with_capacity(children.len());
    for c in children {
        match c {
            Expr::Product(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }

    let mut coefficient = Constant::int(1);
    // (base, integer exponent); real powers are kept as opaque bases.
    let mut bases: Vec<(Expr, i64)> = Vec::new();
    for f in flat {
        let (base, k) = match f {
            Expr::Const(c) => {
                coefficient = coefficient.mul(&c);
                continue;
            }
            Expr::IntPow(b, k) => (*b, k),
            other => (other, 1),
        };
        match bases.iter_mut().find(|(b, _)| *b == base) {
            Some((_, acc)) => *acc += k,
            None => bases.push((base, k)),
        }
    }
    if coefficient.is_zero() {
        return Expr::Const(coefficient);
    }

    let mut factors: Vec<Expr> = Vec::new();
    for (b, k) in bases {
        match k {
            0 => {}
            1 => factors.push(b),
            _ => match normalize_intpow(b, k) {
                Expr::Const(c) => coefficient = coefficient.mul(&c),
                Expr::Product(fs) => {
                    for f in fs {
                        match f {
                            Expr::Const(c) => coefficient = coefficient.mul(&c),
                            other => factors.push(other),
                        }
                    }
                }
                other => factors.push(other),
            },
        }
    }
    factors.sort();
    if coefficient.is_zero() {
        return Expr::Const(coefficient);
    }
    if factors.is_empty() {
        return Expr::Const(coefficient);
    }
    if !coefficient.is_one() {
        factors.insert(0, Expr::Const(coefficient));
    }
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Expr::Product(factors)
    }
}

fn normalize_intpow(base: Expr, k: i64) -> Expr {
    match (base, k) {
        (_, 0) => Expr::one(),
        (b, 1) => b,
        (Expr::Const(c), k) => match c.powi(k) {
            Some(v) => Expr::Const(v),
            None => Expr::IntPow(Box::new(Expr::Const(c)), k),
        },
        (Expr::IntPow(b, j), k) => normalize_intpow(*b, j * k),
        (Expr::Product(fs), k) => {
            normalize_product(fs.into_iter().map(|f| normalize_intpow(f, k)).collect())
        }
        (b, k) => Expr::IntPow(Box::new(b), k),
    }
}

fn normalize_realpow(base: Expr, r: OrderedFloat<f64>) -> Expr {
    if r.0.fract() == 0.0 && r.0.abs() < i64::MAX as f64 {
        return normalize_intpow(base, r.0 as i64);
    }
    Expr::RealPow(Box::new(base), r)
}

fn normalize_apply(f: Func, arg: Expr) -> Expr {
    if let Expr::Const(Constant::Rational(r)) = &arg {
        if r.is_zero() {
            match f {
                Func::Exp | Func::Cos | Func::Cosh => return Expr::one(),
                Func::Sin | Func::Sinh => return Expr::zero(),
                Func::Ln => {}
            }
        } else if f == Func::Ln && *r == num_rational::BigRational::from_integer(1.into()) {
            return Expr::zero();
        }
    }
    Expr::Apply(f, Box::new(arg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn n(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn flattens_and_collects() {
        assert_eq!(n("u + u"), n("2*u"));
        assert_eq!(n("u*u*u"), n("u^3"));
        assert_eq!(n("u^2*u^-2"), Expr::one());
        assert_eq!(n("(a + b) + c"), n("a + (b + c)"));
        assert_eq!(n("a*b - b*a"), Expr::zero());
    }

    #[test]
    fn exponent_rules() {
        assert_eq!(n("u^1"), n("u"));
        assert_eq!(n("u^0"), Expr::one());
        assert_eq!(n("(u^2)^3"), n("u^6"));
        assert_eq!(n("(2*u)^-1"), n("1/2*u^-1"));
        assert_eq!(n("u^2.0"), n("u^2"));
    }

    #[test]
    fn folds_trivial_function_values() {
        assert_eq!(n("exp(0) + sin(0) + ln(1)"), Expr::one());
    }

    #[test]
    fn idempotent_on_samples() {
        for s in [
            "u^2*conj(u)",
            "cosh(u)+sin(u)",
            "exp(-sin(u/2)^2)",
            "u2/u0 - u1^2/(2*u0^2)",
            "(1+u)^-2*(1+u)^3",
            "-(a - b)*(c + 2i)",
        ] {
            let once = n(s);
            assert_eq!(normalize(&once), once, "{s}");
        }
    }
}
