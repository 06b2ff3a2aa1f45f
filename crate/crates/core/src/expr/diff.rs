use num_rational::BigRational;
use ordered_float::OrderedFloat;

use super::{normalize, Expr, Func, Var};

/// `d e / d var` for a plain (non-conjugated) variable. Conjugated
/// occurrences of `var` are constants.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    differentiate_wrt(e, &Var::plain(var))
}

/// Derivative with respect to an arbitrary variable atom, conjugated or
/// not. Every other atom, including the opposite-conjugation twin of
/// `var`, is held constant.
pub fn differentiate_wrt(e: &Expr, var: &Var) -> Expr {
    normalize(&raw(e, var))
}

/// `k`-fold derivative.
pub fn nth_derivative(e: &Expr, var: &str, k: usize) -> Expr {
    let mut d = e.clone();
    for _ in 0..k {
        d = differentiate(&d, var);
    }
    d
}

fn depends_on(e: &Expr, var: &Var) -> bool {
    match e {
        Expr::Const(_) => false,
        Expr::Var(v) => v == var,
        Expr::Sum(v) | Expr::Product(v) => v.iter().any(|c| depends_on(c, var)),
        Expr::IntPow(b, _) | Expr::RealPow(b, _) | Expr::Apply(_, b) | Expr::Neg(b) => {
            depends_on(b, var)
        }
    }
}

fn raw(e: &Expr, var: &Var) -> Expr {
    if !depends_on(e, var) {
        return Expr::zero();
    }
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Var(v) => {
            if v == var {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(terms) => Expr::Sum(terms.iter().map(|t| raw(t, var)).collect()),
        Expr::Product(fs) => {
            let mut terms = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                if !depends_on(f, var) {
                    continue;
                }
                let mut factors = fs.clone();
                factors[i] = raw(f, var);
                terms.push(Expr::Product(factors));
            }
            Expr::Sum(terms)
        }
        Expr::IntPow(b, k) => Expr::Product(vec![
            Expr::int(*k),
            Expr::IntPow(b.clone(), k - 1),
            raw(b, var),
        ]),
        Expr::RealPow(b, r) => Expr::Product(vec![
            Expr::rational(BigRational::from_float(r.0).expect("finite exponent")),
            Expr::RealPow(b.clone(), OrderedFloat(r.0 - 1.0)),
            raw(b, var),
        ]),
        Expr::Apply(f, a) => {
            let outer = match f {
                Func::Exp => e.clone(),
                Func::Ln => Expr::IntPow(a.clone(), -1),
                Func::Sin => Expr::Apply(Func::Cos, a.clone()),
                Func::Cos => Expr::Neg(Box::new(Expr::Apply(Func::Sin, a.clone()))),
                Func::Sinh => Expr::Apply(Func::Cosh, a.clone()),
                Func::Cosh => Expr::Apply(Func::Sinh, a.clone()),
            };
            Expr::Product(vec![outer, raw(a, var)])
        }
        Expr::Neg(c) => Expr::Neg(Box::new(raw(c, var))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn d(s: &str) -> Expr {
        differentiate(&parse(s).unwrap(), "u")
    }

    #[test]
    fn power_rule() {
        assert_eq!(d("u^5"), parse("5*u^4").unwrap());
        assert_eq!(d("u"), Expr::one());
        assert_eq!(d("7"), Expr::zero());
    }

    #[test]
    fn elementary_functions() {
        assert_eq!(d("cosh(u) + sin(u)"), parse("sinh(u) + cos(u)").unwrap());
        assert_eq!(d("ln(u)"), parse("u^-1").unwrap());
        assert_eq!(d("exp(2*u)"), parse("2*exp(2*u)").unwrap());
        assert_eq!(d("cos(u)"), parse("-sin(u)").unwrap());
    }

    #[test]
    fn conjugate_is_independent() {
        assert_eq!(d("conj(u)"), Expr::zero());
        assert_eq!(d("u^2*conj(u)"), parse("2*u*conj(u)").unwrap());
        let dc = differentiate_wrt(&parse("u^2*conj(u)").unwrap(), &Var::conj("u"));
        assert_eq!(dc, parse("u^2").unwrap());
    }

    #[test]
    fn real_power_rule_is_inexact() {
        let e = d("u^0.5");
        assert!(!e.is_exact());
    }
}
