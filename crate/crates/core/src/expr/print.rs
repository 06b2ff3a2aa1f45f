use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::normalize::{split_coefficient, with_coefficient};
use super::{Constant, Expr};

// Binding strength of the printed form; parenthesize when a child binds
// weaker than its context requires.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn constant_strength(c: &Constant) -> u8 {
    match c {
        Constant::Rational(r) if r.is_negative() => UNARY,
        Constant::Rational(r) if !r.is_integer() => PRODUCT,
        Constant::Rational(_) => ATOM,
        Constant::Complex(re, im) if re.0 == 0.0 => {
            if im.0 < 0.0 {
                UNARY
            } else {
                ATOM
            }
        }
        Constant::Complex(..) => ATOM,
    }
}

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) => constant_strength(c),
        Expr::Var(_) | Expr::Apply(..) => ATOM,
        Expr::IntPow(..) | Expr::RealPow(..) => POWER,
        Expr::Neg(_) => UNARY,
        Expr::Product(fs) => match fs.first() {
            Some(Expr::Const(c)) if c.is_negative_rational() => UNARY,
            _ => PRODUCT,
        },
        Expr::Sum(_) => SUM,
    }
}

fn write_constant(out: &mut impl Write, c: &Constant) -> fmt::Result {
    match c {
        Constant::Rational(r) => {
            if r.is_integer() {
                write!(out, "{}", r.numer())
            } else {
                write!(out, "{}/{}", r.numer(), r.denom())
            }
        }
        Constant::Complex(re, im) if re.0 == 0.0 => write!(out, "{}i", im.0),
        Constant::Complex(re, im) => {
            if im.0 < 0.0 {
                write!(out, "({}-{}i)", re.0, -im.0)
            } else {
                write!(out, "({}+{}i)", re.0, im.0)
            }
        }
    }
}

fn write_child(out: &mut impl Write, e: &Expr, min: u8) -> fmt::Result {
    if strength(e) < min {
        out.write_char('(')?;
        write_expr(out, e)?;
        out.write_char(')')
    } else {
        write_expr(out, e)
    }
}

fn is_negative_term(e: &Expr) -> bool {
    match e {
        Expr::Const(c) => c.is_negative_rational(),
        Expr::Product(fs) => matches!(fs.first(), Some(Expr::Const(c)) if c.is_negative_rational()),
        _ => false,
    }
}

fn write_expr(out: &mut impl Write, e: &Expr) -> fmt::Result {
    match e {
        Expr::Const(c) => write_constant(out, c),
        Expr::Var(v) => {
            if v.conj {
                write!(out, "conj({})", v.name)
            } else {
                out.write_str(&v.name)
            }
        }
        Expr::Sum(terms) => {
            // Constant term last, as conventionally written.
            let ordered = terms
                .iter()
                .filter(|t| !matches!(t, Expr::Const(_)))
                .chain(terms.iter().filter(|t| matches!(t, Expr::Const(_))));
            for (i, t) in ordered.enumerate() {
                if i > 0 && is_negative_term(t) {
                    out.write_str(" - ")?;
                    let (c, rest) = split_coefficient(t.clone());
                    write_child(out, &with_coefficient(c.neg(), rest), PRODUCT)?;
                } else {
                    if i > 0 {
                        out.write_str(" + ")?;
                    }
                    write_child(out, t, PRODUCT)?;
                }
            }
            Ok(())
        }
        Expr::Product(fs) => {
            let mut rest = &fs[..];
            if let Some(Expr::Const(Constant::Rational(r))) = fs.first() {
                if (-r).is_one() {
                    out.write_char('-')?;
                    rest = &fs[1..];
                }
            }
            for (i, f) in rest.iter().enumerate() {
                if i > 0 {
                    out.write_char('*')?;
                }
                // A leading constant may be a fraction or negative; later
                // factors must bind at least as tightly as a unary term.
                let min = if i == 0 && matches!(f, Expr::Const(_)) {
                    PRODUCT
                } else {
                    POWER
                };
                write_child(out, f, min)?;
            }
            Ok(())
        }
        Expr::IntPow(b, k) => {
            write_child(out, b, ATOM)?;
            write!(out, "^{k}")
        }
        Expr::RealPow(b, r) => {
            write_child(out, b, ATOM)?;
            write!(out, "^{}", r.0)
        }
        Expr::Apply(f, a) => {
            write!(out, "{}(", f.name())?;
            write_expr(out, a)?;
            out.write_char(')')
        }
        Expr::Neg(c) => {
            out.write_char('-')?;
            write_child(out, c, UNARY)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    #[test]
    fn prints_readably() {
        let cases = [
            ("u^2*conj(u)", "conj(u)*u^2"),
            ("cosh(u)+sin(u)", "sin(u) + cosh(u)"),
            ("u - 1/2", "u - 1/2"),
            ("-u*v", "-u*v"),
            ("u^-2", "u^-2"),
            ("exp(-sin(u/2)^2)", "exp(-sin(1/2*u)^2)"),
            ("(1+u)^3", "(u + 1)^3"),
        ];
        for (src, want) in cases {
            assert_eq!(parse(src).unwrap().to_string(), want, "{src}");
        }
    }

    #[test]
    fn round_trips() {
        for s in [
            "u^2*conj(u)",
            "-3/4*u + 2*v - 1",
            "exp(-sin(u/2)^2)",
            "u^0.5 - u^-0.25",
            "(0.5-2i)*u + 3i",
            "(-1/2)^3*x^-3*(a+b)^-2",
            "-(u + 1)^2",
            "ln(1 + u) / (2 - u)",
        ] {
            let e = parse(s).unwrap();
            let back = parse(&e.to_string()).unwrap();
            assert_eq!(back, e, "{s} printed as {e}");
        }
    }
}
