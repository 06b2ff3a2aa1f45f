use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};
use ordered_float::OrderedFloat;
use thiserror::Error;

use super::{normalize, Constant, Expr, Func, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{name}` at position {pos}")]
    UnknownFunction { pos: usize, name: String },
    #[error("non-integer exponent on negative constant at position {pos}")]
    NegativeBase { pos: usize },
    #[error("exponent at position {pos} must be a real constant")]
    NonConstantExponent { pos: usize },
}

/// Parse and normalize an expression.
///
/// ```
/// use adomian::expr::{parse, Expr};
/// assert_eq!(parse("u*u").unwrap(), Expr::pow(Expr::var("u"), 2));
/// ```
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(normalize(&e))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(Expr::Neg(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat(b'*') {
                factors.push(self.unary()?);
            } else if self.eat(b'/') {
                factors.push(Expr::IntPow(Box::new(self.unary()?), -1));
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp_pos = self.pos;
        let exponent = normalize(&self.unary()?);
        let Some(Constant::Rational(r)) = exponent.as_constant() else {
            return Err(ParseError::NonConstantExponent { pos: exp_pos });
        };
        if r.is_integer() {
            let k = r
                .to_integer()
                .to_i64()
                .ok_or(ParseError::NonConstantExponent { pos: exp_pos })?;
            return Ok(Expr::IntPow(Box::new(base), k));
        }
        if let Some(Constant::Rational(b)) = normalize(&base).as_constant() {
            if b.is_negative() {
                return Err(ParseError::NegativeBase { pos: exp_pos });
            }
        }
        let x = r.to_f64().ok_or(ParseError::NonConstantExponent { pos: exp_pos })?;
        Ok(Expr::RealPow(Box::new(base), OrderedFloat(x)))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                if self.peek() != Some(b'(') {
                    return Ok(Expr::Var(Var::plain(name)));
                }
                self.pos += 1;
                if name == "conj" {
                    let at = self.pos;
                    match self.peek() {
                        Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
                        _ => {
                            return Err(ParseError::Syntax {
                                pos: at,
                                msg: "conj() takes a variable name".into(),
                            })
                        }
                    }
                    let inner = self.ident();
                    self.expect(b')')?;
                    return Ok(Expr::Var(Var::conj(inner)));
                }
                let f = Func::from_name(&name)
                    .ok_or(ParseError::UnknownFunction { pos: start, name })?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::Apply(f, Box::new(arg)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// Decimal literal, read exactly as a rational; an `i` suffix makes it
    /// an imaginary (floating) literal.
    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let mut digits = String::new();
        let mut frac_len = 0i32;
        let mut seen_dot = false;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                digits.push(c as char);
                if seen_dot {
                    frac_len += 1;
                }
            } else if c == b'.' && !seen_dot {
                seen_dot = true;
            } else {
                break;
            }
            self.pos += 1;
        }
        if digits.is_empty() {
            self.pos = start;
            return Err(self.err("malformed number"));
        }
        let mut exp10 = -frac_len;
        // Optional exponent, only when digits follow.
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let es = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if es == self.pos {
                self.pos = save;
            } else {
                let e: i32 = std::str::from_utf8(&self.src[es..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("exponent out of range"))?;
                exp10 += if neg { -e } else { e };
            }
        }
        let mantissa: BigInt = digits.parse().expect("ascii digits");
        let ten = BigRational::from_integer(BigInt::from(10));
        let value = BigRational::from_integer(mantissa) * Pow::pow(&ten, exp10);

        let imaginary = self.src.get(self.pos) == Some(&b'i')
            && !self
                .src
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
        if imaginary {
            self.pos += 1;
            let im = value.to_f64().unwrap_or(f64::NAN);
            return Ok(Expr::Const(Constant::Complex(OrderedFloat(0.0), OrderedFloat(im))));
        }
        if value.is_one() {
            return Ok(Expr::one());
        }
        Ok(Expr::Const(Constant::Rational(value)))
    }
}
