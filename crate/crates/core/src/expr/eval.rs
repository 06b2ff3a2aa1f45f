use std::collections::HashMap;

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use super::{Constant, Expr, Func, Var};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("logarithm of zero in `{0}`")]
    LnZero(String),
    #[error("division by zero in `{0}`")]
    DivZero(String),
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
}

/// Values for the free variables of an expression.
///
/// A conjugated variable without its own entry takes the complex
/// conjugate of its base variable's value.
#[derive(Debug, Clone, Default)]
pub struct Assignment<T> {
    values: HashMap<Var, Complex<T>>,
}

impl<T: Real> Assignment<T> {
    pub fn new() -> Self {
        Assignment {
            values: HashMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: Complex<T>) -> Self {
        self.set(Var::plain(name), value);
        self
    }

    pub fn with_conj(mut self, name: &str, value: Complex<T>) -> Self {
        self.set(Var::conj(name), value);
        self
    }

    pub fn set(&mut self, var: Var, value: Complex<T>) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: &Var) -> Option<Complex<T>> {
        if let Some(v) = self.values.get(var) {
            return Some(*v);
        }
        if var.conj {
            self.values.get(&Var::plain(var.name.clone())).map(|v| v.conj())
        } else {
            None
        }
    }
}

pub(crate) fn constant_value<T: Real>(c: &Constant) -> Complex<T> {
    let (re, im) = c.to_f64_pair();
    Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im))
}

fn apply<T: Real>(f: Func, z: Complex<T>, site: impl Fn() -> String) -> Result<Complex<T>, EvalError> {
    Ok(match f {
        Func::Exp => z.exp(),
        Func::Ln => {
            if z.is_zero() {
                return Err(EvalError::LnZero(site()));
            }
            z.ln()
        }
        Func::Sin => z.sin(),
        Func::Cos => z.cos(),
        Func::Sinh => z.sinh(),
        Func::Cosh => z.cosh(),
    })
}

fn int_pow<T: Real>(z: Complex<T>, k: i64, site: impl Fn() -> String) -> Result<Complex<T>, EvalError> {
    if k < 0 && z.is_zero() {
        return Err(EvalError::DivZero(site()));
    }
    let k = i32::try_from(k).map_err(|_| EvalError::DivZero(site()))?;
    Ok(z.powi(k))
}

fn real_pow<T: Real>(z: Complex<T>, r: f64, site: impl Fn() -> String) -> Result<Complex<T>, EvalError> {
    if z.is_zero() {
        return if r > 0.0 {
            Ok(Complex::zero())
        } else {
            Err(EvalError::DivZero(site()))
        };
    }
    Ok(z.powf(T::from_f64_lossy(r)))
}

/// Evaluate on the principal branch.
pub fn evaluate<T: Real>(e: &Expr, a: &Assignment<T>) -> Result<Complex<T>, EvalError> {
    match e {
        Expr::Const(c) => Ok(constant_value(c)),
        Expr::Var(v) => a.get(v).ok_or_else(|| {
            EvalError::Unassigned(if v.conj {
                format!("conj({})", v.name)
            } else {
                v.name.clone()
            })
        }),
        Expr::Sum(ts) => ts.iter().try_fold(Complex::zero(), |s, t| Ok(s + evaluate(t, a)?)),
        Expr::Product(fs) => {
            fs.iter().try_fold(Complex::new(T::one(), T::zero()), |p, f| Ok(p * evaluate(f, a)?))
        }
        Expr::IntPow(b, k) => int_pow(evaluate(b, a)?, *k, || e.to_string()),
        Expr::RealPow(b, r) => real_pow(evaluate(b, a)?, r.0, || e.to_string()),
        Expr::Apply(f, b) => apply(*f, evaluate(b, a)?, || e.to_string()),
        Expr::Neg(b) => Ok(-evaluate(b, a)?),
    }
}

#[derive(Debug, Clone)]
enum Node<T> {
    Const(Complex<T>),
    Slot { index: usize, conj: bool },
    Sum(Vec<Node<T>>),
    Product(Vec<Node<T>>),
    IntPow(Box<Node<T>>, i64, Box<Expr>),
    RealPow(Box<Node<T>>, f64, Box<Expr>),
    Apply(Func, Box<Node<T>>, Box<Expr>),
    Neg(Box<Node<T>>),
}

/// An expression with variables resolved to positional slots, for the
/// hot loops of the quadrature backends.
///
/// Slot `j` has a plain channel (`x_j`) and a conjugate channel
/// (`conj(x_j)`), each fed from its own argument slice.
#[derive(Debug, Clone)]
pub struct CompiledExpr<T> {
    root: Node<T>,
    names: Vec<String>,
}

impl<T: Real> CompiledExpr<T> {
    /// Compile against an ordered list of variable names. Fails if the
    /// expression mentions a name not in the list.
    pub fn new(e: &Expr, names: &[&str]) -> Result<Self, EvalError> {
        Ok(CompiledExpr {
            root: Self::compile(e, names)?,
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn compile(e: &Expr, names: &[&str]) -> Result<Node<T>, EvalError> {
        Ok(match e {
            Expr::Const(c) => Node::Const(constant_value(c)),
            Expr::Var(v) => Node::Slot {
                index: names
                    .iter()
                    .position(|n| *n == v.name)
                    .ok_or_else(|| EvalError::Unassigned(v.name.clone()))?,
                conj: v.conj,
            },
            Expr::Sum(ts) => Node::Sum(ts.iter().map(|t| Self::compile(t, names)).collect::<Result<_, _>>()?),
            Expr::Product(fs) => {
                Node::Product(fs.iter().map(|f| Self::compile(f, names)).collect::<Result<_, _>>()?)
            }
            Expr::IntPow(b, k) => Node::IntPow(Box::new(Self::compile(b, names)?), *k, Box::new(e.clone())),
            Expr::RealPow(b, r) => {
                Node::RealPow(Box::new(Self::compile(b, names)?), r.0, Box::new(e.clone()))
            }
            Expr::Apply(f, b) => Node::Apply(*f, Box::new(Self::compile(b, names)?), Box::new(e.clone())),
            Expr::Neg(b) => Node::Neg(Box::new(Self::compile(b, names)?)),
        })
    }

    /// Evaluate with `plain[j]` for `x_j` and `conj[j]` for `conj(x_j)`.
    pub fn eval(&self, plain: &[Complex<T>], conj: &[Complex<T>]) -> Result<Complex<T>, EvalError> {
        Self::eval_node(&self.root, plain, conj)
    }

    fn eval_node(n: &Node<T>, plain: &[Complex<T>], conj: &[Complex<T>]) -> Result<Complex<T>, EvalError> {
        match n {
            Node::Const(c) => Ok(*c),
            Node::Slot { index, conj: false } => Ok(plain[*index]),
            Node::Slot { index, conj: true } => Ok(conj[*index]),
            Node::Sum(ts) => ts
                .iter()
                .try_fold(Complex::zero(), |s, t| Ok(s + Self::eval_node(t, plain, conj)?)),
            Node::Product(fs) => fs.iter().try_fold(Complex::new(T::one(), T::zero()), |p, f| {
                Ok(p * Self::eval_node(f, plain, conj)?)
            }),
            Node::IntPow(b, k, src) => int_pow(Self::eval_node(b, plain, conj)?, *k, || src.to_string()),
            Node::RealPow(b, r, src) => real_pow(Self::eval_node(b, plain, conj)?, *r, || src.to_string()),
            Node::Apply(f, b, src) => apply(*f, Self::eval_node(b, plain, conj)?, || src.to_string()),
            Node::Neg(b) => Ok(-Self::eval_node(b, plain, conj)?),
        }
    }
}
