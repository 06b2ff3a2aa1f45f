//! Adomian polynomial generators.
//!
//! Four backends produce `A_n` for a nonlinearity `N(u)`:
//!
//! * [`gen_rach`]: the partition formula
//!   `A_n = sum_{partitions} prod_j u_j^{k_j}/k_j! * N^(sum k_j)(u_0)`;
//! * [`gen_recursive_symbolic`]: `A_n = T(A_{n-1}) / n` with the derivation
//!   `T(u_k) = (k+1) u_{k+1}`, `T(N^(k)(u_0)) = u_1 N^(k+1)(u_0)`;
//! * [`gen_fourier_direct`]: the `n`-th Fourier coefficient of
//!   `lambda -> N(sum_{k<=n} u_k e^{ik lambda})`;
//! * [`gen_fourier_recursive`]: the nested quadrature form of the `T`
//!   recursion with shifted arguments `v_k = u_k + (k+1) u_{k+1} e^{i lambda}`.
//!
//! The symbolic backends return canonical [`AdomianPoly`] values and must
//! agree term for term; the numeric backends return complex values.

mod combinators;
mod components;
mod fourier;
mod rach;
mod recursive;

pub use combinators::{
    combine_compose, combine_power, combine_product, combine_quotient, combine_sum, component_sequence,
    conj_component_sequence,
};
pub use components::ComponentSet;
pub use fourier::{
    fourier_mode, gen_fourier_direct, gen_fourier_recursive, recursive_guard_ratio, QuadratureConfig,
    DEFAULT_MAX_NODES, MAX_NODES_ENV,
};
pub(crate) use fourier::{direct_engine, recursive_engine, Channels};
pub use rach::{gen_rach, gen_rach_sequence, rach_opaque};
pub use recursive::{gen_recursive_sequence, gen_recursive_symbolic, t_operator};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Var};
use crate::poly::{AdomianPoly, Component, Symbol};
use crate::scalar::Real;

/// Whether derivative factors stay opaque (`N^(k)(u_0)`) or are replaced
/// by the derivatives of a concrete nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Opaque,
    Substituted,
}

/// Name of the opaque nonlinearity in derivative symbols.
pub const OPAQUE_NAME: &str = "N";

/// Default series name when a nonlinearity has no free variable.
pub const DEFAULT_VARIABLE: &str = "u";

/// The single free variable of a univariate nonlinearity.
pub fn univariate_name(n: &Expr) -> Result<String> {
    let names = n.base_names();
    match names.len() {
        0 => Ok(DEFAULT_VARIABLE.to_string()),
        1 => Ok(names.into_iter().next().unwrap()),
        _ => Err(Error::Unsupported(format!(
            "`{n}` has several variables ({}); use the multivariable generators",
            names.into_iter().collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// `N` with its variable `x` (and `conj(x)`) replaced by the order-0
/// component of series `x`.
pub(crate) fn at_u0(n: &Expr, var: &str) -> Expr {
    let comp = Component::new(var, 0);
    n.substitute(&Var::plain(var), &Expr::Var(comp.to_var()))
        .substitute(&Var::conj(var), &Expr::Var(Component::conjugate(var, 0).to_var()))
}

/// Expand an expression and convert it back, merging like terms.
pub(crate) fn canonical(e: &Expr) -> Expr {
    AdomianPoly::from_expr(e).to_expr().expect("expanded expressions carry no opaque symbols")
}

/// Derivatives `N^(k)` of a conjugate-free nonlinearity, computed on
/// demand and kept canonical to avoid expression swell.
pub(crate) struct DerivativeTable {
    var: String,
    derivatives: Vec<Expr>,
    at_u0: Vec<AdomianPoly>,
}

impl DerivativeTable {
    pub(crate) fn new(n: &Expr) -> Result<Self> {
        if n.has_conjugate() {
            return Err(Error::Unsupported(format!(
                "`{n}` involves a conjugate; derivative factors N^(k)(u0) presume a single analytic variable"
            )));
        }
        let var = univariate_name(n)?;
        let first = canonical(n);
        Ok(DerivativeTable {
            at_u0: vec![AdomianPoly::from_expr(&at_u0(&first, &var))],
            derivatives: vec![first],
            var,
        })
    }

    pub(crate) fn var(&self) -> &str {
        &self.var
    }

    /// `N^(k)(u_0)` as a polynomial in `u_0`.
    pub(crate) fn at_u0(&mut self, k: usize) -> &AdomianPoly {
        while self.derivatives.len() <= k {
            let next = canonical(&expr::differentiate(self.derivatives.last().unwrap(), &self.var));
            self.at_u0.push(AdomianPoly::from_expr(&at_u0(&next, &self.var)));
            self.derivatives.push(next);
        }
        &self.at_u0[k]
    }

    /// Replace every opaque factor of `a` by the matching derivative.
    pub(crate) fn substitute(&mut self, a: &AdomianPoly) -> Result<AdomianPoly> {
        let mut needed = Vec::new();
        for (m, _) in a.terms() {
            for s in m.exponents().keys() {
                if let Symbol::Deriv { order, series, .. } = s {
                    if *series != self.var {
                        return Err(Error::Input(format!(
                            "opaque factor `{s}` refers to series `{series}` but the nonlinearity is in `{}`",
                            self.var
                        )));
                    }
                    needed.push(*order);
                }
            }
        }
        if let Some(&max) = needed.iter().max() {
            self.at_u0(max);
        }
        a.map_symbols(|s| match s {
            Symbol::Deriv { order, .. } => Ok(Some(self.at_u0[*order].clone())),
            _ => Ok(None),
        })
    }
}

/// Replace every opaque `N^(k)(u_0)` by the `k`-th derivative of the
/// conjugate-free nonlinearity `n`, evaluated symbolically at `u_0`.
pub fn substitute_concrete(a: &AdomianPoly, n: &Expr) -> Result<AdomianPoly> {
    DerivativeTable::new(n)?.substitute(a)
}

/// Numeric value of a substituted polynomial at the given components.
/// Only component indices matter; the series name is not checked.
pub fn evaluate_poly<T: Real>(a: &AdomianPoly, c: &ComponentSet<T>) -> Result<Complex<T>> {
    a.evaluate(|comp| {
        if comp.conj {
            c.conj_values().get(comp.index).copied()
        } else {
            c.values().get(comp.index).copied()
        }
    })
}
