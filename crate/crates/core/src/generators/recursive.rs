use num_bigint::BigInt;
use num_rational::BigRational;

use super::{at_u0, univariate_name, Mode, OPAQUE_NAME};
use crate::error::{Error, Result};
use crate::expr::{differentiate_wrt, Expr};
use crate::poly::{AdomianPoly, Component, Symbol};

fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn shift_component(c: &Component) -> AdomianPoly {
    let next = Component {
        index: c.index + 1,
        ..c.clone()
    };
    AdomianPoly::symbol(Symbol::Comp(next)).scale(&rat(c.index + 1))
}

/// The derivation `T`: `T(u_k) = (k+1) u_{k+1}`, `T(ū_k) = (k+1) ū_{k+1}`,
/// `T(N^(k)(u_0)) = u_1 N^(k+1)(u_0)`, and for a substituted atom `g` the
/// chain rule `T(g) = sum_v (dg/dv) T(v)` over the components `v` in `g`.
/// Variables that are not components are parameters with `T = 0`.
pub fn t_operator(a: &AdomianPoly) -> Result<AdomianPoly> {
    a.derivation(|s| match s {
        Symbol::Comp(c) => Ok(shift_component(c)),
        Symbol::Deriv { func, order, series } => Ok(&AdomianPoly::component(series, 1)
            * &AdomianPoly::symbol(Symbol::deriv(func, order + 1, series))),
        Symbol::Atom(e) => {
            let mut out = AdomianPoly::default();
            for v in e.variables() {
                if let Some(c) = Component::from_var(&v) {
                    let partial = AdomianPoly::from_expr(&differentiate_wrt(e, &v));
                    out = out + &partial * &shift_component(&c);
                }
            }
            Ok(out)
        }
    })
}

/// `A_0..=A_n` from `A_0` by `A_k = T(A_{k-1}) / k`.
pub fn gen_recursive_sequence(a0: AdomianPoly, n: usize) -> Result<Vec<AdomianPoly>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(a0);
    for k in 1..=n {
        let next = t_operator(&out[k - 1])?.scale(&rat(k).recip());
        out.push(next);
    }
    Ok(out)
}

/// `A_n` by the `T` recursion from `A_0 = N(u_0)`. Substituted mode
/// accepts conjugated variables: `conj(u)` becomes the independent
/// sequence `ū_k`. Opaque mode needs a conjugate-free `N`.
pub fn gen_recursive_symbolic(n_expr: &Expr, n: usize, mode: Mode) -> Result<AdomianPoly> {
    let var = univariate_name(n_expr)?;
    let a0 = match mode {
        Mode::Opaque => {
            if n_expr.has_conjugate() {
                return Err(Error::Unsupported(format!(
                    "`{n_expr}` involves a conjugate; opaque factors N^(k)(u0) presume a single analytic variable"
                )));
            }
            AdomianPoly::symbol(Symbol::deriv(OPAQUE_NAME, 0, &var))
        }
        Mode::Substituted => AdomianPoly::from_expr(&at_u0(n_expr, &var)),
    };
    Ok(gen_recursive_sequence(a0, n)?.pop().expect("order n is present"))
}
