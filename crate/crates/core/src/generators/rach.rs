use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{DerivativeTable, Mode, OPAQUE_NAME};
use crate::error::Result;
use crate::expr::Expr;
use crate::poly::{AdomianPoly, Component, Monomial, Symbol};
use crate::series::enumerate_partitions;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * j)
}

/// `A_n` by the partition formula with opaque derivative factors
/// `N^(k)(u_0)` of series `series`. One term per partition of `n`.
pub fn rach_opaque(series: &str, n: usize) -> AdomianPoly {
    let mut out = AdomianPoly::default();
    for p in enumerate_partitions(n) {
        let mut m = Monomial::of(Symbol::deriv(OPAQUE_NAME, p.len(), series), 1);
        let mut denom = BigInt::one();
        for (j, k) in p.nonzero() {
            m = m.mul(&Monomial::of(Symbol::Comp(Component::new(series, j)), k as i64));
            denom *= factorial(k);
        }
        out = out + AdomianPoly::term(BigRational::new(BigInt::one(), denom), m);
    }
    out
}

/// `A_n` of a conjugate-free `N` by the partition formula. In substituted
/// mode each `N^(k)(u_0)` is the `k`-fold symbolic derivative at `u_0`.
pub fn gen_rach(n_expr: &Expr, n: usize, mode: Mode) -> Result<AdomianPoly> {
    Ok(gen_rach_sequence(n_expr, n, mode)?.pop().expect("order n is present"))
}

/// `A_0..=A_n` by the partition formula, sharing one derivative table.
pub fn gen_rach_sequence(n_expr: &Expr, n: usize, mode: Mode) -> Result<Vec<AdomianPoly>> {
    let mut table = DerivativeTable::new(n_expr)?;
    let var = table.var().to_string();
    (0..=n)
        .map(|k| {
            let opaque = rach_opaque(&var, k);
            match mode {
                Mode::Opaque => Ok(opaque),
                Mode::Substituted => table.substitute(&opaque),
            }
        })
        .collect()
}
