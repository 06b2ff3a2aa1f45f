//! Adomian polynomials of sums, products, quotients, powers and
//! compositions, built from the sequences of the operands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{univariate_name, DerivativeTable};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::{AdomianPoly, Component};
use crate::series::{enumerate_partitions, enumerate_weak_compositions, SeriesError, SeriesVec};

fn require(seq: &[AdomianPoly], n: usize, what: &str) -> Result<()> {
    if seq.len() > n {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "{what} has orders 0..{} but order {n} was requested",
            seq.len() as isize - 1
        )))
    }
}

fn series_error(e: SeriesError) -> Error {
    match e {
        SeriesError::QuotientSingular => {
            Error::Singular("order-0 polynomial of the denominator is not invertible".into())
        }
        SeriesError::PowerSingular => Error::Singular("order-0 polynomial of the base is not invertible".into()),
        other => Error::Series(other),
    }
}

/// `u_0..=u_n` of series `series`: the sequence of the identity map.
pub fn component_sequence(series: &str, n: usize) -> Vec<AdomianPoly> {
    (0..=n).map(|k| AdomianPoly::component(series, k)).collect()
}

/// `ū_0..=ū_n`: the sequence of `conj(u)`.
pub fn conj_component_sequence(series: &str, n: usize) -> Vec<AdomianPoly> {
    (0..=n).map(|k| AdomianPoly::conj_component(series, k)).collect()
}

/// `A_k = sum_i s_i B^(i)_k`.
pub fn combine_sum(seqs: &[&[AdomianPoly]], scalars: &[BigRational], n: usize) -> Result<Vec<AdomianPoly>> {
    if seqs.len() != scalars.len() {
        return Err(Error::Input(format!(
            "{} sequences but {} scalars",
            seqs.len(),
            scalars.len()
        )));
    }
    for (i, s) in seqs.iter().enumerate() {
        require(s, n, &format!("sequence {i}"))?;
    }
    Ok((0..=n)
        .map(|k| {
            seqs.iter()
                .zip(scalars)
                .fold(AdomianPoly::default(), |acc, (s, c)| acc + s[k].scale(c))
        })
        .collect())
}

/// `A_k = sum_{k_1+...+k_m = k} prod_i B^(i)_{k_i}` over weak compositions.
pub fn combine_product(seqs: &[&[AdomianPoly]], n: usize) -> Result<Vec<AdomianPoly>> {
    if seqs.is_empty() {
        return Err(Error::Input("a product needs at least one factor".into()));
    }
    for (i, s) in seqs.iter().enumerate() {
        require(s, n, &format!("factor {i}"))?;
    }
    Ok((0..=n)
        .map(|k| {
            enumerate_weak_compositions(k, seqs.len())
                .into_iter()
                .fold(AdomianPoly::default(), |acc, w| {
                    let term = w
                        .parts()
                        .iter()
                        .zip(seqs)
                        .fold(AdomianPoly::one(), |t, (&j, s)| &t * &s[j]);
                    acc + term
                })
        })
        .collect())
}

/// Sequence of `N_1 / N_2` by the series quotient with polynomial
/// coefficients.
pub fn combine_quotient(num: &[AdomianPoly], den: &[AdomianPoly], n: usize) -> Result<Vec<AdomianPoly>> {
    require(num, n, "numerator")?;
    require(den, n, "denominator")?;
    let a = SeriesVec::new(num[..=n].to_vec());
    let b = SeriesVec::new(den[..=n].to_vec());
    Ok(a.quotient(&b).map_err(series_error)?.into_coeffs())
}

/// Sequence of `N^p` for an integer `p >= 1` by the series power
/// recurrence with polynomial coefficients.
pub fn combine_power(seq: &[AdomianPoly], p: u32, n: usize) -> Result<Vec<AdomianPoly>> {
    if p == 0 {
        return Err(Error::Input("power must be at least 1".into()));
    }
    require(seq, n, "base")?;
    let a = SeriesVec::new(seq[..=n].to_vec());
    Ok(a.int_power(p).map_err(series_error)?.into_coeffs())
}

/// Sequence of `N_1(N_2(u))` from the sequence `B_k` of `N_2`:
/// `A_k = sum_{partitions of k} N_1^(sum k_j)(B_0) prod_j B_j^{k_j} / k_j!`.
pub fn combine_compose(outer: &Expr, inner: &[AdomianPoly], n: usize) -> Result<Vec<AdomianPoly>> {
    require(inner, n, "inner sequence")?;
    let var = univariate_name(outer)?;
    let mut table = DerivativeTable::new(outer)?;
    let b0 = inner[0].to_expr()?;
    let mut at_b0: Vec<AdomianPoly> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let dk = table.at_u0(k).to_expr()?;
        // `at_u0` speaks in terms of the component `var0`; rebind it to B_0.
        let u0 = Component::new(&var, 0).to_var();
        at_b0.push(AdomianPoly::from_expr(&dk.substitute(&u0, &b0)));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut a = AdomianPoly::default();
        for p in enumerate_partitions(k) {
            let mut term = at_b0[p.len()].clone();
            let mut denom = BigInt::one();
            for (j, kj) in p.nonzero() {
                term = &term * &inner[j].powi(kj as i64)?;
                denom *= (1..=kj).fold(BigInt::one(), |acc, i| acc * i);
            }
            a = a + term.scale(&BigRational::new(BigInt::one(), denom));
        }
        out.push(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::generators::{gen_rach_sequence, Mode};

    fn p(s: &str) -> AdomianPoly {
        AdomianPoly::from_expr(&parse(s).unwrap())
    }

    fn seq(s: &str, n: usize) -> Vec<AdomianPoly> {
        gen_rach_sequence(&parse(s).unwrap(), n, Mode::Substituted).unwrap()
    }

    #[test]
    fn product_of_sequences() {
        let b = seq("u^2", 1);
        let c = seq("cosh(u) + sin(u)", 1);
        let a = combine_product(&[&b, &c], 1).unwrap();
        assert_eq!(a[1], p("u0^2*u1*(sinh(u0) + cos(u0)) + 2*u0*u1*(cosh(u0) + sin(u0))"));
        assert_eq!(a, seq("u^2*(cosh(u) + sin(u))", 1));
    }

    #[test]
    fn conjugate_cubic_by_products() {
        let u = component_sequence("u", 3);
        let ub = conj_component_sequence("u", 3);
        let a = combine_product(&[&u, &u, &ub], 3).unwrap();
        assert_eq!(a[1], p("u0^2*conj(u1) + 2*u0*conj(u0)*u1"));
    }

    #[test]
    fn composition() {
        let inner = seq("sin(u)", 3);
        let a = combine_compose(&parse("exp(x)").unwrap(), &inner, 3).unwrap();
        assert_eq!(a[1], p("u1*cos(u0)*exp(sin(u0))"));
        assert_eq!(a, seq("exp(sin(u))", 3));
    }

    #[test]
    fn quotient_and_power() {
        let num = seq("sin(u)", 3);
        let den = seq("cos(u)", 3);
        let q = combine_quotient(&num, &den, 3).unwrap();
        let back = combine_product(&[&q, &den], 3).unwrap();
        for k in 0..=3 {
            // Compare numerically: the atoms of a quotient are not expanded.
            let c = crate::generators::ComponentSet::from_reals(&[0.4, 0.3, -0.2, 0.1]);
            let x = crate::generators::evaluate_poly(&back[k], &c).unwrap();
            let y = crate::generators::evaluate_poly(&num[k], &c).unwrap();
            assert!((x - y).norm() < 1e-14);
        }
        let u = component_sequence("u", 4);
        assert_eq!(combine_power(&u, 3, 4).unwrap(), seq("u^3", 4));
        let zero = vec![AdomianPoly::default(); 3];
        assert!(matches!(combine_quotient(&num, &zero, 2), Err(Error::Singular(_))));
    }

    #[test]
    fn sum_with_unit_weights() {
        let s = seq("exp(u)", 3);
        let half = BigRational::new(1.into(), 2.into());
        let a = combine_sum(&[&s, &s], &[half.clone(), half], 3).unwrap();
        assert_eq!(a, s);
        assert!(matches!(combine_sum(&[&s], &[BigRational::one()], 4), Err(Error::Input(_))));
    }
}
