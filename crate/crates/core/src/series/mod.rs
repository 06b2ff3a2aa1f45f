//! Truncated formal power series over a generic coefficient ring, plus the
//! partition and composition enumerations that index Adomian sums.

mod combinatorics;

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::Real;

pub use combinatorics::{enumerate_partitions, enumerate_weak_compositions, Partition, WeakComposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("quotient is singular: leading coefficient of the divisor is not invertible")]
    QuotientSingular,
    #[error("power recurrence is singular: leading coefficient is not invertible")]
    PowerSingular,
}

/// Coefficient ring for [`SeriesVec`]. Only the leading coefficient of a
/// divisor (or of a base raised to a power) needs an inverse.
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// Multiplicative inverse, `None` when not invertible.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coefficient for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coefficient for Rational64 {
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl<T: Real> Coefficient for Complex<T> {
    fn from_int(n: i64) -> Self {
        Complex::new(T::from_i64(n).unwrap_or_else(T::nan), T::zero())
    }

    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }
}

macro_rules! real_coefficient {
    ($t:ty) => {
        impl Coefficient for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn try_inverse(&self) -> Option<Self> {
                (*self != 0.0).then(|| 1.0 / *self)
            }
        }
    };
}
real_coefficient!(f32);
real_coefficient!(f64);

/// Coefficients `c_0..=c_n` of a power series truncated at order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesVec<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> SeriesVec<C> {
    /// # Panics
    /// If `coeffs` is empty; a series always has an order-0 coefficient.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        SeriesVec { coeffs }
    }

    /// `1 + 0x + ... + 0x^n`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = C::one();
        SeriesVec { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    /// `c_k = sum_{j<=k} a_j b_{k-j}`.
    pub fn cauchy_product(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let coeffs = (0..=self.order())
            .map(|k| {
                (0..=k).fold(C::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * other.coeffs[k - j].clone()
                })
            })
            .collect();
        Ok(SeriesVec { coeffs })
    }

    /// `self / divisor` by the forward-substitution recurrence
    /// `c_k = (b_k - sum_{j=1..k} a_j c_{k-j}) / a_0`.
    pub fn quotient(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check_order(divisor)?;
        let inv = divisor.coeffs[0].try_inverse().ok_or(SeriesError::QuotientSingular)?;
        let mut c: Vec<C> = Vec::with_capacity(self.coeffs.len());
        for k in 0..=self.order() {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc - divisor.coeffs[j].clone() * c[k - j].clone();
            }
            c.push(acc * inv.clone());
        }
        Ok(SeriesVec { coeffs: c })
    }

    /// `self^p` by the power recurrence
    /// `c_k = 1/(k a_0) sum_{j=1..k} (j p - k + j) a_j c_{k-j}`.
    ///
    /// Needs `a_0` invertible once order >= 1; there is no silent fallback,
    /// callers who want one use [`SeriesVec::int_power_by_products`].
    pub fn int_power(&self, p: u32) -> Result<Self, SeriesError> {
        let n = self.order();
        if p == 0 {
            return Ok(Self::one(n));
        }
        let mut c = Vec::with_capacity(n + 1);
        c.push(pow_by_squaring(&self.coeffs[0], p));
        if n == 0 {
            return Ok(SeriesVec { coeffs: c });
        }
        let inv_a0 = self.coeffs[0].try_inverse().ok_or(SeriesError::PowerSingular)?;
        let p = i64::from(p);
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                let w = (j as i64) * p - k as i64 + j as i64;
                if w != 0 {
                    acc = acc + C::from_int(w) * self.coeffs[j].clone() * c[k - j].clone();
                }
            }
            let inv_k = C::from_int(k as i64)
                .try_inverse()
                .expect("positive integers are invertible in a coefficient ring");
            c.push(acc * inv_k * inv_a0.clone());
        }
        Ok(SeriesVec { coeffs: c })
    }

    /// `self^p` by repeated Cauchy products; works without any inverse.
    pub fn int_power_by_products(&self, p: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..p {
            acc = acc.cauchy_product(self).expect("same order");
        }
        acc
    }
}

fn pow_by_squaring<C: Coefficient>(x: &C, mut p: u32) -> C {
    let mut base = x.clone();
    let mut acc = C::one();
    while p > 0 {
        if p & 1 == 1 {
            acc = acc * base.clone();
        }
        p >>= 1;
        if p > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> SeriesVec<BigRational> {
        SeriesVec::new(v.iter().map(|&x| BigRational::from_int(x)).collect())
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(q(&[1, 1, 0]).cauchy_product(&q(&[1, 1, 0])).unwrap(), q(&[1, 2, 1]));
        let a = q(&[3, -1, 7]);
        assert_eq!(a.cauchy_product(&SeriesVec::one(2)).unwrap(), a);
        // 1*4; 1*5 + 2*4; 1*6 + 2*5 + 3*4
        assert_eq!(q(&[1, 2, 3]).cauchy_product(&q(&[4, 5, 6])).unwrap(), q(&[4, 13, 28]));
        assert_eq!(
            q(&[1, 2]).cauchy_product(&q(&[1, 2, 3])),
            Err(SeriesError::OrderMismatch(1, 2))
        );
    }

    #[test]
    fn quotient_examples() {
        let b = q(&[1, 0, 0, 0]);
        let a = q(&[1, 1, 0, 0]);
        let c = b.quotient(&a).unwrap();
        assert_eq!(c, q(&[1, -1, 1, -1]));
        assert_eq!(c.cauchy_product(&a).unwrap(), b);
        assert_eq!(a.quotient(&a).unwrap(), SeriesVec::one(3));
        assert_eq!(b.quotient(&q(&[0, 1, 0, 0])), Err(SeriesError::QuotientSingular));
    }

    #[test]
    fn power_examples() {
        assert_eq!(q(&[1, 1]).int_power(2).unwrap(), q(&[1, 2]));
        let a = q(&[2, 1, 3]);
        assert_eq!(a.int_power(1).unwrap(), a);
        assert_eq!(a.int_power(3).unwrap(), a.int_power_by_products(3));
        assert_eq!(a.int_power(0).unwrap(), SeriesVec::one(2));
        assert_eq!(q(&[0, 1, 0]).int_power(2), Err(SeriesError::PowerSingular));
        // Order 0 needs no inverse.
        assert_eq!(q(&[0]).int_power(3).unwrap(), q(&[0]));
    }

    #[test]
    fn complex_coefficients() {
        use num_complex::Complex64;
        let a = SeriesVec::new(vec![Complex64::new(1.0, 1.0), Complex64::new(0.5, -2.0)]);
        let b = SeriesVec::new(vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)]);
        let c = b.quotient(&a).unwrap().cauchy_product(&a).unwrap();
        for (x, y) in c.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
    }
}
