use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Component values `u_0..u_n` with conjugate companions `ū_0..ū_n`.
///
/// The conjugate sequence defaults to the elementwise complex conjugate
/// but may be set independently; the numeric backends treat it as its own
/// sequence sampled with the same phase `e^{ik lambda}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSet<T> {
    values: Vec<Complex<T>>,
    conj: Vec<Complex<T>>,
}

/// Largest tail-to-head ratio the random generator produces.
const RANDOM_GUARD: f64 = 0.9;

impl<T: Real> ComponentSet<T> {
    pub fn new(values: Vec<Complex<T>>) -> Self {
        let conj = values.iter().map(Complex::conj).collect();
        ComponentSet { values, conj }
    }

    pub fn with_conjugates(values: Vec<Complex<T>>, conj: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != conj.len() {
            return Err(Error::Input(format!(
                "{} components but {} conjugate components",
                values.len(),
                conj.len()
            )));
        }
        Ok(ComponentSet { values, conj })
    }

    /// Real components, convenient for desk examples.
    pub fn from_reals(values: &[T]) -> Self {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn conj_values(&self) -> &[Complex<T>] {
        &self.conj
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Highest available index, `None` when empty.
    pub fn max_index(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if self.len() > n {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "order {n} needs components u_0..u_{n}, only {} supplied",
                self.len()
            )))
        }
    }

    /// The first `len` components.
    pub fn truncated(&self, len: usize) -> Self {
        let len = len.min(self.len());
        ComponentSet {
            values: self.values[..len].to_vec(),
            conj: self.conj[..len].to_vec(),
        }
    }

    /// Append components; their conjugate companions default to the
    /// complex conjugate.
    pub fn extended(&self, extra: &[Complex<T>]) -> Self {
        let mut out = self.clone();
        out.values.extend_from_slice(extra);
        out.conj.extend(extra.iter().map(Complex::conj));
        out
    }

    /// `u_k -> t^k u_k` and `ū_k -> t^k ū_k`.
    pub fn scaled(&self, t: T) -> Self {
        let mut factor = T::one();
        let mut values = Vec::with_capacity(self.len());
        let mut conj = Vec::with_capacity(self.len());
        for (u, v) in self.values.iter().zip(&self.conj) {
            values.push(u * factor);
            conj.push(v * factor);
            factor = factor * t;
        }
        ComponentSet { values, conj }
    }

    /// Multiply every component after `u_0` by `s`.
    fn scale_tail(&mut self, s: T) {
        for u in self.values.iter_mut().skip(1) {
            *u = *u * s;
        }
        for u in self.conj.iter_mut().skip(1) {
            *u = *u * s;
        }
    }

    /// `max(sum_{1<=k<=upto} |u_k|, sum |ū_k|) / min(|u_0|, |ū_0|)`. Below
    /// one, the sampled argument `sum u_k e^{ik lambda}` stays in a disc
    /// around `u_0` that excludes zero.
    pub fn guard_ratio(&self, upto: usize) -> T {
        let upto = upto.min(self.len().saturating_sub(1));
        let tail = |v: &[Complex<T>]| v[1..=upto].iter().fold(T::zero(), |s, u| s + u.norm());
        if self.is_empty() {
            return T::zero();
        }
        let head = self.values[0].norm().min(self.conj[0].norm());
        let tail = tail(&self.values).max(tail(&self.conj));
        if tail.is_zero() {
            T::zero()
        } else {
            tail / head
        }
    }

    /// Random components: `u_0 = r e^{i theta}` with `r` in `[0.75, 1.5]` and
    /// `theta` in `[-pi/4, pi/4]`, later components of modulus at most
    /// `0.5` with uniform phase. The tail is shrunk if needed so the guard
    /// ratio stays at most `0.9`; since `Re u_0 > 0`, the sampled argument
    /// then avoids the principal branch cut.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut values = Vec::with_capacity(len);
        for k in 0..len {
            let (r, theta) = if k == 0 {
                (
                    rng.random_range(0.75..=1.5),
                    rng.random_range(-std::f64::consts::FRAC_PI_4..=std::f64::consts::FRAC_PI_4),
                )
            } else {
                (
                    rng.random_range(0.0..=0.5),
                    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
                )
            };
            let z = Complex::from_polar(r, theta);
            values.push(Complex::new(T::from_f64_lossy(z.re), T::from_f64_lossy(z.im)));
        }
        let mut set = Self::new(values);
        let ratio = set.guard_ratio(len.saturating_sub(1));
        let limit = T::from_f64_lossy(RANDOM_GUARD);
        if ratio > limit {
            set.scale_tail(limit / ratio);
        }
        set
    }

    /// Random components tightened for the nested quadrature of order
    /// `depth`: the tail is shrunk until
    /// [`recursive_guard_ratio`](super::recursive_guard_ratio) is at most
    /// `1/3`, which keeps the nested sampling circles well inside the
    /// region of analyticity.
    pub fn random_for_recursive<R: Rng + ?Sized>(rng: &mut R, len: usize, depth: usize) -> Self {
        let mut set = Self::random(rng, len);
        let ratio = super::recursive_guard_ratio(&set, depth);
        let limit = T::one() / T::from_f64_lossy(3.0);
        if ratio > limit {
            // The ratio is linear in a common scale of the tail.
            set.scale_tail(limit / ratio);
        }
        set
    }

    /// Horner evaluation of `sum_{k<=upto} u_k z^k` and of the conjugate
    /// sequence at the same `z`.
    pub(crate) fn sample(&self, upto: usize, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut c = Complex::zero();
        for k in (0..=upto).rev() {
            p = p * z + self.values[k];
            c = c * z + self.conj[k];
        }
        (p, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conjugates_default_and_override() {
        let c = ComponentSet::new(vec![Complex::new(1.0, 2.0)]);
        assert_eq!(c.conj_values()[0], Complex::new(1.0, -2.0));
        assert!(ComponentSet::with_conjugates(vec![Complex::new(1.0, 0.0)], vec![]).is_err());
    }

    #[test]
    fn random_sets_are_guarded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let c = ComponentSet::<f64>::random(&mut rng, 9);
            let u0 = c.values()[0];
            assert!((0.75..=1.5).contains(&u0.norm()));
            assert!(u0.re > 0.0);
            assert!(c.values()[1..].iter().all(|u| u.norm() <= 0.5));
            assert!(c.guard_ratio(8) <= 0.9 + 1e-12);
        }
    }

    #[test]
    fn scaling_and_sampling() {
        let c = ComponentSet::from_reals(&[1.0, 2.0, 3.0]);
        assert_eq!(c.scaled(2.0).values()[2], Complex::new(12.0, 0.0));
        let (p, q) = c.sample(2, Complex::new(0.0, 1.0));
        assert_eq!(p, Complex::new(-2.0, 2.0));
        assert_eq!(q, p);
    }
}
