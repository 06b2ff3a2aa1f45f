use adomian::series::{enumerate_partitions, enumerate_weak_compositions, SeriesVec};
use adomian::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational_series(order: usize) -> impl Strategy<Value = SeriesVec<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=9), order + 1).prop_map(|v| {
        SeriesVec::new(
            v.into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

fn invertible_rational(order: usize) -> impl Strategy<Value = SeriesVec<BigRational>> {
    rational_series(order).prop_filter("leading coefficient is zero", |s| s.coeffs()[0] != BigRational::from_integer(0.into()))
}

fn complex_series(order: usize) -> impl Strategy<Value = SeriesVec<C64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), order + 1)
        .prop_map(|v| SeriesVec::new(v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

fn close(a: &SeriesVec<C64>, b: &SeriesVec<C64>, tol: f64) -> bool {
    let scale = b.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max);
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// Partition counts by the classic coin-change recurrence.
fn partition_count(n: usize) -> usize {
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            ways[total] += ways[total - part];
        }
    }
    ways[n]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rational_quotient_inverts_product(
        (a, b) in (0usize..7).prop_flat_map(|n| (invertible_rational(n), rational_series(n)))
    ) {
        let c = b.quotient(&a).unwrap();
        prop_assert_eq!(c.cauchy_product(&a).unwrap(), b.clone());
        prop_assert_eq!(b.cauchy_product(&a).unwrap().quotient(&a).unwrap(), b);
    }

    #[test]
    fn rational_power_matches_repeated_products(a in invertible_rational(5), p in 0u32..6) {
        prop_assert_eq!(a.int_power(p).unwrap(), a.int_power_by_products(p));
    }

    #[test]
    fn complex_quotient_inverts_product(a in complex_series(6), b in complex_series(6)) {
        prop_assume!(a.coeffs()[0].norm() > 0.5);
        let c = b.quotient(&a).unwrap();
        prop_assert!(close(&c.cauchy_product(&a).unwrap(), &b, 1e-12));
    }

    #[test]
    fn complex_power_matches_repeated_products(a in complex_series(6), p in 0u32..6) {
        prop_assume!(a.coeffs()[0].norm() > 0.5);
        prop_assert!(close(&a.int_power(p).unwrap(), &a.int_power_by_products(p), 1e-12));
    }

    #[test]
    fn product_is_commutative(a in rational_series(5), b in rational_series(5)) {
        prop_assert_eq!(a.cauchy_product(&b).unwrap(), b.cauchy_product(&a).unwrap());
    }
}

#[test]
fn partition_counts_match_recurrence() {
    for n in 0..=20 {
        let parts = enumerate_partitions(n);
        assert_eq!(parts.len(), partition_count(n), "p({n})");
        for p in &parts {
            assert_eq!(p.n(), n);
        }
    }
    assert_eq!(partition_count(12), 77);
}

#[test]
fn weak_composition_counts() {
    for m in 1..=4 {
        for n in 0..=8 {
            let all = enumerate_weak_compositions(n, m);
            assert_eq!(all.len(), binomial(n + m - 1, m - 1), "n = {n}, m = {m}");
            assert!(all.iter().all(|c| c.total() == n && c.parts().len() == m));
            assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly ascending");
        }
    }
}
