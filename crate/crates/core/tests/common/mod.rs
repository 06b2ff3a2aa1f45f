#![allow(dead_code)]

use adomian::{parse, Expr, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Univariate nonlinearities exercised across the suites.
pub const CORPUS: &[&str] = &[
    "u^3",
    "u^2",
    "exp(u)",
    "ln(u)",
    "cosh(u) + sin(u)",
    "u^2*(cosh(u) + sin(u))",
    "exp(sin(u))",
    "exp(-sin(u/2)^2)",
    "u^2*conj(u)",
];

pub fn expr(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("`{s}`: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(value: C64, reference: C64) -> f64 {
    (value - reference).norm() / reference.norm().max(1e-12)
}
