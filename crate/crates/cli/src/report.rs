//! Structured (JSON) output, schema version 1.

use std::collections::BTreeMap;

use adomian::expr::parse;
use adomian::poly::{Component, Monomial, Symbol};
use adomian::{AdomianPoly, QuadratureConfig, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub kind: String,
    pub manifest: Manifest,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<Vec<PolyJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveJson>,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    #[serde(default)]
    pub expr: Option<String>,
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub quadrature: Option<QuadratureJson>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// `"file:<path>"`, `"random"`, or absent for symbolic runs.
    #[serde(default)]
    pub components: Option<String>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub terms: Option<usize>,
    pub version: String,
    /// Seconds since the epoch from `SOURCE_DATE_EPOCH`, else null, so
    /// identical runs produce identical bytes.
    pub timestamp: Option<u64>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest {
            command: command.to_string(),
            expr: None,
            method: None,
            order: None,
            quadrature: None,
            seed: None,
            components: None,
            alpha: None,
            terms: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureJson {
    pub nodes: usize,
    pub adaptive: bool,
    pub tolerance: f64,
    pub max_nodes: usize,
    pub recursive_nodes: usize,
    pub recursive_budget: u64,
}

impl From<&QuadratureConfig> for QuadratureJson {
    fn from(q: &QuadratureConfig) -> Self {
        QuadratureJson {
            nodes: q.nodes,
            adaptive: q.adaptive,
            tolerance: q.tolerance,
            max_nodes: q.max_nodes,
            recursive_nodes: q.recursive_nodes,
            recursive_budget: u64::try_from(q.recursive_budget).unwrap_or(u64::MAX),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub order: usize,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

/// `coeff` is `[num, den]` for symbolic terms (integers, or decimal
/// strings beyond 64 bits) and `[re, im]` for numeric values. `monomial`
/// maps `u_k` / `conj_u_k` to exponents; `factor` is the remaining
/// non-component factor, `"1"` if none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: [Value; 2],
    pub monomial: BTreeMap<String, i64>,
    pub factor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub tolerance: f64,
    pub trials: usize,
    pub passed: bool,
    pub max_rel: f64,
    pub backends: Vec<BackendJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendJson {
    pub name: String,
    pub ran: bool,
    #[serde(default)]
    pub notice: Option<String>,
    #[serde(default)]
    pub max_rel: Option<f64>,
    #[serde(default)]
    pub worst: Option<WorstJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstJson {
    pub trial: usize,
    pub order: usize,
    pub value: [f64; 2],
    pub reference: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveJson {
    pub alpha: f64,
    pub coefficients: Vec<CoefficientJson>,
    #[serde(default)]
    pub eval: Option<EvalJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub n: usize,
    pub value: [f64; 2],
    pub closed_form: [f64; 2],
    pub rel_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalJson {
    pub x: f64,
    pub t: f64,
    pub partial_sum: [f64; 2],
    pub mittag_leffler: [f64; 2],
    pub rel_diff: f64,
}

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn read_integer(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
        Value::String(s) => s
            .parse()
            .map_err(|_| CliError::Argument(format!("`{s}` is not an integer"))),
        other => Err(CliError::Argument(format!("`{other}` is not an integer"))),
    }
}

pub fn poly_to_json(order: usize, a: &AdomianPoly) -> PolyJson {
    let terms = a
        .ordered_terms()
        .into_iter()
        .map(|(m, c)| {
            let mut monomial = BTreeMap::new();
            let mut rest = Monomial::one();
            for (s, e) in m.exponents() {
                match s {
                    Symbol::Comp(comp) => {
                        monomial.insert(comp.key(), *e);
                    }
                    other => rest = rest.mul(&Monomial::of(other.clone(), *e)),
                }
            }
            TermJson {
                coeff: [integer(c.numer()), integer(c.denom())],
                monomial,
                factor: AdomianPoly::term(BigRational::one(), rest).to_string(),
            }
        })
        .collect();
    PolyJson {
        order,
        terms,
        text: Some(a.to_string()),
    }
}

/// Inverse of the `factor` field: an opaque `N(u0)` / `N^(k)(u0)` or an
/// expression.
fn parse_factor(s: &str) -> Result<AdomianPoly, CliError> {
    if let Some(rest) = s.strip_prefix(adomian::generators::OPAQUE_NAME) {
        let (order, arg) = match rest.strip_prefix("^(") {
            Some(r) => {
                let (k, tail) = r
                    .split_once(')')
                    .ok_or_else(|| CliError::Argument(format!("malformed factor `{s}`")))?;
                (k.parse::<usize>().ok(), tail)
            }
            None => (Some(0), rest),
        };
        let var = arg.strip_prefix('(').and_then(|a| a.strip_suffix(')'));
        if let (Some(order), Some(var)) = (order, var) {
            if let Some(c) = Component::from_var(&adomian::expr::Var::plain(var)) {
                if c.index == 0 {
                    return Ok(AdomianPoly::symbol(Symbol::deriv(
                        adomian::generators::OPAQUE_NAME,
                        order,
                        &c.series,
                    )));
                }
            }
        }
    }
    Ok(AdomianPoly::from_expr(&parse(s)?))
}

pub fn poly_from_json(p: &PolyJson) -> Result<AdomianPoly, CliError> {
    let mut out = AdomianPoly::default();
    for t in &p.terms {
        let c = BigRational::new(read_integer(&t.coeff[0])?, read_integer(&t.coeff[1])?);
        let mut term = AdomianPoly::constant(c);
        for (key, e) in &t.monomial {
            let comp = Component::from_key(key)
                .ok_or_else(|| CliError::Argument(format!("`{key}` does not name a component")))?;
            term = &term * &AdomianPoly::symbol(Symbol::Comp(comp)).powi(*e)?;
        }
        term = &term * &parse_factor(&t.factor)?;
        out = out + term;
    }
    Ok(out)
}

pub fn value_to_json(order: usize, z: C64) -> PolyJson {
    PolyJson {
        order,
        terms: vec![TermJson {
            coeff: [float(z.re), float(z.im)],
            monomial: BTreeMap::new(),
            factor: "1".into(),
        }],
        text: None,
    }
}

pub fn value_from_json(p: &PolyJson) -> Result<C64, CliError> {
    let [t] = p.terms.as_slice() else {
        return Err(CliError::Argument("a numeric entry has exactly one term".into()));
    };
    let part = |v: &Value| {
        v.as_f64()
            .ok_or_else(|| CliError::Argument(format!("`{v}` is not a number")))
    };
    Ok(C64::new(part(&t.coeff[0])?, part(&t.coeff[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use adomian::generators::{gen_rach, rach_opaque, Mode};

    #[test]
    fn symbolic_round_trip() {
        let polys = [
            rach_opaque("u", 4),
            gen_rach(&parse("exp(sin(u))").unwrap(), 3, Mode::Substituted).unwrap(),
            gen_rach(&parse("ln(u)").unwrap(), 3, Mode::Substituted).unwrap(),
            AdomianPoly::from_expr(&parse("u0^2*conj(u1) + 2*u0*conj(u0)*u1").unwrap()),
        ];
        for a in polys {
            let j = poly_to_json(3, &a);
            let text = serde_json::to_string(&j).unwrap();
            let back: PolyJson = serde_json::from_str(&text).unwrap();
            assert_eq!(poly_from_json(&back).unwrap(), a, "{text}");
        }
    }

    #[test]
    fn numeric_round_trip_is_exact() {
        for z in [C64::new(0.1, -1.0 / 3.0), C64::new(1e-300, 6.02e23), C64::new(-0.0, 0.0)] {
            let text = serde_json::to_string(&value_to_json(1, z)).unwrap();
            let back = value_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im.to_bits(), z.im.to_bits());
        }
    }
}
