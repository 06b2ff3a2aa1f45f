pub mod check;
pub mod gen;
pub mod solve;

use std::io::Write;

use adomian::{Expr, QuadratureConfig, C64};

use crate::args::QuadratureArgs;
use crate::error::CliError;
use crate::report::Document;

pub(crate) fn parse_expr(text: &str) -> Result<Expr, CliError> {
    Ok(adomian::parse(text)?)
}

/// Defaults, then the environment cap, then explicit flags.
pub(crate) fn quadrature(a: &QuadratureArgs) -> Result<QuadratureConfig, CliError> {
    let mut q = QuadratureConfig::from_env()?;
    if let Some(m) = a.nodes {
        q.nodes = m;
        q.max_nodes = q.max_nodes.max(m);
    }
    if let Some(t) = a.quad_tol {
        q.tolerance = t;
    }
    if a.fixed {
        q.adaptive = false;
    }
    q.validate()?;
    Ok(q)
}

pub(crate) fn io_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source,
    }
}

pub(crate) fn write_json(out: &mut dyn Write, doc: &Document) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Argument(format!("cannot serialize output: {e}")))?;
    writeln!(out, "{text}").map_err(io_error)
}

/// `re + im i` with round-trip precision.
pub(crate) fn complex_text(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?} {sign} {:?}i", z.re, z.im.abs())
}
