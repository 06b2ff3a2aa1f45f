use std::io::Write;

use adomian::solver::{solve_schrodinger, SchrodingerState};
use adomian::{Error, C64};

use super::{complex_text, io_error, write_json};
use crate::args::{Format, Problem, SolveArgs};
use crate::commands::check::relative;
use crate::error::CliError;
use crate::report::{pair, CoefficientJson, Document, EvalJson, Manifest, SolveJson, SCHEMA};

pub fn run(a: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let Problem::Schrodinger = a.problem;
    if a.terms == 0 {
        return Err(Error::Domain("--terms must be at least 1".into()).into());
    }
    let eval_at = match a.eval_at.as_deref() {
        None => None,
        Some(&[x, t]) if x.is_finite() && t.is_finite() && t >= 0.0 => Some((x, t)),
        Some(&[x, t]) => return Err(Error::Domain(format!("cannot evaluate at x = {x}, t = {t}")).into()),
        Some(_) => return Err(CliError::Argument("--eval-at takes X and T".into())),
    };
    let state = solve_schrodinger(a.alpha, a.terms - 1)?;

    let coefficients: Vec<CoefficientJson> = state
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let closed = SchrodingerState::closed_form(a.alpha, n);
            CoefficientJson {
                n,
                value: pair(*c),
                closed_form: pair(closed),
                rel_diff: relative(*c, closed),
            }
        })
        .collect();
    let eval = eval_at.map(|(x, t)| {
        let s = state.partial_sum(x, t);
        let e = state.mittag_leffler_value(x, t);
        EvalJson {
            x,
            t,
            partial_sum: pair(s),
            mittag_leffler: pair(e),
            rel_diff: relative(s, e),
        }
    });

    match a.format {
        Format::Text => {
            writeln!(out, "schrodinger alpha {} terms {}", a.alpha, a.terms).map_err(io_error)?;
            for c in &coefficients {
                writeln!(
                    out,
                    "c_{} = {}    closed form {}    rel diff {:.3e}",
                    c.n,
                    complex_text(C64::new(c.value[0], c.value[1])),
                    complex_text(C64::new(c.closed_form[0], c.closed_form[1])),
                    c.rel_diff
                )
                .map_err(io_error)?;
            }
            if let Some(e) = &eval {
                writeln!(
                    out,
                    "u({}, {}) partial sum {}    mittag-leffler {}    rel diff {:.3e}",
                    e.x,
                    e.t,
                    complex_text(C64::new(e.partial_sum[0], e.partial_sum[1])),
                    complex_text(C64::new(e.mittag_leffler[0], e.mittag_leffler[1])),
                    e.rel_diff
                )
                .map_err(io_error)?;
            }
            Ok(())
        }
        Format::Json => {
            let mut manifest = Manifest::new("solve");
            manifest.method = Some("schrodinger".into());
            manifest.alpha = Some(a.alpha);
            manifest.terms = Some(a.terms);
            write_json(
                out,
                &Document {
                    schema: SCHEMA,
                    kind: "solve".into(),
                    manifest,
                    polynomials: None,
                    check: None,
                    solve: Some(SolveJson {
                        alpha: a.alpha,
                        coefficients,
                        eval,
                    }),
                },
            )
        }
    }
}
