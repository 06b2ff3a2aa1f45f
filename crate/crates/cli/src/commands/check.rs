use std::io::Write;

use adomian::generators::{evaluate_poly, gen_fourier_direct, gen_fourier_recursive, gen_rach_sequence, gen_recursive_symbolic};
use adomian::{AdomianPoly, ComponentSet64, Error, Mode, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{complex_text, io_error, parse_expr, quadrature, write_json};
use crate::args::{CheckArgs, Format};
use crate::error::CliError;
use crate::report::{pair, BackendJson, CheckJson, Document, Manifest, QuadratureJson, WorstJson, SCHEMA};

/// Denominator floor for relative discrepancies, so a vanishing reference
/// does not turn rounding noise into a failure.
pub const REL_FLOOR: f64 = 1e-12;

pub fn relative(value: C64, reference: C64) -> f64 {
    (value - reference).norm() / reference.norm().max(REL_FLOOR)
}

#[derive(Debug, Clone)]
struct Backend {
    name: &'static str,
    notice: Option<String>,
    ran: bool,
    worst: Option<(f64, WorstJson)>,
}

impl Backend {
    fn new(name: &'static str) -> Self {
        Backend {
            name,
            notice: None,
            ran: false,
            worst: None,
        }
    }

    fn skip(name: &'static str, notice: String) -> Self {
        Backend {
            notice: Some(notice),
            ..Self::new(name)
        }
    }

    fn record(&mut self, trial: usize, order: usize, value: C64, reference: C64) {
        self.ran = true;
        let d = relative(value, reference);
        // NaN counts as worse than anything.
        if self.worst.as_ref().is_none_or(|(w, _)| d.is_nan() || d > *w) {
            self.worst = Some((
                d,
                WorstJson {
                    trial,
                    order,
                    value: pair(value),
                    reference: pair(reference),
                },
            ));
        }
    }

    fn max_rel(&self) -> Option<f64> {
        self.worst.as_ref().map(|(d, _)| *d)
    }

    fn to_json(&self) -> BackendJson {
        BackendJson {
            name: self.name.into(),
            ran: self.ran,
            notice: self.notice.clone(),
            max_rel: self.max_rel(),
            worst: self.worst.as_ref().map(|(_, w)| w.clone()),
        }
    }
}

fn eval_all(polys: &[AdomianPoly], c: &ComponentSet64) -> Result<Vec<C64>, CliError> {
    polys.iter().map(|p| Ok(evaluate_poly(p, c)?)).collect()
}

pub fn run(a: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(CliError::Argument(format!("--tol {} must be non-negative", a.tol)));
    }
    if a.trials == 0 {
        return Err(CliError::Argument("--trials must be at least 1".into()));
    }
    let expr = parse_expr(&a.expr)?;
    let q = quadrature(&a.quadrature)?;
    let n = a.order;

    let reference = (0..=n)
        .map(|k| gen_recursive_symbolic(&expr, k, Mode::Substituted))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rach = if expr.has_conjugate() {
        Backend::skip(
            "rach",
            "skipped: the partition formula needs a conjugate-free nonlinearity".into(),
        )
    } else {
        Backend::new("rach")
    };
    let rach_polys = if rach.notice.is_none() {
        Some(gen_rach_sequence(&expr, n, Mode::Substituted)?)
    } else {
        None
    };
    let mut direct = Backend::new("fourier");
    let mut nested = Backend::new("fourier-recursive");
    // Orders below this bound fit the nested evaluation budget.
    let mut nested_end = n + 1;

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for trial in 0..a.trials {
        let c = ComponentSet64::random(&mut rng, n + 1);
        let c_nested = ComponentSet64::random_for_recursive(&mut rng, n + 1, n);
        let expected = eval_all(&reference, &c)?;
        if let Some(polys) = &rach_polys {
            for (k, v) in eval_all(polys, &c)?.into_iter().enumerate() {
                rach.record(trial, k, v, expected[k]);
            }
        }
        for (k, r) in expected.iter().enumerate() {
            direct.record(trial, k, gen_fourier_direct(&expr, &c, k, &q)?, *r);
        }
        let expected_nested = eval_all(&reference, &c_nested)?;
        for k in 0..nested_end {
            match gen_fourier_recursive(&expr, &c_nested, k, &q) {
                Ok(v) => nested.record(trial, k, v, expected_nested[k]),
                Err(Error::CostBudget { needed, budget }) => {
                    nested.notice = Some(format!(
                        "orders {k} and above skipped: {needed} evaluations exceed the budget of {budget}"
                    ));
                    nested_end = k;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    let backends = [rach, direct, nested];
    let max_rel = backends
        .iter()
        .filter_map(Backend::max_rel)
        .fold(0.0_f64, |m, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) });
    let passed = a.tol > 0.0 && max_rel <= a.tol;

    match a.format {
        Format::Text => {
            writeln!(
                out,
                "check `{}` orders 0..={n}, {} trials, seed {}, tol {:e}",
                a.expr, a.trials, a.seed, a.tol
            )
            .map_err(io_error)?;
            writeln!(out, "reference: recursive (symbolic, evaluated)").map_err(io_error)?;
            for b in &backends {
                let mut line = format!("{}:", b.name);
                if let Some((d, w)) = &b.worst {
                    line += &format!(
                        " max rel {d:.3e} at trial {} A_{} = {} vs {}",
                        w.trial,
                        w.order,
                        complex_text(C64::new(w.value[0], w.value[1])),
                        complex_text(C64::new(w.reference[0], w.reference[1]))
                    );
                }
                if let Some(note) = &b.notice {
                    line += &format!(" ({note})");
                }
                writeln!(out, "{line}").map_err(io_error)?;
            }
            let verdict = if passed { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict}: max relative discrepancy {max_rel:.3e}, tolerance {:e}", a.tol)
                .map_err(io_error)?;
        }
        Format::Json => {
            let mut manifest = Manifest::new("check");
            manifest.expr = Some(a.expr.clone());
            manifest.method = Some("all".into());
            manifest.order = Some(n);
            manifest.quadrature = Some(QuadratureJson::from(&q));
            manifest.seed = Some(a.seed);
            manifest.components = Some("random".into());
            write_json(
                out,
                &Document {
                    schema: SCHEMA,
                    kind: "check".into(),
                    manifest,
                    polynomials: None,
                    check: Some(CheckJson {
                        tolerance: a.tol,
                        trials: a.trials,
                        passed,
                        max_rel,
                        backends: backends.iter().map(Backend::to_json).collect(),
                    }),
                    solve: None,
                },
            )?;
        }
    }

    if passed {
        Ok(())
    } else {
        let worst = backends
            .iter()
            .filter_map(|b| b.worst.as_ref().map(|(d, w)| (b.name, *d, w)))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        Err(CliError::Discrepancy(match worst {
            Some((name, d, w)) => format!(
                "{name} differs from the reference by {d:.3e} (trial {}, A_{}), tolerance {:e}",
                w.trial, w.order, a.tol
            ),
            None => format!("no backend produced a comparison; tolerance {:e}", a.tol),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_uses_floor() {
        assert_eq!(relative(C64::new(1e-20, 0.0), C64::new(0.0, 0.0)), 1e-8);
        assert!((relative(C64::new(2.0, 0.0), C64::new(1.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
