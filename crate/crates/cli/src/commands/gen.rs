use std::io::Write;

use adomian::generators::{
    gen_fourier_direct, gen_fourier_recursive, gen_rach_sequence, gen_recursive_symbolic,
};
use adomian::{AdomianPoly, ComponentSet64, Expr, Mode, QuadratureConfig, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{complex_text, io_error, parse_expr, quadrature, write_json};
use crate::args::{Format, GenArgs, Method};
use crate::components_file::parse_components;
use crate::error::CliError;
use crate::report::{poly_to_json, value_to_json, Document, Manifest, QuadratureJson, SCHEMA};

pub fn symbolic(expr: &Expr, order: usize, method: Method, mode: Mode) -> Result<Vec<AdomianPoly>, CliError> {
    Ok(match method {
        Method::Rach => gen_rach_sequence(expr, order, mode)?,
        _ => (0..=order)
            .map(|k| gen_recursive_symbolic(expr, k, mode))
            .collect::<Result<_, _>>()?,
    })
}

pub fn numeric(
    expr: &Expr,
    order: usize,
    method: Method,
    c: &ComponentSet64,
    q: &QuadratureConfig,
) -> Result<Vec<C64>, CliError> {
    (0..=order)
        .map(|k| {
            Ok(match method {
                Method::FourierRecursive => gen_fourier_recursive(expr, c, k, q)?,
                _ => gen_fourier_direct(expr, c, k, q)?,
            })
        })
        .collect()
}

fn load_components(a: &GenArgs, manifest: &mut Manifest) -> Result<ComponentSet64, CliError> {
    if let Some(path) = &a.components {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        manifest.components = Some(format!("file:{}", path.display()));
        return parse_components(&text);
    }
    if a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        manifest.components = Some("random".into());
        manifest.seed = Some(a.seed);
        return Ok(match a.method {
            Method::FourierRecursive => ComponentSet64::random_for_recursive(&mut rng, a.order + 1, a.order),
            _ => ComponentSet64::random(&mut rng, a.order + 1),
        });
    }
    Err(CliError::Argument(format!(
        "method {} needs --components FILE or --random",
        a.method.name()
    )))
}

pub fn run(a: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let expr = parse_expr(&a.expr)?;
    let mut manifest = Manifest::new("gen");
    manifest.expr = Some(a.expr.clone());
    manifest.method = Some(a.method.name().into());
    manifest.order = Some(a.order);

    if a.method.is_symbolic() {
        let mode = if a.opaque { Mode::Opaque } else { Mode::Substituted };
        let polys = symbolic(&expr, a.order, a.method, mode)?;
        return match a.format {
            Format::Text => {
                for (k, p) in polys.iter().enumerate() {
                    writeln!(out, "A_{k} = {p}").map_err(io_error)?;
                }
                Ok(())
            }
            Format::Json => write_json(
                out,
                &Document {
                    schema: SCHEMA,
                    kind: "symbolic".into(),
                    manifest,
                    polynomials: Some(polys.iter().enumerate().map(|(k, p)| poly_to_json(k, p)).collect()),
                    check: None,
                    solve: None,
                },
            ),
        };
    }

    if a.opaque {
        return Err(CliError::Argument("--opaque applies to symbolic methods only".into()));
    }
    let q = quadrature(&a.quadrature)?;
    let c = load_components(a, &mut manifest)?;
    let values = numeric(&expr, a.order, a.method, &c, &q)?;
    manifest.quadrature = Some(QuadratureJson::from(&q));
    match a.format {
        Format::Text => {
            let source = manifest.components.as_deref().unwrap_or("");
            writeln!(out, "# {} order {} components {source} seed {}", a.method.name(), a.order, a.seed)
                .map_err(io_error)?;
            for (k, z) in values.iter().enumerate() {
                writeln!(out, "A_{k} = {}", complex_text(*z)).map_err(io_error)?;
            }
            Ok(())
        }
        Format::Json => write_json(
            out,
            &Document {
                schema: SCHEMA,
                kind: "numeric".into(),
                manifest,
                polynomials: Some(values.iter().enumerate().map(|(k, z)| value_to_json(k, *z)).collect()),
                check: None,
                solve: None,
            },
        ),
    }
}
