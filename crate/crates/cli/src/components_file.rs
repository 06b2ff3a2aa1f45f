//! Component files: one line `re im [conj_re conj_im]` per index `k`,
//! starting at `k = 0`. Text after `#` is a comment; blank lines are
//! skipped. Lines without conjugate columns take the complex conjugate.

use adomian::{ComponentSet64, C64};

use crate::error::CliError;

pub fn parse_components(text: &str) -> Result<ComponentSet64, CliError> {
    let mut values = Vec::new();
    let mut conj = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>().map_err(|_| CliError::Components {
                    line: i + 1,
                    msg: format!("`{t}` is not a number"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = match nums.as_slice() {
            [re, im] => {
                let v = C64::new(*re, *im);
                conj.push(v.conj());
                v
            }
            [re, im, cre, cim] => {
                conj.push(C64::new(*cre, *cim));
                C64::new(*re, *im)
            }
            _ => {
                return Err(CliError::Components {
                    line: i + 1,
                    msg: format!("expected 2 or 4 numbers, found {}", nums.len()),
                })
            }
        };
        values.push(v);
    }
    Ok(ComponentSet64::with_conjugates(values, conj)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_conjugates() {
        let c = parse_components("# u_k\n1 0\n\n0.5 -0.25   # second\n0 1 2 3\n").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.conj_values()[1], C64::new(0.5, 0.25));
        assert_eq!(c.conj_values()[2], C64::new(2.0, 3.0));
    }

    #[test]
    fn reports_the_line() {
        let err = parse_components("1 0\n1 x\n").unwrap_err();
        assert!(matches!(err, CliError::Components { line: 2, .. }));
        assert!(parse_components("1 2 3\n").is_err());
    }
}
