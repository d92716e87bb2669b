//! Plain-text presentation files.
//!
//! ```text
//! gens 3
//! r0^2
//! r1^2
//! r2^2
//! ( r0 r1 )^4
//! ```
//!
//! Line 1 is `gens <n>`. Every further line is one relator: space-separated
//! tokens, each a label `r<k>` (a trailing `~` is display-only), a label with
//! a power `r<k>^m`, an opening `(` or a closing `)^m`.

use polyext_core::fp::{Expr, Presentation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line 1: expected `gens <n>`")]
    Header,
    #[error("line {line}: {message}")]
    Relator { line: usize, message: String },
}

/// Renders `pres` in the file format, one relator per line, newline
/// terminated.
pub fn render_presentation(pres: &Presentation) -> String {
    let mut out = format!("gens {}\n", pres.ngens());
    for r in pres.relators() {
        out.push_str(&pres.render(r));
        out.push('\n');
    }
    out
}

/// Parses the file format. Involution relators may be listed; they are
/// always present in the result.
pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut lines = text.lines();
    let ngens = lines
        .next()
        .and_then(|l| l.strip_prefix("gens "))
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|n| *n > 0)
        .ok_or(FormatError::Header)?;
    let mut pres = Presentation::new(ngens);
    for (k, line) in lines.enumerate() {
        let line_no = k + 2;
        let err = |message: String| FormatError::Relator { line: line_no, message };
        let (expr, tilde) = parse_relator(line, ngens).map_err(err)?;
        if let Some(g) = tilde {
            pres.set_label(g, format!("r{}~", g));
        }
        pres.push(expr);
    }
    Ok(pres)
}

fn parse_power(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("bad exponent `{}`", s)),
    }
}

/// Parses one relator line. Also returns the generator written with `~`.
fn parse_relator(line: &str, ngens: usize) -> Result<(Expr, Option<usize>), String> {
    if line.is_empty() {
        return Err(String::from("empty relator"));
    }
    let mut stack: Vec<Vec<Expr>> = vec![Vec::new()];
    let mut tilde = None;
    for token in line.split(' ') {
        if token == "(" {
            stack.push(Vec::new());
        } else if let Some(power) = token.strip_prefix(")^") {
            let k = parse_power(power)?;
            let inner = stack.pop().filter(|_| !stack.is_empty()).ok_or("unbalanced `)`")?;
            stack.last_mut().expect("outer group").push(Expr::seq(inner).pow(k));
        } else {
            let (label, power) = match token.split_once('^') {
                Some((l, p)) => (l, Some(parse_power(p)?)),
                None => (token, None),
            };
            let (digits, marked) = match label.strip_suffix('~') {
                Some(d) => (d, true),
                None => (label, false),
            };
            let g = digits
                .strip_prefix('r')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| format!("bad token `{}`", token))?;
            if g >= ngens {
                return Err(format!("generator `{}` out of range", label));
            }
            if marked {
                tilde = Some(g);
            }
            let e = Expr::gen(g);
            stack.last_mut().expect("open group").push(match power {
                Some(k) => e.pow(k),
                None => e,
            });
        }
    }
    if stack.len() != 1 {
        return Err(String::from("unclosed `(`"));
    }
    let mut items = stack.pop().expect("outer group");
    let expr = if items.len() == 1 {
        items.pop().expect("one item")
    } else {
        Expr::seq(items)
    };
    Ok((expr, tilde))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_product_has_only_involutions() {
        let text = render_presentation(&Presentation::new(3));
        assert_eq!(text, "gens 3\nr0^2\nr1^2\nr2^2\n");
        let back = parse_presentation(&text).unwrap();
        assert_eq!(back.ngens(), 3);
        assert!(back.canonical_relators().is_empty());
    }

    #[test]
    fn nested_powers_round_trip() {
        let text = "gens 3\nr0^2\nr1^2\nr2^2\n( r0 r1 ( r2 r1 )^2 )^4\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(render_presentation(&pres), text);
    }

    #[test]
    fn tilde_label_is_kept_for_display() {
        let text = "gens 3\nr0~^2\nr1^2\nr2^2\n( r0~ r2 r1 r2 )^2\n";
        let pres = parse_presentation(text).unwrap();
        assert_eq!(pres.labels()[0], "r0~");
        assert_eq!(render_presentation(&pres), text);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_presentation("gen 3\n"), Err(FormatError::Header)));
        for bad in [
            "( r0 r1",
            "r0 r1 )^2",
            "r3",
            "(r0 r1)^2",
            "r0^0",
            "x1",
            "",
            "r0  r1",
            "( r0 )",
        ] {
            let text = format!("gens 3\n{}\n", bad);
            assert!(parse_presentation(&text).is_err(), "{:?}", bad);
        }
    }
}
