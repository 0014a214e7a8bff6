//! Algorithm text format.
//!
//! ```text
//! k t
//! U
//! <k^2 lines of t rationals>
//! V
//! <k^2 lines of t rationals>
//! W
//! <k^2 lines of t rationals>
//! ```
//!
//! Blank lines and `#` comments are ignored.

use super::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;

pub fn emit_spec(alg: &BilinearAlgorithm) -> String {
    let mut out = format!("{} {}\n", alg.k(), alg.t());
    for (name, m) in [("U", alg.u()), ("V", alg.v()), ("W", alg.w())] {
        out.push_str(name);
        out.push('\n');
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(Rational::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_spec(text: &str) -> Result<BilinearAlgorithm> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header \"k t\""))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(hline, format!("malformed header {header:?}, expected \"k t\"")))?;
    let &[k, t] = dims.as_slice() else {
        return Err(Error::parse(hline, format!("malformed header {header:?}, expected \"k t\"")));
    };
    if k == 0 || t == 0 {
        return Err(Error::parse(hline, "k and t must be positive"));
    }
    let mut factors = Vec::with_capacity(3);
    for name in ["U", "V", "W"] {
        match lines.next() {
            Some((_, l)) if l == name => {}
            Some((n, l)) => return Err(Error::parse(n, format!("expected section {name}, found {l:?}"))),
            None => return Err(Error::parse(hline, format!("missing section {name}"))),
        }
        let mut data = Vec::with_capacity(k * k * t);
        for row in 0..k * k {
            let (n, l) = match lines.peek() {
                Some(&(n, l)) if !matches!(l, "U" | "V" | "W") => (n, l),
                _ => {
                    return Err(Error::parse(
                        hline,
                        format!("section {name} ends after {row} of {} rows", k * k),
                    ))
                }
            };
            lines.next();
            let entries: Vec<&str> = l.split_whitespace().collect();
            if entries.len() != t {
                return Err(Error::parse(
                    n,
                    format!("section {name} row {row} has {} entries, expected {t}", entries.len()),
                ));
            }
            for tok in entries {
                data.push(
                    tok.parse::<Rational>()
                        .map_err(|_| Error::parse(n, format!("non-rational entry {tok:?} in section {name}")))?,
                );
            }
        }
        factors.push(Matrix::new(k * k, t, data, ())?);
    }
    if let Some((n, l)) = lines.next() {
        return Err(Error::parse(n, format!("unexpected trailing content {l:?}")));
    }
    let w = factors.pop().unwrap();
    let v = factors.pop().unwrap();
    let u = factors.pop().unwrap();
    BilinearAlgorithm::new(k, t, u, v, w)
}
