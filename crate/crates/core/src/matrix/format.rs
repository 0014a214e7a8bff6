//! Matrix text format.
//!
//! ```text
//! rows cols regime
//! e11 e12 ...
//! ...
//! ```
//!
//! `regime` is one of `rational`, `f64`, `complex`, `rounded:<p>` or
//! `rounded-complex:<p>`. Rationals are written `p/q` (or `p` when integral),
//! doubles with 17 significant digits, complex values as `re+imi`.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Regime, Rounded, RoundedComplex, RoundingContext, Scalar};

pub trait TextScalar: Scalar {
    fn format(&self) -> String;
    fn parse_token(token: &str, ctx: Self::Ctx) -> Option<Self>;
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im.is_sign_negative() {
        format!("{}-{}i", fmt_f64(re), fmt_f64(-im))
    } else {
        format!("{}+{}i", fmt_f64(re), fmt_f64(im))
    }
}

fn parse_complex(token: &str) -> Option<(f64, f64)> {
    let body = token.strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].trim_start_matches('+').parse().ok()?;
    Some((re, im))
}

impl TextScalar for Rational {
    fn format(&self) -> String {
        self.to_string()
    }
    fn parse_token(token: &str, _: ()) -> Option<Self> {
        token.parse().ok()
    }
}

impl TextScalar for f64 {
    fn format(&self) -> String {
        fmt_f64(*self)
    }
    fn parse_token(token: &str, _: ()) -> Option<Self> {
        token.parse::<f64>().ok().filter(|x| x.is_finite())
    }
}

impl TextScalar for Complex64 {
    fn format(&self) -> String {
        fmt_complex(self.re, self.im)
    }
    fn parse_token(token: &str, _: ()) -> Option<Self> {
        parse_complex(token).map(|(re, im)| Complex64::new(re, im))
    }
}

impl TextScalar for Rounded {
    fn format(&self) -> String {
        fmt_f64(self.value())
    }
    fn parse_token(token: &str, ctx: RoundingContext) -> Option<Self> {
        f64::parse_token(token, ()).map(|x| Rounded::new(x, ctx))
    }
}

impl TextScalar for RoundedComplex {
    fn format(&self) -> String {
        fmt_complex(self.re, self.im)
    }
    fn parse_token(token: &str, ctx: RoundingContext) -> Option<Self> {
        parse_complex(token).map(|(re, im)| RoundedComplex::new(re, im, ctx))
    }
}

impl<T: TextScalar> Matrix<T> {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows(), self.cols(), T::regime(self.ctx()));
        for i in 0..self.rows() {
            let row: Vec<String> = self.row(i).iter().map(T::format).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// A matrix read from text, tagged with its regime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Float(Matrix<f64>),
    Complex(Matrix<Complex64>),
    Rounded(Matrix<Rounded>),
    RoundedComplex(Matrix<RoundedComplex>),
}

macro_rules! any_from {
    ($($t:ty => $v:ident),*) => {$(
        impl From<Matrix<$t>> for AnyMatrix {
            fn from(m: Matrix<$t>) -> Self {
                AnyMatrix::$v(m)
            }
        }
    )*};
}

any_from!(Rational => Rational, f64 => Float, Complex64 => Complex, Rounded => Rounded, RoundedComplex => RoundedComplex);

impl AnyMatrix {
    pub fn regime(&self) -> Regime {
        match self {
            AnyMatrix::Rational(_) => Regime::Rational,
            AnyMatrix::Float(_) => Regime::Float,
            AnyMatrix::Complex(_) => Regime::Complex,
            AnyMatrix::Rounded(m) => Regime::Rounded(m.ctx()),
            AnyMatrix::RoundedComplex(m) => Regime::RoundedComplex(m.ctx()),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => m.shape(),
            AnyMatrix::Float(m) => m.shape(),
            AnyMatrix::Complex(m) => m.shape(),
            AnyMatrix::Rounded(m) => m.shape(),
            AnyMatrix::RoundedComplex(m) => m.shape(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Rational(m) => m.to_text(),
            AnyMatrix::Float(m) => m.to_text(),
            AnyMatrix::Complex(m) => m.to_text(),
            AnyMatrix::Rounded(m) => m.to_text(),
            AnyMatrix::RoundedComplex(m) => m.to_text(),
        }
    }
}

fn parse_regime(token: &str, line: usize) -> Result<Regime> {
    let bits = |s: &str| -> Result<RoundingContext> {
        let p: u32 = s
            .parse()
            .map_err(|_| Error::parse(line, format!("bad precision in regime {token:?}")))?;
        RoundingContext::new(p).map_err(|e| Error::parse(line, e.to_string()))
    };
    match token {
        "rational" => Ok(Regime::Rational),
        "f64" => Ok(Regime::Float),
        "complex" => Ok(Regime::Complex),
        _ => {
            if let Some(p) = token.strip_prefix("rounded-complex:") {
                Ok(Regime::RoundedComplex(bits(p)?))
            } else if let Some(p) = token.strip_prefix("rounded:") {
                Ok(Regime::Rounded(bits(p)?))
            } else {
                Err(Error::parse(line, format!("unknown regime {token:?}")))
            }
        }
    }
}

fn collect<T: TextScalar>(
    rows: usize,
    cols: usize,
    ctx: T::Ctx,
    tokens: &[(usize, &str)],
) -> Result<Matrix<T>> {
    let data = tokens
        .iter()
        .map(|&(line, tok)| {
            T::parse_token(tok, ctx)
                .ok_or_else(|| Error::parse(line, format!("bad {} entry {tok:?}", T::regime(ctx))))
        })
        .collect::<Result<Vec<T>>>()?;
    Matrix::new(rows, cols, data, ctx)
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header \"rows cols regime\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::parse(hline, "header must be \"rows cols regime\""));
    }
    let dim = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::parse(hline, format!("bad dimension {s:?}")))
    };
    let (rows, cols) = (dim(fields[0])?, dim(fields[1])?);
    let regime = parse_regime(fields[2], hline)?;
    let tokens: Vec<(usize, &str)> = lines
        .flat_map(|(n, l)| l.split_whitespace().map(move |t| (n, t)))
        .collect();
    if tokens.len() != rows * cols {
        return Err(Error::parse(
            hline,
            format!("expected {} entries, found {}", rows * cols, tokens.len()),
        ));
    }
    Ok(match regime {
        Regime::Rational => AnyMatrix::Rational(collect(rows, cols, (), &tokens)?),
        Regime::Float => AnyMatrix::Float(collect(rows, cols, (), &tokens)?),
        Regime::Complex => AnyMatrix::Complex(collect(rows, cols, (), &tokens)?),
        Regime::Rounded(c) => AnyMatrix::Rounded(collect(rows, cols, c, &tokens)?),
        Regime::RoundedComplex(c) => AnyMatrix::RoundedComplex(collect(rows, cols, c, &tokens)?),
    })
}
