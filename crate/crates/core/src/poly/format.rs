//! Plain-text system and point files.
//!
//! System file:
//!
//! ```text
//! N M                      # polynomial count, variable count
//! T                        # term count of polynomial 1
//! re_num re_den im_num im_den e1 … eM
//! …
//! ```
//!
//! Points file: `K M`, then `K` blocks of `M` lines `re_num re_den im_num
//! im_den`, blocks separated by blank lines. In both formats `#` starts a
//! comment that runs to the end of the line.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::polynomial::Polynomial;
use super::system::PolynomialSystem;
use crate::arith::{CVector, GaussianRational, Rational};
use crate::error::{Error, Result};

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let line = line.trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_int(tok: &str, line: usize) -> Result<BigInt> {
    tok.parse::<BigInt>()
        .map_err(|_| Error::parse(line, format!("expected an integer, found `{tok}`")))
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a count, found `{tok}`")))
}

fn parse_ratio(num: &str, den: &str, line: usize) -> Result<Rational> {
    let n = parse_int(num, line)?;
    let d = parse_int(den, line)?;
    if d.is_zero() {
        return Err(Error::parse(line, "zero denominator"));
    }
    if d.is_negative() {
        return Err(Error::parse(line, "denominators must be positive"));
    }
    Ok(Rational::new(n, d))
}

fn parse_complex(toks: &[&str], line: usize) -> Result<GaussianRational> {
    Ok(GaussianRational::new(
        parse_ratio(toks[0], toks[1], line)?,
        parse_ratio(toks[2], toks[3], line)?,
    ))
}

fn parse_header(
    lines: &mut impl Iterator<Item = (usize, impl AsRef<str>)>,
    what: &str,
) -> Result<(usize, usize)> {
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing {what} header")))?;
    let toks: Vec<&str> = header.as_ref().split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(
            ln,
            format!("{what} header must have two counts"),
        ));
    }
    Ok((parse_count(toks[0], ln)?, parse_count(toks[1], ln)?))
}

pub fn parse_system(text: &str) -> Result<PolynomialSystem> {
    let mut lines = content_lines(text);
    let (npolys, nvars) = parse_header(&mut lines, "system")?;
    let mut polys = Vec::with_capacity(npolys);
    let mut last_line = 1;
    for k in 0..npolys {
        let (ln, tline) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line, format!("missing polynomial {}", k + 1)))?;
        let toks: Vec<&str> = tline.split_whitespace().collect();
        if toks.len() != 1 {
            return Err(Error::parse(ln, "term-count line must hold a single count"));
        }
        let nterms = parse_count(toks[0], ln)?;
        last_line = ln;
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let (ln, term) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line, "missing term line"))?;
            last_line = ln;
            let toks: Vec<&str> = term.split_whitespace().collect();
            if toks.len() != 4 + nvars {
                return Err(Error::parse(
                    ln,
                    format!(
                        "term has {} exponents, expected {nvars}",
                        toks.len().saturating_sub(4)
                    ),
                ));
            }
            let coeff = parse_complex(&toks[..4], ln)?;
            let exps = toks[4..]
                .iter()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::parse(ln, format!("bad exponent `{t}`")))
                })
                .collect::<Result<Vec<u32>>>()?;
            terms.push((exps, coeff));
        }
        polys.push(Polynomial::from_terms(nvars, terms));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content after last polynomial"));
    }
    Ok(PolynomialSystem::with_default_names(nvars, polys))
}

fn write_complex(out: &mut String, z: &GaussianRational) {
    let _ = write!(
        out,
        "{} {} {} {}",
        z.re.numer(),
        z.re.denom(),
        z.im.numer(),
        z.im.denom()
    );
}

pub fn serialize_system(sys: &PolynomialSystem) -> String {
    let mut out = format!("{} {}\n", sys.len(), sys.nvars());
    for p in sys.polys() {
        let _ = writeln!(out, "{}", p.terms().len());
        for (e, c) in p.terms() {
            write_complex(&mut out, c);
            for k in e {
                let _ = write!(out, " {k}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_points(text: &str) -> Result<Vec<CVector>> {
    let mut lines = content_lines(text);
    let (npoints, dim) = parse_header(&mut lines, "points")?;
    let mut points = Vec::with_capacity(npoints);
    let mut last_line = 1;
    for k in 0..npoints {
        let mut coords = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(last_line, format!("point {} is incomplete", k + 1)))?;
            last_line = ln;
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(Error::parse(ln, "coordinate line needs four integers"));
            }
            coords.push(parse_complex(&toks, ln)?);
        }
        points.push(CVector::new(coords));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content after last point"));
    }
    Ok(points)
}

/// Panics if the points do not all have the same dimension.
pub fn serialize_points(points: &[CVector]) -> String {
    let dim = points.first().map_or(0, CVector::len);
    assert!(points.iter().all(|p| p.len() == dim), "ragged point set");
    let mut out = format!("{} {}\n", points.len(), dim);
    for (k, p) in points.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for z in p {
            write_complex(&mut out, z);
            out.push('\n');
        }
    }
    out
}
