//! Plain-text matrix dumps.
//!
//! Block matrices: header `q n k`, then one line per row of space-separated
//! element indices. Polynomial matrices: header `q n k m`, then one line per
//! row holding `n` coefficient lists `[c_0,c_1,…,c_m]`.

use std::io::{BufRead, Write};

use crate::convolutional::PolyMatrix;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::Matrix;
use crate::poly::Poly;

pub fn write_matrix(out: &mut impl Write, q: u32, m: &Matrix) -> std::io::Result<()> {
    writeln!(out, "{q} {} {}", m.cols(), m.rows())?;
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn write_poly_matrix(out: &mut impl Write, g: &PolyMatrix) -> std::io::Result<()> {
    let m = g.memory();
    writeln!(out, "{} {} {} {m}", g.field().order(), g.cols(), g.rows())?;
    for r in 0..g.rows() {
        let entries: Vec<String> = g
            .row(r)
            .iter()
            .map(|p| {
                let c: Vec<String> = (0..=m).map(|i| p.coeff(i).to_string()).collect();
                format!("[{}]", c.join(","))
            })
            .collect();
        writeln!(out, "{}", entries.join(" "))?;
    }
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(line, format!("bad number {t:?}")))
        })
        .collect()
}

fn lines(input: impl BufRead) -> Result<Vec<(usize, String)>> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| {
            l.map(|l| (i + 1, l))
                .map_err(|e| parse_err(i + 1, e.to_string()))
        })
        .filter(|r| r.as_ref().map_or(true, |(_, l)| !l.trim().is_empty()))
        .collect()
}

/// Reads a block matrix dump; returns the field order and the matrix.
pub fn read_matrix(input: impl BufRead) -> Result<(u32, Matrix)> {
    let lines = lines(input)?;
    let (hline, header) = lines
        .first()
        .ok_or_else(|| parse_err(1, "missing header"))?;
    let [q, n, k] = numbers(*hline, header)?[..] else {
        return Err(parse_err(*hline, "header must be `q n k`"));
    };
    if lines.len() - 1 != k as usize {
        return Err(parse_err(
            *hline,
            format!("{k} rows declared, {} found", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(k as usize);
    for (ln, text) in &lines[1..] {
        let row = numbers(*ln, text)?;
        if row.len() != n as usize {
            return Err(parse_err(
                *ln,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        if let Some(v) = row.iter().find(|&&v| v >= q) {
            return Err(parse_err(*ln, format!("entry {v} outside GF({q})")));
        }
        rows.push(row.into_iter().map(|v| v as u32).collect());
    }
    let m = if rows.is_empty() {
        Matrix::from_flat(0, n as usize, Vec::new())?
    } else {
        Matrix::from_rows(rows)?
    };
    Ok((q as u32, m))
}

/// Reads a polynomial matrix dump over the canonical field of the stated order.
pub fn read_poly_matrix(input: impl BufRead) -> Result<PolyMatrix> {
    let lines = lines(input)?;
    let (hline, header) = lines
        .first()
        .ok_or_else(|| parse_err(1, "missing header"))?;
    let [q, n, k, m] = numbers(*hline, header)?[..] else {
        return Err(parse_err(*hline, "header must be `q n k m`"));
    };
    let field = FiniteField::with_order(q)?;
    if lines.len() - 1 != k as usize {
        return Err(parse_err(
            *hline,
            format!("{k} rows declared, {} found", lines.len() - 1),
        ));
    }
    let mut rows = Vec::with_capacity(k as usize);
    for (ln, text) in &lines[1..] {
        let mut row = Vec::with_capacity(n as usize);
        for token in text.split_whitespace() {
            let inner = token
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| parse_err(*ln, format!("bad entry {token:?}")))?;
            let coeffs = numbers(*ln, &inner.replace(',', " "))?;
            if coeffs.len() != m as usize + 1 {
                return Err(parse_err(
                    *ln,
                    format!("entry {token} needs {} coefficients", m + 1),
                ));
            }
            if let Some(v) = coeffs.iter().find(|&&v| v >= q) {
                return Err(parse_err(*ln, format!("coefficient {v} outside GF({q})")));
            }
            row.push(Poly::from_coeffs(
                coeffs.into_iter().map(|v| v as u32).collect(),
            ));
        }
        if row.len() != n as usize {
            return Err(parse_err(
                *ln,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    PolyMatrix::new(&field, rows)
}
