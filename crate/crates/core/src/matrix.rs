//! Dense row-major matrices of field-element indices.

use crate::error::{Error, Result};
use crate::field::FiniteField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix with `cols` columns from already-flattened rows.
    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(<[u32]>::to_vec).collect()
    }

    pub fn check_entries(&self, field: &FiniteField) -> Result<()> {
        match self.data.iter().find(|&&v| v >= field.order()) {
            Some(&value) => Err(Error::ElementOutOfRange {
                value,
                order: field.order(),
            }),
            None => Ok(()),
        }
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch("stacking unequal widths".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn delete_column(&self, c: usize) -> Self {
        let data = self
            .row_iter()
            .flat_map(|row| {
                row.iter()
                    .enumerate()
                    .filter(move |&(j, _)| j != c)
                    .map(|(_, &v)| v)
            })
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, field: &FiniteField, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Kronecker product; entry `((i1,i2),(j1,j2))` lands at row `i1*r2+i2`,
    /// column `j1*c2+j2`.
    pub fn kron(&self, field: &FiniteField, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            field.mul(a, other.get(i2, j2)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self, field: &FiniteField) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = field.inv(m.get(lead, c)).expect("nonzero pivot");
            m.scale_row(field, lead, inv);
            for r in 0..m.rows {
                let f = m.get(r, c);
                if r != lead && f != 0 {
                    m.sub_scaled_row(field, r, lead, f);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of `{x : self · x^T = 0}`, one vector per row.
    pub fn nullspace(&self, field: &FiniteField) -> Self {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, field.neg(r.get(row, f)));
            }
        }
        out
    }

    /// Indices of a maximal linearly independent subset of rows, greedy in order.
    pub fn independent_rows(&self, field: &FiniteField) -> Vec<usize> {
        let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut kept = Vec::new();
        for r in 0..self.rows {
            let mut v = self.row(r).to_vec();
            for (pc, b) in &basis {
                let f = v[*pc];
                if f != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = field.sub(*x, field.mul(f, y));
                    }
                }
            }
            if let Some(pc) = v.iter().position(|&x| x != 0) {
                let inv = field.inv(v[pc]).expect("nonzero");
                v.iter_mut().for_each(|x| *x = field.mul(*x, inv));
                basis.push((pc, v));
                kept.push(r);
            }
        }
        kept
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, field: &FiniteField, r: usize, f: u32) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = field.mul(*v, f);
        }
    }

    /// `row[target] -= f · row[source]`
    fn sub_scaled_row(&mut self, field: &FiniteField, target: usize, source: usize, f: u32) {
        for c in 0..self.cols {
            let v = field.sub(self.get(target, c), field.mul(f, self.get(source, c)));
            self.set(target, c, v);
        }
    }
}
