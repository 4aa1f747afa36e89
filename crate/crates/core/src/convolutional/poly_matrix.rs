use crate::error::{Error, Result};
use crate::field::{subfield_embedding, FiniteField, MAX_ORDER};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// A `k × n` matrix with entries in GF(q)[D].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(field: &FiniteField, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged polynomial rows".into()));
        }
        let m = Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        };
        for p in &m.entries {
            if let Some(&value) = p.coeffs().iter().find(|&&c| c >= field.order()) {
                return Err(Error::ElementOutOfRange {
                    value,
                    order: field.order(),
                });
            }
        }
        Ok(m)
    }

    /// `Σ_i coeffs[i] · D^i`; all coefficient matrices share one shape.
    pub fn from_coefficients(field: &FiniteField, coeffs: &[Matrix]) -> Result<Self> {
        let first = coeffs.first().ok_or(Error::EmptyMatrix)?;
        let (rows, cols) = (first.rows(), first.cols());
        if coeffs.iter().any(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::DimensionMismatch(
                "coefficient matrices differ in shape".into(),
            ));
        }
        for c in coeffs {
            c.check_entries(field)?;
        }
        let entries = (0..rows * cols)
            .map(|idx| {
                let (r, c) = (idx / cols, idx % cols);
                Poly::from_coeffs(coeffs.iter().map(|m| m.get(r, c)).collect())
            })
            .collect();
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Poly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `γ_i`: largest entry degree in row `i` (0 for a zero row).
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .filter_map(Poly::degree)
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn memory(&self) -> usize {
        self.row_degrees().into_iter().max().unwrap_or(0)
    }

    /// `Σ γ_i`
    pub fn internal_degree(&self) -> usize {
        self.row_degrees().into_iter().sum()
    }

    /// Coefficient matrix of `D^i`.
    pub fn coefficient(&self, i: usize) -> Matrix {
        let data = self.entries.iter().map(|p| p.coeff(i)).collect();
        Matrix::from_flat(self.rows, self.cols, data).expect("shape")
    }

    /// Row `i` taken from the coefficients of `D^{γ_i}`.
    pub fn leading_coefficient_matrix(&self) -> Matrix {
        let degrees = self.row_degrees();
        let data = (0..self.rows)
            .flat_map(|r| self.row(r).iter().map(move |p| (r, p)))
            .map(|(r, p)| p.coeff(degrees[r]))
            .collect();
        Matrix::from_flat(self.rows, self.cols, data).expect("shape")
    }

    /// Monic gcd of all full-size minors, by column Euclidean elimination.
    ///
    /// Unimodular column operations preserve the gcd of the maximal minors.
    /// Once a row is reduced to a single nonzero entry `g`, that gcd factors as
    /// `g` times the gcd for the remaining rows with the pivot column removed.
    /// Constant rows are processed first so their elimination adds no degree.
    /// Returns zero when the matrix is rank deficient (or wider than tall).
    pub fn minor_gcd(&self) -> Poly {
        let f = &self.field;
        if self.rows > self.cols {
            return Poly::zero();
        }
        let degrees = self.row_degrees();
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_key(|&r| degrees[r]);
        let mut m: Vec<Vec<Poly>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut active: Vec<usize> = (0..self.cols).collect();
        let mut acc = Poly::constant(1);
        for (step, &r) in order.iter().enumerate() {
            let pending = &order[step..];
            let pivot = loop {
                let Some(piv) = active
                    .iter()
                    .copied()
                    .filter(|&c| !m[r][c].is_zero())
                    .min_by_key(|&c| m[r][c].degree())
                else {
                    return Poly::zero();
                };
                let mut clean = true;
                for &c in &active {
                    if c == piv || m[r][c].is_zero() {
                        continue;
                    }
                    let (quot, rem) = m[r][c].div_rem(f, &m[r][piv]);
                    for &rr in pending {
                        let src = m[rr][piv].clone();
                        m[rr][c].sub_mul_assign(f, &quot, &src);
                    }
                    clean &= rem.is_zero();
                }
                if clean {
                    break piv;
                }
            };
            acc = acc.mul(f, &m[r][pivot]);
            active.retain(|&c| c != pivot);
        }
        acc.monic(f)
    }

    /// Basic iff `G(λ)` has full row rank for every `λ` in the algebraic
    /// closure. A nonconstant minor gcd has degree at most `Σ γ_i`, so it has
    /// a root in some GF(q^e) with `e ≤ Σ γ_i`; checking those fields decides
    /// the question. Returns `None` when one of them exceeds `max_order`.
    pub fn basic_by_evaluation(&self, max_order: u64) -> Option<bool> {
        let f = &self.field;
        let degrees = self.row_degrees();
        let gamma = degrees.iter().sum::<usize>().max(1);
        let constant: Vec<usize> = (0..self.rows).filter(|&r| degrees[r] == 0).collect();
        let moving: Vec<usize> = (0..self.rows).filter(|&r| degrees[r] > 0).collect();
        let base = Matrix::from_rows(
            constant
                .iter()
                .map(|&r| self.row(r).iter().map(|p| p.coeff(0)).collect())
                .collect(),
        )
        .ok()?;
        if base.rows() > 0 && base.rank(f) < base.rows() {
            return Some(false);
        }
        let q = f.order() as u64;
        for e in 1..=gamma as u32 {
            let order = q.checked_pow(e)?;
            if order > max_order.min(MAX_ORDER) {
                return None;
            }
            let ext = if e == 1 {
                f.clone()
            } else {
                FiniteField::with_order(order).ok()?
            };
            let embed = if e == 1 {
                (0..f.order()).collect::<Vec<_>>()
            } else {
                subfield_embedding(f, &ext).ok()?
            };
            let lift = |m: &Matrix| {
                let data = m.row_iter().flatten().map(|&v| embed[v as usize]).collect();
                Matrix::from_flat(m.rows(), m.cols(), data).expect("shape")
            };
            let (reduced, pivots) = lift(&base).rref(&ext);
            for lambda in ext.elements() {
                let rows: Vec<Vec<u32>> = moving
                    .iter()
                    .map(|&r| {
                        self.row(r)
                            .iter()
                            .map(|p| {
                                p.coeffs().iter().rev().fold(0, |acc, &c| {
                                    ext.add(ext.mul(acc, lambda), embed[c as usize])
                                })
                            })
                            .collect()
                    })
                    .collect();
                let mut eval = Matrix::from_rows(rows).ok()?;
                // Clear the pivot columns of the constant part, then the residual
                // must have full rank on its own.
                for r in 0..eval.rows() {
                    for (i, &pc) in pivots.iter().enumerate() {
                        let factor = eval.get(r, pc);
                        if factor != 0 {
                            for c in 0..eval.cols() {
                                let v = ext.sub(eval.get(r, c), ext.mul(factor, reduced.get(i, c)));
                                eval.set(r, c, v);
                            }
                        }
                    }
                }
                if eval.rows() > 0 && eval.rank(&ext) < eval.rows() {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}
