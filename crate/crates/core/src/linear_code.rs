//! Linear block codes and the puncture / extend / expand / product combinators.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FiniteField, SubfieldBasis};
use crate::matrix::Matrix;

/// A linear `[n, k]` code given by a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FiniteField,
    generator: Matrix,
    designed_distance: Option<usize>,
    exact_distance: Option<usize>,
}

/// Outcome of an exhaustive minimum-distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWeightReport {
    pub distance: usize,
    /// Number of nonzero codewords of weight `distance`.
    pub count: u64,
    /// `coverage[j]` is set when some minimum-weight codeword is nonzero at `j`.
    pub coverage: Vec<bool>,
}

impl MinWeightReport {
    /// Whether no minimum-weight codeword is supported on coordinate `j`.
    pub fn coordinate_avoided(&self, j: usize) -> bool {
        !self.coverage[j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceStatus {
    Exact(MinWeightReport),
    /// Enumeration over budget; only the designed bound is known.
    BoundOnly {
        designed: usize,
        codewords: u128,
        budget: u64,
    },
    Infeasible {
        codewords: u128,
        budget: u64,
    },
}

impl DistanceStatus {
    pub fn exact(&self) -> Option<&MinWeightReport> {
        match self {
            Self::Exact(r) => Some(r),
            _ => None,
        }
    }
}

/// Number of codewords `q^k`, saturating.
pub fn codeword_count(q: u32, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Visits `base + Σ c_i rows[i]` for every `c ∈ GF(q)^{rows}`, updating the
/// word incrementally (one scaled row per odometer step).
pub(crate) fn for_each_combination(
    field: &FiniteField,
    rows: &[&[u32]],
    mut word: Vec<u32>,
    mut visit: impl FnMut(&[u32]),
) {
    let q = field.order();
    let mut digits = vec![0u32; rows.len()];
    visit(&word);
    'outer: loop {
        let mut j = 0;
        loop {
            if j == rows.len() {
                break 'outer;
            }
            let old = digits[j];
            let new = if old + 1 == q { 0 } else { old + 1 };
            let delta = field.sub(new, old);
            for (w, &g) in word.iter_mut().zip(rows[j]) {
                *w = field.add(*w, field.mul(delta, g));
            }
            digits[j] = new;
            if new != 0 {
                break;
            }
            j += 1;
        }
        visit(&word);
    }
}

struct Partial {
    distance: usize,
    count: u64,
    coverage: Vec<bool>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Self {
            distance: usize::MAX,
            count: 0,
            coverage: vec![false; n],
        }
    }

    fn observe(&mut self, word: &[u32]) {
        let w = word.iter().filter(|&&x| x != 0).count();
        if w < self.distance {
            self.distance = w;
            self.count = 0;
            self.coverage.iter_mut().for_each(|c| *c = false);
        }
        if w == self.distance {
            self.count += 1;
            for (c, &x) in self.coverage.iter_mut().zip(word) {
                *c |= x != 0;
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if other.distance < self.distance {
            return other;
        }
        if other.distance == self.distance {
            self.count += other.count;
            for (a, b) in self.coverage.iter_mut().zip(&other.coverage) {
                *a |= *b;
            }
        }
        self
    }
}

impl LinearCode {
    /// Reduces `matrix` to a maximal set of independent rows (kept in their
    /// original order) and uses it as generator.
    pub fn from_generator(field: &FiniteField, matrix: Matrix) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        matrix.check_entries(field)?;
        let keep = matrix.independent_rows(field);
        let generator = if keep.len() == matrix.rows() {
            matrix
        } else {
            Matrix::from_rows(keep.iter().map(|&r| matrix.row(r).to_vec()).collect())?
        };
        Ok(Self::from_full_rank(field, generator))
    }

    fn from_full_rank(field: &FiniteField, generator: Matrix) -> Self {
        Self {
            field: field.clone(),
            generator,
            designed_distance: None,
            exact_distance: None,
        }
    }

    fn zero_code(field: &FiniteField, n: usize) -> Self {
        Self {
            field: field.clone(),
            generator: Matrix::from_flat(0, n, Vec::new()).expect("empty"),
            designed_distance: None,
            exact_distance: None,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn designed_distance(&self) -> Option<usize> {
        self.designed_distance
    }

    pub fn exact_distance(&self) -> Option<usize> {
        self.exact_distance
    }

    pub fn with_designed_distance(mut self, d: usize) -> Self {
        self.designed_distance = Some(d);
        self
    }

    /// Records an exact distance, checking it against the designed bound and
    /// the Singleton bound.
    pub fn with_exact_distance(mut self, d: usize) -> Result<Self> {
        if let Some(designed) = self.designed_distance {
            if d < designed {
                return Err(Error::Invariant(format!(
                    "exact distance {d} below designed distance {designed}"
                )));
            }
        }
        if d == 0 || d > self.n() + 1 - self.k() {
            return Err(Error::Invariant(format!(
                "distance {d} violates 1 <= d <= n - k + 1"
            )));
        }
        self.exact_distance = Some(d);
        Ok(self)
    }

    pub fn encode(&self, info: &[u32]) -> Result<Vec<u32>> {
        if info.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for a code of dimension {}",
                info.len(),
                self.k()
            )));
        }
        let f = &self.field;
        let mut word = vec![0; self.n()];
        for (&u, row) in info.iter().zip(self.generator.row_iter()) {
            for (w, &g) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(u, g));
            }
        }
        Ok(word)
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        if word.len() != self.n() {
            return false;
        }
        let extended = self
            .generator
            .stack(&Matrix::from_rows(vec![word.to_vec()]).expect("one row"))
            .expect("same width");
        extended.rank(&self.field) == self.k()
    }

    pub fn same_row_space(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n() == other.n()
            && self.k() == other.k()
            && self
                .generator
                .stack(&other.generator)
                .map(|m| m.rank(&self.field) == self.k())
                .unwrap_or(false)
    }

    /// The Euclidean dual code.
    pub fn dual(&self) -> Self {
        if self.k() == 0 {
            return Self::from_full_rank(&self.field, Matrix::identity(self.n()));
        }
        let ns = self.generator.nullspace(&self.field);
        if ns.rows() == 0 {
            return Self::zero_code(&self.field, self.n());
        }
        Self::from_full_rank(&self.field, ns)
    }

    /// Exact minimum distance by enumerating all codewords, when `q^k <= budget`.
    ///
    /// Only codewords whose first nonzero information symbol is 1 are visited;
    /// the other `q - 2` multiples share weight and support.
    pub fn min_distance_exact(&self, budget: u64) -> Result<DistanceStatus> {
        let k = self.k();
        if k == 0 {
            return Err(Error::InvalidParameter(
                "the zero code has no nonzero codeword".into(),
            ));
        }
        let q = self.field.order();
        let codewords = codeword_count(q, k);
        if codewords > budget as u128 {
            return Ok(match self.designed_distance {
                Some(designed) => DistanceStatus::BoundOnly {
                    designed,
                    codewords,
                    budget,
                },
                None => DistanceStatus::Infeasible { codewords, budget },
            });
        }
        Ok(DistanceStatus::Exact(min_weight(
            &self.field,
            &self.generator,
        )))
    }

    pub fn puncture(&self, j: usize) -> Result<Self> {
        if j >= self.n() {
            return Err(Error::CoordinateOutOfRange {
                index: j,
                len: self.n(),
            });
        }
        let mut code = Self::from_generator(&self.field, self.generator.delete_column(j))?;
        code.designed_distance = self.designed_distance.map(|d| d.saturating_sub(1).max(1));
        Ok(code)
    }

    /// Appends the overall parity coordinate `-(c_0 + … + c_{n-1})`.
    pub fn extend(&self) -> Self {
        let f = &self.field;
        let rows = self
            .generator
            .row_iter()
            .map(|row| {
                let sum = row.iter().fold(0, |acc, &x| f.add(acc, x));
                let mut r = row.to_vec();
                r.push(f.neg(sum));
                r
            })
            .collect();
        let generator = Matrix::from_rows(rows).expect("rectangular");
        let mut code = Self::from_full_rank(f, generator);
        code.designed_distance = self.designed_distance;
        code
    }

    /// Replaces every symbol by its coordinates over the subfield of `basis`.
    pub fn expand(&self, basis: &SubfieldBasis) -> Result<Self> {
        if basis.large() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let mut rows = Vec::with_capacity(self.k() * basis.extension_degree());
        for row in self.generator.row_iter() {
            for &b in basis.basis() {
                rows.push(expand_word(
                    basis,
                    &row.iter().map(|&x| f.mul(b, x)).collect::<Vec<_>>(),
                ));
            }
        }
        let mut code = Self::from_generator(basis.small(), Matrix::from_rows(rows)?)?;
        code.designed_distance = self.designed_distance;
        Ok(code)
    }

    /// Tensor-product code; generator is the Kronecker product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let generator = self.generator.kron(&self.field, &other.generator);
        let mut code = Self::from_full_rank(&self.field, generator);
        code.designed_distance = self
            .designed_distance
            .zip(other.designed_distance)
            .map(|(a, b)| a * b);
        Ok(code)
    }
}

/// Coordinates of each symbol, concatenated symbol by symbol.
pub fn expand_word(basis: &SubfieldBasis, word: &[u32]) -> Vec<u32> {
    word.iter().flat_map(|&x| basis.coordinates(x)).collect()
}

/// Exhaustive minimum weight of the row space of `generator` (rows independent).
pub(crate) fn min_weight(field: &FiniteField, generator: &Matrix) -> MinWeightReport {
    let k = generator.rows();
    let n = generator.cols();
    let q = field.order();
    // Work items: (leading row, value of the next digit if any).
    let tasks: Vec<(usize, Option<u32>)> = (0..k)
        .flat_map(|lead| {
            if lead + 1 < k {
                (0..q).map(|c| (lead, Some(c))).collect::<Vec<_>>()
            } else {
                vec![(lead, None)]
            }
        })
        .collect();
    let partials: Vec<Partial> = tasks
        .par_iter()
        .map(|&(lead, next)| {
            let mut word = generator.row(lead).to_vec();
            let rest_start = match next {
                Some(c) => {
                    for (w, &g) in word.iter_mut().zip(generator.row(lead + 1)) {
                        *w = field.add(*w, field.mul(c, g));
                    }
                    lead + 2
                }
                None => lead + 1,
            };
            let rest: Vec<&[u32]> = (rest_start..k).map(|r| generator.row(r)).collect();
            let mut partial = Partial::new(n);
            for_each_combination(field, &rest, word, |w| partial.observe(w));
            partial
        })
        .collect();
    let merged = partials.into_iter().fold(Partial::new(n), Partial::merge);
    MinWeightReport {
        distance: merged.distance,
        count: merged.count * (q as u64 - 1),
        coverage: merged.coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 1 << 24;

    /// Reed–Solomon style evaluation code: rows are x^i at the given points.
    fn evaluation_code(f: &FiniteField, points: &[u32], max_deg: u64) -> LinearCode {
        let rows = (0..=max_deg)
            .map(|i| points.iter().map(|&x| f.pow(x, i)).collect())
            .collect();
        LinearCode::from_generator(f, Matrix::from_rows(rows).unwrap()).unwrap()
    }

    /// Independent brute force: every message, no incremental updates.
    fn naive_distance(code: &LinearCode) -> (usize, u64) {
        let q = code.field().order();
        let k = code.k();
        let mut best = (usize::MAX, 0);
        for idx in 1..(q as u64).pow(k as u32) {
            let mut rest = idx;
            let msg: Vec<u32> = (0..k)
                .map(|_| {
                    let c = (rest % q as u64) as u32;
                    rest /= q as u64;
                    c
                })
                .collect();
            let w = code
                .encode(&msg)
                .unwrap()
                .iter()
                .filter(|&&x| x != 0)
                .count();
            if w < best.0 {
                best = (w, 1);
            } else if w == best.0 {
                best.1 += 1;
            }
        }
        best
    }

    fn exact(code: &LinearCode) -> MinWeightReport {
        code.min_distance_exact(BUDGET)
            .unwrap()
            .exact()
            .cloned()
            .unwrap()
    }

    fn gf(q: u64) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn identity_is_full_space() {
        let f = gf(3);
        let c = LinearCode::from_generator(&f, Matrix::identity(4)).unwrap();
        assert_eq!((c.n(), c.k()), (4, 4));
        assert_eq!(exact(&c).distance, 1);
    }

    #[test]
    fn duplicate_rows_drop_dimension() {
        let f = gf(5);
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![1, 2, 3], vec![0, 1, 4]]).unwrap();
        let c = LinearCode::from_generator(&f, m).unwrap();
        assert_eq!(c.k(), 2);
    }

    #[test]
    fn empty_matrix_rejected() {
        let f = gf(2);
        assert_eq!(
            LinearCode::from_generator(&f, Matrix::zeros(0, 3)).unwrap_err(),
            Error::EmptyMatrix
        );
    }

    #[test]
    fn repetition_code() {
        let f = gf(4);
        let c =
            LinearCode::from_generator(&f, Matrix::from_rows(vec![vec![1; 5]]).unwrap()).unwrap();
        let r = exact(&c);
        assert_eq!(r.distance, 5);
        assert_eq!(r.count, 3);
        assert!(r.coverage.iter().all(|&b| b));
        let p = c.puncture(2).unwrap();
        assert_eq!((p.n(), p.k(), exact(&p).distance), (4, 1, 4));
    }

    #[test]
    fn extend_binary_repetition_parity() {
        let f = gf(2);
        for n in 2..8 {
            let c = LinearCode::from_generator(&f, Matrix::from_rows(vec![vec![1; n]]).unwrap())
                .unwrap();
            let e = c.extend();
            let expected = if n % 2 == 0 { n } else { n + 1 };
            assert_eq!(exact(&e).distance, expected);
        }
    }

    #[test]
    fn dual_involution_and_full_space() {
        let f = gf(8);
        let c = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 2);
        let d = c.dual();
        assert_eq!((d.n(), d.k()), (8, 5));
        assert!(c
            .generator()
            .mul(&f, &d.generator().transpose())
            .unwrap()
            .is_zero());
        assert!(d.dual().same_row_space(&c));
        let full = LinearCode::from_generator(&f, Matrix::identity(4)).unwrap();
        assert_eq!(full.dual().k(), 0);
        assert_eq!(full.dual().dual().k(), 4);
    }

    #[test]
    fn rational_evaluation_code_distances() {
        let f = gf(8);
        let pts: Vec<u32> = (0..8).collect();
        let c3 = evaluation_code(&f, &pts, 2);
        let r = exact(&c3);
        // Frozen from an independent brute-force oracle.
        assert_eq!((r.distance, r.count), (6, 196));
        assert!(r.coverage.iter().all(|&b| b));
        assert_eq!(naive_distance(&c3), (6, 196));

        let c6 = evaluation_code(&f, &pts, 5);
        assert_eq!((exact(&c6).distance, exact(&c6).count), (3, 392));

        let dual = c3.dual();
        assert_eq!((exact(&dual).distance, exact(&dual).count), (4, 490));
    }

    #[test]
    fn puncture_hypothesis_fails_on_mds() {
        let f = gf(8);
        let c = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 2);
        let report = exact(&c);
        assert!(!report.coordinate_avoided(0));
        let p = c.puncture(0).unwrap();
        let r = exact(&p);
        assert_eq!((p.n(), p.k(), r.distance, r.count), (7, 3, 5, 147));
        assert!(c.puncture(8).is_err());
    }

    #[test]
    fn extend_then_puncture_round_trip() {
        let f = gf(8);
        let c = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 2);
        let e = c.extend();
        assert_eq!(exact(&e).distance, 6);
        assert!(e.puncture(8).unwrap().same_row_space(&c));
    }

    #[test]
    fn product_codes() {
        let f = gf(8);
        let c2 = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 1);
        let p = c2.product(&c2).unwrap();
        assert_eq!((p.n(), p.k()), (64, 4));
        let r = exact(&p);
        assert_eq!((r.distance, r.count), (49, 448));

        let trivial = LinearCode::from_generator(&f, Matrix::identity(1)).unwrap();
        assert!(c2.product(&trivial).unwrap().same_row_space(&c2));

        let rep =
            LinearCode::from_generator(&f, Matrix::from_rows(vec![vec![1; 3]]).unwrap()).unwrap();
        assert_eq!(exact(&rep.product(&rep).unwrap()).distance, 9);
        assert_eq!(
            c2.product(&LinearCode::from_generator(&gf(4), Matrix::identity(1)).unwrap())
                .unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn expand_gf16_to_gf4() {
        let large = gf(16);
        let small = gf(4);
        let basis = SubfieldBasis::canonical(&large, &small).unwrap();
        let c = evaluation_code(&large, &(0..8).collect::<Vec<_>>(), 2);
        let e = c.expand(&basis).unwrap();
        assert_eq!((e.n(), e.k()), (16, 6));
        let r = exact(&e);
        assert_eq!((r.distance, r.count), (6, 24));
        // wt(expanded) >= wt(original) for every codeword
        for idx in 0..16u32.pow(3) {
            let msg = vec![idx % 16, (idx / 16) % 16, idx / 256];
            let w = c.encode(&msg).unwrap();
            let x = expand_word(&basis, &w);
            let wt = |v: &[u32]| v.iter().filter(|&&s| s != 0).count();
            assert!(wt(&x) >= wt(&w));
            assert!(e.contains(&x));
        }
        assert!(e.expand(&basis).is_err());
    }

    #[test]
    fn over_budget_is_explicit() {
        let f = gf(8);
        let c = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 5);
        assert_eq!(
            c.min_distance_exact(1000).unwrap(),
            DistanceStatus::Infeasible {
                codewords: 262144,
                budget: 1000
            }
        );
        let c = c.with_designed_distance(3);
        assert!(matches!(
            c.min_distance_exact(1000).unwrap(),
            DistanceStatus::BoundOnly { designed: 3, .. }
        ));
    }

    #[test]
    fn exact_distance_respects_designed() {
        let f = gf(8);
        let c = evaluation_code(&f, &(0..8).collect::<Vec<_>>(), 2).with_designed_distance(6);
        assert!(c.clone().with_exact_distance(5).is_err());
        assert_eq!(c.with_exact_distance(6).unwrap().exact_distance(), Some(6));
    }
}
