//! Convolutional codes over GF(q)[D] built by splitting the rows of a block
//! code's matrix `H` into `H_0, …, H_m` and forming `G(D) = Σ H̃_i D^i`,
//! where `H̃_i` is `H_i` padded with zero rows at the bottom to `κ = rows(H_0)`.

mod bounds;
mod free_distance;
mod poly_matrix;

pub use bounds::{classify_defect, generalized_singleton, DefectClass, DefectInterval};
pub use free_distance::{
    free_distance_exact, free_distance_truncated, FreeDistanceLimits, FreeDistanceOutcome,
    TruncatedBound,
};
pub use poly_matrix::PolyMatrix;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Bounds on the free distance, each with a short provenance string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceRecord {
    pub df_lower: usize,
    pub df_lower_source: String,
    pub df_upper: usize,
    pub df_upper_source: String,
    pub df_exact: Option<usize>,
    pub df_exact_source: Option<String>,
}

/// An `(n, k, γ; m)` convolutional code given by a polynomial generator matrix.
#[derive(Clone, Debug)]
pub struct ConvolutionalCode {
    generator: PolyMatrix,
    degree: usize,
    memory: usize,
    distances: DistanceRecord,
}

impl ConvolutionalCode {
    pub fn new(generator: PolyMatrix) -> Result<Self> {
        if generator.rows() == 0 || generator.cols() == 0 {
            return Err(Error::EmptyMatrix);
        }
        if generator.rows() > generator.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows exceed length {}",
                generator.rows(),
                generator.cols()
            )));
        }
        let degree = generator.internal_degree();
        let memory = generator.memory();
        let upper = generalized_singleton(generator.cols(), generator.rows(), degree);
        Ok(Self {
            generator,
            degree,
            memory,
            distances: DistanceRecord {
                df_lower: 1,
                df_lower_source: "nonzero codeword weight".into(),
                df_upper: upper,
                df_upper_source: "generalized Singleton bound".into(),
                df_exact: None,
                df_exact_source: None,
            },
        })
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    pub fn field(&self) -> &FiniteField {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// `γ = Σ γ_i`
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn distances(&self) -> &DistanceRecord {
        &self.distances
    }

    pub fn singleton_bound(&self) -> usize {
        generalized_singleton(self.n(), self.k(), self.degree)
    }

    /// `l` when `G(D) = G_0 + G_1 D` and the nonzero rows of `G_1` are
    /// exactly its first `l` rows.
    pub fn unit_memory_rows(&self) -> Option<usize> {
        if self.memory > 1 {
            return None;
        }
        let g1 = self.generator.coefficient(1);
        let nonzero: Vec<bool> = g1.row_iter().map(|r| r.iter().any(|&x| x != 0)).collect();
        let l = nonzero.iter().take_while(|&&z| z).count();
        nonzero[l..].iter().all(|&z| !z).then_some(l)
    }

    /// `v(D) = u(D)·G(D)`.
    pub fn encode(&self, message: &[Poly]) -> Result<Vec<Poly>> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for dimension {}",
                message.len(),
                self.k()
            )));
        }
        let f = self.field();
        for p in message {
            if let Some(&value) = p.coeffs().iter().find(|&&c| c >= f.order()) {
                return Err(Error::ElementOutOfRange {
                    value,
                    order: f.order(),
                });
            }
        }
        Ok((0..self.n())
            .map(|j| {
                message
                    .iter()
                    .enumerate()
                    .fold(Poly::zero(), |acc, (i, u)| {
                        acc.add(f, &u.mul(f, self.generator.get(i, j)))
                    })
            })
            .collect())
    }

    /// Free-distance bounds from the block code whose rows were split:
    /// `d_f` is at least its minimum distance (exact if known, else designed).
    pub fn apply_block_bounds(&mut self, designed: Option<usize>, exact: Option<usize>) {
        let (value, source) = match (exact, designed) {
            (Some(d), _) => (d, "exact distance of the split block code"),
            (None, Some(d)) => (d, "designed distance of the split block code"),
            (None, None) => (1, "nonzero codeword weight"),
        };
        if value > self.distances.df_lower || self.distances.df_lower == 1 {
            self.distances.df_lower = value.max(1);
            self.distances.df_lower_source = source.into();
        }
    }

    /// Records an exact free distance, checked against the current bounds.
    pub fn record_exact(&mut self, distance: usize, source: &str) -> Result<()> {
        let r = &self.distances;
        if distance < r.df_lower || distance > r.df_upper {
            return Err(Error::Invariant(format!(
                "free distance {distance} outside [{}, {}]",
                r.df_lower, r.df_upper
            )));
        }
        self.distances.df_exact = Some(distance);
        self.distances.df_exact_source = Some(source.into());
        Ok(())
    }

    /// Runs the state-graph search and records the result when it completes.
    pub fn compute_free_distance(
        &mut self,
        limits: &FreeDistanceLimits,
    ) -> Result<FreeDistanceOutcome> {
        let outcome = free_distance_exact(self, limits)?;
        if let Some(d) = outcome.distance() {
            self.record_exact(d, "state-graph search")?;
        }
        Ok(outcome)
    }
}

/// Row partition of `H` into `H_0, …, H_m`.
#[derive(Clone, Debug)]
pub struct SplitSpec {
    field: FiniteField,
    h: Matrix,
    counts: Vec<usize>,
}

/// Ranks relevant to the split: `rank(H_0)` must equal `κ`, every
/// `rank(H_i) ≤ κ`, and `H` itself should have independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankConditions {
    pub kappa: usize,
    pub block_ranks: Vec<usize>,
    pub total_rank: usize,
    pub total_rows: usize,
}

impl RankConditions {
    pub fn h0_full(&self) -> bool {
        self.block_ranks[0] == self.kappa
    }

    pub fn blocks_bounded(&self) -> bool {
        self.block_ranks.iter().all(|&r| r <= self.kappa)
    }

    pub fn rows_independent(&self) -> bool {
        self.total_rank == self.total_rows
    }

    pub fn hold(&self) -> bool {
        self.h0_full() && self.blocks_bounded() && self.rows_independent()
    }
}

impl SplitSpec {
    pub fn new(field: &FiniteField, h: Matrix, counts: Vec<usize>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        h.check_entries(field)?;
        if counts.iter().sum::<usize>() != h.rows() {
            return Err(Error::InvalidParameter(format!(
                "row counts {counts:?} do not sum to {}",
                h.rows()
            )));
        }
        match counts.first() {
            Some(&kappa) if kappa >= 1 && counts.iter().all(|&c| c <= kappa) => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "row counts {counts:?}: the first block must be nonempty and largest"
                )))
            }
        }
        Ok(Self {
            field: field.clone(),
            h,
            counts,
        })
    }

    /// `H_0` = first `k - l` rows, `H_1` = last `l` rows. Needs `l ≤ k/2`.
    pub fn unit_memory(field: &FiniteField, h: Matrix, l: usize) -> Result<Self> {
        let k = h.rows();
        if 2 * l > k {
            return Err(Error::InvalidParameter(format!(
                "l = {l} exceeds k/2 for k = {k}"
            )));
        }
        let counts = if l == 0 { vec![k] } else { vec![k - l, l] };
        Self::new(field, h, counts)
    }

    pub fn kappa(&self) -> usize {
        self.counts[0]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn blocks(&self) -> Vec<Matrix> {
        let mut start = 0;
        self.counts
            .iter()
            .map(|&c| {
                let b = self.h.select_rows(start..start + c);
                start += c;
                b
            })
            .collect()
    }

    pub fn rank_conditions(&self) -> RankConditions {
        RankConditions {
            kappa: self.kappa(),
            block_ranks: self.blocks().iter().map(|b| b.rank(&self.field)).collect(),
            total_rank: self.h.rank(&self.field),
            total_rows: self.h.rows(),
        }
    }
}

/// Assembles `G(D) = Σ H̃_i D^i`, refusing partitions that violate the rank
/// conditions.
pub fn split_construction(spec: &SplitSpec) -> Result<ConvolutionalCode> {
    let rc = spec.rank_conditions();
    if !rc.h0_full() {
        return Err(Error::RankCondition(format!(
            "rank(H_0) = {} but kappa = {}",
            rc.block_ranks[0], rc.kappa
        )));
    }
    if let Some((i, r)) = rc
        .block_ranks
        .iter()
        .enumerate()
        .find(|&(_, &r)| r > rc.kappa)
    {
        return Err(Error::RankCondition(format!(
            "rank(H_{i}) = {r} exceeds kappa = {}",
            rc.kappa
        )));
    }
    let kappa = spec.kappa();
    let padded: Vec<Matrix> = spec
        .blocks()
        .into_iter()
        .map(|b| {
            let pad = Matrix::zeros(kappa - b.rows(), spec.h.cols());
            b.stack(&pad).expect("same width")
        })
        .collect();
    ConvolutionalCode::new(PolyMatrix::from_coefficients(&spec.field, &padded)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasicReport {
    pub basic: bool,
    pub minor_gcd: Poly,
    pub reduced: bool,
    pub leading_rank: usize,
}

/// Basic: gcd of the full-size minors is a nonzero constant. Reduced: the
/// leading-coefficient matrix has full row rank.
pub fn verify_reduced_basic(code: &ConvolutionalCode) -> ReducedBasicReport {
    let g = code.generator();
    let minor_gcd = g.minor_gcd();
    let leading_rank = g.leading_coefficient_matrix().rank(g.field());
    ReducedBasicReport {
        basic: minor_gcd.degree() == Some(0),
        minor_gcd,
        reduced: leading_rank == g.rows(),
        leading_rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    fn one_d() -> ConvolutionalCode {
        let f = gf(2);
        split_construction(&SplitSpec::new(&f, Matrix::identity(2), vec![1, 1]).unwrap()).unwrap()
    }

    #[test]
    fn identity_split_is_one_d() {
        let c = one_d();
        assert_eq!(c.generator().get(0, 0), &Poly::constant(1));
        assert_eq!(c.generator().get(0, 1), &Poly::monomial(1, 1));
        assert_eq!((c.n(), c.k(), c.degree(), c.memory()), (2, 1, 1, 1));
        let v = verify_reduced_basic(&c);
        assert!(v.basic && v.reduced);
        assert_eq!(c.unit_memory_rows(), Some(1));
    }

    #[test]
    fn encode_examples() {
        let c = one_d();
        let zero = c.encode(&[Poly::zero()]).unwrap();
        assert!(zero.iter().all(Poly::is_zero));
        let v = c.encode(&[Poly::constant(1)]).unwrap();
        assert_eq!(v, vec![Poly::constant(1), Poly::monomial(1, 1)]);
        let v = c.encode(&[Poly::from_coeffs(vec![1, 1])]).unwrap();
        assert_eq!(v[0].coeffs(), &[1, 1]);
        assert_eq!(v[1].coeffs(), &[0, 1, 1]);
        assert_eq!(v.iter().map(Poly::weight).sum::<usize>(), 4);
        assert!(c.encode(&[]).is_err());
    }

    #[test]
    fn one_d_free_distance() {
        let mut c = one_d();
        let out = c
            .compute_free_distance(&FreeDistanceLimits::default())
            .unwrap();
        assert_eq!(out.distance(), Some(2));
        assert_eq!(c.distances().df_exact, Some(2));
        let t = free_distance_truncated(&c, 3, 1 << 20).unwrap().unwrap();
        assert_eq!((t.distance, t.degree), (2, 3));
    }

    #[test]
    fn common_factor_is_not_basic() {
        let f = gf(2);
        let g =
            PolyMatrix::new(&f, vec![vec![Poly::monomial(1, 1), Poly::monomial(1, 1)]]).unwrap();
        let c = ConvolutionalCode::new(g).unwrap();
        let v = verify_reduced_basic(&c);
        assert!(!v.basic);
        assert_eq!(v.minor_gcd, Poly::monomial(1, 1));
    }

    #[test]
    fn rank_violation_refused() {
        let f = gf(2);
        let h = Matrix::from_rows(vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        let spec = SplitSpec::new(&f, h, vec![2, 1]).unwrap();
        assert!(matches!(
            split_construction(&spec),
            Err(Error::RankCondition(_))
        ));
        let h = Matrix::identity(3);
        assert!(SplitSpec::new(&f, h.clone(), vec![1, 2]).is_err());
        assert!(SplitSpec::new(&f, h, vec![2, 2]).is_err());
    }

    #[test]
    fn multi_memory_split() {
        let f = gf(3);
        let spec = SplitSpec::new(&f, Matrix::identity(4), vec![2, 1, 1]).unwrap();
        let c = split_construction(&spec).unwrap();
        assert_eq!((c.k(), c.memory(), c.degree()), (2, 2, 2));
        assert_eq!(c.unit_memory_rows(), None);
        let v = verify_reduced_basic(&c);
        assert!(v.basic);
        assert!(v.reduced);
    }

    #[test]
    fn bounds_bookkeeping() {
        let mut c = one_d();
        assert_eq!(c.distances().df_lower, 1);
        assert_eq!(c.distances().df_upper, 4);
        c.apply_block_bounds(Some(2), None);
        assert_eq!(c.distances().df_lower, 2);
        assert!(c.record_exact(5, "test").is_err());
    }
}
