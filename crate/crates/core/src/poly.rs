//! Univariate polynomials over a finite field, coefficient `i` multiplying `D^i`.

use crate::field::FiniteField;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: u32) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · D^k`
    pub fn monomial(c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, f: &FiniteField, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &FiniteField, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..len)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &FiniteField, c: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn mul(&self, f: &FiniteField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// `self -= factor · other`, in place.
    pub fn sub_mul_assign(&mut self, f: &FiniteField, factor: &Self, other: &Self) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let need = factor.coeffs.len() + other.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &a) in factor.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                self.coeffs[i + j] = f.sub(self.coeffs[i + j], f.mul(a, b));
            }
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, f: &FiniteField, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = f
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = f.mul(rem[shift + dd], inv_lead);
            quot[shift] = c;
            if c != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn eval(&self, f: &FiniteField, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn monic(&self, f: &FiniteField) -> Self {
        match f.inv(self.leading()) {
            Some(inv) => self.scale(f, inv),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(f: &FiniteField, a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_over_gf2() {
        let f = FiniteField::with_order(2).unwrap();
        let a = Poly::from_coeffs(vec![1, 1]); // 1 + D
        let sq = a.mul(&f, &a);
        assert_eq!(sq.coeffs(), &[1, 0, 1]);
        let (q, r) = sq.div_rem(&f, &a);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&f, &sq, &Poly::from_coeffs(vec![1, 0, 0, 1])), a);
        assert_eq!(
            Poly::gcd(&f, &Poly::constant(1), &Poly::monomial(1, 1)),
            Poly::constant(1)
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = FiniteField::with_order(7).unwrap();
        let a = Poly::from_coeffs(vec![3, 0, 5, 1, 6]);
        let b = Poly::from_coeffs(vec![2, 4]);
        let (q, r) = a.div_rem(&f, &b);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(r.degree().unwrap_or(0) < 1);
        let mut c = a.clone();
        c.sub_mul_assign(&f, &q, &b);
        assert_eq!(c, r);
    }
}
