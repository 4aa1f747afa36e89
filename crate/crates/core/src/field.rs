//! Exact arithmetic in GF(p^t).
//!
//! Elements are addressed by their canonical index: the coefficient vector
//! `(c_0, …, c_{t-1})` of the polynomial representative, read as the base-`p`
//! number `Σ c_i p^i`. Multiplication goes through log/antilog tables built
//! once per field; addition is digit-wise (XOR in characteristic 2).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, t)` with `q = p^t`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let (mut rest, mut t) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        t += 1;
    }
    (rest == 1).then_some((p as u32, t))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials over GF(p), low-order coefficient first. Used only while
/// building a field; the hot paths never touch these.
mod gfp {
    pub(super) fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo a monic `m`.
    pub(super) fn rem_monic(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let idx = shift + i;
                    r[idx] = (r[idx] + p - (lead * c) % p) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub(super) fn monic_of_degree(p: u32, degree: u32, index: u64) -> Vec<u32> {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        let mut rest = index;
        for _ in 0..degree {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        coeffs.push(1);
        coeffs
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub(super) fn is_irreducible(p: u32, f: &[u32]) -> bool {
        let deg = (f.len() - 1) as u32;
        for d in 1..=deg / 2 {
            for idx in 0..(p as u64).pow(d) {
                let g = monic_of_degree(p, d, idx);
                if rem_monic(p, f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

struct Inner {
    p: u32,
    t: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = g^i`, stored for `0 <= i < 2(q-1)` so sums of logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^t). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

/// Serialized field description: `{p, t, modulus: [c_0, …, c_t]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub t: u32,
    pub modulus: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; {:?})",
            self.inner.p, self.inner.t, self.inner.modulus
        )
    }
}

impl FiniteField {
    /// Builds GF(p^t). Without a modulus, the lexicographically least monic
    /// irreducible of degree `t` is used (coefficients compared from `c_{t-1}`
    /// down to `c_0`).
    pub fn new(p: u32, t: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if t == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64)
            .checked_pow(t)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(t)))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != t as usize + 1 || m[t as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus { expected: t, p });
                }
                if !gfp::is_irreducible(p, &m) {
                    return Err(Error::ReducibleModulus(m));
                }
                m
            }
            None => (0..(p as u64).pow(t))
                .map(|idx| gfp::monic_of_degree(p, t, idx))
                .find(|m| gfp::is_irreducible(p, m))
                .expect("an irreducible polynomial exists in every degree"),
        };
        let order = order as u32;
        let reference = Reference {
            p,
            t,
            modulus: &modulus,
        };
        let generator = if order == 2 {
            1
        } else {
            let factors = prime_factors(order as u64 - 1);
            (2..order)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| reference.pow(g, (order as u64 - 1) / r) != 1)
                })
                .expect("the multiplicative group is cyclic")
        };
        let cycle = order as usize - 1;
        let mut exp = vec![0u32; 2 * cycle];
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..cycle {
            exp[i] = x;
            exp[i + cycle] = x;
            log[x as usize] = i as u32;
            x = reference.mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                t,
                order,
                modulus,
                generator,
                exp,
                log,
            }),
        })
    }

    /// Canonical field of order `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, t) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, t, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.t
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The least-index element generating the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.inner.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.inner.p,
            t: self.inner.t,
            modulus: self.inner.modulus.clone(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.order
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.inner.order {
            return Err(Error::ElementOutOfRange {
                value,
                order: self.inner.order,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Polynomial coefficients `c_0 … c_{t-1}` of an element.
    pub fn coefficients(&self, mut a: u32) -> Vec<u32> {
        let p = self.inner.p;
        (0..self.inner.t)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        let p = self.inner.p;
        if coeffs.len() > self.inner.t as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(format!(
                "{coeffs:?} is not a coefficient vector of GF({})",
                self.inner.order
            )));
        }
        Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c))
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            a ^ b
        } else if self.inner.t == 1 {
            (a + b) % p
        } else {
            let (mut a, mut b, mut place, mut r) = (a, b, 1, 0);
            for _ in 0..self.inner.t {
                r += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if p == 2 {
            a
        } else if self.inner.t == 1 {
            (p - a) % p
        } else {
            let (mut a, mut place, mut r) = (a, 1, 0);
            for _ in 0..self.inner.t {
                r += ((p - a % p) % p) * place;
                a /= p;
                place *= p;
            }
            r
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let cycle = inner.order - 1;
        Some(inner.exp[((cycle - inner.log[a as usize]) % cycle) as usize])
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let cycle = (inner.order - 1) as u64;
        inner.exp[((inner.log[a as usize] as u64 * (e % cycle)) % cycle) as usize]
    }

    /// Order of `a` in the multiplicative group.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let cycle = (self.inner.order - 1) as u64;
        let l = self.inner.log[a as usize] as u64;
        Some(cycle / gcd(cycle, l))
    }

    /// Product through plain polynomial multiplication and reduction, bypassing
    /// the tables.
    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        Reference {
            p: self.inner.p,
            t: self.inner.t,
            modulus: &self.inner.modulus,
        }
        .mul(a, b)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Reference<'a> {
    p: u32,
    t: u32,
    modulus: &'a [u32],
}

impl Reference<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.t)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * self.t as usize - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + xi as u64 * yj as u64) % p) as u32;
            }
        }
        let r = gfp::rem_monic(self.p, &prod, self.modulus);
        r.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// An element tagged with its field. Mixing fields is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    value: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Inverse of the left operand; the right operand is ignored.
    Inv,
    Pow(u64),
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: u32) -> Self {
        Self {
            field: self.field.clone(),
            value,
        }
    }

    pub fn apply(&self, op: FieldOp, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let f = &self.field;
        let value = match op {
            FieldOp::Add => f.add(self.value, other.value),
            FieldOp::Sub => f.sub(self.value, other.value),
            FieldOp::Mul => f.mul(self.value, other.value),
            FieldOp::Div => f
                .div(self.value, other.value)
                .ok_or(Error::DivisionByZero)?,
            FieldOp::Inv => f.inv(self.value).ok_or(Error::DivisionByZero)?,
            FieldOp::Pow(e) => f.pow(self.value, e),
        };
        Ok(self.wrap(value))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.apply(FieldOp::Add, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.apply(FieldOp::Sub, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.apply(FieldOp::Mul, other)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.apply(FieldOp::Div, other)
    }

    pub fn inv(&self) -> Result<Self> {
        self.apply(FieldOp::Inv, self)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }
}

/// Embedding of `small` into `large`: maps the generator of `small`'s
/// polynomial representation to the least-index root of `small`'s modulus in
/// `large`. Returned as a table indexed by `small` elements.
pub fn subfield_embedding(small: &FiniteField, large: &FiniteField) -> Result<Vec<u32>> {
    let not_sub = || Error::NotASubfield {
        small: small.order(),
        large: large.order(),
    };
    if small.characteristic() != large.characteristic()
        || !large.degree().is_multiple_of(small.degree())
    {
        return Err(not_sub());
    }
    let eval = |poly: &[u32], x: u32| {
        poly.iter()
            .rev()
            .fold(0u32, |acc, &c| large.add(large.mul(acc, x), c))
    };
    let root = large
        .elements()
        .find(|&w| eval(small.modulus(), w) == 0)
        .ok_or_else(not_sub)?;
    Ok(small
        .elements()
        .map(|a| eval(&small.coefficients(a), root))
        .collect())
}

/// A basis `{b_1, …, b_m}` of GF(q^m) over GF(q), with a coordinate table.
#[derive(Clone, Debug)]
pub struct SubfieldBasis {
    large: FiniteField,
    small: FiniteField,
    embedding: Vec<u32>,
    basis: Vec<u32>,
    /// Coordinates of each large-field element, packed as `Σ c_i q^i`.
    packed: Vec<u32>,
}

impl SubfieldBasis {
    pub fn new(large: &FiniteField, small: &FiniteField, basis: Vec<u32>) -> Result<Self> {
        let embedding = subfield_embedding(small, large)?;
        let m = (large.degree() / small.degree()) as usize;
        if basis.len() != m {
            return Err(Error::BasisSize {
                expected: m,
                got: basis.len(),
            });
        }
        if let Some(&b) = basis.iter().find(|&&b| b >= large.order()) {
            return Err(Error::ElementOutOfRange {
                value: b,
                order: large.order(),
            });
        }
        let q = small.order();
        let mut packed = vec![u32::MAX; large.order() as usize];
        for code in 0..large.order() {
            let mut rest = code;
            let mut x = 0;
            for &b in &basis {
                let c = rest % q;
                rest /= q;
                x = large.add(x, large.mul(embedding[c as usize], b));
            }
            if packed[x as usize] != u32::MAX {
                return Err(Error::DependentBasis);
            }
            packed[x as usize] = code;
        }
        Ok(Self {
            large: large.clone(),
            small: small.clone(),
            embedding,
            basis,
            packed,
        })
    }

    /// The power basis `{1, g, …, g^{m-1}}` of the large field's generator.
    pub fn canonical(large: &FiniteField, small: &FiniteField) -> Result<Self> {
        if small.degree() == 0 || !large.degree().is_multiple_of(small.degree()) {
            return Err(Error::NotASubfield {
                small: small.order(),
                large: large.order(),
            });
        }
        let m = large.degree() / small.degree();
        let g = large.generator();
        Self::new(
            large,
            small,
            (0..m as u64).map(|i| large.pow(g, i)).collect(),
        )
    }

    pub fn large(&self) -> &FiniteField {
        &self.large
    }

    pub fn small(&self) -> &FiniteField {
        &self.small
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn extension_degree(&self) -> usize {
        self.basis.len()
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.embedding[a as usize]
    }

    /// Coordinates `(c_1, …, c_m)` over the small field with `x = Σ c_i b_i`.
    pub fn coordinates(&self, x: u32) -> Vec<u32> {
        let q = self.small.order();
        let mut rest = self.packed[x as usize];
        (0..self.basis.len())
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect()
    }

    pub fn element_coordinates(&self, x: &FieldElement) -> Result<Vec<FieldElement>> {
        if x.field() != &self.large {
            return Err(Error::FieldMismatch);
        }
        self.coordinates(x.value())
            .into_iter()
            .map(|c| self.small.element(c))
            .collect()
    }

    pub fn recombine(&self, coords: &[u32]) -> u32 {
        coords.iter().zip(&self.basis).fold(0, |acc, (&c, &b)| {
            self.large
                .add(acc, self.large.mul(self.embedding[c as usize], b))
        })
    }
}
