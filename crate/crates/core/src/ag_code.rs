//! One-point algebraic geometry codes `C_L(D, m·P∞)` and their duals.
//!
//! Three function fields are supported, each with a single place at infinity:
//!
//! * `Rational`: the rational function field over GF(q), places `P_β` for
//!   `β ∈ GF(q)`, pole order of `z` equal to 1, genus 0;
//! * `CurveA`: `y² + y = x^(q+1)` over GF(q²) with `q = 2^t`, genus `q/2`,
//!   pole orders `(2, q+1)`, `2q²` affine rational places;
//! * `CurveB`: `y^q + y = x³` over GF(q²) with `q = 2^t`, `t` odd, genus `q-1`,
//!   pole orders `(q, 3)`, `3q² - 2q` affine rational places.
//!
//! Both curves are maximal over GF(q²). The Riemann–Roch space `L(m·P∞)` is
//! spanned by the monomials `x^i y^j` of pole order at most `m`, with `j`
//! kept below the degree of the curve equation in `y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField, MAX_ORDER};
use crate::linear_code::LinearCode;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveKind {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "curveA")]
    CurveA,
    #[serde(rename = "curveB")]
    CurveB,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rational => "rational",
            Self::CurveA => "curveA",
            Self::CurveB => "curveB",
        })
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Self::Rational),
            "curveA" | "curvea" => Ok(Self::CurveA),
            "curveB" | "curveb" => Ok(Self::CurveB),
            other => Err(Error::InvalidParameter(format!(
                "unknown curve kind {other:?}"
            ))),
        }
    }
}

/// A rational place: `Beta(β)` is the zero of `z - β` on the rational
/// function field, `Point` an affine point of a plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RationalPlace {
    Beta(u32),
    Point { x: u32, y: u32 },
    Infinity,
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Beta(b) => write!(f, "P_{b}"),
            Self::Point { x, y } => write!(f, "({x}, {y})"),
            Self::Infinity => f.write_str("P_inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub x_exp: u32,
    pub y_exp: u32,
    pub pole_order: u32,
}

/// Report descriptor: `{kind, q, field_order, genus, n_affine, pole_orders}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub kind: CurveKind,
    pub q: u32,
    pub field_order: u64,
    pub genus: u32,
    pub n_affine: u64,
    pub pole_orders: Vec<u32>,
}

impl CurveDescriptor {
    /// Closed-form parameters, validating the constraints on `q`.
    pub fn formula(kind: CurveKind, q: u32) -> Result<Self> {
        let (p, t) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        let q64 = q as u64;
        let (field_order, genus, n_affine, pole_orders) = match kind {
            CurveKind::Rational => (q64, 0, q64, vec![1]),
            CurveKind::CurveA => {
                if p != 2 {
                    return Err(Error::InvalidParameter(format!(
                        "curveA needs q = 2^t, got {q}"
                    )));
                }
                (q64 * q64, q / 2, 2 * q64 * q64, vec![2, q + 1])
            }
            CurveKind::CurveB => {
                if p != 2 || t % 2 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "curveB needs q = 2^t with t odd, got {q}"
                    )));
                }
                (q64 * q64, q - 1, 3 * q64 * q64 - 2 * q64, vec![q, 3])
            }
        };
        Ok(Self {
            kind,
            q,
            field_order,
            genus,
            n_affine,
            pole_orders,
        })
    }
}

#[derive(Clone, Debug)]
pub struct OnePointCurve {
    descriptor: CurveDescriptor,
    field: FiniteField,
    places: Vec<RationalPlace>,
}

impl OnePointCurve {
    /// Builds the curve and enumerates its affine rational places, checking
    /// the count against the closed form.
    pub fn new(kind: CurveKind, q: u32) -> Result<Self> {
        let descriptor = CurveDescriptor::formula(kind, q)?;
        if descriptor.field_order > MAX_ORDER {
            return Err(Error::FieldTooLarge(descriptor.field_order));
        }
        let field = FiniteField::with_order(descriptor.field_order)?;
        let places = match kind {
            CurveKind::Rational => field.elements().map(RationalPlace::Beta).collect(),
            CurveKind::CurveA => scan_points(
                &field,
                |y| field.add(field.mul(y, y), y),
                |x| field.pow(x, q as u64 + 1),
            ),
            CurveKind::CurveB => scan_points(
                &field,
                |y| field.add(field.pow(y, q as u64), y),
                |x| field.pow(x, 3),
            ),
        };
        if places.len() as u64 != descriptor.n_affine {
            return Err(Error::Invariant(format!(
                "{kind} over GF({}) has {} affine places, expected {}",
                descriptor.field_order,
                places.len(),
                descriptor.n_affine
            )));
        }
        let curve = Self {
            descriptor,
            field,
            places,
        };
        let gaps = curve.weierstrass_gaps().len() as u32;
        if gaps != curve.genus() {
            return Err(Error::Invariant(format!(
                "{gaps} Weierstrass gaps but genus {}",
                curve.genus()
            )));
        }
        Ok(curve)
    }

    pub fn kind(&self) -> CurveKind {
        self.descriptor.kind
    }

    pub fn q(&self) -> u32 {
        self.descriptor.q
    }

    pub fn genus(&self) -> u32 {
        self.descriptor.genus
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn pole_orders(&self) -> &[u32] {
        &self.descriptor.pole_orders
    }

    pub fn descriptor(&self) -> &CurveDescriptor {
        &self.descriptor
    }

    /// Affine rational places, lexicographic in the canonical element order.
    pub fn rational_places(&self) -> &[RationalPlace] {
        &self.places
    }

    /// Upper bound `|K| + 1 + 2g·sqrt|K|` on the number of rational places.
    /// Exact here since `|K|` is a square whenever `g > 0`.
    pub fn hasse_weil_bound(&self) -> u64 {
        let order = self.descriptor.field_order;
        let root = match self.kind() {
            CurveKind::Rational => 0,
            _ => self.q() as u64,
        };
        order + 1 + 2 * self.genus() as u64 * root
    }

    fn y_range(&self) -> u32 {
        match self.kind() {
            CurveKind::Rational => 1,
            CurveKind::CurveA => 2,
            CurveKind::CurveB => self.q(),
        }
    }

    fn in_semigroup(&self, v: u32) -> bool {
        let ord = &self.descriptor.pole_orders;
        match ord.as_slice() {
            [_] => true,
            [a, b] => (0..=v / b).any(|j| (v - j * b).is_multiple_of(*a)),
            _ => unreachable!(),
        }
    }

    /// Pole orders in `1..=2g-1` not attained by any function regular away from `P∞`.
    pub fn weierstrass_gaps(&self) -> Vec<u32> {
        let g = self.genus();
        if g == 0 {
            return Vec::new();
        }
        (1..2 * g).filter(|&v| !self.in_semigroup(v)).collect()
    }

    /// Monomial basis of `L(m·P∞)`, sorted by pole order.
    pub fn rr_basis(&self, m: u32) -> Vec<Monomial> {
        let ord_x = self.descriptor.pole_orders[0];
        let ord_y = self.descriptor.pole_orders.get(1).copied().unwrap_or(0);
        let mut out: Vec<Monomial> = (0..self.y_range())
            .take_while(|&j| j * ord_y <= m)
            .flat_map(|j| {
                (0..=(m - j * ord_y) / ord_x).map(move |i| Monomial {
                    x_exp: i,
                    y_exp: j,
                    pole_order: i * ord_x + j * ord_y,
                })
            })
            .collect();
        out.sort_by_key(|mono| mono.pole_order);
        out
    }

    pub fn lies_on(&self, place: &RationalPlace) -> bool {
        let f = &self.field;
        let q = self.q() as u64;
        match (self.kind(), *place) {
            (CurveKind::Rational, RationalPlace::Beta(b)) => b < f.order(),
            (CurveKind::CurveA, RationalPlace::Point { x, y }) => {
                x < f.order() && y < f.order() && f.add(f.mul(y, y), y) == f.pow(x, q + 1)
            }
            (CurveKind::CurveB, RationalPlace::Point { x, y }) => {
                x < f.order() && y < f.order() && f.add(f.pow(y, q), y) == f.pow(x, 3)
            }
            _ => false,
        }
    }

    pub fn evaluate(&self, mono: &Monomial, place: &RationalPlace) -> Result<u32> {
        let f = &self.field;
        match *place {
            RationalPlace::Infinity => Err(Error::SupportOverlap),
            RationalPlace::Beta(b) => Ok(f.pow(b, mono.x_exp as u64)),
            RationalPlace::Point { x, y } => {
                Ok(f.mul(f.pow(x, mono.x_exp as u64), f.pow(y, mono.y_exp as u64)))
            }
        }
    }
}

/// Points `(x, y)` with `lhs(y) = rhs(x)`, in lexicographic order.
fn scan_points(
    field: &FiniteField,
    lhs: impl Fn(u32) -> u32,
    rhs: impl Fn(u32) -> u32,
) -> Vec<RationalPlace> {
    let mut fibres: Vec<Vec<u32>> = vec![Vec::new(); field.order() as usize];
    for y in field.elements() {
        fibres[lhs(y) as usize].push(y);
    }
    field
        .elements()
        .flat_map(|x| {
            fibres[rhs(x) as usize]
                .iter()
                .map(move |&y| RationalPlace::Point { x, y })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Evaluation divisor `D = P_1 + … + P_n` and `G = m·P∞`.
#[derive(Clone, Debug)]
pub struct DivisorSpec {
    places: Vec<RationalPlace>,
    m: u32,
}

impl DivisorSpec {
    /// Validates that `supp D ∩ supp G = ∅` and that the places are distinct
    /// rational places of `curve`.
    pub fn new(curve: &OnePointCurve, places: Vec<RationalPlace>, m: u32) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for p in &places {
            if *p == RationalPlace::Infinity {
                return Err(Error::SupportOverlap);
            }
            if !curve.lies_on(p) {
                return Err(Error::PlaceNotOnCurve(p.to_string()));
            }
            if !seen.insert(*p) {
                return Err(Error::DuplicatePlace);
            }
        }
        Ok(Self { places, m })
    }

    pub fn places(&self) -> &[RationalPlace] {
        &self.places
    }

    pub fn degree_d(&self) -> usize {
        self.places.len()
    }

    pub fn degree_g(&self) -> u32 {
        self.m
    }
}

fn admissible(curve: &OnePointCurve, m: u32, n: usize) -> Result<()> {
    let lo = 2 * curve.genus() as i64 - 2;
    let hi = n as i64;
    let m64 = m as i64;
    if lo < m64 && m64 < hi {
        Ok(())
    } else {
        Err(Error::AdmissibleRange { m: m64, lo, hi })
    }
}

/// `C_L(D, m·P∞)`: rows are the Riemann–Roch basis evaluated at the places
/// (all affine places unless a sublist is given). Requires `2g - 2 < m < n`.
pub fn cl_code(
    curve: &OnePointCurve,
    m: u32,
    places: Option<&[RationalPlace]>,
) -> Result<LinearCode> {
    let places = places.map_or_else(|| curve.rational_places().to_vec(), <[_]>::to_vec);
    let divisor = DivisorSpec::new(curve, places, m)?;
    let n = divisor.degree_d();
    admissible(curve, m, n)?;
    let basis = curve.rr_basis(m);
    let rows = basis
        .iter()
        .map(|mono| {
            divisor
                .places()
                .iter()
                .map(|p| curve.evaluate(mono, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let code = LinearCode::from_generator(curve.field(), Matrix::from_rows(rows)?)?;
    let expected = (m + 1 - curve.genus()) as usize;
    if code.k() != expected || basis.len() != expected {
        return Err(Error::RankMismatch {
            expected,
            got: code.k(),
        });
    }
    Ok(code.with_designed_distance(n - m as usize))
}

/// `C_Ω(D, m·P∞)`, realised as the Euclidean dual of `C_L(D, m·P∞)`, with
/// designed distance `m - (2g - 2)`.
pub fn comega_code(
    curve: &OnePointCurve,
    m: u32,
    places: Option<&[RationalPlace]>,
) -> Result<LinearCode> {
    let cl = cl_code(curve, m, places)?;
    let n = cl.n();
    let dual = cl.dual();
    let expected = n + curve.genus() as usize - 1 - m as usize;
    if dual.k() != expected {
        return Err(Error::RankMismatch {
            expected,
            got: dual.k(),
        });
    }
    let designed = (m as i64 - (2 * curve.genus() as i64 - 2)).max(1) as usize;
    Ok(dual.with_designed_distance(designed))
}
