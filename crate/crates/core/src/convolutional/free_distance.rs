//! Free distance of unit-memory codes `G(D) = G_0 + G_1 D` whose `G_1` is
//! nonzero only in its first `l` rows.
//!
//! The encoder state is the first `l` symbols of the previous input block.
//! Writing the current input as `(s', f)` with `s'` of length `l`, one step
//! emits `s'·A + f·B + s·C` where `A`, `B` are the first `l` and remaining
//! rows of `G_0` and `C` the first `l` rows of `G_1`. The free symbols `f`
//! do not influence the next state, so every edge `s → s'` carries the
//! minimum weight over its coset of `span(B)`.

use rayon::prelude::*;

use super::ConvolutionalCode;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linear_code::{for_each_combination, min_weight};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeDistanceLimits {
    /// Bound on `q^l`.
    pub max_states: u64,
    /// Bound on `q^(k-l)`, the coset size enumerated per edge.
    pub max_coset: u64,
    /// Bound on the total number of coset words over all edges.
    pub max_work: u64,
}

impl Default for FreeDistanceLimits {
    fn default() -> Self {
        Self {
            max_states: 1 << 12,
            max_coset: 1 << 22,
            max_work: 1 << 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeDistanceOutcome {
    Exact {
        distance: usize,
        states: u64,
        edges: u64,
    },
    Infeasible {
        reason: String,
    },
}

impl FreeDistanceOutcome {
    pub fn distance(&self) -> Option<usize> {
        match self {
            Self::Exact { distance, .. } => Some(*distance),
            Self::Infeasible { .. } => None,
        }
    }
}

fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

fn digits(mut index: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (index % q) as u32;
            index /= q;
            d
        })
        .collect()
}

fn undigits(d: &[u32], q: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
}

fn combine(field: &FiniteField, word: &mut [u32], coeffs: &[u32], rows: &[&[u32]]) {
    for (&c, row) in coeffs.iter().zip(rows) {
        if c != 0 {
            for (w, &g) in word.iter_mut().zip(*row) {
                *w = field.add(*w, field.mul(c, g));
            }
        }
    }
}

/// Exact free distance by label-setting search over the reduced state graph.
pub fn free_distance_exact(
    code: &ConvolutionalCode,
    limits: &FreeDistanceLimits,
) -> Result<FreeDistanceOutcome> {
    let l = code.unit_memory_rows().ok_or_else(|| {
        Error::NotSplitShape(
            "free distance search needs memory <= 1 with G_1 nonzero only in leading rows".into(),
        )
    })?;
    let g = code.generator();
    let field = g.field();
    let q = field.order() as u64;
    let (k, n) = (g.rows(), g.cols());

    let infeasible = |reason: String| Ok(FreeDistanceOutcome::Infeasible { reason });
    let states = match q.checked_pow(l as u32) {
        Some(s) if s <= limits.max_states => s,
        _ => return infeasible(format!("state space {q}^{l} exceeds {}", limits.max_states)),
    };
    let coset = match q.checked_pow((k - l) as u32) {
        Some(c) if c <= limits.max_coset => c,
        _ => {
            return infeasible(format!(
                "coset enumeration {q}^{} exceeds {}",
                k - l,
                limits.max_coset
            ))
        }
    };
    let pairs = states * states;
    let edges = (pairs - 1) / (q - 1);
    if edges.saturating_mul(coset) > limits.max_work {
        return infeasible(format!(
            "{edges} edges x {coset} coset words exceeds {}",
            limits.max_work
        ));
    }

    let g0 = g.coefficient(0);
    let g1 = g.coefficient(1);
    let a: Vec<&[u32]> = (0..l).map(|r| g0.row(r)).collect();
    let b: Vec<&[u32]> = (l..k).map(|r| g0.row(r)).collect();
    let c: Vec<&[u32]> = (0..l).map(|r| g1.row(r)).collect();

    let coset_min = |start: Vec<u32>| {
        let mut best = usize::MAX;
        for_each_combination(field, &b, start, |w| best = best.min(weight(w)));
        best
    };

    // Self-loop at the zero state with nonzero free symbols.
    let zero_loop = if b.is_empty() {
        usize::MAX
    } else {
        let mut best = usize::MAX;
        let mut first = true;
        for_each_combination(field, &b, vec![0; n], |w| {
            if !std::mem::take(&mut first) {
                best = best.min(weight(w));
            }
        });
        best
    };

    // Edge weights are invariant under scaling (s, s') by a nonzero constant,
    // so only pairs whose lowest nonzero digit is 1 are evaluated.
    let canonical: Vec<u64> = (1..pairs)
        .filter(|&p| {
            let mut x = p;
            while x % q == 0 {
                x /= q;
            }
            x % q == 1
        })
        .collect();
    let canonical_weights: Vec<usize> = canonical
        .par_iter()
        .map(|&p| {
            let s = digits(p % states, q, l);
            let s_next = digits(p / states, q, l);
            let mut x = vec![0; n];
            combine(field, &mut x, &s_next, &a);
            combine(field, &mut x, &s, &c);
            coset_min(x)
        })
        .collect();
    let mut table = vec![usize::MAX; pairs as usize];
    for (&p, &w) in canonical.iter().zip(&canonical_weights) {
        let d = digits(p, q, 2 * l);
        for lambda in 1..field.order() {
            let scaled: Vec<u32> = d.iter().map(|&x| field.mul(lambda, x)).collect();
            table[undigits(&scaled, q) as usize] = w;
        }
    }
    let edge = |s: u64, s_next: u64| table[(s + states * s_next) as usize];

    // Dense Dijkstra over nonzero states, entered by a nonzero first branch.
    let nonzero = states as usize - 1;
    let mut dist: Vec<usize> = (1..states).map(|s| edge(0, s)).collect();
    let mut done = vec![false; nonzero];
    for _ in 0..nonzero {
        let Some(u) = (0..nonzero).filter(|&i| !done[i]).min_by_key(|&i| dist[i]) else {
            break;
        };
        done[u] = true;
        let du = dist[u];
        for v in 0..nonzero {
            if !done[v] {
                let cand = du.saturating_add(edge(u as u64 + 1, v as u64 + 1));
                if cand < dist[v] {
                    dist[v] = cand;
                }
            }
        }
    }
    let through_states = (0..nonzero)
        .map(|i| dist[i].saturating_add(edge(i as u64 + 1, 0)))
        .min()
        .unwrap_or(usize::MAX);
    let distance = zero_loop.min(through_states);
    if distance == usize::MAX {
        return Err(Error::Invariant("code has no nonzero codeword".into()));
    }
    Ok(FreeDistanceOutcome::Exact {
        distance,
        states,
        edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedBound {
    pub distance: usize,
    /// Largest input degree enumerated.
    pub degree: usize,
}

/// Minimum weight of `u(D)·G(D)` over nonzero inputs of degree at most `T`,
/// with `T ≤ max_degree` the largest value keeping `q^(k(T+1)) ≤ budget`.
/// An upper bound on the free distance. `None` when even `T = 0` is over budget.
pub fn free_distance_truncated(
    code: &ConvolutionalCode,
    max_degree: usize,
    budget: u64,
) -> Result<Option<TruncatedBound>> {
    let g = code.generator();
    let field = g.field();
    let q = field.order() as u64;
    let (k, n) = (g.rows(), g.cols());
    let Some(degree) = (0..=max_degree).rev().find(|&t| {
        q.checked_pow((k * (t + 1)) as u32)
            .is_some_and(|c| c <= budget)
    }) else {
        return Ok(None);
    };
    let span = degree + code.memory() + 1;
    let mut rows = Vec::with_capacity(k * (degree + 1));
    for t in 0..=degree {
        for i in 0..k {
            let mut u = vec![Poly::zero(); k];
            u[i] = Poly::monomial(1, t);
            let v = code.encode(&u)?;
            let mut word = vec![0; n * span];
            for (j, p) in v.iter().enumerate() {
                for (tau, &x) in p.coeffs().iter().enumerate() {
                    word[tau * n + j] = x;
                }
            }
            rows.push(word);
        }
    }
    let report = min_weight(field, &Matrix::from_rows(rows)?);
    Ok(Some(TruncatedBound {
        distance: report.distance,
        degree,
    }))
}
