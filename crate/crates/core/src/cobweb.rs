//! The Fibonacci cobweb poset and its reduced incidence algebra under the
//! level-weighted convolution
//!
//!   (a ∗ b)(k, n) = Σ_{k ≤ l ≤ n} F_l · a(k, l) · b(l, n),
//!
//! where F_l is the number of vertices at level l and the weight applies
//! at every level including the endpoints.
//!
//! Two inverse notions coexist and both are exposed:
//!
//! * [`weighted_inverse`] returns the function g normalized so that
//!   Σ_{k ≤ l ≤ n} F_l · g(k, l) · f(l, n) = δ_{nk} (plain Kronecker
//!   delta). Its diagonal is g(k, k) = 1/(F_k · f(k, k)), and F_l · g(k, l)
//!   coincides with the plain matrix inverse of the fibonomial triangle
//!   (see [`bridge_check`]).
//! * [`star_inverse`] returns the genuine two-sided inverse h of f in the
//!   weighted algebra, whose identity element is δ_{kn}/F_k
//!   ([`weighted_identity`]). The two are related by h(k, n) = g(k, n)/F_k;
//!   only h is two-sided under ∗.

use serde_json::{json, Value};
use thiserror::Error;

use crate::domain::{Coefficient, ExactInt, ExactRat};
use crate::families::fibonomial_triangle;
use crate::inversion::invert;
use crate::seq::fibonacci;
use crate::verify::{Counterexample, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CobwebError {
    #[error("rank must be at least 1 (level 0 of the cobweb poset is empty)")]
    RankZero,
    #[error("maximum ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("singular incidence function: zero diagonal value at rank {rank}")]
    SingularDiagonal { rank: usize },
}

/// A vertex of the cobweb poset: position `index` within level `level`.
/// Level n holds F_n vertices, so level 0 (F_0 = 0) does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CobwebVertex {
    level: usize,
    index: u64,
}

impl CobwebVertex {
    pub fn new(level: usize, index: u64) -> Result<Self, CobwebError> {
        if level == 0 {
            return Err(CobwebError::RankZero);
        }
        let width = fibonacci(level)
            .to_u64()
            .expect("level width fits in u64 at brute-force scale");
        assert!(
            (1..=width).contains(&index),
            "vertex index {index} outside level {level} of width {width}"
        );
        Ok(CobwebVertex { level, index })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn index(&self) -> u64 {
        self.index
    }
}

/// Partial order of the cobweb poset: x ≤ y iff x = y or x lies on a
/// strictly lower level.
pub fn precedes(x: &CobwebVertex, y: &CobwebVertex) -> bool {
    x == y || x.level < y.level
}

/// All vertices of one level, in index order.
pub fn level_vertices(level: usize) -> Vec<CobwebVertex> {
    let width = fibonacci(level)
        .to_u64()
        .expect("level width fits in u64 at brute-force scale");
    (1..=width)
        .map(|index| CobwebVertex { level, index })
        .collect()
}

/// Rank pair classifying a segment [x, y] with r(x) = k, r(y) = n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentType {
    pub lower: usize,
    pub upper: usize,
}

impl SegmentType {
    pub fn new(lower: usize, upper: usize) -> Result<Self, CobwebError> {
        if lower == 0 {
            return Err(CobwebError::RankZero);
        }
        assert!(lower <= upper, "segment type needs lower ≤ upper");
        Ok(SegmentType { lower, upper })
    }
}

/// An element of the reduced incidence algebra: one rational value per
/// segment type (k, n), 1 ≤ k ≤ n ≤ max_rank. Values depend only on the
/// rank pair, never on vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedIncidenceFunction {
    max_rank: usize,
    // row-major by upper rank: (1,1), (1,2), (2,2), (1,3), ...
    values: Vec<ExactRat>,
}

impl ReducedIncidenceFunction {
    pub fn from_fn(max_rank: usize, f: impl Fn(usize, usize) -> ExactRat) -> Self {
        let mut values = Vec::with_capacity(max_rank * (max_rank + 1) / 2);
        for n in 1..=max_rank {
            for k in 1..=n {
                values.push(f(k, n));
            }
        }
        ReducedIncidenceFunction { max_rank, values }
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    fn idx(&self, k: usize, n: usize) -> usize {
        debug_assert!(1 <= k && k <= n && n <= self.max_rank);
        (n - 1) * n / 2 + (k - 1)
    }

    /// Value on segment type (k, n); k ≤ n required.
    pub fn value(&self, k: usize, n: usize) -> &ExactRat {
        &self.values[self.idx(k, n)]
    }

    /// JSON form: {"maxRank": N, "values": [{"k", "n", "value"}, …]}.
    pub fn to_json(&self) -> Value {
        let mut entries = Vec::with_capacity(self.values.len());
        for n in 1..=self.max_rank {
            for k in 1..=n {
                entries.push(json!({
                    "k": k,
                    "n": n,
                    "value": self.value(k, n).to_string(),
                }));
            }
        }
        json!({ "maxRank": self.max_rank, "values": entries })
    }

    pub fn from_json(value: &Value) -> Option<Self> {
        let max_rank = value.get("maxRank")?.as_u64()? as usize;
        let mut table = ReducedIncidenceFunction::from_fn(max_rank, |_, _| {
            <ExactRat as Coefficient>::zero()
        });
        for entry in value.get("values")?.as_array()? {
            let k = entry.get("k")?.as_u64()? as usize;
            let n = entry.get("n")?.as_u64()? as usize;
            let v = ExactRat::parse(entry.get("value")?.as_str()?).ok()?;
            let idx = table.idx(k, n);
            table.values[idx] = v;
        }
        Some(table)
    }

    /// CSV form with a `k,n,value` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,n,value\n");
        for n in 1..=self.max_rank {
            for k in 1..=n {
                out.push_str(&format!("{},{},{}\n", k, n, self.value(k, n)));
            }
        }
        out
    }
}

/// The fibonomial reduced incidence function f(k, n) = (n choose k)_F for
/// 1 ≤ k ≤ n ≤ max_rank (zero for k > n is implicit in the table domain).
pub fn fibonomial_function(max_rank: usize) -> ReducedIncidenceFunction {
    let t = fibonomial_triangle(max_rank);
    ReducedIncidenceFunction::from_fn(max_rank, |k, n| ExactRat::from(t.entry(n, k).clone()))
}

/// Identity element of the weighted algebra: δ(k, n) = δ_{kn}/F_k, forced
/// by the endpoint weights of the convolution.
pub fn weighted_identity(max_rank: usize) -> ReducedIncidenceFunction {
    ReducedIncidenceFunction::from_fn(max_rank, |k, n| {
        if k == n {
            ExactRat::from(<ExactInt as Coefficient>::one())
                .exact_div(&ExactRat::from(fibonacci(k)))
                .expect("F_k > 0 for k >= 1")
        } else {
            <ExactRat as Coefficient>::zero()
        }
    })
}

/// Weighted convolution (a ∗ b)(k, n) = Σ_{k ≤ l ≤ n} F_l·a(k, l)·b(l, n).
pub fn convolve(
    a: &ReducedIncidenceFunction,
    b: &ReducedIncidenceFunction,
) -> Result<ReducedIncidenceFunction, CobwebError> {
    if a.max_rank != b.max_rank {
        return Err(CobwebError::RankMismatch {
            left: a.max_rank,
            right: b.max_rank,
        });
    }
    Ok(ReducedIncidenceFunction::from_fn(a.max_rank, |k, n| {
        let mut acc = <ExactRat as Coefficient>::zero();
        for l in k..=n {
            let term = Coefficient::mul(
                &ExactRat::from(fibonacci(l)),
                &Coefficient::mul(a.value(k, l), b.value(l, n)),
            );
            acc = Coefficient::add(&acc, &term);
        }
        acc
    }))
}

/// Inverse normalized to the plain Kronecker delta: the returned g
/// satisfies Σ_{k ≤ l ≤ n} F_l · g(k, l) · f(l, n) = δ_{nk}, computed by
/// forward substitution:
///
///   g(k, k) = 1/(F_k·f(k, k))
///   g(k, n) = -(1/(F_n·f(n, n))) Σ_{k ≤ l < n} F_l·g(k, l)·f(l, n)
pub fn weighted_inverse(
    f: &ReducedIncidenceFunction,
) -> Result<ReducedIncidenceFunction, CobwebError> {
    let max_rank = f.max_rank;
    for n in 1..=max_rank {
        if f.value(n, n).is_zero() {
            return Err(CobwebError::SingularDiagonal { rank: n });
        }
    }
    let mut g = ReducedIncidenceFunction::from_fn(max_rank, |_, _| {
        <ExactRat as Coefficient>::zero()
    });
    for k in 1..=max_rank {
        for n in k..=max_rank {
            let scale = Coefficient::mul(&ExactRat::from(fibonacci(n)), f.value(n, n));
            let value = if n == k {
                ExactRat::from(<ExactInt as Coefficient>::one())
                    .exact_div(&scale)
                    .expect("diagonal checked nonzero")
            } else {
                let mut acc = <ExactRat as Coefficient>::zero();
                for l in k..n {
                    let term = Coefficient::mul(
                        &ExactRat::from(fibonacci(l)),
                        &Coefficient::mul(g.value(k, l), f.value(l, n)),
                    );
                    acc = Coefficient::add(&acc, &term);
                }
                Coefficient::neg(
                    &acc.exact_div(&scale).expect("diagonal checked nonzero"),
                )
            };
            let idx = g.idx(k, n);
            g.values[idx] = value;
        }
    }
    Ok(g)
}

/// The genuine two-sided inverse of f in the weighted algebra:
/// convolve(h, f) = convolve(f, h) = [`weighted_identity`]. Obtained from
/// [`weighted_inverse`] by rescaling the lower rank, h(k, n) = g(k, n)/F_k.
pub fn star_inverse(
    f: &ReducedIncidenceFunction,
) -> Result<ReducedIncidenceFunction, CobwebError> {
    let g = weighted_inverse(f)?;
    Ok(ReducedIncidenceFunction::from_fn(f.max_rank, |k, n| {
        g.value(k, n)
            .exact_div(&ExactRat::from(fibonacci(k)))
            .expect("F_k > 0 for k >= 1")
    }))
}

/// Verifies that the weighted-convolution inverse and the plain matrix
/// inverse of the fibonomial triangle determine each other on ranks ≥ 1:
/// F_l · g(k, l) = B(l, k) for all 1 ≤ k ≤ l ≤ max_rank, where
/// B = invert(fibonomial_triangle).
pub fn bridge_check(max_rank: usize) -> VerificationReport {
    let f = fibonomial_function(max_rank);
    let g = weighted_inverse(&f).expect("fibonomial diagonal is 1");
    let b = invert(&fibonomial_triangle(max_rank)).expect("unit diagonal");
    let mut counterexamples = Vec::new();
    for l in 1..=max_rank {
        for k in 1..=l {
            let weighted = Coefficient::mul(&ExactRat::from(fibonacci(l)), g.value(k, l));
            let matrix_side = ExactRat::from(b.entry(l, k).clone());
            if weighted != matrix_side {
                counterexamples.push(Counterexample {
                    n: l,
                    l: k,
                    value: weighted.to_string(),
                });
            }
        }
    }
    VerificationReport::new("bridge", max_rank, counterexamples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRat {
        ExactRat::new(ExactInt::from(n), ExactInt::from(d)).unwrap()
    }

    #[test]
    fn precedes_examples() {
        let v21 = CobwebVertex::new(2, 1).unwrap();
        let v32 = CobwebVertex::new(3, 2).unwrap();
        let v31 = CobwebVertex::new(3, 1).unwrap();
        assert!(precedes(&v21, &v32));
        assert!(precedes(&v32, &v32));
        assert!(!precedes(&v31, &v32));
        assert!(CobwebVertex::new(0, 1).is_err());
    }

    #[test]
    fn poset_axioms_brute_force() {
        // reflexive, antisymmetric, transitive on levels ≤ 6
        let mut all = Vec::new();
        for level in 1..=6 {
            all.extend(level_vertices(level));
        }
        assert_eq!(all.len(), 1 + 1 + 2 + 3 + 5 + 8);
        for x in &all {
            assert!(precedes(x, x));
            for y in &all {
                if precedes(x, y) && precedes(y, x) {
                    assert_eq!(x, y);
                }
                for z in &all {
                    if precedes(x, y) && precedes(y, z) {
                        assert!(precedes(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn fibonomial_function_values() {
        let f = fibonomial_function(6);
        assert_eq!(*f.value(1, 4), rat(3, 1));
        assert_eq!(*f.value(2, 5), rat(15, 1));
        for k in 1..=6 {
            assert_eq!(*f.value(k, k), rat(1, 1));
        }
    }

    #[test]
    fn weighted_identity_is_neutral() {
        let f = fibonomial_function(8);
        let e = weighted_identity(8);
        assert_eq!(convolve(&e, &f).unwrap(), f);
        assert_eq!(convolve(&f, &e).unwrap(), f);
    }

    #[test]
    fn single_rank_convolution() {
        let a = ReducedIncidenceFunction::from_fn(1, |_, _| rat(3, 2));
        let b = ReducedIncidenceFunction::from_fn(1, |_, _| rat(5, 1));
        // F_1 · a(1,1) · b(1,1)
        assert_eq!(*convolve(&a, &b).unwrap().value(1, 1), rat(15, 2));
    }

    #[test]
    fn weighted_inverse_oracle_table() {
        let f = fibonomial_function(6);
        let g = weighted_inverse(&f).unwrap();
        assert_eq!(*g.value(1, 1), rat(1, 1));
        assert_eq!(*g.value(3, 3), rat(1, 2));
        assert_eq!(*g.value(4, 4), rat(1, 3));
        assert_eq!(*g.value(5, 5), rat(1, 5));
        assert_eq!(*g.value(1, 2), rat(-1, 1));
        assert_eq!(*g.value(1, 3), rat(0, 1));
        assert_eq!(*g.value(1, 4), rat(1, 1));
        assert_eq!(*g.value(1, 5), rat(-1, 1));
        assert_eq!(*g.value(2, 3), rat(-1, 1));
        assert_eq!(*g.value(2, 4), rat(0, 1));
        assert_eq!(*g.value(2, 5), rat(3, 1));
        assert_eq!(*g.value(3, 4), rat(-1, 1));
    }

    #[test]
    fn weighted_inverse_solves_the_delta_equation() {
        let f = fibonomial_function(12);
        let g = weighted_inverse(&f).unwrap();
        let gf = convolve(&g, &f).unwrap();
        for n in 1..=12 {
            for k in 1..=n {
                let expected = if k == n { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(*gf.value(k, n), expected, "(k, n) = ({k}, {n})");
            }
        }
        // example instance from the delta equation
        assert_eq!(*gf.value(1, 3), rat(0, 1));
    }

    #[test]
    fn star_inverse_is_two_sided() {
        let f = fibonomial_function(10);
        let h = star_inverse(&f).unwrap();
        let e = weighted_identity(10);
        assert_eq!(convolve(&h, &f).unwrap(), e);
        assert_eq!(convolve(&f, &h).unwrap(), e);
    }

    #[test]
    fn reducedness_vertex_enumeration() {
        // The type-level sum equals a brute-force sum over actual vertices
        // grouped by level: each level l between the endpoint ranks
        // contributes F_l identical terms because reduced functions depend
        // only on the segment type.
        let f = fibonomial_function(8);
        let g = weighted_inverse(&f).unwrap();
        let conv = convolve(&g, &f).unwrap();
        for n in 1..=8usize {
            for k in 1..=n {
                let mut acc = rat(0, 1);
                for l in k..=n {
                    for _vertex in level_vertices(l) {
                        let term = Coefficient::mul(g.value(k, l), f.value(l, n));
                        acc = Coefficient::add(&acc, &term);
                    }
                }
                assert_eq!(acc, *conv.value(k, n), "(k, n) = ({k}, {n})");
            }
        }
    }

    #[test]
    fn bridge_holds() {
        let report = bridge_check(12);
        assert!(report.pass, "{report:?}");
        // spot values
        let g = weighted_inverse(&fibonomial_function(5)).unwrap();
        assert_eq!(
            Coefficient::mul(&ExactRat::from(fibonacci(4)), g.value(1, 4)),
            rat(3, 1)
        );
        assert_eq!(
            Coefficient::mul(&ExactRat::from(fibonacci(5)), g.value(2, 5)),
            rat(15, 1)
        );
    }

    #[test]
    fn singular_diagonal_rejected() {
        let f = ReducedIncidenceFunction::from_fn(3, |k, n| {
            if k == n && n == 2 {
                rat(0, 1)
            } else {
                rat(1, 1)
            }
        });
        assert_eq!(
            weighted_inverse(&f),
            Err(CobwebError::SingularDiagonal { rank: 2 })
        );
    }

    #[test]
    fn serialization_round_trip() {
        let g = weighted_inverse(&fibonomial_function(5)).unwrap();
        let v = g.to_json();
        assert_eq!(v["maxRank"], 5);
        let back = ReducedIncidenceFunction::from_json(&v).unwrap();
        assert_eq!(back, g);
        let csv = g.to_csv();
        assert!(csv.starts_with("k,n,value\n"));
        assert!(csv.contains("3,3,1/2"));
    }
}
