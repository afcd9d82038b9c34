//! Generators for the seven triangle families.
//!
//! Each generator takes the inclusive maximum row N and produces every row
//! in one pass. Generators are pure; the resulting [`Triangle`]s are
//! immutable and freely sharable.

use std::fmt;
use std::str::FromStr;

use crate::domain::{Coefficient, DomainTag, ExactInt, ExactRat, QPoly};
use crate::seq;
use crate::triangle::Triangle;

/// The generable families, one generator each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Binomial,
    Stirling2,
    Stirling1,
    Gaussian,
    Catalan,
    Charlier,
    Fibonomial,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Binomial,
        Family::Stirling2,
        Family::Stirling1,
        Family::Gaussian,
        Family::Catalan,
        Family::Charlier,
        Family::Fibonomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Binomial => "binomial",
            Family::Stirling2 => "stirling2",
            Family::Stirling1 => "stirling1",
            Family::Gaussian => "gaussian",
            Family::Catalan => "catalan",
            Family::Charlier => "charlier",
            Family::Fibonomial => "fibonomial",
        }
    }

    pub fn domain(self) -> DomainTag {
        match self {
            Family::Gaussian => DomainTag::QPoly,
            Family::Charlier => DomainTag::Rational,
            _ => DomainTag::Integer,
        }
    }

    /// First stored row/column index.
    pub fn offset(self) -> usize {
        match self {
            Family::Catalan => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Pascal triangle: T(n, k) = C(n, k).
pub fn binomial_triangle(max_row: usize) -> Triangle<ExactInt> {
    let mut rows: Vec<Vec<ExactInt>> = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == 0 || k == n {
                row.push(<ExactInt as Coefficient>::one());
            } else {
                let prev = &rows[n - 1];
                row.push(Coefficient::add(&prev[k - 1], &prev[k]));
            }
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Binomial.name(), 0, rows).expect("Pascal rows are well-formed")
}

/// Stirling numbers of the second kind:
/// S(n, k) = k·S(n-1, k) + S(n-1, k-1), S(0, 0) = 1.
pub fn stirling2_triangle(max_row: usize) -> Triangle<ExactInt> {
    let mut rows: Vec<Vec<ExactInt>> = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if n == 0 {
                row.push(<ExactInt as Coefficient>::one());
                continue;
            }
            let prev = &rows[n - 1];
            let carry = if k <= n - 1 {
                Coefficient::mul(&ExactInt::from(k), &prev[k])
            } else {
                <ExactInt as Coefficient>::zero()
            };
            let shift = if k >= 1 {
                prev[k - 1].clone()
            } else {
                <ExactInt as Coefficient>::zero()
            };
            row.push(Coefficient::add(&carry, &shift));
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Stirling2.name(), 0, rows).expect("Stirling2 rows are well-formed")
}

/// Unsigned Stirling numbers of the first kind:
/// c(n, k) = c(n-1, k-1) + (n-1)·c(n-1, k), c(0, 0) = 1. These are the
/// coefficients of the rising factorial.
pub fn stirling1_unsigned_triangle(max_row: usize) -> Triangle<ExactInt> {
    let mut rows: Vec<Vec<ExactInt>> = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if n == 0 {
                row.push(<ExactInt as Coefficient>::one());
                continue;
            }
            let prev = &rows[n - 1];
            let carry = if k <= n - 1 {
                Coefficient::mul(&ExactInt::from(n - 1), &prev[k])
            } else {
                <ExactInt as Coefficient>::zero()
            };
            let shift = if k >= 1 {
                prev[k - 1].clone()
            } else {
                <ExactInt as Coefficient>::zero()
            };
            row.push(Coefficient::add(&shift, &carry));
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Stirling1.name(), 0, rows).expect("Stirling1 rows are well-formed")
}

/// Gaussian binomial triangle over ℤ[q]: each entry is the q-factorial
/// ratio n_q!/(k_q!(n-k)_q!), computed by exact polynomial division.
pub fn gaussian_triangle(max_row: usize) -> Triangle<QPoly> {
    let mut rows = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let num = seq::q_factorial(n);
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let den = Coefficient::mul(&seq::q_factorial(k), &seq::q_factorial(n - k));
            let entry = num
                .exact_div(&den)
                .expect("Gaussian binomial division is always exact");
            row.push(entry);
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Gaussian.name(), 0, rows).expect("Gaussian rows are well-formed")
}

/// Catalan (ballot) triangle, stored for 1 ≤ k ≤ n ≤ N. Entries come from
/// the recurrence
///   C(n+1, k) = C(n, k-1) + 2·C(n, k) + C(n, k+1)
/// with implicit zero boundaries, and every entry is cross-checked against
/// the closed form C(n, k) = C(2n, n-k)·k/n, whose division by n must be
/// exact.
///
/// Panics on a recurrence/closed-form mismatch; that would be an internal
/// consistency error.
pub fn catalan_triangle(max_row: usize) -> Triangle<ExactInt> {
    let zero = <ExactInt as Coefficient>::zero;
    let mut rows: Vec<Vec<ExactInt>> = Vec::new();
    for n in 1..=max_row {
        let mut row = Vec::with_capacity(n);
        for k in 1..=n {
            let value = if n == 1 {
                // C(1,1) = C(0,0) + 2 C(0,1) + C(0,2) = 1
                <ExactInt as Coefficient>::one()
            } else {
                let prev = &rows[n - 2];
                let at = |j: usize| -> ExactInt {
                    if (1..=n - 1).contains(&j) {
                        prev[j - 1].clone()
                    } else {
                        zero()
                    }
                };
                let mut acc = at(k - 1);
                acc = Coefficient::add(&acc, &Coefficient::mul(&ExactInt::from(2i64), &at(k)));
                Coefficient::add(&acc, &at(k + 1))
            };
            let closed = seq::binomial(2 * n, n - k)
                .mul(&ExactInt::from(k))
                .exact_div(&ExactInt::from(n))
                .expect("k·C(2n, n-k) is always divisible by n");
            assert_eq!(
                value, closed,
                "Catalan triangle internal consistency error at ({n}, {k})"
            );
            row.push(value);
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Catalan.name(), 1, rows).expect("Catalan rows are well-formed")
}

/// Charlier connection matrix: row n holds the monomial coefficients of
/// P_n(x) = (1/n!) Σ_k C(n, k) x^(falling k), obtained by expanding each
/// falling factorial with signed first-kind Stirling coefficients.
pub fn charlier_matrix(max_row: usize) -> Triangle<ExactRat> {
    let binom = binomial_triangle(max_row);
    let stirling1 = stirling1_unsigned_triangle(max_row);
    let mut rows = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let n_fact = ExactRat::from(seq::factorial(n));
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            // Σ_k C(n, k) · (-1)^(k-j) · c(k, j)
            let mut acc = <ExactInt as Coefficient>::zero();
            for k in j..=n {
                let term = Coefficient::mul(binom.entry(n, k), stirling1.entry(k, j));
                if (k - j) % 2 == 0 {
                    acc = Coefficient::add(&acc, &term);
                } else {
                    acc = Coefficient::sub(&acc, &term);
                }
            }
            let entry = ExactRat::from(acc)
                .exact_div(&n_fact)
                .expect("n! is nonzero");
            row.push(entry);
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Charlier.name(), 0, rows).expect("Charlier rows are well-formed")
}

/// Fibonomial triangle: entries are F-factorial ratios
/// n_F!/(k_F!(n-k)_F!). Integrality is asserted via exact division, not
/// assumed; a non-divisible signal would falsify fibonomial integrality
/// and panics.
pub fn fibonomial_triangle(max_row: usize) -> Triangle<ExactInt> {
    let mut rows = Vec::with_capacity(max_row + 1);
    for n in 0..=max_row {
        let num = seq::fib_factorial(n);
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let den = Coefficient::mul(&seq::fib_factorial(k), &seq::fib_factorial(n - k));
            let entry = num
                .exact_div(&den)
                .expect("fibonomial coefficients are integers");
            row.push(entry);
        }
        rows.push(row);
    }
    Triangle::from_rows(Family::Fibonomial.name(), 0, rows)
        .expect("fibonomial rows are well-formed")
}

/// Generates one family at the requested size, erased over its domain.
pub fn generate(family: Family, max_row: usize) -> crate::triangle::AnyTriangle {
    use crate::triangle::AnyTriangle;
    match family {
        Family::Binomial => AnyTriangle::Integer(binomial_triangle(max_row)),
        Family::Stirling2 => AnyTriangle::Integer(stirling2_triangle(max_row)),
        Family::Stirling1 => AnyTriangle::Integer(stirling1_unsigned_triangle(max_row)),
        Family::Gaussian => AnyTriangle::QPoly(gaussian_triangle(max_row)),
        Family::Catalan => AnyTriangle::Integer(catalan_triangle(max_row)),
        Family::Charlier => AnyTriangle::Rational(charlier_matrix(max_row)),
        Family::Fibonomial => AnyTriangle::Integer(fibonomial_triangle(max_row)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::qpoly_eval;
    use crate::seq::{binomial, fibonacci};

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn ints(vs: &[i64]) -> Vec<ExactInt> {
        vs.iter().copied().map(ExactInt::from).collect()
    }

    #[test]
    fn binomial_rows() {
        let t = binomial_triangle(6);
        assert_eq!(t.row(0), ints(&[1]).as_slice());
        assert_eq!(t.row(4), ints(&[1, 4, 6, 4, 1]).as_slice());
        assert_eq!(*t.entry(6, 2), int(15));
    }

    #[test]
    fn stirling2_rows() {
        let t = stirling2_triangle(6);
        assert_eq!(t.row(3), ints(&[0, 1, 3, 1]).as_slice());
        assert_eq!(*t.entry(4, 2), int(7));
        for n in 0..=6 {
            assert_eq!(*t.entry(n, n), int(1));
        }
    }

    #[test]
    fn stirling1_rows() {
        let t = stirling1_unsigned_triangle(6);
        // x(x+1)(x+2) = 2x + 3x^2 + x^3
        assert_eq!(t.row(3), ints(&[0, 2, 3, 1]).as_slice());
        assert_eq!(*t.entry(4, 1), int(6));
        for n in 0..=6 {
            assert_eq!(*t.entry(n, n), int(1));
        }
    }

    #[test]
    fn stirling_row_sums() {
        // Σ_k c(n, k) = n!  (rising factorial at x = 1)
        let c = stirling1_unsigned_triangle(10);
        for n in 0..=10 {
            let sum = c
                .row(n)
                .iter()
                .fold(<ExactInt as Coefficient>::zero(), |a, b| {
                    Coefficient::add(&a, b)
                });
            assert_eq!(sum, seq::factorial(n));
        }
        // Σ_k S(n, k) = Bell numbers, checked through the Bell recurrence
        // B_{n+1} = Σ_k C(n, k) B_k.
        let s = stirling2_triangle(11);
        let bell: Vec<ExactInt> = (0..=11)
            .map(|n| {
                s.row(n)
                    .iter()
                    .fold(<ExactInt as Coefficient>::zero(), |a, b| {
                        Coefficient::add(&a, b)
                    })
            })
            .collect();
        assert_eq!(bell[0], int(1));
        for n in 0..11 {
            let mut acc = <ExactInt as Coefficient>::zero();
            for k in 0..=n {
                acc = Coefficient::add(&acc, &Coefficient::mul(&binomial(n, k), &bell[k]));
            }
            assert_eq!(acc, bell[n + 1], "Bell recurrence fails at n = {n}");
        }
    }

    #[test]
    fn gaussian_entries() {
        let t = gaussian_triangle(6);
        assert_eq!(*t.entry(2, 1), QPoly::from_coeffs([1i64, 1]));
        assert_eq!(*t.entry(4, 2), QPoly::from_coeffs([1i64, 1, 2, 1, 1]));
        for n in 0..=6 {
            assert!(Coefficient::is_one(t.entry(n, 0)));
        }
    }

    #[test]
    fn gaussian_degenerates_to_binomial_at_one() {
        let g = gaussian_triangle(10);
        let b = binomial_triangle(10);
        let one = ExactRat::from(1i64);
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(
                    qpoly_eval(g.entry(n, k), &one),
                    ExactRat::from(b.entry(n, k).clone())
                );
            }
        }
    }

    #[test]
    fn symmetry() {
        let b = binomial_triangle(12);
        let g = gaussian_triangle(10);
        let f = fibonomial_triangle(12);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(b.entry(n, k), b.entry(n, n - k));
                assert_eq!(f.entry(n, k), f.entry(n, n - k));
                if n <= 10 {
                    assert_eq!(g.entry(n, k), g.entry(n, n - k));
                }
            }
        }
    }

    #[test]
    fn catalan_rows() {
        let t = catalan_triangle(4);
        assert_eq!(t.offset(), 1);
        assert_eq!(t.row(2), ints(&[2, 1]).as_slice());
        assert_eq!(t.row(3), ints(&[5, 4, 1]).as_slice());
        for n in 1..=4 {
            assert_eq!(*t.entry(n, n), int(1));
        }
        assert!(catalan_triangle(0).is_empty());
    }

    #[test]
    fn catalan_first_column_is_catalan_numbers() {
        let t = catalan_triangle(8);
        let expected = [1i64, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=8 {
            assert_eq!(*t.entry(n, 1), int(expected[n - 1]));
            // independent cross-check: C(2n, n)/(n+1)
            let alt = binomial(2 * n, n)
                .exact_div(&ExactInt::from(n + 1))
                .unwrap();
            assert_eq!(*t.entry(n, 1), alt);
        }
    }

    #[test]
    fn charlier_rows() {
        let t = charlier_matrix(4);
        let rat = |n: i64, d: i64| ExactRat::new(int(n), int(d)).unwrap();
        assert_eq!(t.row(0), vec![rat(1, 1)].as_slice());
        assert_eq!(t.row(1), vec![rat(1, 1), rat(1, 1)].as_slice());
        assert_eq!(t.row(2), vec![rat(1, 2), rat(1, 2), rat(1, 2)].as_slice());
    }

    #[test]
    fn fibonomial_rows() {
        let t = fibonomial_triangle(6);
        assert_eq!(t.row(4), ints(&[1, 3, 6, 3, 1]).as_slice());
        assert_eq!(t.row(5), ints(&[1, 5, 15, 15, 5, 1]).as_slice());
        for n in 0..=6 {
            assert_eq!(*t.entry(n, 0), int(1));
            assert_eq!(*t.entry(n, n), int(1));
        }
    }

    #[test]
    fn fibonomial_pascal_analog() {
        // (n,k)_F = F_{k+1}·(n-1,k)_F + F_{n-k-1}·(n-1,k-1)_F
        let t = fibonomial_triangle(24);
        for n in 1..=24 {
            for k in 1..n {
                let lhs = t.entry(n, k);
                let rhs = Coefficient::add(
                    &Coefficient::mul(&fibonacci(k + 1), t.entry(n - 1, k)),
                    &Coefficient::mul(&fibonacci(n - k - 1), t.entry(n - 1, k - 1)),
                );
                assert_eq!(*lhs, rhs, "Pascal analog fails at ({n}, {k})");
            }
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("fibonomial".parse::<Family>(), Ok(Family::Fibonomial));
        assert!("nosuch".parse::<Family>().is_err());
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
    }
}
