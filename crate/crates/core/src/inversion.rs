//! Generic exact inversion of lower-triangular arrays.
//!
//! There is exactly one inversion routine, generic over the coefficient
//! domain; the closed-form inverses of the individual families appear only
//! inside verifiers, where they are the claims under test.

use thiserror::Error;

use crate::domain::{Coefficient, ExactDivError, ExactInt, ExactRat};
use crate::triangle::{to_rational, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("singular triangle: zero diagonal entry at row {row}")]
    SingularDiagonal { row: usize },
    #[error("entry ({n}, {k}) of the inverse is not exactly representable in this domain")]
    NonExactDivision { n: usize, k: usize },
}

/// Inverts a triangle by forward substitution:
///
///   B(n, n) = T(n, n)^{-1}
///   B(n, k) = -T(n, n)^{-1} · Σ_{k ≤ l < n} T(n, l)·B(l, k)     (k < n)
///
/// The result satisfies T·B = B·T = identity exactly. In a non-field
/// domain a division that leaves the domain reports `NonExactDivision`;
/// integer callers that want automatic promotion to rationals use
/// [`invert_integer_promoting`].
pub fn invert<T: Coefficient>(t: &Triangle<T>) -> Result<Triangle<T>, InversionError> {
    let offset = t.offset();
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(t.row_indices().len());
    for n in t.row_indices() {
        let diag = t.entry(n, n);
        if diag.is_zero() {
            return Err(InversionError::SingularDiagonal { row: n });
        }
        let inv_diag = T::one().exact_div(diag).map_err(|e| match e {
            ExactDivError::DivisionByZero => InversionError::SingularDiagonal { row: n },
            ExactDivError::NonDivisible => InversionError::NonExactDivision { n, k: n },
        })?;
        let mut row = Vec::with_capacity(n + 1 - offset);
        for k in offset..=n {
            if k == n {
                row.push(inv_diag.clone());
                continue;
            }
            let mut acc = T::zero();
            for l in k..n {
                let b = &rows[l - offset][k - offset];
                acc = Coefficient::add(&acc, &Coefficient::mul(t.entry(n, l), b));
            }
            let quotient = acc.exact_div(diag).map_err(|e| match e {
                ExactDivError::DivisionByZero => InversionError::SingularDiagonal { row: n },
                ExactDivError::NonDivisible => InversionError::NonExactDivision { n, k },
            })?;
            row.push(Coefficient::neg(&quotient));
        }
        rows.push(row);
    }
    Ok(Triangle::from_rows(format!("inverse({})", t.family()), offset, rows)
        .expect("inverse rows are well-formed"))
}

/// Inverse of an integer triangle, promoted to the rational domain when
/// any division leaves the integers (non-unit diagonals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerInverse {
    Integer(Triangle<ExactInt>),
    Rational(Triangle<ExactRat>),
}

/// Inverts an integer triangle, falling back to exact rationals when an
/// entry of the inverse is not an integer. A zero diagonal is still an
/// error in either domain.
pub fn invert_integer_promoting(
    t: &Triangle<ExactInt>,
) -> Result<IntegerInverse, InversionError> {
    match invert(t) {
        Ok(b) => Ok(IntegerInverse::Integer(b)),
        Err(InversionError::NonExactDivision { .. }) => {
            Ok(IntegerInverse::Rational(invert(&to_rational(t))?))
        }
        Err(e) => Err(e),
    }
}
