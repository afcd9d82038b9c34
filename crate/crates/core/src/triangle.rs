//! The shared immutable lower-triangular array every family and every
//! inverse lives in, plus its JSON / CSV / LaTeX encodings.
//!
//! A triangle with `offset` o stores rows o..=N; row n holds entries
//! T(n, o)..T(n, n). Most families use offset 0; the Catalan (ballot)
//! triangle uses offset 1 because its paper-level boundary column k = 0 is
//! identically zero and is not stored.

use serde_json::{json, Value};
use thiserror::Error;

use crate::domain::{Coefficient, DomainTag, ExactInt, ExactRat, ParseError, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("zero diagonal entry at row {row}")]
    ZeroDiagonal { row: usize },
    #[error("offset mismatch: {left} vs {right}")]
    OffsetMismatch { left: usize, right: usize },
    #[error("size mismatch: {left} rows vs {right} rows")]
    SizeMismatch { left: usize, right: usize },
    #[error("missing or malformed field `{0}` in triangle JSON")]
    BadSchema(String),
    #[error("triangle JSON has domain `{got}`, expected `{expected}`")]
    WrongDomain { expected: DomainTag, got: String },
    #[error(transparent)]
    Value(#[from] ParseError),
}

/// Immutable ragged lower-triangular array over one coefficient domain.
#[derive(Clone, PartialEq, Eq)]
pub struct Triangle<T> {
    family: String,
    offset: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Coefficient> Triangle<T> {
    /// Validates the ragged shape and the nonzero-diagonal invariant.
    pub fn from_rows(
        family: impl Into<String>,
        offset: usize,
        rows: Vec<Vec<T>>,
    ) -> Result<Self, TriangleError> {
        for (i, row) in rows.iter().enumerate() {
            let n = offset + i;
            let expected = n + 1 - offset;
            if row.len() != expected {
                return Err(TriangleError::RaggedRow {
                    row: n,
                    expected,
                    got: row.len(),
                });
            }
            if row.last().is_some_and(Coefficient::is_zero) {
                return Err(TriangleError::ZeroDiagonal { row: n });
            }
        }
        Ok(Triangle {
            family: family.into(),
            offset,
            rows,
        })
    }

    /// Identity triangle on rows offset..=max_row (empty when
    /// `max_row < offset`).
    pub fn identity(offset: usize, max_row: usize) -> Self {
        let mut rows = Vec::new();
        if max_row >= offset {
            for n in offset..=max_row {
                let mut row = vec![T::zero(); n + 1 - offset];
                *row.last_mut().expect("row is nonempty") = T::one();
                rows.push(row);
            }
        }
        Triangle {
            family: "identity".to_string(),
            offset,
            rows,
        }
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Largest stored row index; `None` for an empty triangle.
    pub fn max_row(&self) -> Option<usize> {
        if self.rows.is_empty() {
            None
        } else {
            Some(self.offset + self.rows.len() - 1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Stored row indices (empty range for an empty triangle).
    pub fn row_indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rows.len()
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n - self.offset]
    }

    /// Entry T(n, k); panics outside the stored index range.
    pub fn entry(&self, n: usize, k: usize) -> &T {
        &self.rows[n - self.offset][k - self.offset]
    }

    /// Entry T(n, k), or `None` outside the stored index range.
    pub fn get(&self, n: usize, k: usize) -> Option<&T> {
        if n < self.offset || k < self.offset || k > n {
            return None;
        }
        self.rows.get(n - self.offset)?.get(k - self.offset)
    }

    /// Diagonal d entries T(k + d, k) in increasing k.
    pub fn diagonal(&self, d: usize) -> Vec<T> {
        let mut out = Vec::new();
        for n in self.row_indices() {
            if n >= self.offset + d {
                out.push(self.entry(n, n - d).clone());
            }
        }
        out
    }

    /// Exact product of two triangles with identical index ranges:
    /// (self · rhs)(n, k) = Σ_{k ≤ l ≤ n} self(n, l) · rhs(l, k).
    pub fn multiply(&self, rhs: &Self) -> Result<Self, TriangleError> {
        if self.offset != rhs.offset {
            return Err(TriangleError::OffsetMismatch {
                left: self.offset,
                right: rhs.offset,
            });
        }
        if self.rows.len() != rhs.rows.len() {
            return Err(TriangleError::SizeMismatch {
                left: self.rows.len(),
                right: rhs.rows.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for n in self.row_indices() {
            let mut row = Vec::with_capacity(n + 1 - self.offset);
            for k in self.offset..=n {
                let mut acc = T::zero();
                for l in k..=n {
                    acc = Coefficient::add(
                        &acc,
                        &Coefficient::mul(self.entry(n, l), rhs.entry(l, k)),
                    );
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(Triangle {
            family: format!("{}*{}", self.family, rhs.family),
            offset: self.offset,
            rows,
        })
    }

    /// True when every diagonal entry is one and every strictly lower
    /// entry is zero.
    pub fn is_identity(&self) -> bool {
        for n in self.row_indices() {
            for k in self.offset..=n {
                let e = self.entry(n, k);
                if k == n {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise map into another domain. The map must preserve the
    /// nonzero-diagonal invariant; this is asserted.
    pub fn map_entries<U: Coefficient>(
        &self,
        family: impl Into<String>,
        f: impl Fn(&T) -> U,
    ) -> Triangle<U> {
        let rows: Vec<Vec<U>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(&f).collect())
            .collect();
        for (i, row) in rows.iter().enumerate() {
            assert!(
                !row.last().is_some_and(Coefficient::is_zero),
                "entry map produced a zero diagonal at row {}",
                self.offset + i
            );
        }
        Triangle {
            family: family.into(),
            offset: self.offset,
            rows,
        }
    }

    /// JSON form: `{"family", "domain", "offset", "rows"}` with entries
    /// encoded by the coefficient domain.
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "domain": T::TAG.to_string(),
            "offset": self.offset,
            "rows": self
                .rows
                .iter()
                .map(|row| Value::Array(row.iter().map(Coefficient::to_json).collect()))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self, TriangleError> {
        let family = value
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| TriangleError::BadSchema("family".into()))?;
        let domain = value
            .get("domain")
            .and_then(Value::as_str)
            .ok_or_else(|| TriangleError::BadSchema("domain".into()))?;
        if domain != T::TAG.to_string() {
            return Err(TriangleError::WrongDomain {
                expected: T::TAG,
                got: domain.to_string(),
            });
        }
        let offset = value
            .get("offset")
            .and_then(Value::as_u64)
            .ok_or_else(|| TriangleError::BadSchema("offset".into()))? as usize;
        let rows_json = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| TriangleError::BadSchema("rows".into()))?;
        let mut rows = Vec::with_capacity(rows_json.len());
        for row in rows_json {
            let row = row
                .as_array()
                .ok_or_else(|| TriangleError::BadSchema("rows".into()))?;
            let parsed: Result<Vec<T>, ParseError> = row.iter().map(T::from_json).collect();
            rows.push(parsed?);
        }
        Triangle::from_rows(family, offset, rows)
    }

    /// CSV form: one line per row, columns offset..=max_row, empty cells
    /// for out-of-range positions. Cell text never contains a comma.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        let width = self.rows.len();
        for row in &self.rows {
            let mut record: Vec<String> = row.iter().map(Coefficient::to_text).collect();
            record.resize(width, String::new());
            writer.write_record(&record).expect("in-memory CSV write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory CSV flush"))
            .expect("CSV output is UTF-8")
    }

    /// LaTeX array environment with one column per stored column index.
    pub fn to_latex(&self) -> String {
        let width = self.rows.len();
        let mut out = String::new();
        out.push_str(&format!("\\begin{{array}}{{{}}}\n", "r".repeat(width.max(1))));
        for row in &self.rows {
            let cells: Vec<String> = (0..width)
                .map(|j| row.get(j).map(Coefficient::to_latex).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(" & "));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{array}\n");
        out
    }
}

impl<T: Coefficient> std::fmt::Debug for Triangle<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Triangle[{}] offset={}", self.family, self.offset)?;
        for n in self.row_indices() {
            let cells: Vec<String> = self.row(n).iter().map(Coefficient::to_text).collect();
            writeln!(f, "  {}: [{}]", n, cells.join(", "))?;
        }
        Ok(())
    }
}

/// Converts an integer triangle to the rational domain entry by entry.
pub fn to_rational(t: &Triangle<ExactInt>) -> Triangle<ExactRat> {
    t.map_entries(t.family().to_string(), |e| ExactRat::from(e.clone()))
}

/// A triangle over whichever domain a serialized artifact declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTriangle {
    Integer(Triangle<ExactInt>),
    Rational(Triangle<ExactRat>),
    QPoly(Triangle<QPoly>),
}

impl AnyTriangle {
    pub fn from_json(value: &Value) -> Result<Self, TriangleError> {
        let domain = value
            .get("domain")
            .and_then(Value::as_str)
            .ok_or_else(|| TriangleError::BadSchema("domain".into()))?;
        match domain.parse::<DomainTag>()? {
            DomainTag::Integer => Ok(AnyTriangle::Integer(Triangle::from_json(value)?)),
            DomainTag::Rational => Ok(AnyTriangle::Rational(Triangle::from_json(value)?)),
            DomainTag::QPoly => Ok(AnyTriangle::QPoly(Triangle::from_json(value)?)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyTriangle::Integer(t) => t.to_json(),
            AnyTriangle::Rational(t) => t.to_json(),
            AnyTriangle::QPoly(t) => t.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            AnyTriangle::Integer(t) => t.to_csv(),
            AnyTriangle::Rational(t) => t.to_csv(),
            AnyTriangle::QPoly(t) => t.to_csv(),
        }
    }

    pub fn to_latex(&self) -> String {
        match self {
            AnyTriangle::Integer(t) => t.to_latex(),
            AnyTriangle::Rational(t) => t.to_latex(),
            AnyTriangle::QPoly(t) => t.to_latex(),
        }
    }

    pub fn family(&self) -> &str {
        match self {
            AnyTriangle::Integer(t) => t.family(),
            AnyTriangle::Rational(t) => t.family(),
            AnyTriangle::QPoly(t) => t.family(),
        }
    }

    pub fn domain(&self) -> DomainTag {
        match self {
            AnyTriangle::Integer(_) => DomainTag::Integer,
            AnyTriangle::Rational(_) => DomainTag::Rational,
            AnyTriangle::QPoly(_) => DomainTag::QPoly,
        }
    }
}
