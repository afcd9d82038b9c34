//! Exact coefficient domains: arbitrary-precision integers, normalized
//! rationals, and integer-coefficient polynomials in `q`.
//!
//! Every triangle in this crate stores entries from one of these three
//! domains, and all downstream algorithms (generation, inversion,
//! verification, mining) are generic over the [`Coefficient`] contract.
//! Arithmetic is exact for all magnitudes that arise at desk scale; there
//! is no floating-point fallback anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

/// Identifies the coefficient domain of a serialized value or triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainTag {
    Integer,
    Rational,
    QPoly,
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainTag::Integer => "integer",
            DomainTag::Rational => "rational",
            DomainTag::QPoly => "qpoly",
        };
        f.write_str(s)
    }
}

impl FromStr for DomainTag {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s {
            "integer" => Ok(DomainTag::Integer),
            "rational" => Ok(DomainTag::Rational),
            "qpoly" => Ok(DomainTag::QPoly),
            other => Err(ParseError::UnknownDomain(other.to_string())),
        }
    }
}

/// Failure modes of [`Coefficient::exact_div`].
///
/// `NonDivisible` is a signal, not a fatal condition: callers that work in
/// a non-field domain are expected to branch on it (for example by
/// promoting an integer triangle to the rational domain).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ExactDivError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NonDivisible,
}

/// Errors from parsing serialized exact values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid {domain} literal: {text}")]
    BadLiteral { domain: DomainTag, text: String },
    #[error("unknown coefficient domain: {0}")]
    UnknownDomain(String),
}

fn bad_literal(domain: DomainTag, value: &Value) -> ParseError {
    ParseError::BadLiteral {
        domain,
        text: value.to_string(),
    }
}

/// Contract shared by the three exact coefficient domains.
///
/// `exact_div` either returns a quotient that multiplies back to the
/// dividend or reports that no such element exists in the domain; it never
/// rounds. This is the only inverse-like operation the rest of the crate
/// needs: triangular inversion divides exclusively by diagonal entries.
pub trait Coefficient:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Domain tag stamped into serialized artifacts.
    const TAG: DomainTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        Coefficient::add(self, &Coefficient::neg(rhs))
    }

    /// Exact division: `Ok(q)` with `q * rhs == self`, or a signal.
    fn exact_div(&self, rhs: &Self) -> Result<Self, ExactDivError>;

    /// JSON encoding of a single value (string form for scalars, array of
    /// coefficient strings for q-polynomials).
    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self, ParseError>;

    /// Compact single-cell text used by CSV output and report payloads.
    /// Never contains a comma.
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_latex(&self) -> String;

    /// `Some((negative, degree))` when the value is `±q^degree` (`±1` with
    /// degree 0 in the scalar domains). Drives quotient-pattern detection
    /// in the mining pipeline.
    fn unit_monomial(&self) -> Option<(bool, usize)>;
}

// ---------------------------------------------------------------------------
// ExactInt
// ---------------------------------------------------------------------------

/// Arbitrary-precision signed integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactInt(BigInt);

impl ExactInt {
    pub fn new(value: impl Into<BigInt>) -> Self {
        ExactInt(value.into())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        BigInt::from_str(text)
            .map(ExactInt)
            .map_err(|_| ParseError::BadLiteral {
                domain: DomainTag::Integer,
                text: text.to_string(),
            })
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn abs(&self) -> Self {
        ExactInt(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Minus
    }

    /// Converts to `u64` when the value fits; used for small counts only.
    pub fn to_u64(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        self.0.to_u64()
    }
}

impl From<i64> for ExactInt {
    fn from(v: i64) -> Self {
        ExactInt(BigInt::from(v))
    }
}

impl From<usize> for ExactInt {
    fn from(v: usize) -> Self {
        ExactInt(BigInt::from(v))
    }
}

impl From<BigInt> for ExactInt {
    fn from(v: BigInt) -> Self {
        ExactInt(v)
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::ops::Add for ExactInt {
    type Output = ExactInt;
    fn add(self, rhs: ExactInt) -> ExactInt {
        ExactInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for ExactInt {
    type Output = ExactInt;
    fn sub(self, rhs: ExactInt) -> ExactInt {
        ExactInt(self.0 - rhs.0)
    }
}

impl std::ops::Mul for ExactInt {
    type Output = ExactInt;
    fn mul(self, rhs: ExactInt) -> ExactInt {
        ExactInt(self.0 * rhs.0)
    }
}

impl std::ops::Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        ExactInt(-self.0)
    }
}

impl Coefficient for ExactInt {
    const TAG: DomainTag = DomainTag::Integer;

    fn zero() -> Self {
        ExactInt(BigInt::zero())
    }

    fn one() -> Self {
        ExactInt(BigInt::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        ExactInt(&self.0 + &rhs.0)
    }

    fn neg(&self) -> Self {
        ExactInt(-&self.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ExactInt(&self.0 * &rhs.0)
    }

    fn exact_div(&self, rhs: &Self) -> Result<Self, ExactDivError> {
        if rhs.0.is_zero() {
            return Err(ExactDivError::DivisionByZero);
        }
        if (&self.0 % &rhs.0).is_zero() {
            Ok(ExactInt(&self.0 / &rhs.0))
        } else {
            Err(ExactDivError::NonDivisible)
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self, ParseError> {
        match value {
            Value::String(s) => ExactInt::parse(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(ExactInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(ExactInt(BigInt::from(u)))
                } else {
                    Err(bad_literal(DomainTag::Integer, value))
                }
            }
            other => Err(bad_literal(DomainTag::Integer, other)),
        }
    }

    fn to_latex(&self) -> String {
        self.to_string()
    }

    fn unit_monomial(&self) -> Option<(bool, usize)> {
        if self.0.abs().is_one() {
            Some((self.is_negative(), 0))
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// ExactRat
// ---------------------------------------------------------------------------

/// Exact rational, always stored reduced with a positive denominator.
/// The canonical zero is 0/1, so equality is a field-wise comparison.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRat(BigRational);

impl ExactRat {
    /// Builds `numer / denom`, reducing and normalizing the sign.
    pub fn new(numer: ExactInt, denom: ExactInt) -> Result<Self, ExactDivError> {
        if denom.0.is_zero() {
            return Err(ExactDivError::DivisionByZero);
        }
        Ok(ExactRat(BigRational::new(numer.0, denom.0)))
    }

    pub fn from_integer(value: impl Into<ExactInt>) -> Self {
        ExactRat(BigRational::from_integer(value.into().0))
    }

    pub fn numer(&self) -> ExactInt {
        ExactInt(self.0.numer().clone())
    }

    pub fn denom(&self) -> ExactInt {
        ExactInt(self.0.denom().clone())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<ExactInt> {
        if self.0.is_integer() {
            Some(ExactInt(self.0.to_integer()))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, ExactDivError> {
        if self.0.is_zero() {
            return Err(ExactDivError::DivisionByZero);
        }
        Ok(ExactRat(self.0.recip()))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let err = || ParseError::BadLiteral {
            domain: DomainTag::Rational,
            text: text.to_string(),
        };
        match text.split_once('/') {
            Some((num, den)) => {
                let n = BigInt::from_str(num).map_err(|_| err())?;
                let d = BigInt::from_str(den).map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(ExactRat(BigRational::new(n, d)))
            }
            None => {
                let n = BigInt::from_str(text).map_err(|_| err())?;
                Ok(ExactRat(BigRational::from_integer(n)))
            }
        }
    }
}

impl From<ExactInt> for ExactRat {
    fn from(v: ExactInt) -> Self {
        ExactRat(BigRational::from_integer(v.0))
    }
}

impl From<i64> for ExactRat {
    fn from(v: i64) -> Self {
        ExactRat(BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for ExactRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for ExactRat {
    type Output = ExactRat;
    fn add(self, rhs: ExactRat) -> ExactRat {
        ExactRat(self.0 + rhs.0)
    }
}

impl std::ops::Sub for ExactRat {
    type Output = ExactRat;
    fn sub(self, rhs: ExactRat) -> ExactRat {
        ExactRat(self.0 - rhs.0)
    }
}

impl std::ops::Mul for ExactRat {
    type Output = ExactRat;
    fn mul(self, rhs: ExactRat) -> ExactRat {
        ExactRat(self.0 * rhs.0)
    }
}

impl std::ops::Neg for ExactRat {
    type Output = ExactRat;
    fn neg(self) -> ExactRat {
        ExactRat(-self.0)
    }
}

impl Coefficient for ExactRat {
    const TAG: DomainTag = DomainTag::Rational;

    fn zero() -> Self {
        ExactRat(BigRational::zero())
    }

    fn one() -> Self {
        ExactRat(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        ExactRat(&self.0 + &rhs.0)
    }

    fn neg(&self) -> Self {
        ExactRat(-&self.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ExactRat(&self.0 * &rhs.0)
    }

    fn exact_div(&self, rhs: &Self) -> Result<Self, ExactDivError> {
        if rhs.0.is_zero() {
            return Err(ExactDivError::DivisionByZero);
        }
        Ok(ExactRat(&self.0 / &rhs.0))
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self, ParseError> {
        match value {
            Value::String(s) => ExactRat::parse(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(ExactRat::from(i))
                } else {
                    Err(bad_literal(DomainTag::Rational, value))
                }
            }
            other => Err(bad_literal(DomainTag::Rational, other)),
        }
    }

    fn to_latex(&self) -> String {
        if self.0.is_integer() {
            self.to_string()
        } else if self.0.is_negative() {
            format!("-\\frac{{{}}}{{{}}}", self.0.numer().abs(), self.0.denom())
        } else {
            format!("\\frac{{{}}}{{{}}}", self.0.numer(), self.0.denom())
        }
    }

    fn unit_monomial(&self) -> Option<(bool, usize)> {
        if self.0.numer().abs() == *self.0.denom() {
            Some((self.0.is_negative(), 0))
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// QPoly
// ---------------------------------------------------------------------------

/// Dense polynomial in the indeterminate `q` with integer coefficients,
/// stored in ascending degree. The highest stored coefficient is nonzero;
/// the canonical zero is the empty coefficient sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        QPoly::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn constant(value: impl Into<ExactInt>) -> Self {
        QPoly::new(vec![value.into().0])
    }

    /// `coeff * q^degree`.
    pub fn monomial(coeff: impl Into<ExactInt>, degree: usize) -> Self {
        let c = coeff.into().0;
        if c.is_zero() {
            return QPoly::new(Vec::new());
        }
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        QPoly { coeffs: v }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `q^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> ExactInt {
        self.coeffs
            .get(i)
            .cloned()
            .map(ExactInt)
            .unwrap_or_else(|| <ExactInt as Coefficient>::zero())
    }

    pub fn coeffs(&self) -> impl Iterator<Item = ExactInt> + '_ {
        self.coeffs.iter().cloned().map(ExactInt)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, at: &ExactRat) -> ExactRat {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &at.0 + BigRational::from_integer(c.clone());
        }
        ExactRat(acc)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Sign::Minus;
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let abs = c.abs();
            if i == 0 {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}", abs)?;
                }
                if i == 1 {
                    f.write_str("q")?;
                } else {
                    write!(f, "q^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        Coefficient::add(&self, &rhs)
    }
}

impl std::ops::Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        Coefficient::sub(&self, &rhs)
    }
}

impl std::ops::Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        Coefficient::mul(&self, &rhs)
    }
}

impl std::ops::Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        Coefficient::neg(&self)
    }
}

impl Coefficient for QPoly {
    const TAG: DomainTag = DomainTag::QPoly;

    fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        QPoly::new(out)
    }

    fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return <QPoly as Coefficient>::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Long division over ℤ[q]; succeeds only when the quotient exists
    /// with integer coefficients and zero remainder.
    fn exact_div(&self, rhs: &Self) -> Result<Self, ExactDivError> {
        if rhs.coeffs.is_empty() {
            return Err(ExactDivError::DivisionByZero);
        }
        if self.coeffs.is_empty() {
            return Ok(<QPoly as Coefficient>::zero());
        }
        let da = self.coeffs.len() - 1;
        let db = rhs.coeffs.len() - 1;
        if da < db {
            return Err(ExactDivError::NonDivisible);
        }
        let lead = &rhs.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let head = rem[i + db].clone();
            if head.is_zero() {
                continue;
            }
            if !(&head % lead).is_zero() {
                return Err(ExactDivError::NonDivisible);
            }
            let q = &head / lead;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ExactDivError::NonDivisible);
        }
        Ok(QPoly::new(quot))
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }

    fn from_json(value: &Value) -> Result<Self, ParseError> {
        let arr = value
            .as_array()
            .ok_or_else(|| bad_literal(DomainTag::QPoly, value))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for v in arr {
            let c = match v {
                Value::String(s) => BigInt::from_str(s)
                    .map_err(|_| bad_literal(DomainTag::QPoly, value))?,
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad_literal(DomainTag::QPoly, value))?,
                _ => return Err(bad_literal(DomainTag::QPoly, value)),
            };
            coeffs.push(c);
        }
        Ok(QPoly::new(coeffs))
    }

    fn to_latex(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Sign::Minus;
            if first {
                if negative {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            if i == 0 {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                }
                if i == 1 {
                    out.push('q');
                } else {
                    out.push_str(&format!("q^{{{}}}", i));
                }
            }
        }
        out
    }

    fn unit_monomial(&self) -> Option<(bool, usize)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || !c.abs().is_one() {
                return None;
            }
            found = Some((c.sign() == Sign::Minus, i));
        }
        found
    }
}

/// Exact Horner evaluation of a q-polynomial at a rational point.
///
/// Free-function form of [`QPoly::eval`]; the q → 1 degeneration checks
/// route through here.
pub fn qpoly_eval(p: &QPoly, at: &ExactRat) -> ExactRat {
    p.eval(at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn rat(n: i64, d: i64) -> ExactRat {
        ExactRat::new(int(n), int(d)).unwrap()
    }

    #[test]
    fn integer_exact_division() {
        assert_eq!(int(30).exact_div(&int(6)), Ok(int(5)));
        assert_eq!(int(7).exact_div(&int(2)), Err(ExactDivError::NonDivisible));
        assert_eq!(
            int(7).exact_div(&int(0)),
            Err(ExactDivError::DivisionByZero)
        );
        assert_eq!(int(-30).exact_div(&int(6)), Ok(int(-5)));
    }

    #[test]
    fn qpoly_exact_division() {
        // (1 - q^2) / (1 - q) = 1 + q, and the quotient multiplies back.
        let num = QPoly::from_coeffs([1i64, 0, -1]);
        let den = QPoly::from_coeffs([1i64, -1]);
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, QPoly::from_coeffs([1i64, 1]));
        assert_eq!(Coefficient::mul(&quot, &den), num);

        let odd = QPoly::from_coeffs([1i64, 1, 1]);
        assert_eq!(
            odd.exact_div(&QPoly::from_coeffs([1i64, 1])),
            Err(ExactDivError::NonDivisible)
        );
        assert_eq!(
            odd.exact_div(&<QPoly as Coefficient>::zero()),
            Err(ExactDivError::DivisionByZero)
        );
    }

    #[test]
    fn qpoly_eval_examples() {
        let p = QPoly::from_coeffs([1i64, 1, 1]);
        assert_eq!(qpoly_eval(&p, &rat(1, 1)), rat(3, 1));
        assert_eq!(
            qpoly_eval(&<QPoly as Coefficient>::zero(), &rat(7, 3)),
            rat(0, 1)
        );
        let linear = QPoly::from_coeffs([1i64, 1]);
        assert_eq!(qpoly_eval(&linear, &rat(1, 2)), rat(3, 2));
    }

    #[test]
    fn rational_normal_form() {
        // p/q and (k*p)/(k*q) must land on identical stored fields.
        let a = rat(2, 4);
        let b = rat(1, 2);
        assert_eq!(a.numer(), b.numer());
        assert_eq!(a.denom(), b.denom());
        let c = rat(-3, -6);
        assert_eq!(c, b);
        let d = rat(3, -6);
        assert_eq!(d.numer(), int(-1));
        assert_eq!(d.denom(), int(2));
        // canonical zero is 0/1
        let z = rat(0, -7);
        assert_eq!(z.numer(), int(0));
        assert_eq!(z.denom(), int(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rat(1, 2).to_string(), "1/2");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(rat(-1, 3).to_string(), "-1/3");
        assert_eq!(QPoly::from_coeffs([1i64, 0, 2]).to_string(), "1 + 2q^2");
        assert_eq!(QPoly::from_coeffs([0i64, -1, 1]).to_string(), "-q + q^2");
        assert_eq!(<QPoly as Coefficient>::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trips() {
        let i = int(-123456789);
        assert_eq!(ExactInt::from_json(&i.to_json()).unwrap(), i);
        let r = rat(-22, 7);
        assert_eq!(ExactRat::from_json(&r.to_json()).unwrap(), r);
        let p = QPoly::from_coeffs([3i64, 0, -1, 7]);
        assert_eq!(QPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn unit_monomials() {
        assert_eq!(int(1).unit_monomial(), Some((false, 0)));
        assert_eq!(int(-1).unit_monomial(), Some((true, 0)));
        assert_eq!(int(6).unit_monomial(), None);
        assert_eq!(rat(-1, 1).unit_monomial(), Some((true, 0)));
        assert_eq!(rat(1, 2).unit_monomial(), None);
        assert_eq!(
            QPoly::monomial(-1i64, 3).unit_monomial(),
            Some((true, 3))
        );
        assert_eq!(QPoly::from_coeffs([1i64, 1]).unit_monomial(), None);
    }

    fn arb_int() -> impl Strategy<Value = ExactInt> {
        (-1000i64..1000).prop_map(ExactInt::from)
    }

    fn arb_rat() -> impl Strategy<Value = ExactRat> {
        ((-100i64..100), (1i64..40))
            .prop_map(|(n, d)| ExactRat::new(ExactInt::from(n), ExactInt::from(d)).unwrap())
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(-20i64..20, 0..6).prop_map(QPoly::from_coeffs)
    }

    macro_rules! ring_axioms {
        ($name:ident, $strategy:expr) => {
            proptest! {
                #[test]
                fn $name((a, b, c) in ($strategy, $strategy, $strategy)) {
                    let zero = Coefficient::zero();
                    let one = Coefficient::one();
                    // additive group
                    prop_assert_eq!(Coefficient::add(&a, &b), Coefficient::add(&b, &a));
                    prop_assert_eq!(
                        Coefficient::add(&Coefficient::add(&a, &b), &c),
                        Coefficient::add(&a, &Coefficient::add(&b, &c))
                    );
                    prop_assert_eq!(Coefficient::add(&a, &zero), a.clone());
                    prop_assert_eq!(Coefficient::add(&a, &Coefficient::neg(&a)), zero);
                    // multiplicative monoid
                    prop_assert_eq!(Coefficient::mul(&a, &b), Coefficient::mul(&b, &a));
                    prop_assert_eq!(
                        Coefficient::mul(&Coefficient::mul(&a, &b), &c),
                        Coefficient::mul(&a, &Coefficient::mul(&b, &c))
                    );
                    prop_assert_eq!(Coefficient::mul(&a, &one), a.clone());
                    // distributivity
                    prop_assert_eq!(
                        Coefficient::mul(&a, &Coefficient::add(&b, &c)),
                        Coefficient::add(&Coefficient::mul(&a, &b), &Coefficient::mul(&a, &c))
                    );
                }
            }
        };
    }

    ring_axioms!(ring_axioms_integer, arb_int());
    ring_axioms!(ring_axioms_rational, arb_rat());
    ring_axioms!(ring_axioms_qpoly, arb_qpoly());

    proptest! {
        #[test]
        fn eval_is_multiplicative((p1, p2, n, d) in (arb_qpoly(), arb_qpoly(), -20i64..20, 1i64..10)) {
            let at = ExactRat::new(ExactInt::from(n), ExactInt::from(d)).unwrap();
            let lhs = qpoly_eval(&Coefficient::mul(&p1, &p2), &at);
            let rhs = Coefficient::mul(&qpoly_eval(&p1, &at), &qpoly_eval(&p2, &at));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_div_multiplies_back((a, b) in (arb_qpoly(), arb_qpoly())) {
            if !Coefficient::is_zero(&b) {
                let prod = Coefficient::mul(&a, &b);
                let q = prod.exact_div(&b).unwrap();
                prop_assert_eq!(q, a);
            }
        }
    }
}
