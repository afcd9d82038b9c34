//! Polynomials in x expressed over four bases — monomials, falling
//! factorials, rising factorials, and the Charlier polynomials — with
//! exact conversions between any pair.
//!
//! Conversions route through the monomial basis using the Stirling
//! connection triangles (and the Charlier matrix with its generic
//! inverse), so round trips are exact by construction.

use std::fmt;
use std::str::FromStr;

use crate::domain::{Coefficient, ExactRat};
use crate::families::{charlier_matrix, stirling1_unsigned_triangle, stirling2_triangle};
use crate::inversion::invert;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    Falling,
    Rising,
    Charlier,
}

impl Basis {
    pub const ALL: [Basis; 4] = [
        Basis::Monomial,
        Basis::Falling,
        Basis::Rising,
        Basis::Charlier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Falling => "falling",
            Basis::Rising => "rising",
            Basis::Charlier => "charlier",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Basis::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown basis `{s}`"))
    }
}

/// A polynomial in x given by rational coordinates over one basis.
/// Trailing zero coordinates are trimmed; the zero polynomial has an empty
/// coordinate sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPolynomial {
    basis: Basis,
    coeffs: Vec<ExactRat>,
}

impl BasisPolynomial {
    pub fn new(basis: Basis, mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(Coefficient::is_zero) {
            coeffs.pop();
        }
        BasisPolynomial { basis, coeffs }
    }

    /// The basis element of index `degree` (e.g. x^d, x^(falling d), …).
    pub fn basis_element(basis: Basis, degree: usize) -> Self {
        let mut coeffs = vec![<ExactRat as Coefficient>::zero(); degree + 1];
        coeffs[degree] = <ExactRat as Coefficient>::one();
        BasisPolynomial { basis, coeffs }
    }

    pub fn zero(basis: Basis) -> Self {
        BasisPolynomial {
            basis,
            coeffs: Vec::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coordinate of basis element `i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> ExactRat {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(<ExactRat as Coefficient>::zero)
    }

    pub fn convert(&self, target: Basis) -> BasisPolynomial {
        convert_basis(self, target)
    }
}

/// Coordinates of `p` over `target`, transformed through the appropriate
/// connection triangles. Degree is preserved: every connection matrix is
/// triangular with nonzero diagonal.
pub fn convert_basis(p: &BasisPolynomial, target: Basis) -> BasisPolynomial {
    if p.basis == target || p.coeffs.is_empty() {
        return BasisPolynomial::new(target, p.coeffs.clone());
    }
    let monomial = to_monomial(p);
    if target == Basis::Monomial {
        return monomial;
    }
    from_monomial(&monomial, target)
}

/// Connection row: coefficient of x^j in basis element n of `basis`.
fn to_monomial_matrix(basis: Basis, max_degree: usize) -> Vec<Vec<ExactRat>> {
    match basis {
        Basis::Monomial => identity_rows(max_degree),
        Basis::Falling => {
            // x^(falling n) = Σ_j (-1)^(n-j) c(n, j) x^j
            let c = stirling1_unsigned_triangle(max_degree);
            signed_rows(max_degree, |n, j| c.entry(n, j).clone())
        }
        Basis::Rising => {
            // x^(rising n) = Σ_j c(n, j) x^j
            let c = stirling1_unsigned_triangle(max_degree);
            plain_rows(max_degree, |n, j| c.entry(n, j).clone())
        }
        Basis::Charlier => charlier_rows(max_degree),
    }
}

/// Connection row: coordinate of basis element k in the expansion of x^n.
fn from_monomial_matrix(basis: Basis, max_degree: usize) -> Vec<Vec<ExactRat>> {
    match basis {
        Basis::Monomial => identity_rows(max_degree),
        Basis::Falling => {
            // x^n = Σ_k S(n, k) x^(falling k)
            let s = stirling2_triangle(max_degree);
            plain_rows(max_degree, |n, k| s.entry(n, k).clone())
        }
        Basis::Rising => {
            // x^n = Σ_k (-1)^(n-k) S(n, k) x^(rising k)
            let s = stirling2_triangle(max_degree);
            signed_rows(max_degree, |n, k| s.entry(n, k).clone())
        }
        Basis::Charlier => {
            let inv = invert(&charlier_matrix(max_degree))
                .expect("Charlier matrix has nonzero diagonal 1/n!");
            (0..=max_degree)
                .map(|n| (0..=n).map(|k| inv.entry(n, k).clone()).collect())
                .collect()
        }
    }
}

fn identity_rows(max_degree: usize) -> Vec<Vec<ExactRat>> {
    (0..=max_degree)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    if j == n {
                        <ExactRat as Coefficient>::one()
                    } else {
                        <ExactRat as Coefficient>::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn plain_rows(
    max_degree: usize,
    entry: impl Fn(usize, usize) -> crate::domain::ExactInt,
) -> Vec<Vec<ExactRat>> {
    (0..=max_degree)
        .map(|n| (0..=n).map(|j| ExactRat::from(entry(n, j))).collect())
        .collect()
}

fn signed_rows(
    max_degree: usize,
    entry: impl Fn(usize, usize) -> crate::domain::ExactInt,
) -> Vec<Vec<ExactRat>> {
    (0..=max_degree)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let e = ExactRat::from(entry(n, j));
                    if (n - j) % 2 == 0 {
                        e
                    } else {
                        Coefficient::neg(&e)
                    }
                })
                .collect()
        })
        .collect()
}

fn charlier_rows(max_degree: usize) -> Vec<Vec<ExactRat>> {
    let m = charlier_matrix(max_degree);
    (0..=max_degree)
        .map(|n| (0..=n).map(|j| m.entry(n, j).clone()).collect())
        .collect()
}

/// Applies a connection matrix: out_j = Σ_n a_n M(n, j).
fn apply(rows: &[Vec<ExactRat>], coeffs: &[ExactRat]) -> Vec<ExactRat> {
    let mut out = vec![<ExactRat as Coefficient>::zero(); coeffs.len()];
    for (n, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, m) in rows[n].iter().enumerate() {
            out[j] = Coefficient::add(&out[j], &Coefficient::mul(a, m));
        }
    }
    out
}

fn to_monomial(p: &BasisPolynomial) -> BasisPolynomial {
    let d = p.coeffs.len() - 1;
    let rows = to_monomial_matrix(p.basis, d);
    BasisPolynomial::new(Basis::Monomial, apply(&rows, &p.coeffs))
}

fn from_monomial(p: &BasisPolynomial, target: Basis) -> BasisPolynomial {
    if p.coeffs.is_empty() {
        return BasisPolynomial::zero(target);
    }
    let d = p.coeffs.len() - 1;
    let rows = from_monomial_matrix(target, d);
    BasisPolynomial::new(target, apply(&rows, &p.coeffs))
}
