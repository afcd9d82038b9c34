//! Exact verifiers for the classical inversion identities: binomial and
//! Stirling orthogonality, factorial-basis identities, the Gaussian
//! binomial closed-form inverse, the Catalan triangle inverse, Charlier
//! connection coefficients, and the cobweb delta equation with its matrix
//! bridge.
//!
//! Verifiers never panic on a failed identity; failures are collected as
//! counterexamples in a [`VerificationReport`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::{convert_basis, Basis, BasisPolynomial};
use crate::cobweb;
use crate::domain::{Coefficient, ExactInt, ExactRat, QPoly};
use crate::families::{
    binomial_triangle, catalan_triangle, charlier_matrix, gaussian_triangle,
    stirling1_unsigned_triangle, stirling2_triangle,
};
use crate::inversion::invert;
use crate::seq::binomial;
use crate::triangle::Triangle;

/// One failing cell of an identity sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub l: usize,
    pub value: String,
}

/// Structured pass/fail evidence for one identity. The pass flag is true
/// exactly when the counterexample list is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub identity: String,
    pub max_row: usize,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        max_row: usize,
        mut counterexamples: Vec<Counterexample>,
    ) -> Self {
        counterexamples.sort_by_key(|c| (c.n, c.l));
        VerificationReport {
            identity: identity.into(),
            max_row,
            pass: counterexamples.is_empty(),
            counterexamples,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn delta_int(a: usize, b: usize) -> ExactInt {
    if a == b {
        <ExactInt as Coefficient>::one()
    } else {
        <ExactInt as Coefficient>::zero()
    }
}

fn signed(value: ExactInt, parity: usize) -> ExactInt {
    if parity % 2 == 0 {
        value
    } else {
        Coefficient::neg(&value)
    }
}

/// Binomial orthogonality: Σ_k C(n, k) C(k, l) (-1)^(k-l) = δ_{nl} for all
/// 0 ≤ l ≤ n ≤ max_row, plus the closed-form inverse check
/// invert(binomial) = ((-1)^(n-k) C(n, k)).
pub fn verify_eq1(max_row: usize) -> VerificationReport {
    let b = binomial_triangle(max_row);
    let mut counterexamples = Vec::new();
    for n in 0..=max_row {
        for l in 0..=n {
            let mut acc = <ExactInt as Coefficient>::zero();
            for k in l..=n {
                let term = Coefficient::mul(b.entry(n, k), b.entry(k, l));
                acc = Coefficient::add(&acc, &signed(term, k - l));
            }
            if acc != delta_int(n, l) {
                counterexamples.push(Counterexample {
                    n,
                    l,
                    value: acc.to_string(),
                });
            }
        }
    }
    let inverse = invert(&b).expect("unit diagonal");
    for n in 0..=max_row {
        for k in 0..=n {
            let closed = signed(binomial(n, k), n - k);
            if *inverse.entry(n, k) != closed {
                counterexamples.push(Counterexample {
                    n,
                    l: k,
                    value: inverse.entry(n, k).to_string(),
                });
            }
        }
    }
    VerificationReport::new("eq1", max_row, counterexamples)
}

/// Stirling orthogonality in both sign forms:
/// Σ_k S(n, k) c(k, l) (-1)^(n-k) = δ_{nl} and the equivalent
/// Σ_k S(n, k) c(k, l) (-1)^(k-l) = δ_{nl}.
pub fn verify_eq2(max_row: usize) -> VerificationReport {
    let s = stirling2_triangle(max_row);
    let c = stirling1_unsigned_triangle(max_row);
    let mut counterexamples = Vec::new();
    for n in 0..=max_row {
        for l in 0..=n {
            let mut displayed = <ExactInt as Coefficient>::zero();
            let mut equivalent = <ExactInt as Coefficient>::zero();
            for k in l..=n {
                let term = Coefficient::mul(s.entry(n, k), c.entry(k, l));
                displayed = Coefficient::add(&displayed, &signed(term.clone(), n - k));
                equivalent = Coefficient::add(&equivalent, &signed(term, k - l));
            }
            let expected = delta_int(n, l);
            if displayed != expected || equivalent != expected {
                counterexamples.push(Counterexample {
                    n,
                    l,
                    value: format!("{displayed};{equivalent}"),
                });
            }
        }
    }
    VerificationReport::new("eq2", max_row, counterexamples)
}

/// Factorial-basis identities:
/// x^n = Σ_k S(n, k)(-1)^(n-k) x^(rising k) and
/// x^(falling n) = Σ_k c(n, k)(-1)^(n-k) x^k, as exact coefficient
/// sequences for all n ≤ max_row.
pub fn verify_ex3(max_row: usize) -> VerificationReport {
    let s = stirling2_triangle(max_row);
    let c = stirling1_unsigned_triangle(max_row);
    let mut counterexamples = Vec::new();
    for n in 0..=max_row {
        // first identity, built in the rising basis and converted down
        let rising_coeffs: Vec<ExactRat> = (0..=n)
            .map(|k| ExactRat::from(signed(s.entry(n, k).clone(), n - k)))
            .collect();
        let rhs = convert_basis(
            &BasisPolynomial::new(Basis::Rising, rising_coeffs),
            Basis::Monomial,
        );
        let lhs = BasisPolynomial::basis_element(Basis::Monomial, n);
        if rhs != lhs {
            for j in 0..=n {
                if rhs.coeff(j) != lhs.coeff(j) {
                    counterexamples.push(Counterexample {
                        n,
                        l: j,
                        value: rhs.coeff(j).to_string(),
                    });
                }
            }
        }
        // second identity: expand the falling factorial into monomials
        let falling = convert_basis(
            &BasisPolynomial::basis_element(Basis::Falling, n),
            Basis::Monomial,
        );
        for j in 0..=n {
            let expected = ExactRat::from(signed(c.entry(n, j).clone(), n - j));
            if falling.coeff(j) != expected {
                counterexamples.push(Counterexample {
                    n,
                    l: j,
                    value: falling.coeff(j).to_string(),
                });
            }
        }
    }
    VerificationReport::new("ex3", max_row, counterexamples)
}

/// Gaussian binomial inverse closed form:
/// invert(gaussian)(n, k) = (-1)^(n-k) q^C(n-k, 2) (n choose k)_q as
/// polynomials.
pub fn verify_ex4(max_row: usize) -> VerificationReport {
    let g = gaussian_triangle(max_row);
    let inverse = invert(&g).expect("unit diagonal");
    let mut counterexamples = Vec::new();
    for n in 0..=max_row {
        for k in 0..=n {
            let d = n - k;
            let exponent = d * d.saturating_sub(1) / 2; // C(d, 2)
            let sign_monomial =
                QPoly::monomial(if d % 2 == 0 { 1i64 } else { -1i64 }, exponent);
            let closed = Coefficient::mul(&sign_monomial, g.entry(n, k));
            if *inverse.entry(n, k) != closed {
                counterexamples.push(Counterexample {
                    n,
                    l: k,
                    value: inverse.entry(n, k).to_string(),
                });
            }
        }
    }
    VerificationReport::new("ex4", max_row, counterexamples)
}

/// Catalan triangle checks: the auxiliary binomial identity
/// Σ_k C(2n, k) C(k, l) (-1)^(k-l) = δ_{2n,l}, the two-sided inverse
/// product, and the boundary behavior of the inverse when the triangle is
/// embedded with its explicit zero column k = 0.
pub fn verify_ex5(max_row: usize) -> VerificationReport {
    assert!(max_row >= 1, "verify_ex5 requires at least one rank");
    let mut counterexamples = Vec::new();

    // auxiliary identity: an instance of the binomial orthogonality with
    // upper row 2n
    let b = binomial_triangle(2 * max_row);
    for n in 1..=max_row {
        for l in 0..=2 * n {
            let mut acc = <ExactInt as Coefficient>::zero();
            for k in l..=2 * n {
                let term = Coefficient::mul(b.entry(2 * n, k), b.entry(k, l));
                acc = Coefficient::add(&acc, &signed(term, k - l));
            }
            if acc != delta_int(2 * n, l) {
                counterexamples.push(Counterexample {
                    n,
                    l,
                    value: acc.to_string(),
                });
            }
        }
    }

    // generation cross-checks recurrence vs closed form internally
    let c = catalan_triangle(max_row);
    let inverse = invert(&c).expect("unit diagonal");
    let both_sided = c.multiply(&inverse).unwrap().is_identity()
        && inverse.multiply(&c).unwrap().is_identity();
    if !both_sided {
        counterexamples.push(Counterexample {
            n: max_row,
            l: 0,
            value: "product is not the identity".to_string(),
        });
    }
    for n in 1..=max_row {
        if !inverse.entry(n, n).is_one() {
            counterexamples.push(Counterexample {
                n,
                l: n,
                value: inverse.entry(n, n).to_string(),
            });
        }
    }

    // boundary behavior: embed with the explicit zero column k = 0 and
    // row 0 = [1]; the inverse must keep column 0 equal to e_0 and agree
    // with the offset-1 inverse elsewhere.
    let mut rows: Vec<Vec<ExactInt>> = vec![vec![<ExactInt as Coefficient>::one()]];
    for n in 1..=max_row {
        let mut row = vec![<ExactInt as Coefficient>::zero()];
        row.extend(c.row(n).iter().cloned());
        rows.push(row);
    }
    let embedded = Triangle::from_rows("catalan-embedded", 0, rows).expect("well-formed");
    let embedded_inverse = invert(&embedded).expect("unit diagonal");
    for n in 0..=max_row {
        let col0 = embedded_inverse.entry(n, 0);
        if *col0 != delta_int(n, 0) {
            counterexamples.push(Counterexample {
                n,
                l: 0,
                value: col0.to_string(),
            });
        }
        for k in 1..=n {
            if embedded_inverse.entry(n, k) != inverse.entry(n, k) {
                counterexamples.push(Counterexample {
                    n,
                    l: k,
                    value: embedded_inverse.entry(n, k).to_string(),
                });
            }
        }
    }

    VerificationReport::new("ex5", max_row, counterexamples)
}

/// Charlier connection coefficients: with A the Charlier matrix and
/// C = invert(A), Σ_k C(n, k) P_k(x) must reconstruct the monomial x^n
/// exactly for every n ≤ max_row.
pub fn verify_ex6(max_row: usize) -> VerificationReport {
    let a = charlier_matrix(max_row);
    let connection = invert(&a).expect("diagonal 1/n! is nonzero");
    let mut counterexamples = Vec::new();
    for n in 0..=max_row {
        let coeffs: Vec<ExactRat> = (0..=n).map(|k| connection.entry(n, k).clone()).collect();
        let reconstructed = convert_basis(
            &BasisPolynomial::new(Basis::Charlier, coeffs),
            Basis::Monomial,
        );
        let expected = BasisPolynomial::basis_element(Basis::Monomial, n);
        if reconstructed != expected {
            for j in 0..=n {
                if reconstructed.coeff(j) != expected.coeff(j) {
                    counterexamples.push(Counterexample {
                        n,
                        l: j,
                        value: reconstructed.coeff(j).to_string(),
                    });
                }
            }
        }
    }
    VerificationReport::new("ex6", max_row, counterexamples)
}

/// Cobweb delta equation at max_rank: with f the fibonomial function and
/// g its weighted inverse, Σ_{k ≤ l ≤ n} F_l g(k, l) f(l, n) = δ_{nk} for
/// all 1 ≤ k ≤ n; additionally the rescaled star inverse must be two-sided
/// against the weighted identity.
pub fn verify_eq4(max_rank: usize) -> VerificationReport {
    assert!(max_rank >= 1, "verify_eq4 requires at least one rank");
    let f = cobweb::fibonomial_function(max_rank);
    let g = cobweb::weighted_inverse(&f).expect("fibonomial diagonal is 1");
    let gf = cobweb::convolve(&g, &f).expect("equal ranks");
    let mut counterexamples = Vec::new();
    for n in 1..=max_rank {
        for k in 1..=n {
            let expected = ExactRat::from(delta_int(n, k));
            if *gf.value(k, n) != expected {
                counterexamples.push(Counterexample {
                    n,
                    l: k,
                    value: gf.value(k, n).to_string(),
                });
            }
        }
    }
    let h = cobweb::star_inverse(&f).expect("fibonomial diagonal is 1");
    let e = cobweb::weighted_identity(max_rank);
    let hf = cobweb::convolve(&h, &f).expect("equal ranks");
    let fh = cobweb::convolve(&f, &h).expect("equal ranks");
    for n in 1..=max_rank {
        for k in 1..=n {
            if hf.value(k, n) != e.value(k, n) || fh.value(k, n) != e.value(k, n) {
                counterexamples.push(Counterexample {
                    n,
                    l: k,
                    value: format!("{};{}", hf.value(k, n), fh.value(k, n)),
                });
            }
        }
    }
    VerificationReport::new("eq4", max_rank, counterexamples)
}

/// Bridge between the weighted inverse and the plain matrix inverse.
pub fn verify_bridge(max_rank: usize) -> VerificationReport {
    assert!(max_rank >= 1, "verify_bridge requires at least one rank");
    cobweb::bridge_check(max_rank)
}

/// The runnable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Eq1,
    Eq2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Eq4,
    Bridge,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Eq1,
        Suite::Eq2,
        Suite::Ex3,
        Suite::Ex4,
        Suite::Ex5,
        Suite::Ex6,
        Suite::Eq4,
        Suite::Bridge,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eq1 => "eq1",
            Suite::Eq2 => "eq2",
            Suite::Ex3 => "ex3",
            Suite::Ex4 => "ex4",
            Suite::Ex5 => "ex5",
            Suite::Ex6 => "ex6",
            Suite::Eq4 => "eq4",
            Suite::Bridge => "bridge",
            Suite::All => "all",
        }
    }

    /// Smallest row count the suite is defined for.
    pub fn min_rows(self) -> usize {
        match self {
            Suite::Ex5 | Suite::Eq4 | Suite::Bridge | Suite::All => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs a suite at the given size; `All` aggregates every individual
/// suite in declaration order.
pub fn run_suite(suite: Suite, rows: usize) -> Vec<VerificationReport> {
    assert!(
        rows >= suite.min_rows(),
        "suite {suite} requires rows >= {}",
        suite.min_rows()
    );
    match suite {
        Suite::Eq1 => vec![verify_eq1(rows)],
        Suite::Eq2 => vec![verify_eq2(rows)],
        Suite::Ex3 => vec![verify_ex3(rows)],
        Suite::Ex4 => vec![verify_ex4(rows)],
        Suite::Ex5 => vec![verify_ex5(rows)],
        Suite::Ex6 => vec![verify_ex6(rows)],
        Suite::Eq4 => vec![verify_eq4(rows)],
        Suite::Bridge => vec![verify_bridge(rows)],
        Suite::All => vec![
            verify_eq1(rows),
            verify_eq2(rows),
            verify_ex3(rows),
            verify_ex4(rows),
            verify_ex5(rows),
            verify_ex6(rows),
            verify_eq4(rows),
            verify_bridge(rows),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq1_direct_cells() {
        // n = 2, l = 0: 1 - 2 + 1 = 0; diagonal cells give the single
        // surviving k = n = l term, equal to 1.
        let report = verify_eq1(16);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn eq2_example_cell() {
        // n = 3, l = 1: 1·1·1 + 3·1·(-1) + 1·2·1 = 0
        let s = stirling2_triangle(3);
        let c = stirling1_unsigned_triangle(3);
        let mut acc = <ExactInt as Coefficient>::zero();
        for k in 1..=3usize {
            let term = Coefficient::mul(s.entry(3, k), c.entry(k, 1));
            acc = Coefficient::add(&acc, &signed(term, 3 - k));
        }
        assert!(acc.is_zero());
        assert!(verify_eq2(12).pass);
    }

    #[test]
    fn ex3_small_sweep() {
        assert!(verify_ex3(12).pass);
    }

    #[test]
    fn ex4_small_sweep() {
        // closed form at (2, 1) is -(1 + q); row 3, column 1 alternating
        // product collapses to zero
        let report = verify_ex4(8);
        assert!(report.pass, "{report:?}");
        let g = gaussian_triangle(2);
        let inv = invert(&g).unwrap();
        assert_eq!(*inv.entry(2, 1), QPoly::from_coeffs([-1i64, -1]));
    }

    #[test]
    fn ex5_small_sweep() {
        assert!(verify_ex5(8).pass);
    }

    #[test]
    fn ex6_connection_rows() {
        let connection = invert(&charlier_matrix(2)).unwrap();
        let rat = |v: i64| ExactRat::from(v);
        assert_eq!(
            connection.row(1),
            vec![rat(-1), rat(1)].as_slice()
        );
        assert_eq!(
            connection.row(2),
            vec![rat(0), rat(-1), rat(2)].as_slice()
        );
        assert!(verify_ex6(10).pass);
    }

    #[test]
    fn eq4_and_bridge_small() {
        assert!(verify_eq4(10).pass);
        assert!(verify_bridge(10).pass);
    }

    #[test]
    fn report_flag_matches_counterexamples() {
        let ok = VerificationReport::new("x", 3, vec![]);
        assert!(ok.pass);
        let bad = VerificationReport::new(
            "x",
            3,
            vec![Counterexample {
                n: 1,
                l: 0,
                value: "7".into(),
            }],
        );
        assert!(!bad.pass);
    }

    #[test]
    fn report_json_round_trip() {
        let report = verify_eq1(4);
        let v = report.to_json();
        assert_eq!(v["identity"], "eq1");
        assert_eq!(v["maxRow"], 4);
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn suite_dispatch() {
        let all = run_suite(Suite::All, 4);
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|r| r.pass));
        assert_eq!("bridge".parse::<Suite>(), Ok(Suite::Bridge));
        assert!("nope".parse::<Suite>().is_err());
    }
}
