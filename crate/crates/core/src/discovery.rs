//! Conjecture-mining pipeline: normalize a computed inverse against a
//! reference family, classify the zero/sign pattern per diagonal, extract
//! diagonal sequences, fit exact linear recurrences, and optionally look
//! the sequences up in the OEIS.
//!
//! The pipeline never asserts a discovered pattern as proven; every claim
//! in the report is scoped to "holds for all checked rows".

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cobweb;
use crate::domain::{Coefficient, DomainTag, ExactRat};
use crate::families::{generate, Family};
use crate::inversion::{invert, invert_integer_promoting, IntegerInverse};
use crate::oeis::{OeisClient, OeisError, OeisLookup};
use crate::seq::fibonacci;
use crate::triangle::{to_rational, AnyTriangle, Triangle, TriangleError};

#[derive(Debug, Error)]
pub enum DiscoveryError {
    #[error("reference family {reference} is incompatible with {family}: {detail}")]
    IncompatibleReference {
        family: Family,
        reference: Family,
        detail: String,
    },
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Inversion(#[from] crate::inversion::InversionError),
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SkipReason {
    ZeroReference,
    NonExact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub n: usize,
    pub k: usize,
    pub reason: SkipReason,
}

/// Entrywise exact quotients B(n, k)/R(n, k); positions where R = 0 or the
/// division is not exact are reported, never approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult<T> {
    offset: usize,
    quotients: Vec<Vec<Option<T>>>,
    pub skipped: Vec<SkippedCell>,
}

impl<T: Coefficient> NormalizationResult<T> {
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn max_row(&self) -> Option<usize> {
        if self.quotients.is_empty() {
            None
        } else {
            Some(self.offset + self.quotients.len() - 1)
        }
    }

    pub fn quotient(&self, n: usize, k: usize) -> Option<&T> {
        self.quotients[n - self.offset][k - self.offset].as_ref()
    }

    /// Cells (n, k, quotient) of diagonal d in increasing k.
    pub fn diagonal(&self, d: usize) -> Vec<(usize, usize, Option<&T>)> {
        let mut out = Vec::new();
        for (i, row) in self.quotients.iter().enumerate() {
            let n = self.offset + i;
            if n >= self.offset + d {
                let k = n - d;
                out.push((n, k, row[k - self.offset].as_ref()));
            }
        }
        out
    }
}

/// Divides `b` by `reference` entry by entry. Both triangles must share
/// the same index range.
pub fn normalize_by<T: Coefficient>(
    b: &Triangle<T>,
    reference: &Triangle<T>,
) -> Result<NormalizationResult<T>, TriangleError> {
    if b.offset() != reference.offset() {
        return Err(TriangleError::OffsetMismatch {
            left: b.offset(),
            right: reference.offset(),
        });
    }
    if b.row_indices().len() != reference.row_indices().len() {
        return Err(TriangleError::SizeMismatch {
            left: b.row_indices().len(),
            right: reference.row_indices().len(),
        });
    }
    let offset = b.offset();
    let mut quotients = Vec::new();
    let mut skipped = Vec::new();
    for n in b.row_indices() {
        let mut row = Vec::with_capacity(n + 1 - offset);
        for k in offset..=n {
            let r = reference.entry(n, k);
            if r.is_zero() {
                skipped.push(SkippedCell {
                    n,
                    k,
                    reason: SkipReason::ZeroReference,
                });
                row.push(None);
                continue;
            }
            match b.entry(n, k).exact_div(r) {
                Ok(q) => row.push(Some(q)),
                Err(_) => {
                    skipped.push(SkippedCell {
                        n,
                        k,
                        reason: SkipReason::NonExact,
                    });
                    row.push(None);
                }
            }
        }
        quotients.push(row);
    }
    Ok(NormalizationResult {
        offset,
        quotients,
        skipped,
    })
}

// ---------------------------------------------------------------------------
// Quotient pattern classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagonalPattern {
    pub offset: usize,
    /// "allZero" | "constant" | "mixed" | "incomplete"
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_exponent: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LawWitness {
    /// "zeroDiagonal" | "nonUnitQuotient" | "nonConstantDiagonal" | "skippedCell"
    pub kind: String,
    pub offset: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

/// Verdict on the first-choice hypothesis "inverse = sign · q-power ·
/// reference entry": either every diagonal carries a constant unit-monomial
/// quotient, or witnesses explain why no such law holds at the checked
/// size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientLaw {
    pub holds: bool,
    /// "(-1)^d" | "+1" | "-1" | "perDiagonal" (when holds)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_exponents: Option<Vec<usize>>,
    /// True when the q-exponent on diagonal d equals C(d, 2) throughout.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_exponent_is_binom_d_2: Option<bool>,
    pub witnesses: Vec<LawWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalizationSummary {
    pub reference: String,
    pub skipped: Vec<SkippedCell>,
    pub per_diagonal: Vec<DiagonalPattern>,
    pub law: QuotientLaw,
}

fn classify_quotients<T: Coefficient>(
    norm: &NormalizationResult<T>,
    reference: &str,
) -> NormalizationSummary {
    let span = match norm.max_row() {
        Some(max) => max - norm.offset(),
        None => {
            return NormalizationSummary {
                reference: reference.to_string(),
                skipped: norm.skipped.clone(),
                per_diagonal: Vec::new(),
                law: QuotientLaw {
                    holds: true,
                    sign_pattern: None,
                    q_exponents: None,
                    q_exponent_is_binom_d_2: None,
                    witnesses: Vec::new(),
                },
            }
        }
    };

    let mut per_diagonal = Vec::new();
    let mut witnesses = Vec::new();
    let mut constants: Vec<Option<(bool, usize)>> = Vec::new();
    for d in 0..=span {
        let cells = norm.diagonal(d);
        let mut pattern = DiagonalPattern {
            offset: d,
            class: String::new(),
            value: None,
            sign: None,
            q_exponent: None,
        };
        if let Some((n, k, _)) = cells.iter().find(|(_, _, q)| q.is_none()) {
            pattern.class = "incomplete".to_string();
            witnesses.push(LawWitness {
                kind: "skippedCell".to_string(),
                offset: d,
                n: Some(*n),
                k: Some(*k),
                value: None,
            });
            constants.push(None);
            per_diagonal.push(pattern);
            continue;
        }
        let values: Vec<&T> = cells.iter().map(|(_, _, q)| q.unwrap()).collect();
        if values.iter().all(|v| v.is_zero()) {
            pattern.class = "allZero".to_string();
            witnesses.push(LawWitness {
                kind: "zeroDiagonal".to_string(),
                offset: d,
                n: None,
                k: None,
                value: None,
            });
            constants.push(None);
        } else if values.windows(2).all(|w| w[0] == w[1]) {
            pattern.class = "constant".to_string();
            pattern.value = Some(values[0].to_text());
            match values[0].unit_monomial() {
                Some((negative, exponent)) => {
                    pattern.sign = Some(if negative { -1 } else { 1 });
                    pattern.q_exponent = Some(exponent);
                    constants.push(Some((negative, exponent)));
                }
                None => {
                    let (n, k, _) = cells[0];
                    witnesses.push(LawWitness {
                        kind: "nonUnitQuotient".to_string(),
                        offset: d,
                        n: Some(n),
                        k: Some(k),
                        value: Some(values[0].to_text()),
                    });
                    constants.push(None);
                }
            }
        } else {
            pattern.class = "mixed".to_string();
            let (n, k, q) = cells
                .iter()
                .find(|(_, _, q)| q != &cells[0].2)
                .expect("mixed diagonal has a differing cell");
            witnesses.push(LawWitness {
                kind: "nonConstantDiagonal".to_string(),
                offset: d,
                n: Some(*n),
                k: Some(*k),
                value: q.map(|v| v.to_text()),
            });
            constants.push(None);
        }
        per_diagonal.push(pattern);
    }

    let holds = witnesses.is_empty();
    let (sign_pattern, q_exponents, q_exponent_is_binom_d_2) = if holds {
        let units: Vec<(bool, usize)> = constants.into_iter().flatten().collect();
        let sign = if units
            .iter()
            .enumerate()
            .all(|(d, (neg, _))| *neg == (d % 2 == 1))
        {
            "(-1)^d".to_string()
        } else if units.iter().all(|(neg, _)| !neg) {
            "+1".to_string()
        } else if units.iter().all(|(neg, _)| *neg) {
            "-1".to_string()
        } else {
            "perDiagonal".to_string()
        };
        let exponents: Vec<usize> = units.iter().map(|(_, e)| *e).collect();
        if T::TAG == DomainTag::QPoly {
            let is_binom = exponents
                .iter()
                .enumerate()
                .all(|(d, e)| *e == d * d.saturating_sub(1) / 2);
            (Some(sign), Some(exponents), Some(is_binom))
        } else {
            (Some(sign), None, None)
        }
    } else {
        (None, None, None)
    };

    NormalizationSummary {
        reference: reference.to_string(),
        skipped: norm.skipped.clone(),
        per_diagonal,
        law: QuotientLaw {
            holds,
            sign_pattern,
            q_exponents,
            q_exponent_is_binom_d_2,
            witnesses,
        },
    }
}

// ---------------------------------------------------------------------------
// Diagonal sequences and recurrence fitting
// ---------------------------------------------------------------------------

/// One diagonal of a triangle: entries T(k + d, k) for k = start.. in
/// increasing k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSequence {
    pub family: String,
    pub offset: usize,
    pub start: usize,
    pub entries: Vec<ExactRat>,
}

/// Extracts diagonals 0..=max_offset from a rational triangle.
pub fn diagonal_sequences(
    t: &Triangle<ExactRat>,
    max_offset: usize,
) -> Vec<DiagonalSequence> {
    let mut out = Vec::new();
    let Some(max_row) = t.max_row() else {
        return out;
    };
    for d in 0..=max_offset.min(max_row - t.offset()) {
        out.push(DiagonalSequence {
            family: t.family().to_string(),
            offset: d,
            start: t.offset(),
            entries: t.diagonal(d),
        });
    }
    out
}

/// An exact constant-coefficient linear recurrence
/// s(i) = Σ_{j=1..order} c_j · s(i - j), verified on the whole in-range
/// index interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub order: usize,
    pub coefficients: Vec<ExactRat>,
    pub verified_from: usize,
    pub verified_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceSearch {
    Fit(RecurrenceFit),
    NoFit,
    /// The sequence is too short to credibly test the requested order
    /// (an order-m fit needs at least 2m + 1 terms).
    InsufficientLength { needed: usize, have: usize },
}

/// Finds the smallest order ≤ max_order whose exact linear solve
/// reproduces every term; never returns an approximate fit.
pub fn fit_linear_recurrence(s: &[ExactRat], max_order: usize) -> RecurrenceSearch {
    assert!(max_order >= 1, "max_order must be at least 1");
    if s.len() < 3 {
        return RecurrenceSearch::InsufficientLength {
            needed: 3,
            have: s.len(),
        };
    }
    let max_credible = (s.len() - 1) / 2;
    for order in 1..=max_order.min(max_credible) {
        if let Some(coefficients) = solve_recurrence(s, order) {
            return RecurrenceSearch::Fit(RecurrenceFit {
                order,
                coefficients,
                verified_from: order,
                verified_to: s.len() - 1,
            });
        }
    }
    if max_credible < max_order {
        RecurrenceSearch::InsufficientLength {
            needed: 2 * max_order + 1,
            have: s.len(),
        }
    } else {
        RecurrenceSearch::NoFit
    }
}

/// Solves for c_1..c_order over all available equations and verifies the
/// reproduction of every in-range term. Returns `None` when the system is
/// inconsistent.
fn solve_recurrence(s: &[ExactRat], order: usize) -> Option<Vec<ExactRat>> {
    let rows = s.len() - order;
    let mut matrix: Vec<Vec<ExactRat>> = Vec::with_capacity(rows);
    let mut rhs: Vec<ExactRat> = Vec::with_capacity(rows);
    for r in 0..rows {
        let i = order + r;
        matrix.push((1..=order).map(|t| s[i - t].clone()).collect());
        rhs.push(s[i].clone());
    }
    let coefficients = solve_exact(matrix, rhs, order)?;
    // re-verify reproduction term by term
    for i in order..s.len() {
        let mut acc = <ExactRat as Coefficient>::zero();
        for (t, c) in coefficients.iter().enumerate() {
            acc = Coefficient::add(&acc, &Coefficient::mul(c, &s[i - 1 - t]));
        }
        if acc != s[i] {
            return None;
        }
    }
    Some(coefficients)
}

/// Gauss-Jordan elimination over exact rationals with a consistency
/// check; free variables are set to zero.
fn solve_exact(
    mut matrix: Vec<Vec<ExactRat>>,
    mut rhs: Vec<ExactRat>,
    unknowns: usize,
) -> Option<Vec<ExactRat>> {
    let rows = matrix.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(pivot) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        rhs.swap(rank, pivot);
        let inv = <ExactRat as Coefficient>::one()
            .exact_div(&matrix[rank][col])
            .expect("pivot is nonzero");
        for c in col..unknowns {
            matrix[rank][c] = Coefficient::mul(&matrix[rank][c], &inv);
        }
        rhs[rank] = Coefficient::mul(&rhs[rank], &inv);
        for r in 0..rows {
            if r == rank || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..unknowns {
                let delta = Coefficient::mul(&factor, &matrix[rank][c]);
                matrix[r][c] = Coefficient::sub(&matrix[r][c], &delta);
            }
            let delta = Coefficient::mul(&factor, &rhs[rank]);
            rhs[r] = Coefficient::sub(&rhs[r], &delta);
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // consistency: eliminated rows must have zero right-hand side
    for r in rank..rows {
        if !rhs[r].is_zero() {
            return None;
        }
    }
    let mut solution = vec![<ExactRat as Coefficient>::zero(); unknowns];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = rhs[*r].clone();
        }
    }
    Some(solution)
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

/// How the pipeline may reach the OEIS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OeisMode {
    Disabled,
    Offline { cache_dir: PathBuf },
    Online { cache_dir: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveryOptions {
    /// Normalization reference; defaults to the family itself.
    pub reference: Option<Family>,
    /// Largest recurrence order to try on each diagonal.
    pub max_order: usize,
    pub oeis: OeisMode,
}

impl Default for DiscoveryOptions {
    fn default() -> Self {
        DiscoveryOptions {
            reference: None,
            max_order: 6,
            oeis: OeisMode::Disabled,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum RecurrenceOutcome {
    #[serde(rename_all = "camelCase")]
    Fit {
        order: usize,
        coefficients: Vec<String>,
        verified_from: usize,
        verified_to: usize,
    },
    NoFit,
    #[serde(rename_all = "camelCase")]
    InsufficientLength { needed: usize, have: usize },
}

impl From<RecurrenceSearch> for RecurrenceOutcome {
    fn from(search: RecurrenceSearch) -> Self {
        match search {
            RecurrenceSearch::Fit(fit) => RecurrenceOutcome::Fit {
                order: fit.order,
                coefficients: fit.coefficients.iter().map(ExactRat::to_string).collect(),
                verified_from: fit.verified_from,
                verified_to: fit.verified_to,
            },
            RecurrenceSearch::NoFit => RecurrenceOutcome::NoFit,
            RecurrenceSearch::InsufficientLength { needed, have } => {
                RecurrenceOutcome::InsufficientLength { needed, have }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagonalReport {
    pub offset: usize,
    pub start: usize,
    pub entries: Vec<String>,
    pub recurrence: RecurrenceOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oeis: Option<OeisLookup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oeis_note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BridgeRow {
    pub k: usize,
    pub n: usize,
    pub weighted: String,
    pub matrix: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BridgeSummary {
    pub max_rank: usize,
    pub pass: bool,
    pub table: Vec<BridgeRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WarningKind {
    Network,
    Parse,
    Io,
    Policy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub kind: WarningKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscoveryReport {
    pub family: String,
    pub max_row: usize,
    pub inverse_domain: String,
    pub inverse: Value,
    pub normalization: NormalizationSummary,
    pub diagonals: Vec<DiagonalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeSummary>,
    pub warnings: Vec<Warning>,
}

impl DiscoveryReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn has_network_warning(&self) -> bool {
        self.warnings.iter().any(|w| w.kind == WarningKind::Network)
    }

    /// Human-readable rendering. Deterministic for a fixed report.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# Inverse mining report: {} (rows 0..={})\n\n",
            self.family, self.max_row
        ));
        out.push_str(&format!(
            "All statements below are observations that hold for all checked n <= {}; none is asserted as proven.\n\n",
            self.max_row
        ));
        out.push_str(&format!(
            "## Normalization against `{}`\n\n",
            self.normalization.reference
        ));
        let law = &self.normalization.law;
        if law.holds {
            let sign = law.sign_pattern.as_deref().unwrap_or("?");
            out.push_str(&format!(
                "Quotient inverse(n, k) / reference(n, k) is constant on every checked diagonal, with sign pattern `{sign}`"
            ));
            if let Some(exponents) = &law.q_exponents {
                out.push_str(&format!(", q-exponents {exponents:?}"));
                if law.q_exponent_is_binom_d_2 == Some(true) {
                    out.push_str(" (= C(d, 2) on every checked diagonal)");
                }
            }
            out.push_str(".\n\n");
        } else {
            out.push_str(
                "No sign-times-reference law holds at this size; witnesses:\n\n",
            );
            for w in &law.witnesses {
                match w.kind.as_str() {
                    "zeroDiagonal" => out.push_str(&format!(
                        "- diagonal d = {} is identically zero while the reference is not\n",
                        w.offset
                    )),
                    "nonUnitQuotient" => out.push_str(&format!(
                        "- entry ({}, {}) has quotient {} (not a signed unit)\n",
                        w.n.unwrap_or(0),
                        w.k.unwrap_or(0),
                        w.value.as_deref().unwrap_or("?")
                    )),
                    "nonConstantDiagonal" => out.push_str(&format!(
                        "- diagonal d = {} is not constant (first deviation at ({}, {}))\n",
                        w.offset,
                        w.n.unwrap_or(0),
                        w.k.unwrap_or(0)
                    )),
                    _ => out.push_str(&format!(
                        "- diagonal d = {} could not be normalized everywhere\n",
                        w.offset
                    )),
                }
            }
            out.push('\n');
        }
        out.push_str("| d | class | constant |\n|---|-------|----------|\n");
        for p in &self.normalization.per_diagonal {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                p.offset,
                p.class,
                p.value.as_deref().unwrap_or("")
            ));
        }
        out.push('\n');

        if !self.diagonals.is_empty() {
            out.push_str("## Diagonal sequences of the inverse\n\n");
            for d in &self.diagonals {
                out.push_str(&format!(
                    "### d = {} (entries B(k+{}, k), k >= {})\n\n",
                    d.offset, d.offset, d.start
                ));
                out.push_str(&format!("`[{}]`\n\n", d.entries.join(", ")));
                match &d.recurrence {
                    RecurrenceOutcome::Fit {
                        order,
                        coefficients,
                        verified_from,
                        verified_to,
                    } => out.push_str(&format!(
                        "Recurrence: order {order} with coefficients [{}], reproducing terms {verified_from}..={verified_to} exactly.\n\n",
                        coefficients.join(", ")
                    )),
                    RecurrenceOutcome::NoFit => {
                        out.push_str("Recurrence: none up to the tried order.\n\n")
                    }
                    RecurrenceOutcome::InsufficientLength { needed, have } => {
                        out.push_str(&format!(
                            "Recurrence: sequence too short to test ({have} terms, {needed} needed).\n\n"
                        ))
                    }
                }
                if let Some(oeis) = &d.oeis {
                    if oeis.matches.is_empty() {
                        out.push_str(&format!("OEIS: no matches ({:?}).\n\n", oeis.status));
                    } else {
                        let ids: Vec<&str> =
                            oeis.matches.iter().map(|m| m.id.as_str()).collect();
                        out.push_str(&format!("OEIS candidates: {}.\n\n", ids.join(", ")));
                    }
                } else if let Some(note) = &d.oeis_note {
                    out.push_str(&format!("OEIS: {note}.\n\n"));
                }
            }
        }

        if let Some(bridge) = &self.bridge {
            out.push_str("## Weighted-inverse bridge\n\n");
            out.push_str(&format!(
                "F_l * g(k, l) = matrix-inverse(l, k) {} for all 1 <= k <= l <= {}.\n\n",
                if bridge.pass { "holds" } else { "FAILS" },
                bridge.max_rank
            ));
        }

        if !self.warnings.is_empty() {
            out.push_str("## Warnings\n\n");
            for w in &self.warnings {
                out.push_str(&format!("- {:?}: {}\n", w.kind, w.message));
            }
            out.push('\n');
        }
        out
    }
}

/// Runs the full pipeline for one family.
pub fn discovery_report(
    family: Family,
    max_row: usize,
    options: &DiscoveryOptions,
) -> Result<DiscoveryReport, DiscoveryError> {
    let reference_family = options.reference.unwrap_or(family);
    if reference_family.domain() != family.domain()
        || reference_family.offset() != family.offset()
    {
        return Err(DiscoveryError::IncompatibleReference {
            family,
            reference: reference_family,
            detail: "reference must share the family's domain and index range".to_string(),
        });
    }

    let mut warnings = Vec::new();
    let triangle = generate(family, max_row);
    let reference = generate(reference_family, max_row);

    // Invert in the family's own domain, promoting integers if needed.
    let (inverse_any, inverse_rational): (AnyTriangle, Option<Triangle<ExactRat>>) =
        match &triangle {
            AnyTriangle::Integer(t) => match invert_integer_promoting(t)? {
                IntegerInverse::Integer(b) => {
                    let rational = to_rational(&b);
                    (AnyTriangle::Integer(b), Some(rational))
                }
                IntegerInverse::Rational(b) => (AnyTriangle::Rational(b.clone()), Some(b)),
            },
            AnyTriangle::Rational(t) => {
                let b = invert(t)?;
                (AnyTriangle::Rational(b.clone()), Some(b))
            }
            AnyTriangle::QPoly(t) => (AnyTriangle::QPoly(invert(t)?), None),
        };

    // Normalize against the reference in a common domain.
    let normalization = match (&inverse_any, &reference) {
        (AnyTriangle::Integer(b), AnyTriangle::Integer(r)) => {
            classify_quotients(&normalize_by(b, r)?, reference_family.name())
        }
        (AnyTriangle::Rational(b), AnyTriangle::Integer(r)) => {
            classify_quotients(&normalize_by(b, &to_rational(r))?, reference_family.name())
        }
        (AnyTriangle::Rational(b), AnyTriangle::Rational(r)) => {
            classify_quotients(&normalize_by(b, r)?, reference_family.name())
        }
        (AnyTriangle::QPoly(b), AnyTriangle::QPoly(r)) => {
            classify_quotients(&normalize_by(b, r)?, reference_family.name())
        }
        _ => unreachable!("reference domain checked above"),
    };

    // Diagonal sequences, recurrence fits, and optional OEIS lookups apply
    // to the scalar domains only.
    let mut diagonals = Vec::new();
    if let Some(b) = &inverse_rational {
        let client = match &options.oeis {
            OeisMode::Disabled => None,
            OeisMode::Offline { cache_dir } => Some(OeisClient::new(cache_dir, true)),
            OeisMode::Online { cache_dir } => Some(OeisClient::new(cache_dir, false)),
        };
        let span = b.max_row().map(|m| m - b.offset()).unwrap_or(0);
        for seq in diagonal_sequences(b, span) {
            let recurrence = fit_linear_recurrence(&seq.entries, options.max_order).into();
            let entries: Vec<String> =
                seq.entries.iter().map(ExactRat::to_string).collect();
            let (oeis, oeis_note) = match &client {
                None => (None, None),
                Some(client) => {
                    let integer_terms: Option<Vec<_>> =
                        seq.entries.iter().map(ExactRat::to_integer).collect();
                    match integer_terms {
                        None => (
                            None,
                            Some("non-integer entries; lookup skipped".to_string()),
                        ),
                        Some(terms) if terms.len() < 4 => (
                            None,
                            Some("fewer than 4 terms; lookup skipped".to_string()),
                        ),
                        Some(terms) => match client.lookup(&terms) {
                            Ok(lookup) => (Some(lookup), None),
                            Err(e) => {
                                let kind = match &e {
                                    OeisError::Network(_) => WarningKind::Network,
                                    OeisError::MalformedResponse(_) => WarningKind::Parse,
                                    OeisError::CacheIo { .. } => WarningKind::Io,
                                    OeisError::QueryTooShort(_) => WarningKind::Policy,
                                };
                                warnings.push(Warning {
                                    kind,
                                    message: format!(
                                        "diagonal d = {}: {}",
                                        seq.offset, e
                                    ),
                                });
                                (None, Some("lookup failed; see warnings".to_string()))
                            }
                        },
                    }
                }
            };
            diagonals.push(DiagonalReport {
                offset: seq.offset,
                start: seq.start,
                entries,
                recurrence,
                oeis,
                oeis_note,
            });
        }
    }

    // Bridge table connects the weighted-algebra inverse with the plain
    // matrix inverse; it is specific to the fibonomial family.
    let bridge = if family == Family::Fibonomial && max_row >= 1 {
        let f = cobweb::fibonomial_function(max_row);
        let g = cobweb::weighted_inverse(&f).expect("fibonomial diagonal is 1");
        let b = match &inverse_any {
            AnyTriangle::Integer(b) => b.clone(),
            _ => unreachable!("fibonomial inverse is integral"),
        };
        let mut table = Vec::new();
        let mut pass = true;
        for l in 1..=max_row {
            for k in 1..=l {
                let weighted =
                    Coefficient::mul(&ExactRat::from(fibonacci(l)), g.value(k, l));
                let matrix = ExactRat::from(b.entry(l, k).clone());
                if weighted != matrix {
                    pass = false;
                }
                table.push(BridgeRow {
                    k,
                    n: l,
                    weighted: weighted.to_string(),
                    matrix: matrix.to_string(),
                });
            }
        }
        Some(BridgeSummary {
            max_rank: max_row,
            pass,
            table,
        })
    } else {
        None
    };

    Ok(DiscoveryReport {
        family: family.name().to_string(),
        max_row,
        inverse_domain: inverse_any.domain().to_string(),
        inverse: inverse_any.to_json(),
        normalization,
        diagonals,
        bridge,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::ExactInt;
    use crate::families::fibonomial_triangle;

    fn rat(n: i64) -> ExactRat {
        ExactRat::from(n)
    }

    fn rats(vs: &[i64]) -> Vec<ExactRat> {
        vs.iter().copied().map(ExactRat::from).collect()
    }

    #[test]
    fn normalize_by_self_is_all_ones() {
        let t = fibonomial_triangle(6);
        let norm = normalize_by(&t, &t).unwrap();
        assert!(norm.skipped.is_empty());
        for n in 0..=6 {
            for k in 0..=n {
                assert!(norm.quotient(n, k).unwrap().is_one());
            }
        }
    }

    #[test]
    fn normalize_fibonomial_inverse_entries() {
        let t = fibonomial_triangle(5);
        let b = invert(&t).unwrap();
        let norm = normalize_by(&b, &t).unwrap();
        assert_eq!(norm.quotient(4, 1), Some(&ExactInt::from(1i64)));
        assert_eq!(norm.quotient(5, 0), Some(&ExactInt::from(-6i64)));
        assert_eq!(norm.quotient(3, 1), Some(&ExactInt::from(0i64)));
        // quotients multiply back exactly wherever recorded
        for n in 0..=5 {
            for k in 0..=n {
                if let Some(q) = norm.quotient(n, k) {
                    assert_eq!(Coefficient::mul(q, t.entry(n, k)), *b.entry(n, k));
                }
            }
        }
    }

    #[test]
    fn diagonal_sequences_of_fibonomial_inverse() {
        let b = to_rational(&invert(&fibonomial_triangle(5)).unwrap());
        let seqs = diagonal_sequences(&b, 5);
        assert_eq!(seqs.len(), 6);
        assert_eq!(seqs[0].entries, rats(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(seqs[1].entries, rats(&[-1, -1, -2, -3, -5]));
        assert_eq!(seqs[2].entries, rats(&[0, 0, 0, 0]));
    }

    #[test]
    fn recurrence_fitting_examples() {
        // Fibonacci: order 2, coefficients (1, 1)
        match fit_linear_recurrence(&rats(&[1, 1, 2, 3, 5, 8, 13]), 4) {
            RecurrenceSearch::Fit(fit) => {
                assert_eq!(fit.order, 2);
                assert_eq!(fit.coefficients, rats(&[1, 1]));
                assert_eq!((fit.verified_from, fit.verified_to), (2, 6));
            }
            other => panic!("expected fit, got {other:?}"),
        }
        // constant: order 1, coefficient (1)
        match fit_linear_recurrence(&rats(&[7, 7, 7, 7, 7]), 3) {
            RecurrenceSearch::Fit(fit) => {
                assert_eq!(fit.order, 1);
                assert_eq!(fit.coefficients, rats(&[1]));
            }
            other => panic!("expected fit, got {other:?}"),
        }
        // geometric: order 1, coefficient (2)
        match fit_linear_recurrence(&rats(&[1, 2, 4, 8, 16]), 3) {
            RecurrenceSearch::Fit(fit) => {
                assert_eq!(fit.order, 1);
                assert_eq!(fit.coefficients, rats(&[2]));
            }
            other => panic!("expected fit, got {other:?}"),
        }
    }

    #[test]
    fn recurrence_insufficient_and_no_fit() {
        assert_eq!(
            fit_linear_recurrence(&rats(&[1, 2]), 2),
            RecurrenceSearch::InsufficientLength { needed: 3, have: 2 }
        );
        // five terms allow credible order <= 2 only; asking for order 3
        // with no fit reports insufficiency rather than a hard no
        assert_eq!(
            fit_linear_recurrence(&rats(&[1, 2, 4, 9, 23]), 3),
            RecurrenceSearch::InsufficientLength { needed: 7, have: 5 }
        );
        // factorials satisfy no constant-coefficient linear recurrence of
        // small order
        assert_eq!(
            fit_linear_recurrence(&rats(&[1, 2, 6, 24, 120, 720, 5040, 40320, 362880]), 2),
            RecurrenceSearch::NoFit
        );
    }

    #[test]
    fn binomial_report_recovers_alternating_sign() {
        let report =
            discovery_report(Family::Binomial, 8, &DiscoveryOptions::default()).unwrap();
        assert!(report.normalization.law.holds);
        assert_eq!(
            report.normalization.law.sign_pattern.as_deref(),
            Some("(-1)^d")
        );
        assert!(report.warnings.is_empty());
        assert!(report.bridge.is_none());
    }

    #[test]
    fn gaussian_report_recovers_sign_and_exponent() {
        let report =
            discovery_report(Family::Gaussian, 8, &DiscoveryOptions::default()).unwrap();
        let law = &report.normalization.law;
        assert!(law.holds);
        assert_eq!(law.sign_pattern.as_deref(), Some("(-1)^d"));
        assert_eq!(
            law.q_exponents.as_deref(),
            Some(&[0, 0, 1, 3, 6, 10, 15, 21, 28][..])
        );
        assert_eq!(law.q_exponent_is_binom_d_2, Some(true));
        // qpoly inverse has no scalar diagonal stage
        assert!(report.diagonals.is_empty());
    }

    #[test]
    fn fibonomial_report_flags_the_broken_law() {
        let report =
            discovery_report(Family::Fibonomial, 5, &DiscoveryOptions::default()).unwrap();
        let law = &report.normalization.law;
        assert!(!law.holds);
        // d = 2 is all-zero through row 5
        assert_eq!(report.normalization.per_diagonal[2].class, "allZero");
        assert!(law
            .witnesses
            .iter()
            .any(|w| w.kind == "zeroDiagonal" && w.offset == 2));
        // B(5, 0) = -6 violates any sign-times-fibonomial law
        assert!(law.witnesses.iter().any(|w| {
            w.kind == "nonUnitQuotient"
                && w.n == Some(5)
                && w.k == Some(0)
                && w.value.as_deref() == Some("-6")
        }));
        // d = 1 diagonal fits the order-2 Fibonacci recurrence
        match &report.diagonals[1].recurrence {
            RecurrenceOutcome::Fit {
                order,
                coefficients,
                ..
            } => {
                assert_eq!(*order, 2);
                assert_eq!(coefficients, &vec!["1".to_string(), "1".to_string()]);
            }
            other => panic!("expected order-2 fit, got {other:?}"),
        }
        let bridge = report.bridge.as_ref().expect("fibonomial bridge");
        assert!(bridge.pass);
        assert_eq!(bridge.table.len(), 15);
    }

    #[test]
    fn report_json_round_trip_and_determinism() {
        let report =
            discovery_report(Family::Fibonomial, 5, &DiscoveryOptions::default()).unwrap();
        let json = serde_json::to_string_pretty(&report.to_json()).unwrap();
        let again =
            discovery_report(Family::Fibonomial, 5, &DiscoveryOptions::default()).unwrap();
        assert_eq!(
            json,
            serde_json::to_string_pretty(&again.to_json()).unwrap()
        );
        let back: DiscoveryReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(!report.to_markdown().is_empty());
    }

    #[test]
    fn incompatible_reference_rejected() {
        let options = DiscoveryOptions {
            reference: Some(Family::Gaussian),
            ..DiscoveryOptions::default()
        };
        assert!(matches!(
            discovery_report(Family::Binomial, 4, &options),
            Err(DiscoveryError::IncompatibleReference { .. })
        ));
    }

    #[test]
    fn stirling_normalization_skips_zero_reference_cells() {
        let report =
            discovery_report(Family::Stirling2, 6, &DiscoveryOptions::default()).unwrap();
        assert!(!report.normalization.skipped.is_empty());
        assert!(report
            .normalization
            .skipped
            .iter()
            .all(|s| s.reason == SkipReason::ZeroReference));
        assert!(!report.normalization.law.holds);
    }

    #[test]
    fn quotient_law_empty_when_triangle_empty() {
        let report =
            discovery_report(Family::Catalan, 0, &DiscoveryOptions::default()).unwrap();
        assert!(report.normalization.per_diagonal.is_empty());
        assert!(report.diagonals.is_empty());
    }
}
