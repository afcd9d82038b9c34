//! Exact-arithmetic workbench for combinatorial triangles.
//!
//! The crate generates seven classical triangle families (binomial,
//! Stirling of both kinds, Gaussian binomial, Catalan/ballot, Charlier
//! connection, fibonomial), inverts any lower-triangular array exactly
//! over its coefficient domain, verifies the classical orthogonality and
//! closed-form inverse identities, models the Fibonacci cobweb poset's
//! reduced incidence algebra with its level-weighted convolution, and runs
//! a conjecture-mining pipeline (normalization, diagonal extraction, exact
//! recurrence fitting, OEIS lookup with an offline cache) against computed
//! inverses.
//!
//! Module map:
//!
//! * [`domain`] — exact coefficient domains (integers, rationals, ℤ[q])
//!   under one [`Coefficient`] contract.
//! * [`seq`] — Fibonacci numbers, factorials, F-factorials, q-integers,
//!   q-factorials, all memoized.
//! * [`triangle`] — the shared immutable [`Triangle`] carrier and its
//!   JSON/CSV/LaTeX encodings.
//! * [`families`] — the seven generators.
//! * [`inversion`] — the single generic inversion routine.
//! * [`basis`] — monomial/falling/rising/Charlier basis conversions.
//! * [`verify`] — exact identity verifiers producing structured reports.
//! * [`cobweb`] — the cobweb poset and its weighted incidence algebra.
//! * [`discovery`] — the mining pipeline.
//! * [`oeis`] — OEIS search client with cache and offline mode.

pub mod basis;
pub mod cobweb;
pub mod discovery;
pub mod domain;
pub mod families;
pub mod inversion;
pub mod oeis;
pub mod seq;
pub mod triangle;
pub mod verify;

pub use basis::{convert_basis, Basis, BasisPolynomial};
pub use cobweb::{
    bridge_check, convolve, fibonomial_function, precedes, star_inverse, weighted_identity,
    weighted_inverse, CobwebVertex, ReducedIncidenceFunction, SegmentType,
};
pub use discovery::{
    diagonal_sequences, discovery_report, fit_linear_recurrence, normalize_by,
    DiagonalSequence, DiscoveryOptions, DiscoveryReport, OeisMode, RecurrenceFit,
    RecurrenceSearch,
};
pub use domain::{
    qpoly_eval, Coefficient, DomainTag, ExactDivError, ExactInt, ExactRat, QPoly,
};
pub use families::{
    binomial_triangle, catalan_triangle, charlier_matrix, fibonomial_triangle,
    gaussian_triangle, stirling1_unsigned_triangle, stirling2_triangle, Family,
};
pub use inversion::{invert, invert_integer_promoting, IntegerInverse, InversionError};
pub use oeis::{OeisClient, OeisLookup, OeisMatch, OeisStatus};
pub use seq::{
    binomial, factorial, fib_factorial, fibonacci, q_factorial, q_integer, SequenceCache,
};
pub use triangle::{to_rational, AnyTriangle, Triangle, TriangleError};
pub use verify::{run_suite, Suite, VerificationReport};
