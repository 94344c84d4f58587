//! Exact linear algebra around generalized Pascal triangles: matrix builders
//! driven by declarative specs, determinant engines over arbitrary-precision
//! rationals, linear-recursion detection for determinant sequences, and
//! closed-form cross-checks.

pub mod banded;
pub mod det;
pub mod error;
pub mod matrix;
pub mod oracles;
pub mod poly;
pub mod recurrence;
pub mod scalar;
pub mod seq;
pub mod trees;

pub use banded::{
    char_poly, detect_banded_recursion, detect_diagonal_recursion, recursion_order_bound,
    transfer_matrix_22,
};
pub use det::{
    det, det_condensation, det_oracle_cofactor, det_sequence, rank, sqrt_det_antisymmetric,
    DetSequence, FamilySpec,
};
pub use error::{Error, Result};
pub use matrix::{
    antisymmetric_pascal, build, build_banded, symplectic_unit_pascal, BandedPeriodicSpec,
    DenseMatrix, MatrixSpec,
};
pub use oracles::{
    oracle_det, verify_identity, FirstFailure, IdentityReport, IdentityTag, OracleFamily,
};
pub use recurrence::{
    conjecture33_harness, detect, generic_order, hankel, symmetric_order_guess, symmetry_check,
    theorem31_coeffs, verify, HarnessOutcome, RecursionReport,
};
pub use poly::UniPolynomial;
pub use scalar::{binomial, integer_sqrt_exact, Convention, Int, Scalar};
pub use seq::{
    alternate_signs, duplicate_terms, generate, interleave_even, NamedSequence, SequenceSpec,
};
pub use trees::{enumerate_even_tree, next_even_beta, sympletric_extensions, EvenTreePath};
