use num_traits::{One, Zero};

use crate::det::{det_cofactor_generic, det_sequence, FamilySpec};
use crate::error::{Error, Result};
use crate::matrix::{BandedPeriodicSpec, DenseMatrix, MatrixSpec};
use crate::poly::UniPolynomial;
use crate::recurrence::{detect, RecursionReport};
use crate::scalar::{binom_int, Scalar};
use crate::seq::SequenceSpec;

/// Transfer matrix for a constant pentadiagonal band (a, b, c, d, e) on
/// offsets -2..=2. Determinants of leading principal minors propagate as a
/// vector of 2x2 minors multiplied by this 6x6 matrix, so every eigenvalue of
/// a determinant recursion divides its characteristic polynomial.
pub fn transfer_matrix_22(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
) -> DenseMatrix {
    let z = Scalar::zero;
    DenseMatrix::from_rows(vec![
        vec![c.clone(), -b, a.clone(), z(), z(), z()],
        vec![d.clone(), z(), z(), -b, a.clone(), z()],
        vec![z(), d.clone(), z(), -c, z(), a.clone()],
        vec![e.clone(), z(), z(), z(), z(), z()],
        vec![z(), e.clone(), z(), z(), z(), z()],
        vec![z(), z(), z(), e.clone(), z(), z()],
    ])
}

/// Upper bound C(s+t, s) on the order of the determinant recursion of a
/// banded matrix with s subdiagonals and t superdiagonals.
pub fn recursion_order_bound(s: usize, t: usize) -> usize {
    let b = binom_int((s + t) as i64, s as i64);
    usize::try_from(&b).expect("binomial bound fits in usize")
}

/// Compute determinants of the banded family up to n_budget and search for a
/// step-p linear recursion of order at most C(s+t, s), demanding at least
/// five verified spare terms per residue class.
pub fn detect_banded_recursion(
    spec: &BandedPeriodicSpec,
    n_budget: usize,
) -> Result<RecursionReport> {
    let bound = recursion_order_bound(spec.s, spec.t);
    let seq = det_sequence(&FamilySpec::Banded(spec.clone()), n_budget)?;
    detect(&seq.dets(), spec.p, bound, 5)
}

/// Same search for the diagonal construction: the diagonal must be declared
/// periodic, and the detected recursion steps by its period. The order cap is
/// taken as large as the determinant budget supports, at most 8.
pub fn detect_diagonal_recursion(
    gamma: &SequenceSpec,
    u1: &Scalar,
    u2: &Scalar,
    l1: &Scalar,
    l2: &Scalar,
    n_budget: usize,
) -> Result<RecursionReport> {
    let SequenceSpec::Periodic { pattern } = gamma else {
        return Err(Error::MalformedSpec(
            "diagonal recursion detection needs a periodic diagonal".into(),
        ));
    };
    let p = pattern.len();
    if p == 0 {
        return Err(Error::MalformedSpec("diagonal period must be nonempty".into()));
    }
    let spec = MatrixSpec::DiagonalConstruction {
        gamma: gamma.clone(),
        u1: u1.clone(),
        u2: u2.clone(),
        l1: l1.clone(),
        l2: l2.clone(),
    };
    let seq = det_sequence(&FamilySpec::Matrix(spec), n_budget)?;
    let min_verify = 5;
    let d_max = ((n_budget / p).saturating_sub(1 + min_verify) / 2).clamp(1, 8);
    detect(&seq.dets(), p, d_max, min_verify)
}

/// Characteristic polynomial det(z I - M) via cofactor expansion over
/// polynomial entries; orders above 8 are refused.
pub fn char_poly(m: &DenseMatrix) -> Result<UniPolynomial> {
    let n = m.order();
    if n == 0 {
        return Ok(UniPolynomial::one());
    }
    if n > 8 {
        return Err(Error::OrderTooLarge { order: n, max: 8 });
    }
    let zm = DenseMatrix::from_fn(n, |i, j| {
        let c = -&m[(i, j)];
        if i == j {
            UniPolynomial::from_coeffs(vec![c, Scalar::one()])
        } else {
            UniPolynomial::constant(c)
        }
    });
    Ok(det_cofactor_generic(&zm))
}
