use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::det::{det_sequence, FamilySpec};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, MatrixSpec};
use crate::poly::UniPolynomial;
use crate::scalar::{binom_int, Scalar};
use crate::seq::SequenceSpec;

/// A detected linear recursion w_n = sum_{i=1..d} D_i w_{n-i*step}, asserted
/// for every supplied index >= valid_from (1-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub d: usize,
    pub coeffs: Vec<Scalar>,
    pub step: usize,
    pub valid_from: usize,
    pub verified_extra: usize,
}

impl RecursionReport {
    /// Monic characteristic polynomial z^d - sum D_i z^{d-i}.
    pub fn char_poly(&self) -> UniPolynomial {
        let d = self.d;
        let mut coeffs = vec![Scalar::zero(); d + 1];
        coeffs[d] = Scalar::one();
        for (i, di) in self.coeffs.iter().enumerate() {
            coeffs[d - (i + 1)] = -di;
        }
        UniPolynomial::from_coeffs(coeffs)
    }
}

/// (d+1) x (d+1) Hankel matrix H[r][c] = w_{r+c+1}, with w 1-based.
pub fn hankel(w: &[Scalar], d: usize) -> Result<DenseMatrix> {
    if w.len() < 2 * d + 1 {
        return Err(Error::InsufficientTerms {
            needed: 2 * d + 1,
            got: w.len(),
        });
    }
    Ok(DenseMatrix::from_fn(d + 1, |r, c| w[r + c].clone()))
}

enum Kernel {
    /// Hankel matrix nonsingular.
    None,
    /// Every kernel vector has last coordinate 0.
    Degenerate,
    /// Recursion coefficients D_1..D_d read off the canonical kernel vector.
    Coeffs(Vec<Scalar>),
}

/// Gauss-Jordan nullspace probe. The canonical kernel vector fixes the last
/// coordinate to -1 and zeroes every other free coordinate, matching the
/// shape L = (D_d, ..., D_1, -1).
#[allow(clippy::needless_range_loop)]
fn kernel_coeffs(h: &DenseMatrix) -> Kernel {
    let k = h.order();
    let mut rows = h.to_rows();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..k).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for j in c..k {
            rows[r][j] = &rows[r][j] / &inv;
        }
        for i in 0..k {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..k {
                    rows[i][j] = &rows[i][j] - &(&f * &rows[r][j]);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == k {
            break;
        }
    }
    if r == k {
        return Kernel::None;
    }
    if pivots.iter().any(|&(_, c)| c == k - 1) {
        return Kernel::Degenerate;
    }
    let d = k - 1;
    let mut x = vec![Scalar::zero(); k];
    for &(pr, c) in &pivots {
        x[c] = rows[pr][k - 1].clone();
    }
    Kernel::Coeffs((1..=d).map(|i| x[d - i].clone()).collect())
}

/// Find the minimal-order recursion with the given step. The Hankel probe
/// runs on the trailing window of each residue class mod step (classes that
/// are identically zero carry no information and are skipped); candidate
/// coefficients must agree across classes and must hold on a suffix of the
/// whole sequence with at least min_verify checked terms per class beyond
/// those the kernel itself asserts.
pub fn detect(
    w: &[Scalar],
    step: usize,
    d_max: usize,
    min_verify: usize,
) -> Result<RecursionReport> {
    if step == 0 || d_max == 0 {
        return Err(Error::MalformedSpec(
            "step and d_max must be positive".into(),
        ));
    }
    let needed = step * (2 * d_max + 1) + min_verify * step;
    if w.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: w.len(),
        });
    }

    let classes: Vec<Vec<Scalar>> = (0..step)
        .map(|r| w.iter().skip(r).step_by(step).cloned().collect())
        .collect();
    let live: Vec<usize> = (0..step)
        .filter(|&r| classes[r].iter().any(|v| !v.is_zero()))
        .collect();

    if live.is_empty() {
        // identically zero sequence: w_n = 0 * w_{n-step}
        let checked = count_checked(w.len(), step, 1, step + 1);
        let extra = classes
            .iter()
            .enumerate()
            .map(|(r, _)| checked[r].saturating_sub(2))
            .min()
            .unwrap_or(0);
        return Ok(RecursionReport {
            d: 1,
            coeffs: vec![Scalar::zero()],
            step,
            valid_from: step + 1,
            verified_extra: extra,
        });
    }

    let mut degenerate: Option<usize> = None;
    'escalate: for d in 1..=d_max {
        let mut coeffs: Option<Vec<Scalar>> = None;
        for &r in &live {
            let class = &classes[r];
            if class.len() < 2 * d + 1 {
                continue 'escalate;
            }
            let window = &class[class.len() - (2 * d + 1)..];
            let h = hankel(window, d)?;
            match kernel_coeffs(&h) {
                Kernel::None => continue 'escalate,
                Kernel::Degenerate => {
                    degenerate.get_or_insert(d);
                    continue 'escalate;
                }
                Kernel::Coeffs(c) => match &coeffs {
                    None => coeffs = Some(c),
                    Some(prev) => {
                        if *prev != c {
                            continue 'escalate;
                        }
                    }
                },
            }
        }
        let coeffs = coeffs.expect("live classes produce coefficients");

        let first_checkable = d * step + 1;
        let mut last_fail = None;
        for n in first_checkable..=w.len() {
            if !recursion_holds_at(w, &coeffs, step, n) {
                last_fail = Some(n);
            }
        }
        let valid_from = last_fail.map_or(first_checkable, |n| n + 1);

        let checked = count_checked(w.len(), step, d, valid_from);
        let extra = live
            .iter()
            .map(|&r| checked[r].saturating_sub(d + 1))
            .min()
            .unwrap_or(0);
        if extra < min_verify {
            continue 'escalate;
        }
        return Ok(RecursionReport {
            d,
            coeffs,
            step,
            valid_from,
            verified_extra: extra,
        });
    }
    Err(match degenerate {
        Some(d) => Error::DegenerateKernel { d },
        None => Error::NoRecursionFound { d_max },
    })
}

/// Per residue class, how many indices n with valid_from <= n <= len and
/// n >= d*step + 1 fall in that class (1-based n; class of n is (n-1) % step).
fn count_checked(len: usize, step: usize, d: usize, valid_from: usize) -> Vec<usize> {
    let start = valid_from.max(d * step + 1);
    let mut counts = vec![0usize; step];
    for n in start..=len {
        counts[(n - 1) % step] += 1;
    }
    counts
}

fn recursion_holds_at(w: &[Scalar], coeffs: &[Scalar], step: usize, n: usize) -> bool {
    let mut rhs = Scalar::zero();
    for (i, di) in coeffs.iter().enumerate() {
        rhs = rhs + di * &w[n - 1 - (i + 1) * step];
    }
    w[n - 1] == rhs
}

/// True iff the report's recursion holds at every checkable index of w at or
/// past valid_from.
pub fn verify(w: &[Scalar], report: &RecursionReport) -> bool {
    let start = report.valid_from.max(report.d * report.step + 1);
    (start..=w.len()).all(|n| recursion_holds_at(w, &report.coeffs, report.step, n))
}

/// Order-2 recursion coefficients for determinants of the generalized Pascal
/// triangle whose first column and row each satisfy an order-2 linear
/// recursion: alpha = (g0, a1, ...) with alpha_n = A1 alpha_{n-1} + A2 alpha_{n-2},
/// beta likewise with B1, B2.
#[allow(clippy::too_many_arguments)]
pub fn theorem31_coeffs(
    g0: &Scalar,
    a1: &Scalar,
    b1: &Scalar,
    aa1: &Scalar,
    aa2: &Scalar,
    bb1: &Scalar,
    bb2: &Scalar,
) -> (Scalar, Scalar) {
    let two = Scalar::from(2);
    let one = Scalar::one();
    let inner = aa1 * bb2 + aa2 * bb1 - (aa2 + bb2) + aa2 * bb2;
    let d1 = -(aa1 * b1 + bb1 * a1 - &two * &(a1 + b1) + g0 * &inner);
    let left = aa2 * g0 + a1 + &(&(&one - aa1) - aa2) * b1;
    let right = bb2 * g0 + b1 + &(&(&one - bb1) - bb2) * a1;
    (d1, -(left * right))
}

/// Palindromic-coefficient check in squared form: D_{d-i}^2 = q^{d-2i} D_i^2
/// for 0 <= 2i <= d, with D_0 = -1. Squaring avoids q^{1/2} when d-2i is odd.
pub fn symmetry_check(report: &RecursionReport, q: &Scalar) -> bool {
    let d = report.d;
    let coeff = |i: usize| -> Scalar {
        if i == 0 {
            -Scalar::one()
        } else {
            report.coeffs[i - 1].clone()
        }
    };
    for i in 0..=d / 2 {
        let lhs = coeff(d - i);
        let lhs = &lhs * &lhs;
        let di = coeff(i);
        let rhs = q.pow((d - 2 * i) as i64) * &(&di * &di);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Expected generic recursion order C(a+b-2, a-1) for column/row recursions
/// of orders a and b.
pub fn generic_order(a: usize, b: usize) -> usize {
    binom_int((a + b - 2) as i64, (a - 1) as i64)
        .to_usize()
        .expect("generic order fits usize")
}

/// Conjectured recursion order (3^{a-1} + 1) / 2 in the symmetric case.
pub fn symmetric_order_guess(a: usize) -> usize {
    3usize.pow((a - 1) as u32).div_ceil(2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericOrderAnnotation {
    pub a: usize,
    pub b: usize,
    pub generic_order: usize,
    pub matches_generic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric_expected: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_symmetric: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarnessOutcome {
    pub report: RecursionReport,
    pub annotation: GenericOrderAnnotation,
}

/// Three-step procedure for a generalized Pascal triangle whose first column
/// and row satisfy linear recursions: compute determinants up to n_budget,
/// probe Hankel kernels escalating the order up to d_guess, verify the tail,
/// and annotate the detected order against the generic and symmetric
/// predictions. NoRecursionFound marks an instance the budget cannot settle.
pub fn conjecture33_harness(
    alpha: &SequenceSpec,
    beta: &SequenceSpec,
    d_guess: usize,
    n_budget: usize,
) -> Result<HarnessOutcome> {
    let (SequenceSpec::LinearRecurrence { coeffs: ca, initial: ia },
         SequenceSpec::LinearRecurrence { coeffs: cb, initial: ib }) = (alpha, beta)
    else {
        return Err(Error::MalformedSpec(
            "harness requires linear_recurrence sequences".into(),
        ));
    };
    if ia.first() != ib.first() {
        return Err(Error::MalformedSpec(
            "column and row sequences must share their first term".into(),
        ));
    }
    let a = ca.len();
    let b = cb.len();
    let family = FamilySpec::Matrix(MatrixSpec::GeneralizedPascal {
        alpha: alpha.clone(),
        beta: beta.clone(),
    });
    let w = det_sequence(&family, n_budget)?.dets();
    let report = detect(&w, 1, d_guess, 4)?;
    let generic = generic_order(a, b);
    let symmetric_expected = (alpha == beta).then(|| symmetric_order_guess(a));
    let annotation = GenericOrderAnnotation {
        a,
        b,
        generic_order: generic,
        matches_generic: report.d == generic,
        symmetric_expected,
        matches_symmetric: symmetric_expected.map(|e| report.d == e),
    };
    Ok(HarnessOutcome { report, annotation })
}
