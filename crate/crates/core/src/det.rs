use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::mem;
use std::ops::{Mul, Sub};

use crate::error::{Error, Result};
use crate::matrix::{build, build_banded, BandedPeriodicSpec, DenseMatrix, MatrixSpec};
use crate::scalar::{integer_sqrt_exact, Int, Scalar};

/// Either matrix-family spec; JSON stays the inner spec's encoding.
/// Specs are transient configuration, so variant size is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Matrix(MatrixSpec),
    Banded(BandedPeriodicSpec),
}

impl FamilySpec {
    pub fn build(&self, n: usize) -> Result<DenseMatrix> {
        match self {
            FamilySpec::Matrix(spec) => build(spec, n),
            FamilySpec::Banded(spec) => build_banded(spec, n),
        }
    }
}

impl From<MatrixSpec> for FamilySpec {
    fn from(spec: MatrixSpec) -> Self {
        FamilySpec::Matrix(spec)
    }
}

impl From<BandedPeriodicSpec> for FamilySpec {
    fn from(spec: BandedPeriodicSpec) -> Self {
        FamilySpec::Banded(spec)
    }
}

/// Determinants of one family at orders 1..=n_max.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetSequence {
    pub family: FamilySpec,
    pub values: Vec<(usize, Scalar)>,
}

impl DetSequence {
    /// The determinants alone, index 0 holding order 1.
    pub fn dets(&self) -> Vec<Scalar> {
        self.values.iter().map(|(_, d)| d.clone()).collect()
    }
}

/// Exact determinant. Integer matrices run fraction-free elimination and the
/// result is an integer; anything else runs rational elimination.
pub fn det(m: &DenseMatrix) -> Scalar {
    let n = m.order();
    if n == 0 {
        return Scalar::one();
    }
    match m.to_int() {
        Some(im) => Scalar::from_int(det_bareiss(im.into_data(), n)),
        None => det_gauss(m.clone().into_data(), n),
    }
}

/// One-step fraction-free elimination; every division is exact.
fn det_bareiss(mut d: Vec<Int>, n: usize) -> Int {
    let mut negate = false;
    let mut prev = Int::one();
    for r in 0..n - 1 {
        let Some(pr) = (r..n).find(|&i| !d[i * n + r].is_zero()) else {
            return Int::zero();
        };
        if pr != r {
            for j in 0..n {
                d.swap(r * n + j, pr * n + j);
            }
            negate = !negate;
        }
        let pivot_row: Vec<Int> = d[r * n..(r + 1) * n].to_vec();
        for i in r + 1..n {
            let lead = mem::replace(&mut d[i * n + r], Int::zero());
            for j in r + 1..n {
                let num = &pivot_row[r] * &d[i * n + j] - &lead * &pivot_row[j];
                d[i * n + j] = num / &prev;
            }
        }
        prev = pivot_row.into_iter().nth(r).unwrap();
    }
    let last = d.swap_remove(n * n - 1);
    if negate {
        -last
    } else {
        last
    }
}

fn det_gauss(mut d: Vec<Scalar>, n: usize) -> Scalar {
    let mut negate = false;
    let mut acc = Scalar::one();
    for r in 0..n {
        let Some(pr) = (r..n).find(|&i| !d[i * n + r].is_zero()) else {
            return Scalar::zero();
        };
        if pr != r {
            for j in 0..n {
                d.swap(r * n + j, pr * n + j);
            }
            negate = !negate;
        }
        let pivot_row: Vec<Scalar> = d[r * n..(r + 1) * n].to_vec();
        acc = acc * &pivot_row[r];
        for i in r + 1..n {
            let lead = mem::replace(&mut d[i * n + r], Scalar::zero());
            if lead.is_zero() {
                continue;
            }
            let factor = &lead / &pivot_row[r];
            for j in r + 1..n {
                if pivot_row[j].is_zero() {
                    continue;
                }
                d[i * n + j] = &d[i * n + j] - &(&factor * &pivot_row[j]);
            }
        }
    }
    if negate {
        -acc
    } else {
        acc
    }
}

/// Dodgson condensation. Returns the determinant together with a flag that
/// is true when some interior minor vanished and the affected entry had to
/// be recomputed by elimination.
pub fn det_condensation(m: &DenseMatrix) -> (Scalar, bool) {
    let n = m.order();
    if n == 0 {
        return (Scalar::one(), false);
    }
    let mut fallback = false;
    let mut prevprev = vec![vec![Scalar::one(); n + 1]; n + 1];
    let mut prev: Vec<Vec<Scalar>> = m.to_rows();
    for k in 2..=n {
        let sz = n - k + 1;
        let mut cur = Vec::with_capacity(sz);
        for i in 0..sz {
            let mut row = Vec::with_capacity(sz);
            for j in 0..sz {
                let div = &prevprev[i + 1][j + 1];
                if div.is_zero() {
                    fallback = true;
                    row.push(det(&m.block(i, j, k)));
                } else {
                    let num = &prev[i][j] * &prev[i + 1][j + 1]
                        - &prev[i + 1][j] * &prev[i][j + 1];
                    row.push(&num / div);
                }
            }
            cur.push(row);
        }
        prevprev = prev;
        prev = cur;
    }
    (prev[0][0].clone(), fallback)
}

/// Determinants for n = 1..=n_max; orders are computed in parallel and the
/// output is ordered and deterministic.
pub fn det_sequence(family: &FamilySpec, n_max: usize) -> Result<DetSequence> {
    let values: Vec<(usize, Scalar)> = (1..=n_max)
        .into_par_iter()
        .map(|n| family.build(n).map(|m| (n, det(&m))))
        .collect::<Result<_>>()?;
    Ok(DetSequence {
        family: family.clone(),
        values,
    })
}

/// Exact rank over the rationals.
pub fn rank(m: &DenseMatrix) -> usize {
    let n = m.order();
    let mut d = m.clone().into_data();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| !d[i * n + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..n {
                d.swap(r * n + j, pr * n + j);
            }
        }
        let pivot_row: Vec<Scalar> = d[r * n..(r + 1) * n].to_vec();
        for i in r + 1..n {
            let lead = mem::replace(&mut d[i * n + c], Scalar::zero());
            if lead.is_zero() {
                continue;
            }
            let factor = &lead / &pivot_row[c];
            for j in c + 1..n {
                if pivot_row[j].is_zero() {
                    continue;
                }
                d[i * n + j] = &d[i * n + j] - &(&factor * &pivot_row[j]);
            }
        }
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Nonnegative integer square root of det(M) for an antisymmetric M of even
/// order. The determinant of such a matrix is a perfect square; a
/// NotAPerfectSquare here means the input was not what it claimed to be.
pub fn sqrt_det_antisymmetric(m: &DenseMatrix) -> Result<Scalar> {
    if let Some((i, j)) = m.antisymmetry_defect() {
        return Err(Error::NotAntisymmetric { i, j });
    }
    if m.order() % 2 != 0 {
        return Err(Error::OddOrder(m.order()));
    }
    let d = det(m);
    integer_sqrt_exact(&d).map_err(|e| match e {
        Error::NegativeInput => Error::NotAPerfectSquare {
            value: d.to_string(),
        },
        other => other,
    })
}

/// Brute-force cofactor expansion; quadratic-free reference for small orders.
pub fn det_oracle_cofactor(m: &DenseMatrix) -> Result<Scalar> {
    if m.order() > 8 {
        return Err(Error::OrderTooLarge {
            order: m.order(),
            max: 8,
        });
    }
    Ok(det_cofactor_generic(m))
}

/// Cofactor expansion along the first row, over any exact semiring with
/// subtraction. Exponential; callers guard the order.
pub fn det_cofactor_generic<T>(m: &DenseMatrix<T>) -> T
where
    T: Clone + Zero + Mul<Output = T> + Sub<Output = T>,
{
    let n = m.order();
    if n == 0 {
        panic!("cofactor expansion needs a nonempty matrix");
    }
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = T::zero();
    for col in 0..n {
        if m[(0, col)].is_zero() {
            continue;
        }
        let minor =
            DenseMatrix::from_fn(n - 1, |i, j| m[(i + 1, if j < col { j } else { j + 1 })].clone());
        let term = m[(0, col)].clone() * det_cofactor_generic(&minor);
        if col % 2 == 0 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}
