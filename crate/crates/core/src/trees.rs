use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::det::det;
use crate::error::{Error, Result};
use crate::matrix::{antisymmetric_pascal, build, MatrixSpec};
use crate::poly::UniPolynomial;
use crate::scalar::{integer_sqrt_exact, Int, Scalar};
use crate::seq::{alternate_signs, interleave_even, SequenceSpec};

mod int_as_string {
    use super::Int;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    struct IntVisitor;

    impl Visitor<'_> for IntVisitor {
        type Value = Int;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            write!(f, "an integer or its decimal string")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
            Int::from_str(v).map_err(de::Error::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
            Ok(Int::from(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
            Ok(Int::from(v))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

mod int_vec_as_strings {
    use super::Int;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "super::int_as_string")] Int);

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&W(x.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let v: Vec<W> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

/// One root-to-node path in the even unimodular tree. The chosen term at
/// level i is centers[i] + choices[i]; next_center is the forced even center
/// one level below the node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenTreePath {
    pub choices: Vec<i8>,
    #[serde(with = "int_vec_as_strings")]
    pub centers: Vec<Int>,
    #[serde(with = "int_as_string")]
    pub next_center: Int,
}

impl EvenTreePath {
    /// The odd terms actually kept along the path.
    pub fn prefix(&self) -> Vec<Int> {
        self.choices
            .iter()
            .zip(&self.centers)
            .map(|(c, b)| b + Int::from(i64::from(*c)))
            .collect()
    }
}

/// det of the order-2|beta| antisymmetric triangle whose first column
/// interleaves beta with zeros.
fn even_symplectic_det(beta: &[Int]) -> Result<Scalar> {
    let terms: Vec<Scalar> = beta.iter().map(|b| Scalar::from_int(b.clone())).collect();
    let alpha = interleave_even(&terms);
    let m = antisymmetric_pascal(&alpha, alpha.len())?;
    Ok(det(&m))
}

/// The unique even integer whose two odd neighbours extend the prefix with
/// determinant 1 at the next even order. The determinant in the appended term
/// x is a perfect square (ax+b)^2; we fit it at x in {-1, 0, 1}, insist on
/// a^2 = 1, and recheck all three defining determinant values before
/// returning -ab.
pub fn next_even_beta(prefix: &[Int]) -> Result<Int> {
    let l = prefix.len();
    if l > 0 {
        let d = even_symplectic_det(prefix)?;
        if !d.is_one() {
            return Err(Error::InvariantViolated {
                order: 2 * l,
                det: d.to_string(),
            });
        }
    }
    let d_at = |x: &Int| -> Result<Scalar> {
        let mut ext = prefix.to_vec();
        ext.push(x.clone());
        even_symplectic_det(&ext)
    };
    let d0 = d_at(&Int::from(0))?;
    let d1 = d_at(&Int::from(1))?;
    let dm1 = d_at(&Int::from(-1))?;
    let a2 = (&d1 + &dm1) / &Scalar::from(2) - &d0;
    if !a2.is_one() {
        return Err(Error::QuadraticFitFailed { a2: a2.to_string() });
    }
    let center = -&((&d1 - &dm1) / &Scalar::from(4));
    let Some(center_int) = center.to_int() else {
        // b^2 = D(0) has no integer root, so no even center exists
        return Err(Error::NotAPerfectSquare {
            value: d0.to_string(),
        });
    };
    let at_center = d_at(&center_int)?;
    if !at_center.is_zero() {
        return Err(Error::InvariantViolated {
            order: 2 * (l + 1),
            det: at_center.to_string(),
        });
    }
    for off in [-1i64, 1] {
        let v = d_at(&(&center_int + Int::from(off)))?;
        if !v.is_one() {
            return Err(Error::InvariantViolated {
                order: 2 * (l + 1),
                det: v.to_string(),
            });
        }
    }
    Ok(center_int)
}

/// All 2^{depth-1} paths of the given depth whose first term is
/// root_sign * 1, ordered with the +1 branch before the -1 branch at every
/// level, each carrying its center column and the next center below it.
pub fn enumerate_even_tree(depth: usize, root_sign: i8) -> Result<Vec<EvenTreePath>> {
    if depth == 0 {
        return Err(Error::MalformedSpec("tree depth must be positive".into()));
    }
    if root_sign != 1 && root_sign != -1 {
        return Err(Error::MalformedSpec("root sign must be +1 or -1".into()));
    }
    let mut out = Vec::with_capacity(1 << (depth - 1));
    let mut prefix = Vec::new();
    let mut choices = Vec::new();
    let mut centers = Vec::new();
    walk(
        depth,
        root_sign,
        &mut prefix,
        &mut choices,
        &mut centers,
        &mut out,
    )?;
    Ok(out)
}

fn walk(
    depth: usize,
    root_sign: i8,
    prefix: &mut Vec<Int>,
    choices: &mut Vec<i8>,
    centers: &mut Vec<Int>,
    out: &mut Vec<EvenTreePath>,
) -> Result<()> {
    let center = next_even_beta(prefix)?;
    if prefix.len() == depth {
        out.push(EvenTreePath {
            choices: choices.clone(),
            centers: centers.clone(),
            next_center: center,
        });
        return Ok(());
    }
    for sign in [1i8, -1] {
        if prefix.is_empty() && sign != root_sign {
            continue;
        }
        prefix.push(&center + Int::from(i64::from(sign)));
        choices.push(sign);
        centers.push(center.clone());
        walk(depth, root_sign, prefix, choices, centers, out)?;
        prefix.pop();
        choices.pop();
        centers.pop();
    }
    Ok(())
}

fn pattern_target(order: usize) -> Scalar {
    if order == 1 {
        Scalar::zero()
    } else {
        Scalar::from_int(Int::from(1) << (order - 2))
    }
}

/// det of the order-k triangle with first column alpha and first row the
/// sign-alternated alpha, optionally with one extra appended term.
fn sympletric_det(prefix: &[Int], extra: Option<Int>, order: usize) -> Result<Scalar> {
    let mut terms: Vec<Scalar> = prefix.iter().map(|b| Scalar::from_int(b.clone())).collect();
    if let Some(x) = extra {
        terms.push(Scalar::from_int(x));
    }
    if terms.len() < order {
        return Err(Error::InsufficientTerms {
            needed: order,
            got: terms.len(),
        });
    }
    let tilde = alternate_signs(&terms);
    let m = build(
        &MatrixSpec::GeneralizedPascal {
            alpha: SequenceSpec::Explicit { terms },
            beta: SequenceSpec::Explicit { terms: tilde },
        },
        order,
    )?;
    Ok(det(&m))
}

/// Every integer x such that appending x to the prefix keeps the determinant
/// pattern 0, 1, 2, 4, ..., 2^{k-2} alive at the next order. The determinant
/// is interpolated in x from {0, 1, 2}, a fourth evaluation guards the
/// degree, and the quadratic is solved exactly; the result may be empty or
/// hold more than two values.
pub fn sympletric_extensions(prefix: &[Int]) -> Result<Vec<Int>> {
    let start = [Int::from(0), Int::from(1), Int::from(1)];
    for (i, want) in start.iter().enumerate() {
        if prefix.get(i) != Some(want) {
            return Err(Error::PatternViolated {
                order: i + 1,
                got: prefix
                    .get(i)
                    .map_or_else(|| "missing".to_string(), |v| v.to_string()),
                want: want.to_string(),
            });
        }
    }
    let l = prefix.len();
    for k in 1..=l {
        let got = sympletric_det(prefix, None, k)?;
        let want = pattern_target(k);
        if got != want {
            return Err(Error::PatternViolated {
                order: k,
                got: got.to_string(),
                want: want.to_string(),
            });
        }
    }
    let q_at = |x: i64| sympletric_det(prefix, Some(Int::from(x)), l + 1);
    let points: Vec<(Scalar, Scalar)> = [0i64, 1, 2]
        .iter()
        .map(|&x| Ok((Scalar::from(x), q_at(x)?)))
        .collect::<Result<_>>()?;
    let q = UniPolynomial::interpolate(&points);
    let probe = q.eval(&Scalar::from(3));
    let actual = q_at(3)?;
    if probe != actual {
        return Err(Error::DegreeAssertionFailed(format!(
            "determinant is not quadratic in the appended term: interpolant {probe} vs determinant {actual} at 3"
        )));
    }
    solve_integer_roots(&q, &pattern_target(l + 1))
}

/// Integer solutions of q(x) = target for q of degree at most 2, sorted
/// descending.
fn solve_integer_roots(q: &UniPolynomial, target: &Scalar) -> Result<Vec<Int>> {
    let int_coeff = |i: usize| -> Result<Int> {
        let c = if i == 0 {
            &q.coeff(0) - target
        } else {
            q.coeff(i)
        };
        c.to_int().ok_or_else(|| {
            Error::DegreeAssertionFailed(format!("non-integer determinant coefficient {c}"))
        })
    };
    let c0 = int_coeff(0)?;
    let c1 = int_coeff(1)?;
    let c2 = int_coeff(2)?;
    let mut roots = Vec::new();
    if c2.is_zero() {
        if c1.is_zero() {
            if c0.is_zero() {
                return Err(Error::DegreeAssertionFailed(
                    "determinant does not depend on the appended term".into(),
                ));
            }
        } else if (&c0 % &c1).is_zero() {
            roots.push(-(&c0 / &c1));
        }
    } else {
        let disc = &c1 * &c1 - Int::from(4) * &c2 * &c0;
        if let Ok(r) = integer_sqrt_exact(&Scalar::from_int(disc)) {
            let r = r.to_int().expect("square root of an integer");
            let den = Int::from(2) * &c2;
            for root in [&r - &c1, -&r - &c1] {
                if (&root % &den).is_zero() {
                    roots.push(root / &den);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots.reverse();
    Ok(roots)
}
