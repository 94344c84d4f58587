use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binom_int, Scalar};

/// Declarative description of an infinite (or explicit finite) sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// A finite list; generation beyond its length is an error.
    Explicit { terms: Vec<Scalar> },
    /// s_n = coeffs[0] * s_{n-1} + ... + coeffs[a-1] * s_{n-a}.
    LinearRecurrence {
        coeffs: Vec<Scalar>,
        initial: Vec<Scalar>,
    },
    Periodic { pattern: Vec<Scalar> },
    Geometric { first: Scalar, ratio: Scalar },
    Named { name: NamedSequence },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedSequence {
    /// 0, 1, 1, 2, 3, 5, 8, ...
    Fibonacci,
    /// 1, 1, 2, 5, 14, 42, ...
    Catalan,
    /// C(2k,k): 1, 2, 6, 20, 70, ...
    CentralBinomial,
    /// 0 followed by the Catalan numbers: 0, 1, 1, 2, 5, 14, 42, ...
    CatalanShiftedSymplectic,
    /// 0 followed by the central binomials: 0, 1, 2, 6, 20, 70, ...
    BinomialShiftedSymplectic,
}

impl SequenceSpec {
    pub fn explicit_ints(terms: &[i64]) -> Self {
        SequenceSpec::Explicit {
            terms: terms.iter().map(|&t| Scalar::from(t)).collect(),
        }
    }

    pub fn constant(value: Scalar) -> Self {
        SequenceSpec::Periodic {
            pattern: vec![value],
        }
    }
}

/// First `count` terms of the sequence. Deterministic; repeated calls agree
/// on shared prefixes.
pub fn generate(spec: &SequenceSpec, count: usize) -> Result<Vec<Scalar>> {
    match spec {
        SequenceSpec::Explicit { terms } => {
            if terms.len() < count {
                return Err(Error::MalformedSpec(format!(
                    "explicit sequence has {} terms, {} requested",
                    terms.len(),
                    count
                )));
            }
            Ok(terms[..count].to_vec())
        }
        SequenceSpec::LinearRecurrence { coeffs, initial } => {
            if coeffs.is_empty() {
                return Err(Error::MalformedSpec("empty recurrence".into()));
            }
            if initial.len() < coeffs.len() {
                return Err(Error::MalformedSpec(format!(
                    "order-{} recurrence needs at least {} initial terms, got {}",
                    coeffs.len(),
                    coeffs.len(),
                    initial.len()
                )));
            }
            let mut out = initial.clone();
            out.truncate(count.max(initial.len()));
            while out.len() < count {
                let next: Scalar = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * &out[out.len() - 1 - i])
                    .sum();
                out.push(next);
            }
            out.truncate(count);
            Ok(out)
        }
        SequenceSpec::Periodic { pattern } => {
            if pattern.is_empty() {
                return Err(Error::MalformedSpec("empty period".into()));
            }
            Ok((0..count).map(|i| pattern[i % pattern.len()].clone()).collect())
        }
        SequenceSpec::Geometric { first, ratio } => {
            let mut out = Vec::with_capacity(count);
            let mut cur = first.clone();
            for _ in 0..count {
                out.push(cur.clone());
                cur = cur * ratio;
            }
            Ok(out)
        }
        SequenceSpec::Named { name } => Ok(named(*name, count)),
    }
}

fn named(name: NamedSequence, count: usize) -> Vec<Scalar> {
    match name {
        NamedSequence::Fibonacci => {
            let mut out: Vec<Scalar> = Vec::with_capacity(count);
            for i in 0..count {
                let v = match i {
                    0 => Scalar::zero(),
                    1 => Scalar::from(1),
                    _ => &out[i - 1] + &out[i - 2],
                };
                out.push(v);
            }
            out
        }
        NamedSequence::Catalan => (0..count).map(|k| catalan(k as i64)).collect(),
        NamedSequence::CentralBinomial => (0..count)
            .map(|k| Scalar::from_int(binom_int(2 * k as i64, k as i64)))
            .collect(),
        NamedSequence::CatalanShiftedSymplectic => shift_zero(count, catalan),
        NamedSequence::BinomialShiftedSymplectic => {
            shift_zero(count, |k| Scalar::from_int(binom_int(2 * k, k)))
        }
    }
}

fn shift_zero(count: usize, f: impl Fn(i64) -> Scalar) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(Scalar::zero());
    }
    for k in 0..count.saturating_sub(1) {
        out.push(f(k as i64));
    }
    out
}

/// Catalan number via the subtraction identity C(2k,k) - C(2k,k+1);
/// avoids any division.
fn catalan(k: i64) -> Scalar {
    Scalar::from_int(binom_int(2 * k, k) - binom_int(2 * k, k + 1))
}

/// (-1)^i scaling, the "sympletric" companion transform.
pub fn alternate_signs(terms: &[Scalar]) -> Vec<Scalar> {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| if i % 2 == 0 { t.clone() } else { -t })
        .collect()
}

/// (0, b0, 0, b1, 0, b2, ...), length 2 * |beta|.
pub fn interleave_even(beta: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(2 * beta.len());
    for b in beta {
        out.push(Scalar::zero());
        out.push(b.clone());
    }
    out
}

/// (0, b0, b0, b1, b1, ..., b_last), length 2 * |beta|; the final term is
/// not doubled so the output length matches interleave_even.
pub fn duplicate_terms(beta: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(2 * beta.len());
    if !beta.is_empty() {
        out.push(Scalar::zero());
    }
    for (i, b) in beta.iter().enumerate() {
        out.push(b.clone());
        if i + 1 < beta.len() {
            out.push(b.clone());
        }
    }
    out
}
