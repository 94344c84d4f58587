use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::det::det;
use crate::error::{Error, Result};
use crate::matrix::{antisymmetric_pascal, build, DenseMatrix, MatrixSpec};
use crate::scalar::{binom_int, binomial, choose2, neg_one_pow, Convention, Int, Scalar};
use crate::seq::{duplicate_terms, generate, interleave_even, SequenceSpec};

/// Closed-form determinant formulas, each evaluated from the printed formula
/// alone; no matrix is ever built on this side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum OracleFamily {
    /// det of the binomial matrix C(i+j+s+t, i+s): product of binomial ratios.
    Thm11 { s: usize, t: usize },
    /// det of the inverse-binomial matrix 1/C(i+j+s+t, i+s).
    Thm13 { s: usize, t: usize },
    /// Rank-one driven recurrence: (alpha_0 beta_0)^n.
    Prop14 { alpha0: Scalar, beta0: Scalar },
    /// (1+x)^{C(n-1,2)} (x + rho + sigma - rho sigma)^{n-1}.
    Thm15 {
        rho: Scalar,
        sigma: Scalar,
        x: Scalar,
    },
    /// Antisymmetric companion: (1+x)^{2(m-1)^2} (rho+x)^{2m-2} at n=2m, 0 odd.
    #[serde(rename = "krattB")]
    KrattB { rho: Scalar, x: Scalar },
    /// First column (0,1,1,...): 1 at even orders, 0 at odd.
    Prop51Ones,
    /// First column (0,1,2,3,...): 1 at even orders, 0 at odd.
    Prop51Naturals,
    /// Geometric first column/row: (A + B - AB)^{n-1}.
    Ex32Geometric { a: Scalar, b: Scalar },
    /// Antisymmetric geometric: (A - AB + B)^{2(m-1)} at n=2m, 0 odd.
    Ex54SymplecticGeometric { a: Scalar, b: Scalar },
    /// det(A_k(n)) = 2^{C(n,2)} for every k.
    #[serde(rename = "remark52_A", alias = "remark52_a")]
    Remark52A { k: usize },
    /// det(B_k(n)) = 2^{C(n,2)} prod_{i<n} (k+2i-1) / n!.
    #[serde(rename = "remark52_B", alias = "remark52_b")]
    Remark52B { k: usize },
    /// sqrt det T_k(2n) = prod_{t=1}^{k-1} C(2n+2t, t)/C(2t, t); accepts n = 0.
    Thm53Sqrt { k: usize },
    /// Geometric diagonal x^k: (-u1 l1 + (1 - u1 l2 - u2 l1) x - u2 l2 x^2)^{n-1} x^{C(n-1,2)}.
    Prop82Diagonal {
        u1: Scalar,
        u2: Scalar,
        l1: Scalar,
        l2: Scalar,
        x: Scalar,
    },
    /// Entries a^{|i-j|}: (1 - a^2)^{n-1}.
    PowerDistance { a: Scalar },
    /// u2 = 0 degenerate diagonal construction: gamma_0 prod_{j=1}^{n-1} (gamma_j - u1 (l1 gamma_{j-1} + l2 gamma_j)).
    DiagonalDegenerateU2 {
        gamma: SequenceSpec,
        u1: Scalar,
        l1: Scalar,
        l2: Scalar,
    },
}

pub fn oracle_det(family: &OracleFamily, n: usize) -> Result<Scalar> {
    if n == 0 && !matches!(family, OracleFamily::Thm53Sqrt { .. }) {
        return Err(Error::UnsupportedFamily(
            "oracle order must be positive".into(),
        ));
    }
    let n_i = n as i64;
    Ok(match family {
        OracleFamily::Thm11 { s, t } => {
            let mut acc = Scalar::one();
            for j in 0..*s as i64 {
                let t = *t as i64;
                acc = acc * &Scalar::ratio(binom_int(n_i + j + t, t), binom_int(j + t, t));
            }
            acc
        }
        OracleFamily::Thm13 { s, t } => {
            let (s, t) = (*s as i64, *t as i64);
            let mut denom = Scalar::one();
            for k in 0..n_i {
                denom = denom * &Scalar::from_int(binom_int(2 * k + s + t, k + s));
                denom = denom * &binomial(2 * k - 1 + s + t, k, Convention::Extended)?;
            }
            neg_one_pow(choose2(n_i)) / denom
        }
        OracleFamily::Prop14 { alpha0, beta0 } => (alpha0 * beta0).pow(n_i),
        OracleFamily::Thm15 { rho, sigma, x } => {
            let base = x + rho + sigma - &(rho * sigma);
            (Scalar::one() + x).pow(choose2(n_i - 1)) * &base.pow(n_i - 1)
        }
        OracleFamily::KrattB { rho, x } => {
            if n % 2 == 1 {
                Scalar::zero()
            } else {
                let m = n_i / 2;
                (Scalar::one() + x).pow(2 * (m - 1) * (m - 1)) * &(rho + x).pow(2 * m - 2)
            }
        }
        OracleFamily::Prop51Ones | OracleFamily::Prop51Naturals => {
            if n.is_multiple_of(2) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }
        OracleFamily::Ex32Geometric { a, b } => (a + b - &(a * b)).pow(n_i - 1),
        OracleFamily::Ex54SymplecticGeometric { a, b } => {
            if n % 2 == 1 {
                Scalar::zero()
            } else {
                (a - &(a * b) + b).pow(n_i - 2)
            }
        }
        OracleFamily::Remark52A { k: _ } => Scalar::from_int(Int::from(2)).pow(choose2(n_i)),
        OracleFamily::Remark52B { k } => {
            let mut num = Int::from(1) << choose2(n_i) as usize;
            for i in 0..n_i {
                num *= Int::from(*k as i64 + 2 * i - 1);
            }
            Scalar::ratio(num, factorial(n_i))
        }
        OracleFamily::Thm53Sqrt { k } => {
            let mut acc = Scalar::one();
            for t in 1..*k as i64 {
                acc = acc * &Scalar::ratio(binom_int(2 * n_i + 2 * t, t), binom_int(2 * t, t));
            }
            acc
        }
        OracleFamily::Prop82Diagonal { u1, u2, l1, l2, x } => {
            let base = -&(u1 * l1) + &((Scalar::one() - &(u1 * l2) - &(u2 * l1)) * x)
                - &(&(u2 * l2) * &(x * x));
            base.pow(n_i - 1) * &x.pow(choose2(n_i - 1))
        }
        OracleFamily::PowerDistance { a } => (Scalar::one() - &(a * a)).pow(n_i - 1),
        OracleFamily::DiagonalDegenerateU2 { gamma, u1, l1, l2 } => {
            let g = generate(gamma, n)?;
            let mut acc = g[0].clone();
            for j in 1..n {
                acc = acc * &(&g[j] - &(u1 * &(l1 * &g[j - 1] + l2 * &g[j])));
            }
            acc
        }
    })
}

fn factorial(n: i64) -> Int {
    let mut f = Int::from(1);
    for i in 2..=n {
        f *= Int::from(i);
    }
    f
}

/// Entry-level and determinant-level identities, each comparing two
/// independently computed sides over n = 1..=n_max.
/// Tags are transient configuration, so variant size is irrelevant.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum IdentityTag {
    /// Recurrence-built generalized Pascal entries vs the binomial closed form.
    #[serde(rename = "p_ij_closed_form")]
    PijClosedForm {
        alpha: SequenceSpec,
        beta: SequenceSpec,
        n_max: usize,
    },
    /// det(Pascal + Q) = det(Id + C_Q) for a finite coefficient grid.
    Prop12 { c: Vec<Vec<Scalar>>, n_max: usize },
    /// det of the n x n binomial Gram matrix vs the Thm11 product at order k.
    Gram { k: usize, n_max: usize },
    /// Recurrence-built rank-one driven entries vs the double-sum form.
    Prop14Entries {
        alpha: SequenceSpec,
        beta: SequenceSpec,
        n_max: usize,
    },
    /// Recurrence-built T_k entries vs the extended-binomial closed form.
    Remark52Entries { k: usize, n_max: usize },
    /// det at order 2n of the zero-interleaved triangle vs the term-doubled one.
    Interleave51 { beta: Vec<Scalar>, n_max: usize },
    /// Diagonal-construction rescaling multiplies det by (lambda/mu)^{C(n,2)}.
    Prop81Scaling {
        lambda: Scalar,
        mu: Scalar,
        gamma: SequenceSpec,
        u1: Scalar,
        u2: Scalar,
        l1: Scalar,
        l2: Scalar,
        n_max: usize,
    },
    /// r_B(n) = 2^{n-1} r_C(n) for the symplectic Catalan/binomial columns.
    Ex55Ratio { n_max: usize },
    /// det((i+j+k)!) = prod_{i<n} i! (i+k)!.
    Thm11FactorialForm { k: usize, n_max: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstFailure {
    pub n: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<FirstFailure>,
}

impl IdentityTag {
    pub fn id(&self) -> &'static str {
        match self {
            IdentityTag::PijClosedForm { .. } => "p_ij_closed_form",
            IdentityTag::Prop12 { .. } => "prop12",
            IdentityTag::Gram { .. } => "gram",
            IdentityTag::Prop14Entries { .. } => "prop14_entries",
            IdentityTag::Remark52Entries { .. } => "remark52_entries",
            IdentityTag::Interleave51 { .. } => "interleave51",
            IdentityTag::Prop81Scaling { .. } => "prop81_scaling",
            IdentityTag::Ex55Ratio { .. } => "ex55_ratio",
            IdentityTag::Thm11FactorialForm { .. } => "thm11_factorial_form",
        }
    }
}

/// Check an identity at every n in 1..=n_max, reporting the first failing n
/// with both values. Errors are reserved for malformed payloads; a false
/// identity is a report, not an error.
pub fn verify_identity(tag: &IdentityTag) -> Result<IdentityReport> {
    let failure = match tag {
        IdentityTag::PijClosedForm { alpha, beta, n_max } => {
            pij_closed_form(alpha, beta, *n_max)?
        }
        IdentityTag::Prop12 { c, n_max } => prop12(c, *n_max)?,
        IdentityTag::Gram { k, n_max } => gram(*k, *n_max)?,
        IdentityTag::Prop14Entries { alpha, beta, n_max } => {
            prop14_entries(alpha, beta, *n_max)?
        }
        IdentityTag::Remark52Entries { k, n_max } => remark52_entries(*k, *n_max)?,
        IdentityTag::Interleave51 { beta, n_max } => interleave51(beta, *n_max)?,
        IdentityTag::Prop81Scaling {
            lambda,
            mu,
            gamma,
            u1,
            u2,
            l1,
            l2,
            n_max,
        } => prop81_scaling(lambda, mu, gamma, u1, u2, l1, l2, *n_max)?,
        IdentityTag::Ex55Ratio { n_max } => ex55_ratio(*n_max)?,
        IdentityTag::Thm11FactorialForm { k, n_max } => thm11_factorial_form(*k, *n_max)?,
    };
    Ok(IdentityReport {
        id: tag.id().to_string(),
        holds: failure.is_none(),
        first_failure: failure,
    })
}

type Probe = Result<Option<FirstFailure>>;

fn entry_mismatch(n: usize, built: &DenseMatrix, formula: impl Fn(usize, usize) -> Result<Scalar>) -> Probe {
    for i in 0..n {
        for j in 0..n {
            let want = formula(i, j)?;
            if built[(i, j)] != want {
                return Ok(Some(FirstFailure {
                    n,
                    lhs: built[(i, j)].clone(),
                    rhs: want,
                }));
            }
        }
    }
    Ok(None)
}

fn pij_closed_form(alpha: &SequenceSpec, beta: &SequenceSpec, n_max: usize) -> Probe {
    for n in 1..=n_max {
        let a = generate(alpha, n)?;
        let b = generate(beta, n)?;
        let m = build(
            &MatrixSpec::GeneralizedPascal {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            n,
        )?;
        let closed = |i: usize, j: usize| -> Result<Scalar> {
            let (i, j) = (i as i64, j as i64);
            let mut v = &a[0] * &Scalar::from_int(binom_int(i + j, i));
            for s in 1..=i {
                let diff = &a[s as usize] - &a[s as usize - 1];
                v = v + &(&diff * &Scalar::from_int(binom_int(i - s + j, j)));
            }
            for t in 1..=j {
                let diff = &b[t as usize] - &b[t as usize - 1];
                v = v + &(&diff * &Scalar::from_int(binom_int(i + j - t, i)));
            }
            Ok(v)
        };
        if let Some(f) = entry_mismatch(n, &m, closed)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn prop12(c: &[Vec<Scalar>], n_max: usize) -> Probe {
    for n in 1..=n_max {
        let lhs = det(&build(&MatrixSpec::PerturbedPascal { c: c.to_vec() }, n)?);
        let companion = DenseMatrix::from_fn(n, |i, j| {
            let cell = c
                .get(i)
                .and_then(|row| row.get(j))
                .cloned()
                .unwrap_or_else(Scalar::zero);
            if i == j {
                cell + &Scalar::one()
            } else {
                cell
            }
        });
        let rhs = det(&companion);
        if lhs != rhs {
            return Ok(Some(FirstFailure { n, lhs, rhs }));
        }
    }
    Ok(None)
}

fn gram(k: usize, n_max: usize) -> Probe {
    for n in 1..=n_max {
        let lhs = det(&build(&MatrixSpec::GramBinomial { k }, n)?);
        let rhs = if k == 0 {
            Scalar::one()
        } else {
            oracle_det(&OracleFamily::Thm11 { s: n, t: n }, k)?
        };
        if lhs != rhs {
            return Ok(Some(FirstFailure { n, lhs, rhs }));
        }
    }
    Ok(None)
}

fn prop14_entries(alpha: &SequenceSpec, beta: &SequenceSpec, n_max: usize) -> Probe {
    for n in 1..=n_max {
        let a = generate(alpha, n)?;
        let b = generate(beta, n)?;
        let m = build(
            &MatrixSpec::Rank1Driven {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            n,
        )?;
        let closed = |i: usize, j: usize| -> Result<Scalar> {
            let mut v = Scalar::zero();
            for s in 0..=i {
                for t in 0..=j {
                    let w = &a[i - s] * &b[j - t];
                    v = v + &(&w * &Scalar::from_int(binom_int((s + t) as i64, s as i64)));
                }
            }
            Ok(v)
        };
        if let Some(f) = entry_mismatch(n, &m, closed)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn remark52_entries(k: usize, n_max: usize) -> Probe {
    for n in 1..=n_max {
        let m = build(&MatrixSpec::TK { k }, n)?;
        let closed = |i: usize, j: usize| -> Result<Scalar> {
            let top = (2 * k + i + j) as i64 - 1;
            let kj = (k + j) as i64;
            Ok(binomial(top, kj, Convention::Extended)?
                - binomial(top, kj - 1, Convention::Extended)?)
        };
        if let Some(f) = entry_mismatch(n, &m, closed)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn interleave51(beta: &[Scalar], n_max: usize) -> Probe {
    let interleaved = interleave_even(beta);
    let doubled = duplicate_terms(beta);
    for n in 1..=n_max {
        let order = 2 * n;
        let lhs = det(&antisymmetric_pascal(&interleaved, order)?);
        let rhs = det(&antisymmetric_pascal(&doubled, order)?);
        if lhs != rhs {
            return Ok(Some(FirstFailure { n, lhs, rhs }));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn prop81_scaling(
    lambda: &Scalar,
    mu: &Scalar,
    gamma: &SequenceSpec,
    u1: &Scalar,
    u2: &Scalar,
    l1: &Scalar,
    l2: &Scalar,
    n_max: usize,
) -> Probe {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::MalformedSpec(
            "scaling factors must be nonzero".into(),
        ));
    }
    let ratio = lambda / mu;
    for n in 1..=n_max {
        let g = generate(gamma, n)?;
        let scaled: Vec<Scalar> = g
            .iter()
            .enumerate()
            .map(|(k, v)| ratio.pow(k as i64) * v)
            .collect();
        let lhs = det(&build(
            &MatrixSpec::DiagonalConstruction {
                gamma: SequenceSpec::Explicit { terms: scaled },
                u1: lambda * u1,
                u2: mu * u2,
                l1: l1 / mu,
                l2: l2 / lambda,
            },
            n,
        )?);
        let base = det(&build(
            &MatrixSpec::DiagonalConstruction {
                gamma: SequenceSpec::Explicit { terms: g },
                u1: u1.clone(),
                u2: u2.clone(),
                l1: l1.clone(),
                l2: l2.clone(),
            },
            n,
        )?);
        let rhs = ratio.pow(choose2(n as i64)) * &base;
        if lhs != rhs {
            return Ok(Some(FirstFailure { n, lhs, rhs }));
        }
    }
    Ok(None)
}

fn ex55_ratio(n_max: usize) -> Probe {
    use crate::det::sqrt_det_antisymmetric;
    use crate::seq::NamedSequence;
    for n in 1..=n_max {
        let order = 2 * n;
        let catalan = generate(
            &SequenceSpec::Named {
                name: NamedSequence::CatalanShiftedSymplectic,
            },
            order,
        )?;
        let binom = generate(
            &SequenceSpec::Named {
                name: NamedSequence::BinomialShiftedSymplectic,
            },
            order,
        )?;
        let r_c = sqrt_det_antisymmetric(&antisymmetric_pascal(&catalan, order)?)?;
        let r_b = sqrt_det_antisymmetric(&antisymmetric_pascal(&binom, order)?)?;
        let rhs = Scalar::from_int(Int::from(1) << (n - 1)) * &r_c;
        if r_b != rhs {
            return Ok(Some(FirstFailure { n, lhs: r_b, rhs }));
        }
    }
    Ok(None)
}

fn thm11_factorial_form(k: usize, n_max: usize) -> Probe {
    for n in 1..=n_max {
        let m = DenseMatrix::from_fn(n, |i, j| {
            Scalar::from_int(factorial((i + j + k) as i64))
        });
        let lhs = det(&m);
        let mut rhs = Int::from(1);
        for i in 0..n as i64 {
            rhs *= factorial(i) * factorial(i + k as i64);
        }
        let rhs = Scalar::from_int(rhs);
        if lhs != rhs {
            return Ok(Some(FirstFailure { n, lhs, rhs }));
        }
    }
    Ok(None)
}
