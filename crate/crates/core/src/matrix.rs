use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{binom_int, binomial, Convention, Int, Scalar};
use crate::seq::{generate, SequenceSpec};

/// Square matrix with exact entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<T = Scalar> {
    n: usize,
    data: Vec<T>,
}

impl<T> DenseMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseMatrix { n, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix rows must all have length {n}");
            data.extend(row);
        }
        DenseMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> DenseMatrix<T> {
    pub fn transpose(&self) -> Self {
        DenseMatrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    /// Principal submatrix of order `m` whose top-left entry is (k, k).
    pub fn corner(&self, k: usize, m: usize) -> Self {
        assert!(k + m <= self.n, "corner exceeds matrix order");
        self.block(k, k, m)
    }

    /// Contiguous submatrix of order `m` with top-left entry at (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, m: usize) -> Self {
        assert!(r0 + m <= self.n && c0 + m <= self.n, "block exceeds matrix order");
        DenseMatrix::from_fn(m, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }
}

impl<T: Zero + One + Clone> DenseMatrix<T> {
    pub fn identity(n: usize) -> Self {
        DenseMatrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl DenseMatrix<Scalar> {
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        DenseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from(v)).collect())
                .collect(),
        )
    }

    /// All-integer view, or None when some entry has a denominator.
    pub fn to_int(&self) -> Option<DenseMatrix<Int>> {
        let mut data = Vec::with_capacity(self.data.len());
        for s in &self.data {
            data.push(s.to_int()?);
        }
        Some(DenseMatrix { n: self.n, data })
    }

    /// First (i, j) with m_{i,j} != -m_{j,i}, scanning the upper triangle.
    pub fn antisymmetry_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i..self.n {
                if self[(i, j)] != -&self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_defect().is_none()
    }
}

impl Serialize for DenseMatrix<Scalar> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.rows())
    }
}

impl<'de> Deserialize<'de> for DenseMatrix<Scalar> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix rows must form a square"));
        }
        Ok(DenseMatrix::from_rows(rows))
    }
}

/// Declarative description of each matrix family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatrixSpec {
    /// Entries C(i+j+s+t, i+s).
    PascalShifted { s: usize, t: usize },
    /// Entries 1 / C(i+j+s+t, i+s).
    InverseBinomial { s: usize, t: usize },
    /// First column alpha, first row beta, interior p = p_up + p_left.
    GeneralizedPascal {
        alpha: SequenceSpec,
        beta: SequenceSpec,
    },
    /// Pascal matrix plus q_{i,j} = sum c_{s,t} C(i,s) C(j,t).
    PerturbedPascal { c: Vec<Vec<Scalar>> },
    /// Gram matrix g_{i,j} = sum_{s=0}^{n+k-1} C(s,i) C(s,j); entries depend
    /// on the built order n through the upper summation limit.
    GramBinomial { k: usize },
    /// a_{i,j} = a_{i-1,j} + a_{i,j-1} + alpha_i beta_j, out-of-range terms 0.
    Rank1Driven {
        alpha: SequenceSpec,
        beta: SequenceSpec,
    },
    /// a_{i,0} = rho^i, a_{0,j} = sigma^j, interior a = a_up + a_left + x a_diag.
    #[serde(alias = "krattenthaler_A")]
    KrattenthalerA {
        rho: Scalar,
        sigma: Scalar,
        x: Scalar,
    },
    /// Antisymmetric variant: b_{0,0} = 0, b_{i,0} = rho^{i-1} = -b_{0,i}.
    #[serde(alias = "krattenthaler_B")]
    KrattenthalerB { rho: Scalar, x: Scalar },
    /// a_{i,j} = C(2i+2j+k, i) - C(2i+2j+k, i-1).
    #[serde(alias = "temperley_A")]
    TemperleyA { k: usize },
    /// b_{i,j} = C(2i+2j+k, i+1) - C(2i+2j+k, i).
    #[serde(alias = "temperley_B")]
    TemperleyB { k: usize },
    /// Order-n principal corner, offset k, of the antisymmetric Pascal
    /// triangle with first column (0, 1, 1, 1, ...).
    #[serde(alias = "T_k")]
    TK { k: usize },
    /// Diagonal gamma, then d = u1 d_left + u2 d_below above the diagonal and
    /// d = l1 d_up + l2 d_right below it.
    DiagonalConstruction {
        gamma: SequenceSpec,
        u1: Scalar,
        u2: Scalar,
        l1: Scalar,
        l2: Scalar,
    },
    /// Entries a^{|i-j|}.
    PowerDistance { a: Scalar },
}

pub fn build(spec: &MatrixSpec, n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::MalformedSpec("matrix order must be positive".into()));
    }
    match spec {
        MatrixSpec::PascalShifted { s, t } => Ok(DenseMatrix::from_fn(n, |i, j| {
            Scalar::from_int(binom_int((i + j + s + t) as i64, (i + s) as i64))
        })),
        MatrixSpec::InverseBinomial { s, t } => Ok(DenseMatrix::from_fn(n, |i, j| {
            Scalar::ratio(Int::from(1), binom_int((i + j + s + t) as i64, (i + s) as i64))
        })),
        MatrixSpec::GeneralizedPascal { alpha, beta } => {
            let a = generate(alpha, n)?;
            let b = generate(beta, n)?;
            generalized_pascal_from_terms(&a, &b)
        }
        MatrixSpec::PerturbedPascal { c } => {
            let mut m = build(&MatrixSpec::PascalShifted { s: 0, t: 0 }, n)?;
            for i in 0..n {
                for j in 0..n {
                    let mut q = Scalar::zero();
                    for (s, row) in c.iter().enumerate() {
                        for (t, coeff) in row.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            let w = binom_int(i as i64, s as i64) * binom_int(j as i64, t as i64);
                            q = q + coeff * &Scalar::from_int(w);
                        }
                    }
                    m[(i, j)] = &m[(i, j)] + &q;
                }
            }
            Ok(m)
        }
        MatrixSpec::GramBinomial { k } => {
            let limit = (n + k) as i64;
            Ok(DenseMatrix::from_fn(n, |i, j| {
                let mut g = Int::from(0);
                for s in (i.max(j) as i64)..limit {
                    g += binom_int(s, i as i64) * binom_int(s, j as i64);
                }
                Scalar::from_int(g)
            }))
        }
        MatrixSpec::Rank1Driven { alpha, beta } => {
            let a = generate(alpha, n)?;
            let b = generate(beta, n)?;
            let mut m = DenseMatrix::from_fn(n, |_, _| Scalar::zero());
            for i in 0..n {
                for j in 0..n {
                    let mut v = &a[i] * &b[j];
                    if i > 0 {
                        v = v + &m[(i - 1, j)];
                    }
                    if j > 0 {
                        v = v + &m[(i, j - 1)];
                    }
                    m[(i, j)] = v;
                }
            }
            Ok(m)
        }
        MatrixSpec::KrattenthalerA { rho, sigma, x } => {
            let col: Vec<Scalar> = (0..n as i64).map(|i| rho.pow(i)).collect();
            let row: Vec<Scalar> = (0..n as i64).map(|j| sigma.pow(j)).collect();
            Ok(fill_kratt(&col, &row, x))
        }
        MatrixSpec::KrattenthalerB { rho, x } => {
            let mut col = vec![Scalar::zero()];
            let mut row = vec![Scalar::zero()];
            for i in 1..n as i64 {
                col.push(rho.pow(i - 1));
                row.push(-rho.pow(i - 1));
            }
            Ok(fill_kratt(&col, &row, x))
        }
        MatrixSpec::TemperleyA { k } => temperley(n, *k, 0),
        MatrixSpec::TemperleyB { k } => temperley(n, *k, 1),
        MatrixSpec::TK { k } => {
            let big = symplectic_unit_pascal(k + n)?;
            Ok(big.corner(*k, n))
        }
        MatrixSpec::DiagonalConstruction { gamma, u1, u2, l1, l2 } => {
            let g = generate(gamma, n)?;
            let mut m = DenseMatrix::from_fn(n, |_, _| Scalar::zero());
            for i in 0..n {
                m[(i, i)] = g[i].clone();
            }
            for dist in 1..n {
                for i in 0..n - dist {
                    let j = i + dist;
                    m[(i, j)] = u1 * &m[(i, j - 1)] + u2 * &m[(i + 1, j)];
                    m[(j, i)] = l1 * &m[(j - 1, i)] + l2 * &m[(j, i + 1)];
                }
            }
            Ok(m)
        }
        MatrixSpec::PowerDistance { a } => Ok(DenseMatrix::from_fn(n, |i, j| {
            a.pow((i as i64 - j as i64).abs())
        })),
    }
}

fn generalized_pascal_from_terms(alpha: &[Scalar], beta: &[Scalar]) -> Result<DenseMatrix> {
    if alpha[0] != beta[0] {
        return Err(Error::SpecMismatch {
            alpha0: alpha[0].to_string(),
            beta0: beta[0].to_string(),
        });
    }
    let n = alpha.len();
    let mut m = DenseMatrix::from_fn(n, |_, _| Scalar::zero());
    for i in 0..n {
        m[(i, 0)] = alpha[i].clone();
    }
    for j in 1..n {
        m[(0, j)] = beta[j].clone();
    }
    for i in 1..n {
        for j in 1..n {
            m[(i, j)] = &m[(i - 1, j)] + &m[(i, j - 1)];
        }
    }
    Ok(m)
}

fn fill_kratt(col: &[Scalar], row: &[Scalar], x: &Scalar) -> DenseMatrix {
    let n = col.len();
    let mut m = DenseMatrix::from_fn(n, |_, _| Scalar::zero());
    for i in 0..n {
        m[(i, 0)] = col[i].clone();
    }
    for j in 1..n {
        m[(0, j)] = row[j].clone();
    }
    for i in 1..n {
        for j in 1..n {
            m[(i, j)] = &m[(i - 1, j)] + &m[(i, j - 1)] + &(x * &m[(i - 1, j - 1)]);
        }
    }
    m
}

fn temperley(n: usize, k: usize, shift: i64) -> Result<DenseMatrix> {
    let mut m = DenseMatrix::from_fn(n, |_, _| Scalar::zero());
    for i in 0..n {
        for j in 0..n {
            let top = (2 * i + 2 * j + k) as i64;
            let lo = i as i64 + shift;
            let v = binomial(top, lo, Convention::Extended)?
                - binomial(top, lo - 1, Convention::Extended)?;
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

/// P_{alpha, -alpha} from explicit leading terms: antisymmetric whenever
/// alpha starts with 0.
pub fn antisymmetric_pascal(alpha: &[Scalar], order: usize) -> Result<DenseMatrix> {
    if alpha.len() < order {
        return Err(Error::InsufficientTerms {
            needed: order,
            got: alpha.len(),
        });
    }
    let minus: Vec<Scalar> = alpha.iter().map(|a| -a).collect();
    build(
        &MatrixSpec::GeneralizedPascal {
            alpha: SequenceSpec::Explicit {
                terms: alpha.to_vec(),
            },
            beta: SequenceSpec::Explicit { terms: minus },
        },
        order,
    )
}

/// The antisymmetric generalized Pascal triangle with first column
/// (0, 1, 1, 1, ...) and first row its negative, filled by the recurrence.
pub fn symplectic_unit_pascal(order: usize) -> Result<DenseMatrix> {
    let mut alpha = vec![Scalar::zero()];
    alpha.resize(order.max(1), Scalar::one());
    let beta: Vec<Scalar> = alpha.iter().map(|a| -a).collect();
    generalized_pascal_from_terms(&alpha, &beta)
}

/// Band matrix: entry (i, j) takes the value of band j-i at phase i mod p,
/// zero outside [-s, t]; finite perturbation added on top.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandedPeriodicSpec {
    pub s: usize,
    pub t: usize,
    pub p: usize,
    #[serde(with = "band_keys")]
    pub bands: BTreeMap<i64, Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perturbation: Vec<(usize, usize, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<usize>,
}

/// Band offsets as JSON object keys ("-1", "0", "1"); spelled out so the
/// encoding survives format-agnostic buffering.
mod band_keys {
    use super::*;

    pub fn serialize<S: Serializer>(
        bands: &BTreeMap<i64, Vec<Scalar>>,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(bands.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<BTreeMap<i64, Vec<Scalar>>, D::Error> {
        let raw: BTreeMap<String, Vec<Scalar>> = BTreeMap::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<i64>()
                    .map(|k| (k, v))
                    .map_err(|_| D::Error::custom(format!("band offset `{k}` is not an integer")))
            })
            .collect()
    }
}

impl BandedPeriodicSpec {
    /// Constant bands a..e on offsets -2..2.
    pub fn constant_pentadiagonal(a: i64, b: i64, c: i64, d: i64, e: i64) -> Self {
        let bands = [(-2, a), (-1, b), (0, c), (1, d), (2, e)]
            .into_iter()
            .map(|(o, v)| (o, vec![Scalar::from(v)]))
            .collect();
        BandedPeriodicSpec {
            s: 2,
            t: 2,
            p: 1,
            bands,
            perturbation: Vec::new(),
            support: None,
        }
    }

    pub fn constant_tridiagonal(b: i64, c: i64, d: i64) -> Self {
        let bands = [(-1, b), (0, c), (1, d)]
            .into_iter()
            .map(|(o, v)| (o, vec![Scalar::from(v)]))
            .collect();
        BandedPeriodicSpec {
            s: 1,
            t: 1,
            p: 1,
            bands,
            perturbation: Vec::new(),
            support: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::MalformedSpec("band period must be positive".into()));
        }
        for (&offset, band) in &self.bands {
            if offset < -(self.s as i64) || offset > self.t as i64 {
                return Err(Error::MalformedSpec(format!(
                    "band offset {} outside [-{}, {}]",
                    offset, self.s, self.t
                )));
            }
            if band.len() != self.p {
                return Err(Error::MalformedSpec(format!(
                    "band at offset {} has {} values, period is {}",
                    offset,
                    band.len(),
                    self.p
                )));
            }
        }
        if let Some(bound) = self.support {
            for &(i, j, _) in &self.perturbation {
                if i >= bound || j >= bound {
                    return Err(Error::PerturbationOutOfSupport { i, j, bound });
                }
            }
        }
        Ok(())
    }
}

pub fn build_banded(spec: &BandedPeriodicSpec, n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::MalformedSpec("matrix order must be positive".into()));
    }
    spec.validate()?;
    let mut m = DenseMatrix::from_fn(n, |i, j| {
        match spec.bands.get(&(j as i64 - i as i64)) {
            Some(band) => band[i % spec.p].clone(),
            None => Scalar::zero(),
        }
    });
    for (i, j, v) in &spec.perturbation {
        if *i < n && *j < n {
            m[(*i, *j)] = &m[(*i, *j)] + v;
        }
    }
    Ok(m)
}
