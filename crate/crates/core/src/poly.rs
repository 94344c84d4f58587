use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Univariate polynomial over `Scalar`, coefficients stored ascending.
/// Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPolynomial {
    coeffs: Vec<Scalar>,
}

impl UniPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolynomial { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(coeff: Scalar, degree: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree];
        coeffs.push(coeff);
        Self::from_coeffs(coeffs)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact Euclidean division; None when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for i in 0..=dd {
                let v = &rem[k + i] - &(&divisor.coeffs[i] * &f);
                rem[k + i] = v;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            quo[k] = f;
        }
        Some((Self::from_coeffs(quo), Self::from_coeffs(rem)))
    }

    /// True iff `self` divides `other` with zero remainder.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = other.div_rem(self).unwrap();
        r.is_zero()
    }

    /// Lagrange interpolation through points with pairwise distinct x.
    pub fn interpolate(points: &[(Scalar, Scalar)]) -> Self {
        let mut acc = UniPolynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = UniPolynomial::constant(Scalar::one());
            let mut denom = Scalar::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis * UniPolynomial::from_coeffs(vec![-xj.clone(), Scalar::one()]);
                let diff = xi - xj;
                assert!(!diff.is_zero(), "duplicate interpolation node");
                denom = denom * diff;
            }
            acc = acc + basis.scale(&(yi / &denom));
        }
        acc
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = num_traits::Signed::abs(c);
            if first {
                if num_traits::Signed::is_negative(c) {
                    f.write_str("-")?;
                }
                first = false;
            } else if num_traits::Signed::is_negative(c) {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !num_traits::One::is_one(&mag) {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
            out.push(a + b);
        }
        Self::from_coeffs(out)
    }
}

impl Sub for UniPolynomial {
    type Output = UniPolynomial;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> Self {
        UniPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + &(a * b);
                out[i + j] = v;
            }
        }
        Self::from_coeffs(out)
    }
}

impl Zero for UniPolynomial {
    fn zero() -> Self {
        UniPolynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPolynomial {
    fn one() -> Self {
        UniPolynomial::constant(Scalar::one())
    }
}
