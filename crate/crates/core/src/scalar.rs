use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used wherever a value is known to be integral.
pub type Int = BigInt;

/// Exact rational number. Always in lowest terms with a positive denominator;
/// `num_rational` maintains both invariants on every construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn from_int(v: impl Into<Int>) -> Self {
        Scalar(BigRational::from_integer(v.into()))
    }

    /// Builds `num/den` reduced to lowest terms. Panics if `den` is zero.
    pub fn ratio(num: impl Into<Int>, den: impl Into<Int>) -> Self {
        Scalar(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &Int {
        self.0.numer()
    }

    pub fn denom(&self) -> &Int {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_int(&self) -> Option<Int> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// Exact power. Negative exponents invert; panics on `0^negative`.
    pub fn pow(&self, exp: i64) -> Self {
        if exp >= 0 {
            Scalar(self.0.pow(exp as i32))
        } else {
            assert!(!self.is_zero(), "zero to a negative power");
            Scalar(self.0.pow(exp as i32))
        }
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

impl From<Int> for Scalar {
    fn from(v: Int) -> Self {
        Scalar::from_int(v)
    }
}

macro_rules! scalar_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Scalar {
            fn from(v: $t) -> Self {
                Scalar::from_int(Int::from(v))
            }
        }
    )*};
}
scalar_from_prim!(i8, i16, i32, i64, u8, u16, u32, u64, usize, isize);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Prints "p/q", omitting "/q" when the denominator is 1.
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = num_rational::ParseRatioError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BigRational::from_str(s).map(Scalar)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" string or an integer")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Scalar, E> {
                s.parse().map_err(|_| E::custom(format!("invalid rational: {s:?}")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from(v))
            }
        }
        deserializer.deserialize_any(V)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);
forward_binop!(Rem, rem);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Num for Scalar {
    type FromStrRadixErr = <BigRational as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Scalar)
    }
}

impl Signed for Scalar {
    fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        Scalar(self.0.abs_sub(&other.0))
    }
    fn signum(&self) -> Self {
        Scalar(self.0.signum())
    }
    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

/// Which binomial extension to apply at negative arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// C(n,k) = 0 for k < 0 or (n >= 0 and k > n); the generalized
    /// falling-factorial value for negative n.
    Standard,
    /// Standard, plus C(-1,-1) = C(-1,0) = 1 and C(k,-1) = 0 for k >= 0.
    Extended,
}

/// Binomial coefficient under the chosen convention. Always integral.
///
/// The extended convention leaves C(n,k) undefined for n < -1 with k < -1;
/// that quadrant is rejected rather than guessed.
pub fn binomial(n: i64, k: i64, convention: Convention) -> Result<Scalar> {
    match convention {
        Convention::Standard => Ok(Scalar::from_int(binom_standard(n, k))),
        Convention::Extended => {
            if k >= 0 {
                return Ok(Scalar::from_int(binom_standard(n, k)));
            }
            if n <= -2 && k <= -2 {
                return Err(Error::UnsupportedBinomial { n, k });
            }
            if n == -1 && k == -1 {
                Ok(Scalar::one())
            } else {
                Ok(Scalar::zero())
            }
        }
    }
}

fn binom_standard(n: i64, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    if n >= 0 {
        if k > n {
            return Int::zero();
        }
        choose(n, k)
    } else {
        // C(n,k) = (-1)^k C(k-n-1, k) for n < 0, k >= 0.
        let v = choose(k - n - 1, k);
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    }
}

/// C(n,k) for 0 <= k <= n; each intermediate quotient is itself a binomial,
/// so the integer divisions are exact.
fn choose(n: i64, k: i64) -> Int {
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 1..=k {
        acc = acc * Int::from(n - k + i) / Int::from(i);
    }
    acc
}

/// Exact integer square root: the unique r >= 0 with r^2 = v.
pub fn integer_sqrt_exact(v: &Scalar) -> Result<Scalar> {
    if v.is_negative() {
        return Err(Error::NegativeInput);
    }
    let not_square = || Error::NotAPerfectSquare { value: v.to_string() };
    let i = v.to_int().ok_or_else(not_square)?;
    let r = i.sqrt();
    if &r * &r == i {
        Ok(Scalar::from_int(r))
    } else {
        Err(not_square())
    }
}

/// Parity helper for signs of the form (-1)^C(n,2).
pub fn neg_one_pow(exp: i64) -> Scalar {
    if exp.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// C(n,2) as a plain integer, for exponents.
pub fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Convenience: standard-convention binomial as an `Int`; never fails.
pub fn binom_int(n: i64, k: i64) -> Int {
    binom_standard(n, k)
}
