//! Scalar types used for set weights and costs.
//!
//! Everything that only sums and compares weights (cost, fitness, the
//! evolutionary solvers, the exact oracle) is generic over [`Weight`], so a
//! rational instance can be rescaled to integer weights for the hot loops.
//! Anything that divides (greedy ratios, prices, partial ratios) needs an
//! [`ExactWeight`], i.e. an exact rational type.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A totally ordered scalar that can be summed exactly.
pub trait Weight:
    Clone
    + Ord
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + 'static
{
    fn from_u64(v: u64) -> Self;

    /// Converts an exact rational, returning `None` when the value is not
    /// representable (a fraction for an integer type, or overflow).
    fn from_rational(r: &Rational) -> Option<Self>;

    fn to_rational(&self) -> Rational;
}

/// A [`Weight`] closed under exact division.
pub trait ExactWeight: Weight + One + Div<Output = Self> + Signed {}

macro_rules! int_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            fn from_u64(v: u64) -> Self {
                <$t as FromPrimitive>::from_u64(v).expect("u64 fits")
            }

            fn from_rational(r: &Rational) -> Option<Self> {
                if !r.is_integer() {
                    return None;
                }
                r.to_integer().to_string().parse().ok()
            }

            fn to_rational(&self) -> Rational {
                Rational::from_integer(BigInt::from(*self))
            }
        }
    )*};
}

int_weight!(i64, i128);

impl Weight for BigInt {
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

macro_rules! ratio_weight {
    ($($t:ty),*) => {$(
        impl Weight for Ratio<$t> {
            fn from_u64(v: u64) -> Self {
                Ratio::from_integer(<$t as FromPrimitive>::from_u64(v).expect("u64 fits"))
            }

            fn from_rational(r: &Rational) -> Option<Self> {
                let n: $t = r.numer().to_string().parse().ok()?;
                let d: $t = r.denom().to_string().parse().ok()?;
                Some(Ratio::new(n, d))
            }

            fn to_rational(&self) -> Rational {
                Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }

        impl ExactWeight for Ratio<$t> {}
    )*};
}

ratio_weight!(i64, i128);

impl Weight for BigRational {
    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl ExactWeight for BigRational {}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"7"`, `"-3"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero. Computed exactly, so the output does not depend on float formatting.
pub fn decimal_string(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow(shift);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer();
    let mut shift = shift;
    if digits.to_string().len() > sig {
        // Rounding carried into a new leading digit.
        digits /= &ten;
        shift -= 1;
    }
    let mut s = digits.to_string();
    let out = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            s = format!("{}{}", "0".repeat(shift - s.len() + 1), s);
        }
        let (int, frac) = s.split_at(s.len() - shift);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

/// The n-th harmonic number, `1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("harmonic number of 0 is undefined".into()));
    }
    Ok((1..=n).fold(Rational::zero(), |acc, i| {
        acc + Rational::new(BigInt::one(), BigInt::from(i))
    }))
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
