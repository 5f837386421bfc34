//! Rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (the representation `BigRational` maintains canonically).
pub type Rational = BigRational;

/// Rational from a numerator/denominator pair. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Element of Q(i): `re + im*i` with exact rational parts.
///
/// Closed under `+`, `-`, `*`, and under `/` by any nonzero element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    re: Rational,
    im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        GaussRational::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational::new(int(n), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational::new(ratio(num, den), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussRational::new(r, Rational::zero())
    }

    /// Purely imaginary value `r*i`.
    pub fn imaginary(r: Rational) -> Self {
        GaussRational::new(Rational::zero(), r)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, a nonnegative rational that vanishes iff the value does.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Decimal `num/den` strings for the real and imaginary parts, in the
    /// order (re numerator, re denominator, im numerator, im denominator).
    pub fn to_parts_strings(&self) -> (String, String, String, String) {
        (
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        )
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussRational {
    type Output = GaussRational;
    fn div(self, rhs: &GaussRational) -> GaussRational {
        self.checked_div(rhs)
            .expect("division of Gaussian rationals by zero")
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussRational {
            type Output = GaussRational;
            fn $method(self, rhs: GaussRational) -> GaussRational {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -&self
    }
}

fn fmt_imaginary_magnitude(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_one() {
        write!(f, "i")
    } else {
        write!(f, "{}*i", r)
    }
}

impl fmt::Display for GaussRational {
    /// Canonical text form: `0`, `-1/2`, `2*i`, `1-2/3*i`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return fmt_imaginary_magnitude(&self.im.abs(), f);
        }
        write!(f, "{}", self.re)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        fmt_imaginary_magnitude(&self.im.abs(), f)
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from_int(-1));
    }

    #[test]
    fn inverse_of_nonzero() {
        let z = GaussRational::new(ratio(1, 2), ratio(-3, 4));
        let inv = z.inverse().unwrap();
        assert!((&z * &inv).is_one());
        assert!(GaussRational::zero().inverse().is_none());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(GaussRational::zero().to_string(), "0");
        assert_eq!(GaussRational::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussRational::imaginary(int(2)).to_string(), "2*i");
        assert_eq!(GaussRational::imaginary(int(-1)).to_string(), "-i");
        assert_eq!(
            GaussRational::new(int(1), ratio(-2, 3)).to_string(),
            "1-2/3*i"
        );
    }
}
