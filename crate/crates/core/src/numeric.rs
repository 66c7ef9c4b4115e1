//! Exact rational arithmetic and axis-aligned box primitives.
//!
//! Every length, coordinate and polynomial value in this crate is a
//! [`Rational`]. There is no floating point in any computation path; floats
//! only appear when a mesh is written for viewing.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in canonical form. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Machine form `p/q`, integers included (`3/1`).
    pub fn to_canonical_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    /// Strict parser for machine documents: accepts only `p/q` with `q > 0`
    /// already in lowest terms.
    pub fn parse_canonical(text: &str) -> Result<Self> {
        let (num, den) = text
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("rational {text:?} is not of the form p/q")))?;
        let num: BigInt = parse_int(num, text)?;
        let den: BigInt = parse_int(den, text)?;
        if !den.is_positive() {
            return Err(Error::Parse(format!("rational {text:?} has a non-positive denominator")));
        }
        if !num.gcd(&den).is_one() {
            return Err(Error::Parse(format!("rational {text:?} is not in lowest terms")));
        }
        Ok(Rational(BigRational::new_raw(num, den)))
    }

    /// Exact decimal expansion when the denominator is `2^a 5^b`.
    pub fn to_exact_decimal(&self) -> Option<String> {
        let mut den = self.denom().clone();
        let (two, five) = (BigInt::from(2), BigInt::from(5));
        let mut twos = 0usize;
        let mut fives = 0usize;
        while den.is_even() {
            den /= &two;
            twos += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return None;
        }
        let places = twos.max(fives);
        let scaled = self.numer() * num_traits::pow(BigInt::from(10), places) / self.denom();
        Some(place_point(&scaled, places as i64))
    }

    /// Decimal rounded to `digits` significant digits (round half away from
    /// zero), written without an exponent and without trailing zeros.
    pub fn to_significant_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let num = self.numer().abs();
        let den = self.denom().clone();
        // Choose k with 10^(digits-1) <= |v| * 10^k < 10^digits.
        let mut k = digits as i64 - 1 - (num.to_string().len() as i64 - den.to_string().len() as i64);
        let low = num_traits::pow(BigInt::from(10), digits - 1);
        let high = &low * BigInt::from(10);
        let scaled_floor = |k: i64| -> BigInt {
            if k >= 0 {
                &num * num_traits::pow(BigInt::from(10), k as usize) / &den
            } else {
                &num / (&den * num_traits::pow(BigInt::from(10), (-k) as usize))
            }
        };
        loop {
            let probe = scaled_floor(k);
            if probe < low {
                k += 1;
            } else if probe >= high {
                k -= 1;
            } else {
                break;
            }
        }
        // Round half away from zero: floor(|v| * 10^k * 2 + 1) / 2.
        let twice = if k >= 0 {
            &num * num_traits::pow(BigInt::from(10), k as usize) * 2 / &den
        } else {
            &num * 2 / (&den * num_traits::pow(BigInt::from(10), (-k) as usize))
        };
        let rounded = (twice + 1) / 2;
        let mut text = place_point(&rounded, k);
        if self.numer().is_negative() {
            text.insert(0, '-');
        }
        text
    }
}

fn parse_int(part: &str, whole: &str) -> Result<BigInt> {
    let trimmed = part.trim();
    if trimmed.is_empty() || trimmed != part {
        return Err(Error::Parse(format!("rational {whole:?} has a malformed component")));
    }
    trimmed
        .parse()
        .map_err(|_| Error::Parse(format!("rational {whole:?} has a malformed component")))
}

/// Writes `value / 10^places` in plain decimal, trimming trailing zeros.
fn place_point(value: &BigInt, places: i64) -> String {
    let negative = value.is_negative();
    let digits = value.abs().to_string();
    let mut out = if places <= 0 {
        let mut s = digits;
        s.extend(std::iter::repeat_n('0', (-places) as usize));
        s
    } else {
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places - digits.len() + 1), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    };
    if negative && out != "0" {
        out.insert(0, '-');
    }
    out
}

/// Lenient parser for user input: `p`, `p/q` (any sign, any common factor).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidInput(format!("cannot parse {text:?} as a rational"));
        match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(text.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// Human form: integers print without a denominator.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on division by zero, like the integer types.
impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, v| acc * v)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, v| acc * v)
    }
}

/// Least common multiple of the denominators, 1 for an empty input.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Axis-aligned box `[origin, origin + extent)` in m dimensions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cuboid {
    pub origin: Vec<Rational>,
    pub extent: Vec<Rational>,
}

impl Cuboid {
    pub fn new(origin: Vec<Rational>, extent: Vec<Rational>) -> Result<Self> {
        if origin.is_empty() || origin.len() != extent.len() {
            return Err(Error::DimensionMismatch {
                expected: origin.len().max(1),
                found: extent.len(),
            });
        }
        Ok(Cuboid { origin, extent })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    /// Far corner, `origin + extent` componentwise.
    pub fn upper(&self) -> Vec<Rational> {
        self.origin
            .iter()
            .zip(&self.extent)
            .map(|(o, e)| o + e)
            .collect()
    }

    pub fn volume(&self) -> Rational {
        self.extent.iter().product()
    }

    /// True when the open interiors do not meet; boxes sharing only a face
    /// count as disjoint.
    pub fn interior_disjoint(&self, other: &Cuboid) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok((0..self.dim()).any(|k| {
            &self.origin[k] + &self.extent[k] <= other.origin[k]
                || &other.origin[k] + &other.extent[k] <= self.origin[k]
        }))
    }

    /// Closed containment of `inner` in `self`.
    pub fn contains(&self, inner: &Cuboid) -> Result<bool> {
        if self.dim() != inner.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: inner.dim(),
            });
        }
        Ok((0..self.dim()).all(|k| {
            self.origin[k] <= inner.origin[k]
                && &inner.origin[k] + &inner.extent[k] <= &self.origin[k] + &self.extent[k]
        }))
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &Cuboid) -> Cuboid {
        Cuboid {
            origin: self.origin.iter().chain(&other.origin).cloned().collect(),
            extent: self.extent.iter().chain(&other.extent).cloned().collect(),
        }
    }
}

impl PartialOrd for Cuboid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cuboid {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.origin, &self.extent).cmp(&(&other.origin, &other.extent))
    }
}

/// One emitted brick: its box plus where in the tree it came from.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Brick {
    pub cuboid: Cuboid,
    /// 1-based heap index of the leaf that emitted the brick.
    pub leaf: usize,
    /// Which repetition (1-based) of the leaf's innermost multiplicity loop.
    pub rep: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn cuboid(origin: &[Rational], extent: &[Rational]) -> Cuboid {
        Cuboid::new(origin.to_vec(), extent.to_vec()).unwrap()
    }

    #[test]
    fn normalize() {
        assert_eq!(q(4, 6).to_canonical_string(), "2/3");
        assert_eq!(q(3, -9).to_canonical_string(), "-1/3");
        assert_eq!(q(0, 5).to_canonical_string(), "0/1");
        assert!(matches!(Rational::new(1, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn canonical_parse_rejects_non_lowest_terms() {
        assert_eq!(Rational::parse_canonical("2/3").unwrap(), q(2, 3));
        assert_eq!(Rational::parse_canonical("-7/1").unwrap(), q(-7, 1));
        assert!(Rational::parse_canonical("4/6").is_err());
        assert!(Rational::parse_canonical("3").is_err());
        assert!(Rational::parse_canonical("3/-1").is_err());
        assert!(Rational::parse_canonical("0/2").is_err());
        assert!(Rational::parse_canonical(" 1/2").is_err());
    }

    #[test]
    fn lenient_parse() {
        assert_eq!("4".parse::<Rational>().unwrap(), q(4, 1));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert!("x".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn volumes() {
        let zero3 = [Rational::zero(), Rational::zero(), Rational::zero()];
        assert_eq!(cuboid(&zero3, &[q(1, 3), q(1, 1), q(3, 1)]).volume(), q(1, 1));
        assert_eq!(cuboid(&zero3, &[q(5, 3), q(2, 1), q(3, 1)]).volume(), q(10, 1));
        let zero2 = [Rational::zero(), Rational::zero()];
        assert_eq!(cuboid(&zero2, &[q(1, 1), q(1, 1)]).volume(), q(1, 1));
    }

    #[test]
    fn disjointness() {
        let one = q(1, 1);
        let a = cuboid(&[q(0, 1), q(0, 1)], &[one.clone(), one.clone()]);
        let b = cuboid(&[q(1, 1), q(0, 1)], &[one.clone(), one.clone()]);
        assert!(a.interior_disjoint(&b).unwrap());

        let c = cuboid(&[q(0, 1), q(0, 1)], &[q(2, 1), q(2, 1)]);
        let d = cuboid(&[q(1, 1), q(1, 1)], &[q(2, 1), q(2, 1)]);
        assert!(!c.interior_disjoint(&d).unwrap());

        // First two bricks of the 3D cube construction.
        let e = cuboid(&[q(0, 1), q(0, 1), q(0, 1)], &[q(1, 3), q(1, 1), q(3, 1)]);
        let f = cuboid(&[q(1, 3), q(0, 1), q(0, 1)], &[q(4, 3), q(1, 1), q(3, 1)]);
        assert!(e.interior_disjoint(&f).unwrap());

        assert!(matches!(
            a.interior_disjoint(&e),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn decimals() {
        assert_eq!(q(0, 1).to_exact_decimal().unwrap(), "0");
        assert_eq!(q(16, 1).to_exact_decimal().unwrap(), "16");
        assert_eq!(q(7, 2).to_exact_decimal().unwrap(), "3.5");
        assert_eq!(q(-3, 40).to_exact_decimal().unwrap(), "-0.075");
        assert_eq!(q(1, 3).to_exact_decimal(), None);
        assert_eq!(q(1, 3).to_significant_decimal(17), "0.33333333333333333");
        assert_eq!(q(2, 3).to_significant_decimal(17), "0.66666666666666667");
        assert_eq!(q(16, 3).to_significant_decimal(17), "5.3333333333333333");
        assert_eq!(q(-200, 3).to_significant_decimal(3), "-66.7");
        assert_eq!(q(100000, 3).to_significant_decimal(2), "33000");
        assert_eq!(q(1, 3000).to_significant_decimal(2), "0.00033");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn small_box(dim: usize) -> impl Strategy<Value = Cuboid> {
        (
            proptest::collection::vec(small_rational(), dim),
            proptest::collection::vec((1i64..20, 1i64..6).prop_map(|(n, d)| q(n, d)), dim),
        )
            .prop_map(|(o, e)| Cuboid::new(o, e).unwrap())
    }

    proptest! {
        #[test]
        fn arithmetic_is_canonical_and_exact(a in small_rational(), b in small_rational()) {
            for v in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(v.denom().is_positive());
                prop_assert!(v.numer().gcd(v.denom()).is_one());
                prop_assert_eq!(Rational::parse_canonical(&v.to_canonical_string()).unwrap(), v.clone());
            }
            prop_assert_eq!((&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a);
            }
        }

        #[test]
        fn disjointness_is_symmetric(a in small_box(3), b in small_box(3)) {
            prop_assert_eq!(a.interior_disjoint(&b).unwrap(), b.interior_disjoint(&a).unwrap());
        }

        #[test]
        fn volume_is_multiplicative(a in small_box(2), b in small_box(1)) {
            prop_assert_eq!(a.product(&b).volume(), a.volume() * b.volume());
        }
    }
}
