//! Elements of the circle group T stored as exact rational angles.
//!
//! `p/q` stands for `exp(2πi·p/q)`. The group law of T is angle addition
//! modulo one, so the multiplicative operators below add angles.

use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// A point of T as a reduced angle `num/den` with `0 <= num < den`.
///
/// Denominators are machine integers; every intermediate is formed in
/// `u128`/`i128` after reducing operands modulo the denominator, so the
/// arithmetic is exact for any denominator that fits in a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleElement {
    num: u64,
    den: u64,
}

impl CircleElement {
    pub const IDENTITY: CircleElement = CircleElement { num: 0, den: 1 };
    /// The angle 1/2, i.e. the scalar -1.
    pub const MINUS_ONE: CircleElement = CircleElement { num: 1, den: 2 };

    /// Builds the angle `num/den` reduced modulo one.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "circle element with zero denominator");
        let r = (num as i128).rem_euclid(den as i128) as u64;
        Self::reduced(r, den)
    }

    fn reduced(num: u64, den: u64) -> Self {
        if num == 0 {
            return Self::IDENTITY;
        }
        let g = num.gcd(&den);
        CircleElement {
            num: num / g,
            den: den / g,
        }
    }

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_identity(&self) -> bool {
        self.num == 0
    }

    /// `k`-th power: the angle multiplied by `k`, modulo one.
    pub fn pow(self, k: i64) -> Self {
        self.pow_wide(k as i128)
    }

    /// Same as [`pow`](Self::pow) for exponents that are products of two
    /// coordinates and may not fit in an `i64`.
    pub fn pow_wide(self, k: i128) -> Self {
        if self.num == 0 {
            return self;
        }
        let k = k.rem_euclid(self.den as i128) as u128;
        let n = (self.num as u128 * k) % self.den as u128;
        Self::reduced(n as u64, self.den)
    }

    pub fn inv(self) -> Self {
        self.pow(-1)
    }

    /// Complex conjugation on T coincides with inversion.
    pub fn conj(self) -> Self {
        self.inv()
    }

    /// Whether `exp(2πi·angle)` is an `n`-th root of unity.
    pub fn divides_order(&self, n: u64) -> bool {
        n.is_multiple_of(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for CircleElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for CircleElement {
    type Output = CircleElement;

    fn mul(self, rhs: CircleElement) -> CircleElement {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as u128 * (l / self.den) as u128;
        let b = rhs.num as u128 * (l / rhs.den) as u128;
        let n = ((a + b) % l as u128) as u64;
        Self::reduced(n, l)
    }
}

impl MulAssign for CircleElement {
    fn mul_assign(&mut self, rhs: CircleElement) {
        *self = *self * rhs;
    }
}

impl std::iter::Product for CircleElement {
    fn product<I: Iterator<Item = CircleElement>>(iter: I) -> Self {
        iter.fold(CircleElement::IDENTITY, |acc, x| acc * x)
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}/{})", self.num, self.den)
    }
}

impl FromStr for CircleElement {
    type Err = ParseError;

    /// Accepts `p/q` (any integer `p`, positive `q`) or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseError::Angle(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(CircleElement::new(p, q))
            }
            None => {
                let p: i64 = s.parse().map_err(|_| bad())?;
                Ok(CircleElement::new(p, 1))
            }
        }
    }
}

impl Serialize for CircleElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CircleElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(p: i64, q: u64) -> CircleElement {
        CircleElement::new(p, q)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(t(1, 2) * t(1, 2), CircleElement::IDENTITY);
        assert_eq!(t(1, 3) * t(1, 2), t(5, 6));
        assert_eq!(t(0, 1) * t(3, 7), t(3, 7));
    }

    #[test]
    fn power_examples() {
        assert_eq!(t(1, 8).pow(-2), t(3, 4));
        assert_eq!(t(1, 3).pow(3), CircleElement::IDENTITY);
        assert_eq!(t(2, 5).pow(0), CircleElement::IDENTITY);
    }

    #[test]
    fn canonical_form() {
        let x = t(-7, 12);
        assert_eq!((x.num(), x.den()), (5, 12));
        let y = t(6, 8);
        assert_eq!((y.num(), y.den()), (3, 4));
        assert_eq!(t(4, 4), CircleElement::IDENTITY);
        assert_eq!(CircleElement::IDENTITY.den(), 1);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/2".parse::<CircleElement>().unwrap(), CircleElement::MINUS_ONE);
        assert_eq!("-1/4".parse::<CircleElement>().unwrap(), t(3, 4));
        assert_eq!("3".parse::<CircleElement>().unwrap(), CircleElement::IDENTITY);
        assert_eq!(t(11, 24).to_string(), "11/24");
        assert!("1/0".parse::<CircleElement>().is_err());
        assert!("a/b".parse::<CircleElement>().is_err());
    }

    #[test]
    fn wide_powers_stay_exact() {
        let x = t(1, 7);
        let k: i128 = (i64::MAX as i128) * 3;
        let expected = x.pow((k % 7) as i64);
        assert_eq!(x.pow_wide(k), expected);
    }

    fn angle() -> impl Strategy<Value = CircleElement> {
        (1u64..=24).prop_flat_map(|q| (0..q as i64).prop_map(move |p| CircleElement::new(p, q)))
    }

    proptest! {
        #[test]
        fn abelian_group_law(a in angle(), b in angle(), c in angle()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * CircleElement::IDENTITY, a);
            prop_assert_eq!(a * a.inv(), CircleElement::IDENTITY);
        }

        #[test]
        fn order_divides_denominator(a in angle(), j in -6i64..6, k in -6i64..6) {
            prop_assert_eq!(a.pow(a.den() as i64), CircleElement::IDENTITY);
            prop_assert_eq!(a.pow(j + k), a.pow(j) * a.pow(k));
        }
    }
}
