//! Exact fractions for subgroup-order sums and the bounds they are compared
//! against. Values stay in lowest terms with a positive denominator; every
//! operation is checked and reports overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Rational> {
        Rational::from_i128(num as i128, den as i128, "construction")
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128, op: &'static str) -> Result<Rational> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Rational {
            num: i64::try_from(num).map_err(|_| Error::Overflow(op))?,
            den: i64::try_from(den).map_err(|_| Error::Overflow(op))?,
        })
    }

    /// `num / den` from unsigned counts, as produced by subgroup sums.
    pub fn from_counts(num: u64, den: u64) -> Result<Rational> {
        let num = i64::try_from(num).map_err(|_| Error::Overflow("construction"))?;
        let den = i64::try_from(den).map_err(|_| Error::Overflow("construction"))?;
        Rational::new(num, den)
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Rational::from_i128(num, self.den as i128 * rhs.den as i128, "addition")
    }

    pub fn checked_sub(self, rhs: Rational) -> Result<Rational> {
        self.checked_add(Rational {
            num: rhs.num.checked_neg().ok_or(Error::Overflow("negation"))?,
            den: rhs.den,
        })
    }

    pub fn checked_mul(self, rhs: Rational) -> Result<Rational> {
        Rational::from_i128(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
            "multiplication",
        )
    }

    pub fn checked_div(self, rhs: Rational) -> Result<Rational> {
        if rhs.num == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        Rational::from_i128(
            self.num as i128 * rhs.den as i128,
            self.den as i128 * rhs.num as i128,
            "division",
        )
    }

    pub fn recip(self) -> Result<Rational> {
        Rational::ONE.checked_div(self)
    }

    /// For display only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Always `num/den`, also for integers.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Both products fit in i128.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::parse(s, "expected an integer or num/den");
        match s.split_once('/') {
            Some((n, d)) => Rational::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Rational::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `Rational::new(num, den).unwrap()` for literals.
#[macro_export]
macro_rules! rat {
    ($n:expr) => {
        $crate::rational::Rational::integer($n)
    };
    ($n:expr, $d:expr) => {
        $crate::rational::Rational::new($n, $d).expect("valid rational literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(Rational::new(0, 5).unwrap(), Rational::ZERO);
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = rat!(23, 8);
        let b = rat!(4, 3);
        assert_eq!(a.checked_mul(b).unwrap(), rat!(23, 6));
        assert_eq!(rat!(2).checked_add(rat!(11, 12)).unwrap(), rat!(35, 12));
        assert_eq!(rat!(1, 2).checked_sub(rat!(1, 3)).unwrap(), rat!(1, 6));
        assert_eq!(rat!(1, 2).checked_div(rat!(1, 4)).unwrap(), rat!(2));
        assert!(rat!(1).checked_div(Rational::ZERO).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::integer(i64::MAX);
        assert_eq!(big.checked_add(big), Err(Error::Overflow("addition")));
        assert_eq!(big.checked_mul(big), Err(Error::Overflow("multiplication")));
        assert!(Rational::integer(i64::MIN).checked_sub(rat!(1)).is_err());
    }

    #[test]
    fn formatting_and_parsing() {
        assert_eq!(rat!(35, 12).to_string(), "35/12");
        assert_eq!(rat!(1).to_string(), "1");
        assert_eq!(rat!(1).to_fraction_string(), "1/1");
        assert_eq!("163/56".parse::<Rational>().unwrap(), rat!(163, 56));
        assert_eq!("7".parse::<Rational>().unwrap(), rat!(7));
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_is_exact() {
        assert!(rat!(163, 56) < rat!(35, 12));
        assert!(rat!(23, 8) < rat!(27, 8));
        // Differ by 1/(den1*den2) with large denominators.
        let a = Rational::new(i64::MAX - 1, i64::MAX).unwrap();
        let b = Rational::new(i64::MAX - 2, i64::MAX - 1).unwrap();
        assert!(b < a);
    }

    proptest! {
        #[test]
        fn field_laws_on_small_values(an in -1000i64..1000, ad in 1i64..1000,
                                       bn in -1000i64..1000, bd in 1i64..1000) {
            let a = Rational::new(an, ad).unwrap();
            let b = Rational::new(bn, bd).unwrap();
            prop_assert_eq!(a.checked_add(b).unwrap(), b.checked_add(a).unwrap());
            prop_assert_eq!(a.checked_add(b).unwrap().checked_sub(b).unwrap(), a);
            prop_assert_eq!(a.checked_mul(b).unwrap(), b.checked_mul(a).unwrap());
            prop_assert_eq!(a.cmp(&b), (an * bd).cmp(&(bn * ad)));
            let g = gcd(a.numer() as i128, a.denom() as i128);
            prop_assert!(a.denom() > 0 && (g == 1 || a.numer() == 0));
        }
    }
}
