//! Exact rational probabilities.
//!
//! All probability data is carried as [`Rational`], an arbitrary precision
//! fraction kept in lowest terms with a positive denominator. Floating point
//! only appears when an entropy is evaluated.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Parses `"a/b"` or an integer literal; surrounding whitespace is ignored.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Rational text: `"a/b"`, or `"a"` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse(" 2/4 "), Some(ratio(1, 2)));
        assert_eq!(parse("1"), Some(one()));
        assert_eq!(parse("0"), Some(zero()));
        assert_eq!(parse("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("a/b"), None);
        assert_eq!(parse(""), None);
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let r = ratio(4, -8);
        assert_eq!(r.numer(), &BigInt::from(-1));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(format(&ratio(6, 3)), "2");
        assert_eq!(format(&ratio(3, 12)), "1/4");
    }

    #[test]
    fn unit_interval() {
        assert!(is_unit_interval(&zero()));
        assert!(is_unit_interval(&one()));
        assert!(!is_unit_interval(&ratio(3, 2)));
        assert!(!is_unit_interval(&ratio(-1, 5)));
    }
}
