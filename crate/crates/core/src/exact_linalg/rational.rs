use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

/// Exact rational scalar. `BigRational` keeps every value in lowest terms
/// with a positive denominator, so structural equality is numeric equality.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, integers, and decimals with an optional exponent
/// (`"-0.125"`, `"3e-2"`). Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return input("empty rational literal");
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p, text)?;
        let q = parse_int(q, text)?;
        if q.is_zero() {
            return input(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(at) => {
            let exp = s[at + 1..]
                .parse::<i32>()
                .map_err(|_| crate::Error::Input(format!("bad exponent in {text:?}")))?;
            (&s[..at], exp)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return input(format!("not a number: {text:?}"));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return input(format!("not a number: {text:?}"));
    }
    let digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
        .map_err(|_| crate::Error::Input(format!("not a number: {text:?}")))?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim())
        .map_err(|_| crate::Error::Input(format!("bad integer in rational literal {whole:?}")))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Exact conversion of a finite float (every finite `f64` is a dyadic rational).
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| crate::Error::Input(format!("non-finite coordinate {x}")))
}

pub fn to_f64(x: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-2/-4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("25e-2").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.001").unwrap(), ratio(1, 1000));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = ratio(2, 4) + ratio(1, 4);
        assert_eq!(format_rational(&a), "3/4");
        assert_eq!(format_rational(&(ratio(1, 2) + ratio(1, 2))), "1");
        assert_eq!(a.denom(), &BigInt::from(4));
    }

    #[test]
    fn floats_convert_exactly() {
        assert_eq!(from_f64(0.5).unwrap(), ratio(1, 2));
        assert!(from_f64(f64::NAN).is_err());
    }
}
