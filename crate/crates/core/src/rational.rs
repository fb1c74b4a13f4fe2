//! Exact rational scalars and their text encodings.
//!
//! All exact computation runs over [`Rational`], an arbitrary-precision
//! signed fraction kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `num/den` text, always with an explicit denominator (`5/1`, `-3/4`).
pub fn to_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den`, an integer, or a finite decimal such as `-0.125`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if (whole.is_empty() && frac.is_empty()) || !digits_ok(whole) || !digits_ok(frac) {
        return Err(Error::Parse(format!(
            "{s:?} is not a fraction or a finite decimal"
        )));
    }
    let joined = format!("{whole}{frac}");
    let num: BigInt = joined.parse().unwrap_or_else(|_| BigInt::zero());
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(num, den);
    Ok(if neg { -value } else { value })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator/denominator overflow f64.
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Generalized binomial `prod_{i<k} (x - i) / k!` for rational `x`.
pub fn binom(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - int(i as i64);
    }
    acc / Rational::from_integer(factorial(k))
}

pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Greatest common divisor of numerator and denominator is one; always true
/// for values built through `Rational::new`, exposed for invariant checks.
pub fn is_reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse("0.2").unwrap(), ratio(1, 5));
        assert_eq!(parse("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/0", "abc", "0.3.3", "1e-3", "0.333...", "."] {
            assert!(parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn text_always_carries_denominator() {
        assert_eq!(to_text(&int(5)), "5/1");
        assert_eq!(to_text(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(&int(6), 3), int(20));
        // binom(3/2, 2) = (3/2)(1/2)/2
        assert_eq!(binom(&ratio(3, 2), 2), ratio(3, 8));
        assert_eq!(binom_int(10, 4), BigInt::from(210));
        assert!(is_reduced(&(ratio(4, 6) * ratio(9, 2))));
    }
}
