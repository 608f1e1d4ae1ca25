//! Arbitrary-precision rationals, always reduced, denominator positive.
//!
//! `num_rational::BigRational` already maintains exactly the representation
//! we need (gcd-reduced, positive denominator), so `Rat` is an alias plus a
//! handful of helpers used across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p"; the denominator must be nonzero.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid integer {den:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Render as "p/q", or "p" when integral.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reduce into the fundamental domain [0, 1).
pub fn mod_one(r: &Rat) -> Rat {
    let f = r.floor();
    r - f
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators, as a positive integer.
pub fn lcm_denoms<'a, I: IntoIterator<Item = &'a Rat>>(it: I) -> BigInt {
    let mut l = BigInt::one();
    for r in it {
        l = l.lcm(r.denom());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4/2").unwrap(), rat_int(-2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rat(&rat(4, 2)), "2");
    }

    #[test]
    fn mod_one_reduces_into_unit_interval() {
        assert_eq!(mod_one(&rat(7, 2)), rat(1, 2));
        assert_eq!(mod_one(&rat(-1, 3)), rat(2, 3));
        assert_eq!(mod_one(&rat_int(-2)), rat_int(0));
    }

    #[test]
    fn lcm_of_denominators() {
        let v = [rat(1, 2), rat(2, 3), rat_int(5)];
        assert_eq!(lcm_denoms(v.iter()), BigInt::from(6));
    }
}
