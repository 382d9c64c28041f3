//! Exact rational coordinates and their wire format.
//!
//! Coordinates travel as strings `"p"` or `"p/q"` and are always emitted in
//! lowest terms. No floating point is used in any geometric decision.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Parses `"p"` or `"p/q"`. Also accepts plain JSON integers upstream.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_owned());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    match parts.next() {
        None => Ok(BigRational::from_integer(num)),
        Some(den) => {
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Lowest-terms rendering, `"p"` when integral.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Approximation for SVG output only; never used in predicates.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // good enough for drawing: saturate huge values
    let n = numer.to_string().parse::<f64>().unwrap_or(if numer.is_negative() {
        f64::MIN
    } else {
        f64::MAX
    });
    let d = denom.to_string().parse::<f64>().unwrap_or(f64::MAX);
    n / d
}

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Point {
        Point { x, y }
    }

    pub fn of(x: i64, y: i64) -> Point {
        Point { x: rat(x), y: rat(y) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // reduced on output
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "x", "1/0", "1/2/3", "1.5"] {
            assert!(parse_rat(s).is_err(), "{s:?} should fail");
        }
    }
}
