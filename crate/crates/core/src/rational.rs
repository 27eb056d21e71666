//! Exact rationals used by band operators and Higson functions.

use alloc::string::{String, ToString};

use num_traits::{One, Signed, Zero};

use crate::error::{usage, Result};

pub type Rational = num_rational::Ratio<i128>;

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

/// Parses `"p"` or `"p/q"`.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: i128 = num.parse().map_err(|_| usage!("not a rational: {text:?}"))?;
    let den: i128 = den.parse().map_err(|_| usage!("not a rational: {text:?}"))?;
    if den == 0 {
        return Err(usage!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(num, den))
}

pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse(" 3 ").unwrap(), from_int(3));
        assert_eq!(format(&Rational::new(2, 4)), "1/2");
        assert_eq!(format(&from_int(-7)), "-7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
