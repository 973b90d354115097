//! Rational scalars and the variable contexts polynomials live in.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Smallest positive integer `m` with `m * q` integral.
pub fn denominator_of(q: &Rational) -> BigInt {
    q.denom().clone()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub(crate) fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The variable context of a polynomial. Arithmetic across contexts is
/// rejected rather than coerced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variables {
    /// `v1, v2`: Chern roots of the maximal torus of GL(2).
    Gl2,
    /// `x, y, z` for `d <= 3`, otherwise `x1, ..., xd`.
    Torus(usize),
}

impl Variables {
    pub fn arity(&self) -> usize {
        match self {
            Variables::Gl2 => 2,
            Variables::Torus(d) => *d,
        }
    }

    pub fn name(&self, i: usize) -> String {
        match self {
            Variables::Gl2 => format!("v{}", i + 1),
            Variables::Torus(d) if *d <= 3 => String::from(["x", "y", "z"][i]),
            Variables::Torus(_) => format!("x{}", i + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-5/3"), Some(rat(-5, 3)));
        assert_eq!(parse_rational(" 4 / 6 "), Some(rat(2, 3)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&int(12)), "12");
    }

    #[test]
    fn variable_names() {
        assert_eq!(Variables::Gl2.name(1), "v2");
        assert_eq!(Variables::Torus(3).name(2), "z");
        assert_eq!(Variables::Torus(4).name(0), "x1");
    }
}
