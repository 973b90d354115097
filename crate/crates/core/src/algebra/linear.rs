use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{Rational, Variables};

/// `c_1 x_1 + ... + c_n x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    vars: Variables,
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(vars: Variables, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), vars.arity(), "linear form arity");
        LinearForm { vars, coeffs }
    }

    /// `p*v1 + q*v2`.
    pub fn gl2(p: Rational, q: Rational) -> Self {
        Self::new(Variables::Gl2, vec![p, q])
    }

    /// `(1 - t) v1 + t v2`, the torus weight of the character `chi(1-t, t)`.
    pub fn interpolate(t: &Rational) -> Self {
        Self::gl2(Rational::one() - t, t.clone())
    }

    /// `v1 - v2`.
    pub fn diagonal() -> Self {
        Self::gl2(Rational::one(), -Rational::one())
    }

    pub fn from_integers(vars: Variables, coeffs: &[i64]) -> Self {
        Self::new(vars, coeffs.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn vars(&self) -> Variables {
        self.vars
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LinearForm {
            vars: self.vars,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Splits `self = lead * normalized` where the first nonzero coefficient
    /// of `normalized` is 1. `None` for the zero form.
    pub fn normalize(&self) -> Option<(Rational, LinearForm)> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?.clone();
        let inv = Rational::one() / &lead;
        Some((lead, self.scale(&inv)))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).map(|(a, b)| a * b).sum()
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.swap(i, j);
        LinearForm {
            vars: self.vars,
            coeffs: c,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.vars.arity();
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, c.clone())
        });
        Polynomial::from_terms(self.vars, terms).expect("arity checked at construction")
    }

    /// Number of nonzero coefficients.
    pub(crate) fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_canonical_string(&self) -> String {
        alloc::format!("{}", self.to_polynomial())
    }
}

/// Forms with fewer nonzero coefficients first, then by coefficients in
/// descending order, so `v1 < v2 < v1-v2` and `z < x+z < y+z < x+y+z`.
impl Ord for LinearForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| self.support_len().cmp(&other.support_len()))
            .then_with(|| other.coeffs.cmp(&self.coeffs))
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}
