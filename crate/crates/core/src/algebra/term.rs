//! Rational functions whose denominators are products of linear forms.
//!
//! Every denominator that occurs in the localization sums is a product of
//! linear forms, so they are kept factored as multisets and never expanded
//! until the final exact division.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::{Rational, Variables};
use super::{AlgebraError, LinearForm};

/// `scalar * numerator / prod(form^mult)`.
///
/// Denominator forms are normalized (first nonzero coefficient 1), pairwise
/// distinct, and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTerm {
    scalar: Rational,
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
}

impl RationalTerm {
    /// Builds a term, normalizing each denominator form and moving its
    /// leading coefficient into the scalar.
    pub fn new(
        scalar: Rational,
        numerator: Polynomial,
        factors: impl IntoIterator<Item = (LinearForm, u32)>,
    ) -> Result<Self, AlgebraError> {
        let vars = numerator.vars();
        let mut t = RationalTerm {
            scalar,
            numerator,
            denominator: BTreeMap::new(),
        };
        for (form, m) in factors {
            if form.vars() != vars {
                return Err(AlgebraError::VariableMismatch);
            }
            t.divide_by(&form, m)?;
        }
        Ok(t)
    }

    /// `scalar / prod(form^mult)`.
    pub fn reciprocal(
        vars: Variables,
        scalar: Rational,
        factors: impl IntoIterator<Item = (LinearForm, u32)>,
    ) -> Result<Self, AlgebraError> {
        Self::new(scalar, Polynomial::one(vars), factors)
    }

    pub fn zero(vars: Variables) -> Self {
        RationalTerm {
            scalar: Rational::zero(),
            numerator: Polynomial::zero(vars),
            denominator: BTreeMap::new(),
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalTerm {
            scalar: Rational::one(),
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    fn divide_by(&mut self, form: &LinearForm, m: u32) -> Result<(), AlgebraError> {
        if m == 0 {
            return Ok(());
        }
        let (lead, norm) = form.normalize().ok_or(AlgebraError::ZeroDenominator)?;
        self.scalar /= num_traits::pow(lead, m as usize);
        *self.denominator.entry(norm).or_insert(0) += m;
        Ok(())
    }

    pub fn vars(&self) -> Variables {
        self.numerator.vars()
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.denominator.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() || self.numerator.is_zero()
    }

    /// Expanded denominator polynomial.
    pub fn denominator_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::one(self.vars());
        for (f, &m) in &self.denominator {
            p = &p * &f.to_polynomial().pow(m);
        }
        p
    }

    /// `scalar * numerator`.
    pub fn scaled_numerator(&self) -> Polynomial {
        self.numerator.scale(&self.scalar)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut t = self.clone();
        t.scalar *= c;
        t
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let numerator = self.numerator.try_mul(&other.numerator)?;
        let mut t = RationalTerm {
            scalar: &self.scalar * &other.scalar,
            numerator,
            denominator: self.denominator.clone(),
        };
        for (f, &m) in &other.denominator {
            *t.denominator.entry(f.clone()).or_insert(0) += m;
        }
        Ok(t)
    }

    /// Value at `point`, or `None` if a denominator form vanishes there.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let mut den = Rational::one();
        for (f, &m) in &self.denominator {
            let x = f.evaluate(point);
            if x.is_zero() {
                return None;
            }
            den *= num_traits::pow(x, m as usize);
        }
        Some(&self.scalar * self.numerator.evaluate(point) / den)
    }

    /// Exchanges variables `i` and `j` everywhere.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let factors: Vec<_> = self
            .denominator
            .iter()
            .map(|(f, &m)| (f.swap_vars(i, j), m))
            .collect();
        Self::new(self.scalar.clone(), self.numerator.swap_vars(i, j), factors)
            .expect("swapping keeps forms nonzero")
    }

    /// Cancels denominator forms that divide the numerator. A zero numerator
    /// is left untouched.
    pub fn reduce(&mut self) {
        if self.numerator.is_zero() {
            return;
        }
        let forms: Vec<LinearForm> = self.denominator.keys().cloned().collect();
        for f in forms {
            let fp = f.to_polynomial();
            loop {
                let m = self.denominator[&f];
                if m == 0 {
                    break;
                }
                match self.numerator.exact_divide(&fp) {
                    Ok(q) => {
                        self.numerator = q;
                        self.denominator.insert(f.clone(), m - 1);
                    }
                    Err(_) => break,
                }
            }
            if self.denominator[&f] == 0 {
                self.denominator.remove(&f);
            }
        }
        // fold the scalar into the numerator
        if !self.scalar.is_one() {
            self.numerator = self.numerator.scale(&self.scalar);
            self.scalar = Rational::one();
        }
    }

    /// The polynomial this term equals, if its denominator divides the
    /// numerator exactly.
    pub fn to_polynomial(&self) -> Result<Polynomial, AlgebraError> {
        self.scaled_numerator()
            .exact_divide(&self.denominator_polynomial())
    }

    pub fn to_canonical_string(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl fmt::Display for RationalTerm {
    /// `(numerator)/(f1^m1*f2*...)` with the scalar folded into the numerator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.scaled_numerator();
        if self.denominator.is_empty() {
            return write!(f, "{}", num);
        }
        if num.len() > 1 {
            write!(f, "({})", num)?;
        } else {
            write!(f, "{}", num)?;
        }
        let mut den = String::new();
        let mut count = 0;
        for (form, &m) in &self.denominator {
            if count > 0 {
                den.push('*');
            }
            count += m;
            if form.support_len() > 1 {
                den.push('(');
                den.push_str(&form.to_canonical_string());
                den.push(')');
            } else {
                den.push_str(&form.to_canonical_string());
            }
            if m > 1 {
                den.push_str(&alloc::format!("^{}", m));
            }
        }
        if count > 1 {
            write!(f, "/({})", den)
        } else {
            write!(f, "/{}", den)
        }
    }
}

/// A formal sum of rational terms over a common variable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTermSum {
    vars: Variables,
    terms: Vec<RationalTerm>,
}

impl RationalTermSum {
    pub fn new(vars: Variables) -> Self {
        RationalTermSum {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(
        vars: Variables,
        terms: impl IntoIterator<Item = RationalTerm>,
    ) -> Result<Self, AlgebraError> {
        let mut s = Self::new(vars);
        for t in terms {
            s.push(t)?;
        }
        Ok(s)
    }

    pub fn vars(&self) -> Variables {
        self.vars
    }

    pub fn terms(&self) -> &[RationalTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, t: RationalTerm) -> Result<(), AlgebraError> {
        if t.vars() != self.vars {
            return Err(AlgebraError::VariableMismatch);
        }
        if !t.is_zero() {
            self.terms.push(t);
        }
        Ok(())
    }

    pub fn extend(&mut self, other: RationalTermSum) -> Result<(), AlgebraError> {
        for t in other.terms {
            self.push(t)?;
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalTermSum {
            vars: self.vars,
            terms: self.terms.iter().map(|t| t.scale(c)).collect(),
        }
    }

    /// `None` if some term's denominator vanishes at `point`.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += t.evaluate(point)?;
        }
        Some(acc)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        RationalTermSum {
            vars: self.vars,
            terms: self.terms.iter().map(|t| t.swap_vars(i, j)).collect(),
        }
    }

    /// Combines all terms over the least common multiple of their
    /// denominators, then cancels linear factors shared with the numerator.
    pub fn sum_terms(&self) -> RationalTerm {
        let mut lcm: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for t in &self.terms {
            for (f, &m) in &t.denominator {
                let e = lcm.entry(f.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let mut numerator = Polynomial::zero(self.vars);
        for t in &self.terms {
            let mut p = t.scaled_numerator();
            for (f, &m) in &lcm {
                let own = t.denominator.get(f).copied().unwrap_or(0);
                if m > own {
                    p = &p * &f.to_polynomial().pow(m - own);
                }
            }
            numerator = &numerator + &p;
        }
        let mut out = RationalTerm {
            scalar: Rational::one(),
            numerator,
            denominator: lcm,
        };
        out.reduce();
        out
    }
}

/// `t(v1, v2) + t(v2, v1)` as a two-term sum.
pub fn symmetrize(t: &RationalTerm) -> Result<RationalTermSum, AlgebraError> {
    if t.vars().arity() != 2 {
        return Err(AlgebraError::ArityMismatch {
            expected: 2,
            found: t.vars().arity(),
        });
    }
    RationalTermSum::from_terms(t.vars(), [t.clone(), t.swap_vars(0, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    const G: Variables = Variables::Gl2;

    fn v1() -> LinearForm {
        LinearForm::from_integers(G, &[1, 0])
    }
    fn v2() -> LinearForm {
        LinearForm::from_integers(G, &[0, 1])
    }

    #[test]
    fn cancellation_keeps_denominator() {
        let a = RationalTerm::reciprocal(G, int(1), [(v1(), 1)]).unwrap();
        let b = RationalTerm::reciprocal(G, int(-1), [(v1(), 1)]).unwrap();
        let s = RationalTermSum::from_terms(G, [a, b]).unwrap().sum_terms();
        assert!(s.numerator().is_zero());
        assert_eq!(s.to_canonical_string(), "0/v1");
    }

    #[test]
    fn two_reciprocals() {
        let a = RationalTerm::reciprocal(G, int(1), [(v1(), 1)]).unwrap();
        let b = RationalTerm::reciprocal(G, int(1), [(v2(), 1)]).unwrap();
        let s = RationalTermSum::from_terms(G, [a, b]).unwrap().sum_terms();
        assert_eq!(s.to_canonical_string(), "(v1+v2)/(v1*v2)");
    }

    #[test]
    fn normalization_moves_scalar() {
        let t = RationalTerm::reciprocal(G, int(1), [(LinearForm::from_integers(G, &[-2, 2]), 3)])
            .unwrap();
        assert_eq!(t.scalar(), &rat(-1, 8));
        let (f, m) = t.denominator().next().unwrap();
        assert_eq!(f, &LinearForm::diagonal());
        assert_eq!(m, 3);
        assert!(RationalTerm::reciprocal(G, int(1), [(LinearForm::from_integers(G, &[0, 0]), 1)])
            .is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let t = RationalTerm::new(int(1), Polynomial::var(G, 0), [(v2(), 1)]).unwrap();
        let s = symmetrize(&t).unwrap().sum_terms();
        assert_eq!(s.to_canonical_string(), "(v1^2+v2^2)/(v1*v2)");

        let odd = RationalTerm::reciprocal(G, int(1), [(LinearForm::diagonal(), 3)]).unwrap();
        let s = symmetrize(&odd).unwrap().sum_terms();
        assert!(s.numerator().is_zero());

        let t3 = RationalTerm::reciprocal(Variables::Torus(3), int(1), []).unwrap();
        assert!(symmetrize(&t3).is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let t = RationalTerm::reciprocal(G, int(3), [(LinearForm::diagonal(), 2)]).unwrap();
        assert_eq!(t.evaluate(&[int(3), int(1)]), Some(rat(3, 4)));
        assert_eq!(t.evaluate(&[int(2), int(2)]), None);
    }

    #[test]
    fn to_polynomial_requires_divisibility() {
        let num = &Polynomial::var(G, 0) * &Polynomial::var(G, 1);
        let t = RationalTerm::new(int(2), num, [(v1(), 1)]).unwrap();
        assert_eq!(t.to_polynomial().unwrap(), Polynomial::var(G, 1).scale(&int(2)));
        let bad = RationalTerm::new(int(1), Polynomial::var(G, 1), [(v1(), 1)]).unwrap();
        assert_eq!(bad.to_polynomial(), Err(AlgebraError::NonzeroRemainder));
    }
}
