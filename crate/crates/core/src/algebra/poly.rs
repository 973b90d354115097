//! Sparse multivariate polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational, Variables};
use super::{AlgebraError, LinearForm};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then the exponent
/// of the first variable, and so on.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Variables,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(vars: Variables) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Variables) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: Variables, c: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.arity()], c)
    }

    /// The `i`-th variable.
    pub fn var(vars: Variables, i: usize) -> Self {
        let mut e = vec![0; vars.arity()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: Variables, exps: Exponents, coef: Rational) -> Self {
        assert_eq!(exps.len(), vars.arity(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !coef.is_zero() {
            p.terms.insert(exps, coef);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(
        vars: Variables,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.arity() {
                return Err(AlgebraError::ArityMismatch {
                    expected: vars.arity(),
                    found: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> Variables {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical order: descending graded lex.
    pub fn terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.arity(), "evaluation point arity");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Polynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Polynomial::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e = e.clone();
                let k = e[i];
                e[i] -= 1;
                out.terms.insert(e, c * Rational::from_integer(k.into()));
            }
        }
        out
    }

    /// True for two-variable polynomials fixed by `v1 <-> v2`.
    pub fn is_symmetric(&self) -> bool {
        self.vars.arity() == 2 && self.swap_vars(0, 1) == *self
    }

    /// Composition `p(images[0], ..., images[n-1])`.
    pub fn substitute(&self, images: &[LinearForm]) -> Result<Self, AlgebraError> {
        if images.len() != self.vars.arity() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.vars.arity(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(f) => f.vars(),
            None => self.vars,
        };
        if images.iter().any(|f| f.vars() != target) {
            return Err(AlgebraError::VariableMismatch);
        }
        let image_polys: Vec<Polynomial> = images.iter().map(|f| f.to_polynomial()).collect();
        // powers[i][k] = image_i^k, filled lazily up to the max exponent used
        let mut max_exp = vec![0u32; images.len()];
        for e in self.terms.keys() {
            for (m, &k) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(k);
            }
        }
        let powers: Vec<Vec<Polynomial>> = image_polys
            .iter()
            .zip(&max_exp)
            .map(|(p, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(Polynomial::one(target));
                for k in 1..=m as usize {
                    let next = &v[k - 1] * p;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact quotient `p / q`. Fails with `NonzeroRemainder` unless `q`
    /// divides `self` in the polynomial ring.
    pub fn exact_divide(&self, q: &Self) -> Result<Self, AlgebraError> {
        self.check(q)?;
        let (lq_e, lq_c) = match q.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.vars);
        while let Some((le, lc)) = rem.leading() {
            if le.iter().zip(&lq_e).any(|(a, b)| a < b) {
                return Err(AlgebraError::NonzeroRemainder);
            }
            let e: Exponents = le.iter().zip(&lq_e).map(|(a, b)| a - b).collect();
            let c = lc / &lq_c;
            let t = Polynomial::monomial(self.vars, e, c);
            rem = &rem - &(&t * q);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Writes `p(t*scale, ..., t*scale) = coefficient * t^power` for a
    /// homogeneous `p`; `power` is the total degree.
    pub fn specialize_equal(&self, scale: &Rational) -> Result<(Rational, u32), AlgebraError> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        let deg = self.degree().unwrap_or(0);
        let sum: Rational = self.terms.values().cloned().sum();
        Ok((sum * num_traits::pow(scale.clone(), deg as usize), deg))
    }

    pub fn to_canonical_string(&self) -> String {
        alloc::format!("{}", self)
    }

    pub(crate) fn fmt_monomial(&self, e: &[u32], out: &mut String) {
        let mut first = true;
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&self.vars.name(i));
            if k > 1 {
                out.push('^');
                out.push_str(&alloc::format!("{}", k));
            }
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: graded lex, exact fractions, `-5/3*v1^2*v2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let a = c.abs();
            let constant = e.iter().all(|&k| k == 0);
            if constant {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                self.fmt_monomial(e, &mut out);
            }
        }
        f.write_str(&out)
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different variable contexts.
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial variable contexts differ")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$try(&rhs).expect("polynomial variable contexts differ")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn v(i: usize) -> Polynomial {
        Polynomial::var(Variables::Gl2, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&v(0) + &v(1)) * &(&v(0) - &v(1));
        assert_eq!(p.to_canonical_string(), "v1^2-v2^2");
        let z = Polynomial::zero(Variables::Gl2);
        assert_eq!(&p + &z, p);
    }

    #[test]
    fn canonical_printing() {
        let p = Polynomial::from_terms(
            Variables::Gl2,
            [
                (vec![2, 1], rat(-5, 3)),
                (vec![0, 3], int(1)),
                (vec![0, 0], int(-2)),
                (vec![1, 0], int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_canonical_string(), "-5/3*v1^2*v2+v2^3-v1-2");
        assert_eq!(Polynomial::zero(Variables::Gl2).to_canonical_string(), "0");
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = v(0);
        let b = Polynomial::var(Variables::Torus(2), 0);
        assert_eq!(a.try_add(&b), Err(AlgebraError::VariableMismatch));
        assert_eq!(a.try_mul(&b), Err(AlgebraError::VariableMismatch));
    }

    #[test]
    fn exact_division() {
        let p = &(&v(0) * &v(0)) - &(&v(1) * &v(1));
        let q = &v(0) - &v(1);
        assert_eq!(p.exact_divide(&q).unwrap(), &v(0) + &v(1));
        assert_eq!(p.exact_divide(&Polynomial::one(Variables::Gl2)).unwrap(), p);
        assert_eq!(
            p.exact_divide(&(&v(0) + &(&v(1) * &v(1)))),
            Err(AlgebraError::NonzeroRemainder)
        );
        assert_eq!(
            p.exact_divide(&Polynomial::zero(Variables::Gl2)),
            Err(AlgebraError::DivisionByZero)
        );
        assert_eq!(v(0).exact_divide(&v(1)), Err(AlgebraError::NonzeroRemainder));
    }

    #[test]
    fn top_chern_of_sym4_by_expansion() {
        // prod_{j=0}^{4} (j v1 + (4-j) v2), expanded by brute force below
        let mut p = Polynomial::one(Variables::Gl2);
        for j in 0..=4i64 {
            let f = &v(0).scale(&int(j)) + &v(1).scale(&int(4 - j));
            p = &p * &f;
        }
        // brute force: distribute over choices of term in each factor
        let mut brute = BTreeMap::<Exponents, Rational>::new();
        for mask in 0u32..32 {
            let mut coef = int(1);
            let mut e1 = 0;
            for j in 0..5i64 {
                if mask & (1 << j) != 0 {
                    coef *= int(j);
                    e1 += 1;
                } else {
                    coef *= int(4 - j);
                }
            }
            *brute.entry(vec![e1, 5 - e1]).or_insert_with(Rational::zero) += coef;
        }
        for (e, c) in brute {
            assert_eq!(p.coeff(&e), c, "exponent {:?}", e);
        }
        assert_eq!(p.degree(), Some(5));
        assert!(p.is_symmetric());
        // (4 v2)(4 v1) times the v1^3 coefficient 1*2*3 of the middle factors
        assert_eq!(p.coeff(&[4, 1]), int(96));
    }

    #[test]
    fn specialization() {
        let p = &v(0) * &v(1);
        assert_eq!(p.specialize_equal(&int(1)).unwrap(), (int(1), 2));
        assert_eq!(p.scale(&int(6)).specialize_equal(&int(1)).unwrap(), (int(6), 2));
        let q = &p + &v(0);
        assert_eq!(q.specialize_equal(&int(1)), Err(AlgebraError::NotHomogeneous));
        let (c, d) = p.specialize_equal(&rat(1, 2)).unwrap();
        assert_eq!((c, d), (rat(1, 4), 2));
    }

    #[test]
    fn substitution() {
        let vars = Variables::Gl2;
        let twist = |n: i64| {
            [
                LinearForm::new(vars, alloc::vec![int(1 + n), int(n)]),
                LinearForm::new(vars, alloc::vec![int(n), int(1 + n)]),
            ]
        };
        let d = &v(0) - &v(1);
        assert_eq!(d.substitute(&twist(3)).unwrap(), d);
        assert_eq!(v(0).substitute(&twist(0)).unwrap(), v(0));
        assert!(v(0).substitute(&twist(0)[..1]).is_err());
    }
}
