use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::AppError;
use crate::algebra::{fmt_rational, int, LinearForm, Polynomial, Rational, Variables};
use crate::orbit::{
    orbit_class, projective_degree, EquivariantClass, OrbitDatum, OrbitPoint, Representation,
};

const XY: Variables = Variables::Torus(2);

/// Orders of the fixed points of a rational map of degree `n`; they sum to
/// `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointProfile {
    pub multiplicities: Vec<u32>,
}

/// A map `[x:y] -> [F:G]` given by two binary forms of equal degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPair {
    pub f: Polynomial,
    pub g: Polynomial,
}

/// `I = F_x + G_y` of degree `n - 1` and `J = yF - xG` of degree `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitHom {
    pub i: Polynomial,
    pub j: Polynomial,
    pub n: u32,
}

/// The point `[p:q]` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveRoot {
    pub p: Rational,
    pub q: Rational,
}

impl ProjectiveRoot {
    pub fn new(p: Rational, q: Rational) -> Self {
        ProjectiveRoot { p, q }
    }

    /// `q x - p y`, vanishing exactly at this point.
    pub fn linear_factor(&self) -> Polynomial {
        LinearForm::new(XY, vec![self.q.clone(), -self.p.clone()]).to_polynomial()
    }

    fn same_point(&self, other: &Self) -> bool {
        &self.p * &other.q == &self.q * &other.p
    }
}

impl fmt::Display for ProjectiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", fmt_rational(&self.p), fmt_rational(&self.q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatmapReport {
    pub class: EquivariantClass,
    /// Degree after the stabilizer convention (division by `n - 1`).
    pub degree: Rational,
    pub profile: FixedPointProfile,
    /// False when some fixed point of order `>= 2` is also a zero of `I`.
    pub within_hypothesis: bool,
}

/// `sum_i coeffs[i] x^{deg - i} y^i` in the variables `x, y`.
pub fn binary_form(coeffs: &[Rational]) -> Polynomial {
    let deg = coeffs.len().saturating_sub(1) as u32;
    let mut p = Polynomial::zero(XY);
    for (i, c) in coeffs.iter().enumerate() {
        let i = i as u32;
        p = &p + &Polynomial::monomial(XY, vec![deg - i, i], c.clone());
    }
    p
}

/// `Sym^{n-1} V (+) Sym^{n+1} V (x) det^{-1}`.
pub fn ratmap_rep(n: i64) -> Representation {
    Representation::from_pairs(&[(n - 1, 0), (n, -1)])
}

/// `n (n+1) (n-1)^2 prod_{j=1}^{n-2} (j v1 + (n-1-j) v2)
///  prod_{j=1}^{n} ((j-1) v1 + (n-j) v2)`.
pub fn ratmap_closed_product(n: i64) -> Polynomial {
    let g = Variables::Gl2;
    let mut p = Polynomial::constant(g, int(n * (n + 1) * (n - 1) * (n - 1)));
    for j in 1..=(n - 2) {
        p = &p * &LinearForm::from_integers(g, &[j, n - 1 - j]).to_polynomial();
    }
    for j in 1..=n {
        p = &p * &LinearForm::from_integers(g, &[j - 1, n - j]).to_polynomial();
    }
    p
}

/// Orbit class for a map of degree `n` whose fixed points carry the
/// entries `(r, j)`: `I` vanishes to order `r` and `J` to order `j`.
pub fn ratmap_from_orders(n: i64, entries: &[(u32, u32)]) -> Result<RatmapReport, AppError> {
    if n < 2 {
        return Err(AppError::InvalidDegree(n));
    }
    if entries.iter().any(|&(_, j)| j == 0) {
        return Err(AppError::ZeroMultiplicity);
    }
    let total: i64 = entries.iter().map(|&(_, j)| j as i64).sum();
    if total != n + 1 {
        return Err(AppError::ProfileSum { expected: n + 1, found: total });
    }
    let rep = ratmap_rep(n);
    let points = entries
        .iter()
        .enumerate()
        .map(|(k, &(r, j))| OrbitPoint::new(format!("p{}", k), vec![r, j]))
        .collect();
    let mut class = orbit_class(&rep, &OrbitDatum::generic(2, points))?;
    let raw = projective_degree(&class, &rep, &[1, 1])?;
    let degree = raw / int(n - 1);
    let within = entries.iter().all(|&(r, j)| j < 2 || r == 0);
    if within {
        let closed = ratmap_closed_product(n);
        if class.poly != closed {
            return Err(AppError::Mismatch(format!(
                "engine class {} differs from the closed product {}",
                class.poly, closed
            )));
        }
        if degree != int(n * (n + 1) * (n - 1)) {
            return Err(AppError::Mismatch(format!("degree {} is not n(n+1)(n-1)", degree)));
        }
    } else {
        class.notes.push(String::from(
            "a fixed point of order >= 2 is also a zero of I: F and G share a factor, the map has \
             base points and the degree formula does not apply",
        ));
    }
    Ok(RatmapReport {
        class,
        degree,
        profile: FixedPointProfile {
            multiplicities: entries.iter().map(|&(_, j)| j).collect(),
        },
        within_hypothesis: within,
    })
}

/// Orbit class and degree for a fixed-point profile.
pub fn ratmap_class(n: i64, profile: &FixedPointProfile) -> Result<RatmapReport, AppError> {
    let entries: Vec<(u32, u32)> = profile.multiplicities.iter().map(|&j| (0, j)).collect();
    ratmap_from_orders(n, &entries)
}

/// Splits `f = x* (x) F + y* (x) G` into its two irreducible components.
pub fn split_hom(h: &HomPair) -> Result<SplitHom, AppError> {
    if h.f.vars() != XY || h.g.vars() != XY {
        return Err(AppError::InvalidForms(String::from("forms must be in x, y")));
    }
    if h.f.is_zero() && h.g.is_zero() {
        return Err(AppError::InvalidForms(String::from("F and G are both zero")));
    }
    let deg = h.f.degree().or(h.g.degree()).unwrap_or(0);
    for p in [&h.f, &h.g] {
        if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(deg)) {
            return Err(AppError::InvalidForms(String::from(
                "F and G must be homogeneous of the same degree",
            )));
        }
    }
    let x = Polynomial::var(XY, 0);
    let y = Polynomial::var(XY, 1);
    let i = &h.f.derivative(0) + &h.g.derivative(1);
    let j = &(&y * &h.f) - &(&x * &h.g);
    let k = int(deg as i64 + 1);
    let back_f = &j.derivative(1) + &(&x * &i);
    let back_g = &(&y * &i) - &j.derivative(0);
    if back_f != h.f.scale(&k) || back_g != h.g.scale(&k) {
        return Err(AppError::Mismatch(String::from("Euler identity failed")));
    }
    Ok(SplitHom { i, j, n: deg })
}

/// The fixed-point profile of a degree-`n` map from the factorization of
/// `J`. When `j` is supplied the factorization is checked; when `i` is
/// supplied, a multiple root of `J` at which `I` vanishes is rejected.
pub fn profile_from_j(
    n: i64,
    roots: &[(ProjectiveRoot, u32)],
    i: Option<&Polynomial>,
    j: Option<&Polynomial>,
) -> Result<FixedPointProfile, AppError> {
    if roots.iter().any(|(_, m)| *m == 0) {
        return Err(AppError::ZeroMultiplicity);
    }
    for (k, (a, _)) in roots.iter().enumerate() {
        if a.p.is_zero() && a.q.is_zero() {
            return Err(AppError::InvalidForms(String::from("[0:0] is not a point")));
        }
        if roots[..k].iter().any(|(b, _)| a.same_point(b)) {
            return Err(AppError::InvalidForms(format!("root {} listed twice", a)));
        }
    }
    let total: i64 = roots.iter().map(|(_, m)| *m as i64).sum();
    if total != n + 1 {
        return Err(AppError::ProfileSum { expected: n + 1, found: total });
    }
    if let Some(j) = j {
        let mut prod = Polynomial::one(XY);
        for (r, m) in roots {
            prod = &prod * &r.linear_factor().pow(*m);
        }
        match j.exact_divide(&prod) {
            Ok(q) if !q.is_zero() && q.degree() == Some(0) => {}
            _ => return Err(AppError::RootsMismatch),
        }
    }
    if let Some(i) = i {
        for (r, m) in roots {
            if *m >= 2 && i.evaluate(&[r.p.clone(), r.q.clone()]).is_zero() {
                return Err(AppError::Prop72Violation { root: format!("{}", r) });
            }
        }
    }
    Ok(FixedPointProfile {
        multiplicities: roots.iter().map(|(_, m)| *m).collect(),
    })
}
