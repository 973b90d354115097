//! The class assembled fixed point by fixed point: the torus-fixed line
//! contributes a residue read off a first-order power series in `h`, every
//! isolated fixed point contributes `1 / (|stab| c_1(O(-1)) prod(normal
//! weights))`, and the second half of the fixed locus is the `v1 <-> v2`
//! mirror of the first.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::class::{assemble, global_b, split_summands};
use super::{point_scalars, validate, EquivariantClass, OrbitDatum, OrbitError, Representation};
use crate::algebra::{int, LinearForm, Rational, RationalTerm, RationalTermSum, Variables};

const G: Variables = Variables::Gl2;

/// `c0 + c1 h` modulo `h^2`, with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub c0: RationalTermSum,
    pub c1: RationalTermSum,
}

fn product(a: &RationalTermSum, b: &RationalTermSum) -> Result<RationalTermSum, OrbitError> {
    let mut out = RationalTermSum::new(G);
    for x in a.terms() {
        for y in b.terms() {
            out.push(x.try_mul(y)?)?;
        }
    }
    Ok(out)
}

impl TruncatedSeries {
    /// `(l + alpha h)^{-1} = l^{-1} - alpha l^{-2} h + O(h^2)`.
    pub fn inverse_linear(l: &LinearForm, alpha: &Rational) -> Result<Self, OrbitError> {
        let c0 = RationalTerm::reciprocal(G, Rational::one(), [(l.clone(), 1)])?;
        let c1 = RationalTerm::reciprocal(G, -alpha.clone(), [(l.clone(), 2)])?;
        Ok(TruncatedSeries {
            c0: RationalTermSum::from_terms(G, [c0])?,
            c1: RationalTermSum::from_terms(G, [c1])?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OrbitError> {
        let mut c1 = product(&self.c0, &other.c1)?;
        c1.extend(product(&self.c1, &other.c0)?)?;
        Ok(TruncatedSeries {
            c0: product(&self.c0, &other.c0)?,
            c1,
        })
    }
}

/// Coefficient of `h` in
/// `(L_b + (2b + r_gen - 1) h)^{-1} (v2 - v1)^{-1} (v2 - v1 + (2 - s) h)^{-1}`.
pub fn l1_series(b: &Rational, s: &Rational, r_gen: &Rational) -> Result<RationalTermSum, OrbitError> {
    let l = LinearForm::interpolate(b);
    let rev = LinearForm::diagonal().scale(&int(-1));
    let first = TruncatedSeries::inverse_linear(&l, &(int(2) * b + r_gen - int(1)))?;
    let second = TruncatedSeries::inverse_linear(&rev, &Rational::zero())?;
    let third = TruncatedSeries::inverse_linear(&rev, &(int(2) - s))?;
    Ok(first.mul(&second)?.mul(&third)?.c1)
}

/// `(2 - s) L_b^{-1} D^{-3} - (2b + r_gen - 1) L_b^{-2} D^{-2}`.
pub fn l1_closed_form(
    b: &Rational,
    s: &Rational,
    r_gen: &Rational,
) -> Result<RationalTermSum, OrbitError> {
    let l = LinearForm::interpolate(b);
    let d = LinearForm::diagonal();
    let t1 = RationalTerm::reciprocal(G, int(2) - s, [(l.clone(), 1), (d.clone(), 3)])?;
    let t2 = RationalTerm::reciprocal(G, -(int(2) * b + r_gen - int(1)), [(l, 2), (d, 2)])?;
    Ok(RationalTermSum::from_terms(G, [t1, t2])?)
}

/// `1 / (stab * o * prod(normals))`.
fn fixed_point(
    stab: &Rational,
    o_minus_one: LinearForm,
    normals: &[LinearForm],
) -> Result<RationalTerm, OrbitError> {
    let mut factors: Vec<(LinearForm, u32)> = Vec::with_capacity(normals.len() + 1);
    factors.push((o_minus_one, 1));
    factors.extend(normals.iter().map(|n| (n.clone(), 1)));
    Ok(RationalTerm::reciprocal(G, stab.recip(), factors)?)
}

fn character(p: Rational, q: Rational) -> LinearForm {
    LinearForm::gl2(p, q)
}

fn is_zero_function(s: &RationalTermSum) -> bool {
    s.sum_terms().numerator().is_zero()
}

/// The full fixed-point sum (before multiplying by `c_N`).
pub fn localization_sum(
    rep: &Representation,
    datum: &OrbitDatum,
) -> Result<RationalTermSum, OrbitError> {
    validate(rep, datum)?;
    let (nonzero, _) = split_summands(rep, datum);
    let b = global_b(&nonzero);
    let scalars = point_scalars(rep, datum)?;

    let s_total: Rational = scalars.iter().map(|sd| sd.s.clone()).sum();
    let r_gen_total: Rational = scalars.iter().map(|sd| sd.r_gen.clone()).sum();
    let line = l1_series(&b, &s_total, &r_gen_total)?;
    let mut check = line.clone();
    check.extend(l1_closed_form(&b, &s_total, &r_gen_total)?.scale(&int(-1)))?;
    if !is_zero_function(&check) {
        return Err(OrbitError::Internal(String::from(
            "series and closed form of the line contribution disagree",
        )));
    }

    let mut half = line;
    let one = Rational::one();
    let minus = character(-one.clone(), one.clone());
    let plus = character(one.clone(), -one.clone());
    for sd in &scalars {
        // p_1^u: O(-1) has weight chi(1 - r, r); normal weights chi(1,-1), chi(-1,1) twice.
        half.push(fixed_point(
            &one,
            LinearForm::interpolate(&sd.r),
            &[plus.clone(), minus.clone(), minus.clone()],
        )?)?;
        // p_{1,j}^u: stabilizer of order |N|; normal weights chi(zeta_1/N, -zeta_1/N),
        // chi(-eta_1/N, eta_1/N), chi(-1,1).
        for j in 1..=sd.polygon.k() {
            let vn = sd.polygon.vertex_normals(j)?;
            let n = int(vn.det);
            let z = Rational::from_integer(vn.zeta[0].into()) / &n;
            let e = Rational::from_integer(vn.eta[0].into()) / &n;
            let lambda2 = &sd.polygon.vertices()[j].1;
            half.push(fixed_point(
                &int(vn.det.abs()),
                LinearForm::interpolate(lambda2),
                &[
                    character(z.clone(), -z),
                    character(-e.clone(), e),
                    minus.clone(),
                ],
            )?)?;
        }
    }
    let mut total = half.clone();
    total.extend(half.swap_vars(0, 1))?;
    Ok(total)
}

/// The class computed from [`localization_sum`].
pub fn localization_oracle(
    rep: &Representation,
    datum: &OrbitDatum,
) -> Result<EquivariantClass, OrbitError> {
    let sum = localization_sum(rep, datum)?;
    assemble(rep, datum, &sum)
}
