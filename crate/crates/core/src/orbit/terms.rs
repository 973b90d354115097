use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use super::{OrbitError, Summand};
use crate::algebra::{int, LinearForm, Polynomial, Rational, RationalTerm, RationalTermSum, Variables};
use crate::newton::{NewtonPolygon, VertexNormals};

const G: Variables = Variables::Gl2;

/// Which linear form squares in the second-order parts of `F` and `G`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FTermVariant {
    /// `((1-b) v1 + b v2)^{-2}`, the form the fixed-point computation gives.
    #[default]
    Derived,
    /// `((1-b) v1 + v2)^{-2}`. Does not produce polynomial classes; kept as
    /// a negative control.
    AsPrinted,
}

impl FTermVariant {
    fn square_form(self, b: &Rational) -> LinearForm {
        match self {
            FTermVariant::Derived => LinearForm::interpolate(b),
            FTermVariant::AsPrinted => LinearForm::gl2(Rational::one() - b, Rational::one()),
        }
    }
}

/// Per-point quantities entering `G` and `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarData {
    /// Global minimum of `b_i / d_i` over nonzero summands.
    pub b: Rational,
    pub r: Rational,
    pub r_gen: Rational,
    pub s: Rational,
    pub polygon: NewtonPolygon,
}

fn inv(scalar: Rational, l: LinearForm, m: u32, dm: u32) -> Result<RationalTerm, OrbitError> {
    Ok(RationalTerm::reciprocal(
        G,
        scalar,
        [(l, m), (LinearForm::diagonal(), dm)],
    )?)
}

/// `F = 2 L_b^{-1} D^{-3} - (2b - 1) L_b^{-2} D^{-2}` where
/// `L_t = (1-t) v1 + t v2` and `D = v1 - v2`.
pub fn term_f(b: &Rational, variant: FTermVariant) -> Result<RationalTermSum, OrbitError> {
    let c = int(2) * b - int(1);
    Ok(RationalTermSum::from_terms(
        G,
        [
            inv(int(2), LinearForm::interpolate(b), 1, 3)?,
            inv(-c, variant.square_form(b), 2, 2)?,
        ],
    )?)
}

/// `G = L_r^{-1} D^{-3} - s L_b^{-1} D^{-3} - r_gen L_b^{-2} D^{-2}`.
pub fn term_g(sd: &ScalarData, variant: FTermVariant) -> Result<RationalTermSum, OrbitError> {
    Ok(RationalTermSum::from_terms(
        G,
        [
            inv(Rational::one(), LinearForm::interpolate(&sd.r), 1, 3)?,
            inv(-sd.s.clone(), LinearForm::interpolate(&sd.b), 1, 3)?,
            inv(-sd.r_gen.clone(), variant.square_form(&sd.b), 2, 2)?,
        ],
    )?)
}

/// `H = |N| / (eta_1 zeta_1) * L_{lambda_2}^{-1} D^{-3}` for a vertex other
/// than the bottom-right one.
pub fn term_h(lambda2: &Rational, vn: &VertexNormals) -> Result<RationalTerm, OrbitError> {
    if vn.eta[0] <= 0 || vn.zeta[0] <= 0 || vn.det == 0 {
        return Err(OrbitError::Internal(format!(
            "degenerate vertex normals {:?}, {:?}",
            vn.eta, vn.zeta
        )));
    }
    let c = Rational::new(vn.det.abs().into(), (vn.eta[0] * vn.zeta[0]).into());
    inv(c, LinearForm::interpolate(lambda2), 1, 3)
}

/// Product of the torus weights `(b + j) v1 + (a - j) v2`, `0 <= j <= a - b`.
pub fn top_chern(summands: &[Summand]) -> Polynomial {
    let mut p = Polynomial::one(G);
    for s in summands {
        for j in 0..=(s.a - s.b) {
            let f = LinearForm::from_integers(G, &[s.b + j, s.a - j]);
            p = &p * &f.to_polynomial();
        }
    }
    p
}

/// Sum of `H` over the vertices `1..=k` of a polygon.
pub(crate) fn h_terms(polygon: &NewtonPolygon) -> Result<Vec<RationalTerm>, OrbitError> {
    (1..=polygon.k())
        .map(|j| term_h(&polygon.vertices()[j].1, &polygon.vertex_normals(j)?))
        .collect()
}
