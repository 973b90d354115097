use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::terms::h_terms;
use super::{
    defining_points, term_f, term_g, top_chern, validate, FTermVariant, OrbitDatum, OrbitError,
    Representation, ScalarData, Summand,
};
use crate::algebra::{
    int, symmetrize, LinearForm, Polynomial, Rational, RationalTerm, RationalTermSum, Variables,
};
use crate::newton::build_polygon;

const G: Variables = Variables::Gl2;

/// `|Gamma| [Orb(w)]` as a symmetric polynomial in `v1, v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantClass {
    pub poly: Polynomial,
    /// `dim W - 4`.
    pub codim: i64,
    pub notes: Vec<String>,
}

impl EquivariantClass {
    /// Divides by a known stabilizer order.
    pub fn divide_by_stabilizer(&self, order: u64) -> Self {
        let mut c = self.clone();
        c.poly = self.poly.scale(&(Rational::from_integer(1.into()) / int(order as i64)));
        c
    }
}

pub(crate) fn split_summands(rep: &Representation, datum: &OrbitDatum) -> (Vec<Summand>, Vec<Summand>) {
    let mut nonzero = Vec::new();
    let mut zero = Vec::new();
    for (s, &z) in rep.summands.iter().zip(&datum.nonzero) {
        if z {
            nonzero.push(*s);
        } else {
            zero.push(*s);
        }
    }
    (nonzero, zero)
}

pub(crate) fn global_b(nonzero: &[Summand]) -> Rational {
    nonzero
        .iter()
        .map(Summand::slope)
        .min()
        .expect("at least one nonzero summand")
}

/// Polygon and scalars at every listed point. `datum` must be validated.
pub fn point_scalars(
    rep: &Representation,
    datum: &OrbitDatum,
) -> Result<Vec<ScalarData>, OrbitError> {
    let (nonzero, _) = split_summands(rep, datum);
    let b = global_b(&nonzero);
    datum
        .points
        .iter()
        .map(|p| {
            let polygon = build_polygon(&defining_points(rep, &datum.nonzero, p))?;
            let sc = polygon.scalars();
            let r_gen = &sc.lambda0_x - &b;
            if r_gen.is_negative() || sc.r < b {
                return Err(OrbitError::Internal(format!(
                    "point {:?}: inconsistent scalars r = {}, r_gen = {}",
                    p.label, sc.r, r_gen
                )));
            }
            Ok(ScalarData {
                b: b.clone(),
                r: sc.r,
                r_gen,
                s: sc.s,
                polygon,
            })
        })
        .collect()
}

fn push_sym(out: &mut RationalTermSum, t: &RationalTerm) -> Result<(), OrbitError> {
    out.extend(symmetrize(t)?)?;
    Ok(())
}

/// The bracketed sum `F_sym + sum G_sym + sum H_sym` for the nonzero part.
pub fn class_sum(
    rep: &Representation,
    datum: &OrbitDatum,
    variant: FTermVariant,
) -> Result<RationalTermSum, OrbitError> {
    validate(rep, datum)?;
    let (nonzero, _) = split_summands(rep, datum);
    let b = global_b(&nonzero);
    let mut out = RationalTermSum::new(G);
    for t in term_f(&b, variant)?.terms() {
        push_sym(&mut out, t)?;
    }
    for sd in point_scalars(rep, datum)? {
        for t in term_g(&sd, variant)?.terms() {
            push_sym(&mut out, t)?;
        }
        for t in h_terms(&sd.polygon)? {
            push_sym(&mut out, &t)?;
        }
    }
    Ok(out)
}

/// Clears the denominator of `c_N(W_I) * sum` and multiplies by the top
/// Chern class of the zero part.
pub(crate) fn assemble(
    rep: &Representation,
    datum: &OrbitDatum,
    sum: &RationalTermSum,
) -> Result<EquivariantClass, OrbitError> {
    let (nonzero, zero) = split_summands(rep, datum);
    let dim_i: i64 = nonzero.iter().map(Summand::dim).sum();
    let combined = sum.sum_terms();
    let numerator = combined
        .scaled_numerator()
        .try_mul(&top_chern(&nonzero))?;
    let poly = match numerator.exact_divide(&combined.denominator_polynomial()) {
        Ok(p) => p,
        Err(_) if dim_i < 4 => return Err(OrbitError::InfiniteStabilizer { dim: dim_i }),
        Err(e) => return Err(e.into()),
    };
    let poly = poly.try_mul(&top_chern(&zero))?;
    let codim = rep.dim() - 4;
    if !poly.is_symmetric() {
        return Err(OrbitError::Internal(String::from("class is not symmetric")));
    }
    if !poly.is_zero()
        && (codim < 0 || !poly.is_homogeneous() || poly.degree() != Some(codim as u32))
    {
        if dim_i < 4 {
            return Err(OrbitError::InfiniteStabilizer { dim: dim_i });
        }
        return Err(OrbitError::Internal(format!(
            "class is not homogeneous of degree {}",
            codim
        )));
    }
    let mut notes = Vec::new();
    if dim_i < 4 {
        notes.push(format!(
            "nonzero part has dimension {} < 4: the stabilizer is infinite and the value has no \
             geometric meaning",
            dim_i
        ));
    }
    if !zero.is_empty() {
        notes.push(format!(
            "{} zero summand(s): multiplied by their top Chern class",
            zero.len()
        ));
    }
    Ok(EquivariantClass { poly, codim, notes })
}

/// The class `|Gamma| [Orb(w)] = c_N(W) (F_sym + sum G_sym + sum H_sym)`.
pub fn orbit_class(rep: &Representation, datum: &OrbitDatum) -> Result<EquivariantClass, OrbitError> {
    orbit_class_with(rep, datum, FTermVariant::Derived)
}

pub fn orbit_class_with(
    rep: &Representation,
    datum: &OrbitDatum,
    variant: FTermVariant,
) -> Result<EquivariantClass, OrbitError> {
    let sum = class_sum(rep, datum, variant)?;
    assemble(rep, datum, &sum)
}

/// `(a, b) -> (a + n d, b + n d)`.
pub fn twist_rep(rep: &Representation, n: i64) -> Result<Representation, OrbitError> {
    let out = Representation::new(
        rep.summands
            .iter()
            .map(|s| Summand::new(s.a + n * s.weight(), s.b + n * s.weight()))
            .collect(),
    );
    out.validate()?;
    Ok(out)
}

/// The same vector viewed in the twisted representation: the components
/// and their vanishing orders are unchanged.
pub fn twist_datum(datum: &OrbitDatum) -> OrbitDatum {
    datum.clone()
}

/// Pullback along `v_i -> v_i + n (v1 + v2)`.
pub fn twist_class(c: &EquivariantClass, n: i64) -> Result<EquivariantClass, OrbitError> {
    let images = [
        LinearForm::from_integers(G, &[1 + n, n]),
        LinearForm::from_integers(G, &[n, 1 + n]),
    ];
    Ok(EquivariantClass {
        poly: c.poly.substitute(&images)?,
        codim: c.codim,
        notes: c.notes.clone(),
    })
}

/// Degree in the weighted projective space with the given weights: the
/// coefficient of `h^codim` after `v1 = v2 = h / m`, where `d_i = m w_i`.
pub fn projective_degree(
    c: &EquivariantClass,
    rep: &Representation,
    weights: &[u64],
) -> Result<Rational, OrbitError> {
    if weights.len() != rep.summands.len() || weights.iter().any(|&w| w == 0) {
        return Err(OrbitError::NonProportionalWeights);
    }
    let m = Rational::new(rep.summands[0].weight().into(), (weights[0] as i64).into());
    for (s, &w) in rep.summands.iter().zip(weights) {
        if int(s.weight()) != &m * int(w as i64) {
            return Err(OrbitError::NonProportionalWeights);
        }
    }
    if c.poly.is_zero() {
        return Ok(Rational::zero());
    }
    let (coef, _) = c.poly.specialize_equal(&m.recip())?;
    Ok(coef)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::orbit::OrbitPoint;
    use alloc::vec;

    fn elliptic(n: i64) -> Representation {
        Representation::from_pairs(&[(4 * n, 0), (6 * n, 0)])
    }

    fn closed_elliptic(n: i64, cs: &[Rational]) -> Rational {
        let base = num_traits::pow(int(2), (4 * n + 3) as usize)
            * num_traits::pow(int(3), (6 * n + 1) as usize)
            * int(n);
        let mut inner = int(4 * n * n * n);
        for c in cs {
            inner -= c * c * (int(3 * n) - c);
        }
        base * inner
    }

    #[test]
    fn elliptic_generic_degree() {
        let c = orbit_class(&elliptic(1), &OrbitDatum::generic(2, vec![])).unwrap();
        assert_eq!(c.codim, 8);
        assert_eq!(projective_degree(&c, &elliptic(1), &[2, 3]).unwrap(), int(1119744));
        assert_eq!(int(1119744), closed_elliptic(1, &[]));
    }

    #[test]
    fn elliptic_type_two_fiber() {
        let d = OrbitDatum::generic(2, vec![OrbitPoint::new("u", vec![1, 1])]);
        let c = orbit_class(&elliptic(1), &d).unwrap();
        let deg = projective_degree(&c, &elliptic(1), &[2, 3]).unwrap();
        assert_eq!(deg, closed_elliptic(1, &[rat(1, 3)]));
    }

    #[test]
    fn ratmap_small_cases() {
        let rep = Representation::from_pairs(&[(1, 0), (2, -1)]);
        let pts = (0..3).map(|i| OrbitPoint::new(format!("p{}", i), vec![0, 1])).collect();
        let c = orbit_class(&rep, &OrbitDatum::generic(2, pts)).unwrap();
        assert_eq!(c.poly.to_canonical_string(), "6*v1*v2");

        let rep3 = Representation::from_pairs(&[(2, 0), (3, -1)]);
        let d = OrbitDatum::generic(2, vec![OrbitPoint::new("u", vec![0, 4])]);
        let c3 = orbit_class(&rep3, &d).unwrap();
        let v1v2 = &LinearForm::from_integers(G, &[1, 0]).to_polynomial()
            * &LinearForm::from_integers(G, &[0, 1]).to_polynomial();
        let s = LinearForm::from_integers(G, &[1, 1]).to_polynomial();
        assert_eq!(c3.poly, (&v1v2 * &s.pow(2)).scale(&int(192)));
    }

    #[test]
    fn trivial_point_does_not_change_class() {
        let rep = elliptic(1);
        let base = OrbitDatum::generic(2, vec![OrbitPoint::new("u", vec![2, 2])]);
        let mut more = base.clone();
        more.points.push(OrbitPoint::new("v", vec![0, 3]));
        assert_eq!(orbit_class(&rep, &base).unwrap(), orbit_class(&rep, &more).unwrap());
    }

    #[test]
    fn zero_summand_multiplies_by_top_chern() {
        let rep = Representation::from_pairs(&[(4, 0), (6, 0), (2, 1)]);
        let mut d = OrbitDatum::generic(3, vec![]);
        d.nonzero[2] = false;
        let c = orbit_class(&rep, &d).unwrap();
        let base = orbit_class(&elliptic(1), &OrbitDatum::generic(2, vec![])).unwrap();
        assert_eq!(c.poly, &base.poly * &top_chern(&[Summand::new(2, 1)]));
        assert_eq!(c.codim, 10);
        assert_eq!(c.notes.len(), 1);
    }

    #[test]
    fn as_printed_variant_is_not_polynomial() {
        let r = orbit_class_with(&elliptic(1), &OrbitDatum::generic(2, vec![]), FTermVariant::AsPrinted);
        assert_eq!(r, Err(OrbitError::NonzeroRemainder));
    }

    #[test]
    fn twist_factor() {
        let rep = Representation::from_pairs(&[(3, 0), (3, 1), (1, 0)]);
        let d = OrbitDatum::generic(3, vec![OrbitPoint::new("u", vec![2, 0, 0])]);
        let q = orbit_class(&rep, &d).unwrap();
        for n in 0..4i64 {
            let qn = orbit_class(&twist_rep(&rep, n).unwrap(), &twist_datum(&d)).unwrap();
            let pulled = twist_class(&q, n).unwrap();
            assert_eq!(qn.poly, pulled.poly.scale(&int(2 * n + 1)));
        }
    }

    #[test]
    fn twist_makes_b_nonnegative() {
        let rep = Representation::from_pairs(&[(2, 0), (3, -1)]);
        let t = twist_rep(&rep, 1).unwrap();
        assert!(t.summands.iter().all(|s| s.b >= 0));
        assert_eq!(twist_rep(&rep, 0).unwrap(), rep);
    }

    #[test]
    fn degree_weights_checked() {
        let c = orbit_class(&elliptic(1), &OrbitDatum::generic(2, vec![])).unwrap();
        assert_eq!(
            projective_degree(&c, &elliptic(1), &[1, 1]),
            Err(OrbitError::NonProportionalWeights)
        );
        let zero = EquivariantClass { poly: Polynomial::zero(G), codim: 8, notes: vec![] };
        assert_eq!(projective_degree(&zero, &elliptic(1), &[2, 3]).unwrap(), int(0));
    }

    #[test]
    fn small_orbit_is_flagged() {
        // x^2 in Sym^2: two-dimensional orbit closure
        let rep = Representation::from_pairs(&[(2, 0)]);
        let d = OrbitDatum::generic(1, vec![OrbitPoint::new("0", vec![2])]);
        match orbit_class(&rep, &d) {
            Ok(c) => assert!(!c.notes.is_empty()),
            Err(e) => assert_eq!(e, OrbitError::InfiniteStabilizer { dim: 3 }),
        }
    }
}
