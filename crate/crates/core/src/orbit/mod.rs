//! GL(2) orbit closures: representations, orbit data, the closed-form class,
//! twists, degree specialization, and an independent fixed-point oracle.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::algebra::{AlgebraError, Rational};
use crate::newton::{PolygonError, WeightedPoint};

mod class;
mod oracle;
mod terms;

pub use class::{
    class_sum, orbit_class, orbit_class_with, point_scalars, projective_degree, twist_class,
    twist_datum, twist_rep, EquivariantClass,
};
pub use oracle::{l1_closed_form, l1_series, localization_oracle, localization_sum, TruncatedSeries};
pub use terms::{term_f, term_g, term_h, top_chern, FTermVariant, ScalarData};

/// The summand `Sym^{a-b} V (x) det^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub a: i64,
    pub b: i64,
}

impl Summand {
    pub fn new(a: i64, b: i64) -> Self {
        Summand { a, b }
    }

    /// Central weight `a + b`.
    pub fn weight(&self) -> i64 {
        self.a + self.b
    }

    /// `a - b + 1`.
    pub fn dim(&self) -> i64 {
        self.a - self.b + 1
    }

    /// `b / d`.
    pub fn slope(&self) -> Rational {
        Rational::new(BigInt::from(self.b), BigInt::from(self.weight()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub summands: Vec<Summand>,
}

impl Representation {
    pub fn new(summands: Vec<Summand>) -> Self {
        Representation { summands }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Representation {
            summands: pairs.iter().map(|&(a, b)| Summand::new(a, b)).collect(),
        }
    }

    pub fn dim(&self) -> i64 {
        self.summands.iter().map(Summand::dim).sum()
    }

    /// Structural checks: `a >= b` and `a + b > 0` for every summand.
    pub fn validate(&self) -> Result<(), OrbitError> {
        if self.summands.is_empty() {
            return Err(OrbitError::EmptyRepresentation);
        }
        for (i, s) in self.summands.iter().enumerate() {
            if s.a < s.b {
                return Err(OrbitError::InvalidSummand { index: i, a: s.a, b: s.b });
            }
            if s.weight() <= 0 {
                return Err(OrbitError::MixedOrZeroWeights { index: i, weight: s.weight() });
            }
        }
        Ok(())
    }
}

/// Vanishing orders of the nonzero components at one point of `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPoint {
    pub label: String,
    /// One entry per nonzero summand, in summand order.
    pub orders: Vec<u32>,
}

impl OrbitPoint {
    pub fn new(label: impl Into<String>, orders: Vec<u32>) -> Self {
        OrbitPoint { label: label.into(), orders }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitDatum {
    /// `w_i != 0`, one flag per summand.
    pub nonzero: Vec<bool>,
    pub points: Vec<OrbitPoint>,
    /// Asserts that every common zero of the components with minimal `b/d`
    /// is listed; unlisted points are taken to have a vanishing order 0 on
    /// one of those components.
    pub a_complete: bool,
}

impl OrbitDatum {
    /// All summands nonzero.
    pub fn generic(summands: usize, points: Vec<OrbitPoint>) -> Self {
        OrbitDatum {
            nonzero: alloc::vec![true; summands],
            points,
            a_complete: true,
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.nonzero.iter().filter(|&&z| z).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitError {
    EmptyRepresentation,
    InvalidSummand { index: usize, a: i64, b: i64 },
    /// Some summand has central weight `<= 0`; dualize or twist first.
    MixedOrZeroWeights { index: usize, weight: i64 },
    ZeroVector,
    NonzeroArity { expected: usize, found: usize },
    OrderArity { point: String, expected: usize, found: usize },
    OrderBudgetExceeded { summand: usize, total: u64, budget: i64 },
    AIncomplete,
    /// The orbit has dimension below 4 and the formula does not produce a
    /// polynomial.
    InfiniteStabilizer { dim: i64 },
    NonProportionalWeights,
    /// Exact division by the combined denominator failed.
    NonzeroRemainder,
    /// An internal consistency assertion failed.
    Internal(String),
    Polygon(PolygonError),
    Algebra(AlgebraError),
}

impl OrbitError {
    /// True for errors that signal a defect rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            OrbitError::NonzeroRemainder | OrbitError::Internal(_) | OrbitError::Algebra(_)
        )
    }
}

impl From<AlgebraError> for OrbitError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NonzeroRemainder => OrbitError::NonzeroRemainder,
            other => OrbitError::Algebra(other),
        }
    }
}

impl From<PolygonError> for OrbitError {
    fn from(e: PolygonError) -> Self {
        OrbitError::Polygon(e)
    }
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::EmptyRepresentation => f.write_str("representation has no summands"),
            OrbitError::InvalidSummand { index, a, b } => {
                write!(f, "summand {}: a = {} is smaller than b = {}", index, a, b)
            }
            OrbitError::MixedOrZeroWeights { index, weight } => write!(
                f,
                "summand {} has central weight {} <= 0; the class of a generic orbit closure \
                 vanishes for such weights, dualize or twist so that all weights are positive",
                index, weight
            ),
            OrbitError::ZeroVector => f.write_str("all summands are zero"),
            OrbitError::NonzeroArity { expected, found } => {
                write!(f, "expected {} nonzero flags, found {}", expected, found)
            }
            OrbitError::OrderArity { point, expected, found } => write!(
                f,
                "point {:?}: expected {} orders (one per nonzero summand), found {}",
                point, expected, found
            ),
            OrbitError::OrderBudgetExceeded { summand, total, budget } => write!(
                f,
                "summand {}: vanishing orders sum to {} but the form has degree {}",
                summand, total, budget
            ),
            OrbitError::AIncomplete => {
                f.write_str("a_complete must be true: the point set must contain the common zeros")
            }
            OrbitError::InfiniteStabilizer { dim } => write!(
                f,
                "nonzero part has dimension {} < 4; the stabilizer is infinite",
                dim
            ),
            OrbitError::NonProportionalWeights => {
                f.write_str("central weights are not proportional to the projective weights")
            }
            OrbitError::NonzeroRemainder => f.write_str("class assembly left a nonzero remainder"),
            OrbitError::Internal(msg) => write!(f, "internal check failed: {}", msg),
            OrbitError::Polygon(e) => write!(f, "{}", e),
            OrbitError::Algebra(e) => write!(f, "{}", e),
        }
    }
}

/// Checks the hypotheses of the class formula.
pub fn validate(rep: &Representation, datum: &OrbitDatum) -> Result<(), OrbitError> {
    rep.validate()?;
    if datum.nonzero.len() != rep.summands.len() {
        return Err(OrbitError::NonzeroArity {
            expected: rep.summands.len(),
            found: datum.nonzero.len(),
        });
    }
    let k = datum.nonzero_count();
    if k == 0 {
        return Err(OrbitError::ZeroVector);
    }
    for p in &datum.points {
        if p.orders.len() != k {
            return Err(OrbitError::OrderArity {
                point: p.label.clone(),
                expected: k,
                found: p.orders.len(),
            });
        }
    }
    let active = rep
        .summands
        .iter()
        .enumerate()
        .filter(|(i, _)| datum.nonzero[*i]);
    for (pos, (i, s)) in active.enumerate() {
        let total: u64 = datum.points.iter().map(|p| p.orders[pos] as u64).sum();
        let budget = s.a - s.b;
        if total > budget as u64 {
            return Err(OrbitError::OrderBudgetExceeded { summand: i, total, budget });
        }
    }
    if !datum.a_complete {
        return Err(OrbitError::AIncomplete);
    }
    Ok(())
}

/// The defining points of the Newton polygon at `point`, for the summands
/// flagged nonzero.
pub fn defining_points(
    rep: &Representation,
    nonzero: &[bool],
    point: &OrbitPoint,
) -> Vec<WeightedPoint> {
    rep.summands
        .iter()
        .zip(nonzero)
        .filter(|(_, &z)| z)
        .zip(&point.orders)
        .map(|((s, _), &r)| WeightedPoint::from_summand(s.a, s.b, r))
        .collect()
}
