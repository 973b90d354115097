//! Input payloads and the JSON forms of exact values. Fractions travel as
//! strings `"p/q"`; integers may also be given as JSON numbers.

use orbclass_core::algebra::{fmt_rational, parse_rational, LinearForm, Polynomial, Rational, RationalTerm};
use orbclass_core::orbit::{FTermVariant, OrbitDatum, OrbitPoint, Representation};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Deserializes `value`, reporting the path of the offending field.
pub fn parse<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::schema(if path == "." { String::from("<root>") } else { path }, e.inner().to_string())
    })
}

/// A fraction given as `"p/q"`, `"p"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Fraction {
    Int(i64),
    Text(String),
}

impl Fraction {
    pub fn value(&self) -> Result<Rational, CliError> {
        match self {
            Fraction::Int(n) => Ok(Rational::from_integer((*n).into())),
            Fraction::Text(s) => parse_rational(s)
                .ok_or_else(|| CliError::Validation(format!("{:?} is not a fraction", s))),
        }
    }
}

pub fn fraction(q: &Rational) -> String {
    fmt_rational(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<MonomialJson>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            terms: p
                .terms()
                .into_iter()
                .map(|(e, c)| MonomialJson { exp: e.clone(), coef: fraction(c) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    /// Coefficients of the normalized linear form.
    pub form: Vec<String>,
    pub power: u32,
}

/// `scalar * numerator / prod form^power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalTermJson {
    pub scalar: String,
    pub numerator: PolynomialJson,
    pub denominator: Vec<FactorJson>,
    pub text: String,
}

impl From<&RationalTerm> for RationalTermJson {
    fn from(t: &RationalTerm) -> Self {
        RationalTermJson {
            scalar: fraction(t.scalar()),
            numerator: t.numerator().into(),
            denominator: t
                .denominator()
                .map(|(f, m): (&LinearForm, u32)| FactorJson {
                    form: f.coeffs().iter().map(fraction).collect(),
                    power: m,
                })
                .collect(),
            text: t.to_canonical_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub label: String,
    pub orders: Vec<u32>,
}

/// GL(2) class input.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassInput {
    pub summands: Vec<SummandJson>,
    /// Defaults to every summand nonzero.
    #[serde(default)]
    pub nonzero: Option<Vec<bool>>,
    #[serde(default)]
    pub points: Vec<PointJson>,
    pub a_complete: bool,
    #[serde(default)]
    pub stabilizer_order: Option<u64>,
    #[serde(default)]
    pub projective_weights: Option<Vec<u64>>,
    #[serde(default)]
    pub f_variant: FVariantJson,
}

impl ClassInput {
    pub fn to_core(&self) -> (Representation, OrbitDatum) {
        let rep = Representation::from_pairs(
            &self.summands.iter().map(|s| (s.a, s.b)).collect::<Vec<_>>(),
        );
        let datum = OrbitDatum {
            nonzero: self
                .nonzero
                .clone()
                .unwrap_or_else(|| vec![true; self.summands.len()]),
            points: self
                .points
                .iter()
                .map(|p| OrbitPoint::new(p.label.clone(), p.orders.clone()))
                .collect(),
            a_complete: self.a_complete,
        };
        (rep, datum)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberJson {
    #[serde(default)]
    pub label: Option<String>,
    pub ord_a: u32,
    pub ord_b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticInput {
    pub n: i64,
    #[serde(default)]
    pub fibers: Vec<FiberJson>,
    /// Kodaira type names, each realized by its minimal witness.
    #[serde(default)]
    pub types: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootJson {
    /// `[p, q]` for the point `[p:q]`.
    pub root: [Fraction; 2],
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

/// Exactly one of `profile`, `orders`, or `F`/`G` (with `roots`).
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatmapInput {
    pub n: i64,
    #[serde(default)]
    pub profile: Option<Vec<u32>>,
    /// `[r, j]` per fixed point: orders of `I` and `J`.
    #[serde(default)]
    pub orders: Option<Vec<[u32; 2]>>,
    #[serde(default, rename = "F")]
    pub f: Option<Vec<Fraction>>,
    #[serde(default, rename = "G")]
    pub g: Option<Vec<Fraction>>,
    #[serde(default)]
    pub roots: Option<Vec<RootJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusInput {
    pub d: usize,
    pub characters: Vec<Vec<i64>>,
    /// Defaults to every character supported.
    #[serde(default)]
    pub support: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPointJson {
    pub x: String,
    pub y: String,
    pub weight: u64,
}

/// A bare point list. Extra keys are ignored, so a polygon object from
/// `polygon` output can be fed back in.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct PointsInput {
    pub points: Vec<WeightedPointJson>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FVariantJson {
    #[default]
    Derived,
    AsPrinted,
}

impl From<FVariantJson> for FTermVariant {
    fn from(v: FVariantJson) -> Self {
        match v {
            FVariantJson::Derived => FTermVariant::Derived,
            FVariantJson::AsPrinted => FTermVariant::AsPrinted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fractions() {
        let q: Fraction = parse(json!("-3/6")).unwrap();
        assert_eq!(fraction(&q.value().unwrap()), "-1/2");
        let n: Fraction = parse(json!(7)).unwrap();
        assert_eq!(fraction(&n.value().unwrap()), "7");
        assert!(Fraction::Text(String::from("1/0")).value().is_err());
    }

    #[test]
    fn class_defaults() {
        let c: ClassInput =
            parse(json!({"summands": [{"a": 4, "b": 0}, {"a": 6, "b": 0}], "a_complete": false})).unwrap();
        let (rep, datum) = c.to_core();
        assert_eq!(rep.dim(), 12);
        assert_eq!(datum.nonzero, vec![true, true]);
        assert!(datum.points.is_empty());
        assert_eq!(c.f_variant, FVariantJson::Derived);
    }

    #[test]
    fn error_paths() {
        let e = parse::<ClassInput>(json!({"summands": [], "a_complete": true, "extra": 1})).unwrap_err();
        assert!(matches!(e, CliError::Schema { .. }));
        let e = parse::<ClassInput>(json!({"summands": [{"a": 1, "b": 0}], "points": [{"label": "u", "orders": "x"}],
            "a_complete": true}))
        .unwrap_err();
        match e {
            CliError::Schema { path, .. } => assert_eq!(path, "points[0].orders"),
            other => panic!("{:?}", other),
        }
    }
}
