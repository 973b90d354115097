//! Self-consistency checks for a class computation. Failures are reported
//! as entries, never as errors.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::int;
use crate::newton::build_polygon;
use crate::orbit::{
    defining_points, localization_oracle, orbit_class_with, twist_class, twist_datum, twist_rep,
    validate, EquivariantClass, FTermVariant, OrbitDatum, OrbitError, OrbitPoint, Representation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), pass, detail }
    }

    fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Check::new(name, true, None),
            Err(e) => Check::new(name, false, Some(e)),
        }
    }
}

/// Twist factors checked by [`verify`].
pub const TWISTS: [i64; 2] = [1, 2];

/// Runs every check with the standard F term.
pub fn verify(rep: &Representation, datum: &OrbitDatum) -> Result<Vec<Check>, OrbitError> {
    verify_with(rep, datum, FTermVariant::Derived)
}

/// As [`verify`], building the engine class with the given F-term variant.
/// The oracle is unaffected by the variant.
pub fn verify_with(
    rep: &Representation,
    datum: &OrbitDatum,
    variant: FTermVariant,
) -> Result<Vec<Check>, OrbitError> {
    validate(rep, datum)?;
    let mut checks = Vec::new();
    let class = orbit_class_with(rep, datum, variant);
    checks.push(Check::from_result(
        "polynomiality",
        class.as_ref().map(|_| ()).map_err(|e| e.to_string()),
    ));
    let class = class.ok();

    checks.push(match &class {
        Some(c) => Check::new("symmetry", c.poly.is_symmetric(), None),
        None => Check::new("symmetry", false, Some(String::from("no class"))),
    });
    checks.push(match &class {
        Some(c) => {
            let ok = c.poly.is_zero()
                || (c.poly.is_homogeneous() && c.poly.degree() == Some(c.codim as u32));
            Check::new(
                "homogeneity",
                ok && c.codim == rep.dim() - 4,
                Some(format!("expected degree {}", rep.dim() - 4)),
            )
        }
        None => Check::new("homogeneity", false, Some(String::from("no class"))),
    });

    checks.push(Check::from_result("a-enlargement", enlargement(rep, datum, variant, class.as_ref())));
    for n in TWISTS {
        checks.push(Check::from_result(
            format!("twist n={}", n),
            twist(rep, datum, variant, class.as_ref(), n),
        ));
    }
    checks.push(Check::from_result("oracle-equality", oracle(rep, datum, class.as_ref())));
    checks.push(Check::from_result("divisibility", divisibility(rep, datum)));
    Ok(checks)
}

fn enlargement(
    rep: &Representation,
    datum: &OrbitDatum,
    variant: FTermVariant,
    class: Option<&EquivariantClass>,
) -> Result<(), String> {
    let class = class.ok_or("no class")?;
    let mut bigger = datum.clone();
    let mut label = String::from("extra");
    while bigger.points.iter().any(|p| p.label == label) {
        label.push('\'');
    }
    bigger
        .points
        .push(OrbitPoint::new(label, alloc::vec![0; datum.nonzero_count()]));
    let other = orbit_class_with(rep, &bigger, variant).map_err(|e| e.to_string())?;
    if other.poly == class.poly {
        Ok(())
    } else {
        Err(String::from("class changed after adding a point with zero orders"))
    }
}

/// `Q(n) = (2n + 1) e_n^*(Q)`.
fn twist(
    rep: &Representation,
    datum: &OrbitDatum,
    variant: FTermVariant,
    class: Option<&EquivariantClass>,
    n: i64,
) -> Result<(), String> {
    let class = class.ok_or("no class")?;
    let pulled = twist_class(class, n).map_err(|e| e.to_string())?;
    let twisted = twist_rep(rep, n).map_err(|e| e.to_string())?;
    let direct = orbit_class_with(&twisted, &twist_datum(datum), variant).map_err(|e| e.to_string())?;
    if pulled.poly.scale(&int(2 * n + 1)) == direct.poly {
        Ok(())
    } else {
        Err(format!("Q({}) differs from {} times the pullback", n, 2 * n + 1))
    }
}

fn oracle(
    rep: &Representation,
    datum: &OrbitDatum,
    class: Option<&EquivariantClass>,
) -> Result<(), String> {
    let other = localization_oracle(rep, datum).map_err(|e| e.to_string())?;
    let class = class.ok_or("engine produced no class")?;
    if other.poly == class.poly {
        Ok(())
    } else {
        Err(String::from("engine and localization oracle disagree"))
    }
}

fn divisibility(rep: &Representation, datum: &OrbitDatum) -> Result<(), String> {
    let mut failures = Vec::new();
    for p in &datum.points {
        let polygon =
            build_polygon(&defining_points(rep, &datum.nonzero, p)).map_err(|e| format!("{:?}", e))?;
        let report = polygon.divisibility_check();
        if !report.passed {
            failures.push(format!("point {:?}: {}", p.label, report.failures.join("; ")));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join(" | "))
    }
}
