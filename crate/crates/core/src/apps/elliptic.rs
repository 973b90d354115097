use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::AppError;
use crate::algebra::{int, rat, Rational};
use crate::orbit::{
    orbit_class, projective_degree, EquivariantClass, OrbitDatum, OrbitPoint, Representation,
};

/// A marked fiber with the vanishing orders of the Weierstrass
/// coefficients `A` and `B` there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberDatum {
    pub label: String,
    pub ord_a: u32,
    pub ord_b: u32,
}

impl FiberDatum {
    pub fn new(label: impl Into<String>, ord_a: u32, ord_b: u32) -> Self {
        FiberDatum { label: label.into(), ord_a, ord_b }
    }

    /// `min(ord_A / 2, ord_B / 3)`.
    pub fn c(&self) -> Rational {
        core::cmp::min(rat(self.ord_a as i64, 2), rat(self.ord_b as i64, 3))
    }

    /// The Kodaira type, or `None` for non-minimal data (`c >= 2`).
    pub fn kodaira_type(&self) -> Option<KodairaType> {
        KodairaType::ALL.into_iter().find(|t| t.c() == self.c())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KodairaType {
    In,
    InStar,
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub const ALL: [KodairaType; 8] = [
        KodairaType::In,
        KodairaType::InStar,
        KodairaType::II,
        KodairaType::III,
        KodairaType::IV,
        KodairaType::IVStar,
        KodairaType::IIIStar,
        KodairaType::IIStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KodairaType::In => "I_N",
            KodairaType::InStar => "I_N*",
            KodairaType::II => "II",
            KodairaType::III => "III",
            KodairaType::IV => "IV",
            KodairaType::IVStar => "IV*",
            KodairaType::IIIStar => "III*",
            KodairaType::IIStar => "II*",
        }
    }

    /// Smallest `(ord_A, ord_B)` realizing the type.
    pub fn witness(self) -> (u32, u32) {
        match self {
            KodairaType::In => (0, 0),
            KodairaType::InStar => (2, 3),
            KodairaType::II => (1, 1),
            KodairaType::III => (1, 2),
            KodairaType::IV => (2, 2),
            KodairaType::IVStar => (3, 4),
            KodairaType::IIIStar => (3, 5),
            KodairaType::IIStar => (4, 5),
        }
    }

    pub fn c(self) -> Rational {
        match self {
            KodairaType::In => rat(0, 1),
            KodairaType::InStar => rat(1, 1),
            KodairaType::II => rat(1, 3),
            KodairaType::III => rat(1, 2),
            KodairaType::IV => rat(2, 3),
            KodairaType::IVStar => rat(4, 3),
            KodairaType::IIIStar => rat(3, 2),
            KodairaType::IIStar => rat(5, 3),
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KodairaType {
    type Err = AppError;

    /// Accepts `I_N`, `IN`, `I0`, `I_N*`, `II`, `III`, `IV`, `IV*`, `III*`,
    /// `II*`, case-insensitively; `I<k>` and `I<k>*` are read as `I_N` and
    /// `I_N*`.
    fn from_str(s: &str) -> Result<Self, AppError> {
        let t: String = s.trim().to_ascii_uppercase().replace('_', "");
        let star = t.ends_with('*');
        let base = t.trim_end_matches('*');
        let ty = match base {
            "II" => Some(if star { KodairaType::IIStar } else { KodairaType::II }),
            "III" => Some(if star { KodairaType::IIIStar } else { KodairaType::III }),
            "IV" => Some(if star { KodairaType::IVStar } else { KodairaType::IV }),
            _ if base.starts_with('I')
                && (&base[1..] == "N" || base[1..].chars().all(|c| c.is_ascii_digit())) =>
            {
                Some(if star { KodairaType::InStar } else { KodairaType::In })
            }
            _ => None,
        };
        ty.ok_or_else(|| AppError::UnknownKodairaType(String::from(s)))
    }
}

/// `(c, c^2 (3n - c))` for a fiber of the given type.
pub fn kodaira_contribution(n: i64, t: KodairaType) -> (Rational, Rational) {
    let c = t.c();
    let contribution = &c * &c * (int(3 * n) - &c);
    (c, contribution)
}

/// `Sym^{4n} V (+) Sym^{6n} V`.
pub fn elliptic_rep(n: i64) -> Representation {
    Representation::from_pairs(&[(4 * n, 0), (6 * n, 0)])
}

/// `2^{4n+3} 3^{6n+1} n (4n^3 - sum c^2 (3n - c))`.
pub fn elliptic_closed_form(n: i64, fibers: &[FiberDatum]) -> Rational {
    let mut inner = int(4 * n * n * n);
    for f in fibers {
        let c = f.c();
        inner -= &c * &c * (int(3 * n) - &c);
    }
    num_traits::pow(int(2), (4 * n + 3) as usize)
        * num_traits::pow(int(3), (6 * n + 1) as usize)
        * int(n)
        * inner
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub label: String,
    pub c: Rational,
    pub contribution: Rational,
    /// `None` for non-minimal data.
    pub kodaira: Option<KodairaType>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticReport {
    pub class: EquivariantClass,
    pub degree: Rational,
    pub fibers: Vec<FiberReport>,
}

/// Degree of the orbit closure of a Weierstrass datum `(A, B)` of degrees
/// `(4n, 6n)` in the weighted projective space `P(2, 3)`, via the general
/// engine and checked against the closed form.
pub fn elliptic_degree(n: i64, fibers: &[FiberDatum]) -> Result<EllipticReport, AppError> {
    if n < 1 {
        return Err(AppError::InvalidDegree(n));
    }
    let rep = elliptic_rep(n);
    let points = fibers
        .iter()
        .map(|f| OrbitPoint::new(f.label.clone(), alloc::vec![f.ord_a, f.ord_b]))
        .collect();
    let datum = OrbitDatum::generic(2, points);
    let mut class = orbit_class(&rep, &datum)?;
    let degree = projective_degree(&class, &rep, &[2, 3])?;
    let closed = elliptic_closed_form(n, fibers);
    if degree != closed {
        return Err(AppError::Mismatch(format!(
            "engine degree {} differs from closed form {}",
            degree, closed
        )));
    }
    let reports: Vec<FiberReport> = fibers
        .iter()
        .map(|f| {
            let c = f.c();
            FiberReport {
                label: f.label.clone(),
                contribution: &c * &c * (int(3 * n) - &c),
                c,
                kodaira: f.kodaira_type(),
            }
        })
        .collect();
    for r in &reports {
        if r.kodaira.is_none() {
            class
                .notes
                .push(format!("fiber {:?}: c = {} >= 2, non-minimal", r.label, r.c));
        }
    }
    Ok(EllipticReport { class, degree, fibers: reports })
}
