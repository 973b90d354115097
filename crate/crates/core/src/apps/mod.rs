//! Front ends for two families of orbits: Weierstrass data of elliptic
//! fibrations and rational self-maps of the projective line.

use alloc::string::String;
use core::fmt;

use crate::orbit::OrbitError;

mod elliptic;
mod ratmap;

pub use elliptic::{
    elliptic_closed_form, elliptic_degree, elliptic_rep, kodaira_contribution, EllipticReport,
    FiberDatum, FiberReport, KodairaType,
};
pub use ratmap::{
    binary_form, profile_from_j, ratmap_class, ratmap_closed_product, ratmap_from_orders,
    ratmap_rep, split_hom, FixedPointProfile, HomPair, ProjectiveRoot, RatmapReport, SplitHom,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AppError {
    Orbit(OrbitError),
    InvalidDegree(i64),
    UnknownKodairaType(String),
    ProfileSum { expected: i64, found: i64 },
    ZeroMultiplicity,
    /// `J` has a root of multiplicity at least 2 where `I` also vanishes.
    Prop72Violation { root: String },
    /// The supplied roots do not factor `J`.
    RootsMismatch,
    /// Coefficient lists of the wrong length or both forms zero.
    InvalidForms(String),
    /// Engine and closed form disagree.
    Mismatch(String),
}

impl AppError {
    pub fn is_internal(&self) -> bool {
        match self {
            AppError::Orbit(e) => e.is_internal(),
            AppError::Mismatch(_) => true,
            _ => false,
        }
    }
}

impl From<OrbitError> for AppError {
    fn from(e: OrbitError) -> Self {
        AppError::Orbit(e)
    }
}

impl From<crate::algebra::AlgebraError> for AppError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        AppError::Orbit(e.into())
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Orbit(e) => write!(f, "{}", e),
            AppError::InvalidDegree(n) => write!(f, "degree parameter {} is out of range", n),
            AppError::UnknownKodairaType(t) => write!(f, "unknown Kodaira type {:?}", t),
            AppError::ProfileSum { expected, found } => write!(
                f,
                "fixed-point multiplicities sum to {}, expected {}",
                found, expected
            ),
            AppError::ZeroMultiplicity => f.write_str("multiplicities must be positive"),
            AppError::Prop72Violation { root } => write!(
                f,
                "J has a multiple root at {} where I also vanishes; F and G share a factor",
                root
            ),
            AppError::RootsMismatch => f.write_str("the given roots and multiplicities do not factor J"),
            AppError::InvalidForms(msg) => write!(f, "invalid binary forms: {}", msg),
            AppError::Mismatch(msg) => write!(f, "internal mismatch: {}", msg),
        }
    }
}
