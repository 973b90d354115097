//! Exact rational arithmetic: polynomials, linear forms, and rational terms
//! with factored linear denominators.

use core::fmt;

mod linear;
mod poly;
pub mod rational;
mod term;

pub use linear::LinearForm;
pub use poly::{grlex, Exponents, Polynomial};
pub use rational::{fmt_rational, int, parse_rational, rat, Rational, Variables};
pub use term::{symmetrize, RationalTerm, RationalTermSum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// Operands live in different variable contexts.
    VariableMismatch,
    /// Wrong number of exponents, images, or variables.
    ArityMismatch { expected: usize, found: usize },
    /// Division did not terminate with a zero remainder.
    NonzeroRemainder,
    DivisionByZero,
    /// A denominator factor is identically zero.
    ZeroDenominator,
    NotHomogeneous,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::VariableMismatch => f.write_str("polynomials use different variables"),
            AlgebraError::ArityMismatch { expected, found } => {
                write!(f, "expected {} variables, found {}", expected, found)
            }
            AlgebraError::NonzeroRemainder => f.write_str("exact division left a nonzero remainder"),
            AlgebraError::DivisionByZero => f.write_str("division by the zero polynomial"),
            AlgebraError::ZeroDenominator => f.write_str("zero linear form in a denominator"),
            AlgebraError::NotHomogeneous => f.write_str("polynomial is not homogeneous"),
        }
    }
}
