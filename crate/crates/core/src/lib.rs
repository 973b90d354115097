//! Equivariant fundamental classes of orbit closures in representations of
//! GL(2) and of algebraic tori, computed in exact rational arithmetic.
//!
//! The GL(2) engine evaluates a closed localization formula built from the
//! Newton polygons of the vanishing orders of a vector's components, and
//! checks it against an independently assembled fixed-point sum.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod apps;
pub mod newton;
pub mod orbit;
pub mod torus;
pub mod verify;
