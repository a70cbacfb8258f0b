//! Equivariant deformations of invariant Hilbert scheme points.
//!
//! The crate computes, in exact rational arithmetic, the tangent space and
//! the formal universal deformation of a point of an invariant Hilbert scheme
//! for a reductive group given by finite, torus and connected semisimple
//! parts, together with flat limits under one-parameter subgroups.

pub mod algebra;
pub mod groebner;
pub mod action;
pub mod deform;
pub mod degeneration;
