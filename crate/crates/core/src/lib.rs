//! Exact-arithmetic invariants of quotients of complex tori by finite groups
//! of affine automorphisms.
//!
//! The crate is organised around a lattice tier (integer linear algebra on a
//! basis of the period lattice) and an analytic tier (cyclotomic-field data
//! describing the holomorphic tangent action).  Everything is computed over
//! arbitrary-precision rationals and cyclotomic fields; there is no floating
//! point anywhere.

pub mod analysis;
pub mod catalog;
pub mod exactmath;
pub mod fixtures;
pub mod invariants;
pub mod singular;
pub mod symdiff;
pub mod torus;

pub use exactmath::cyclotomic::{CycloElem, CycloMatrix};
pub use exactmath::lattice::SublatticeBasis;
pub use exactmath::matrix::IntMatrix;
pub use exactmath::normal_form::FiniteAbelianGroup;
pub use exactmath::rat::Rat;
pub use torus::{AffineAut, Classification, GroupTable, TorusAction};
