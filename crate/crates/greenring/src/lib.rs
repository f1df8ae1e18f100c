//! Exact-arithmetic computer algebra for the Green ring, Grothendieck ring
//! and stable Green ring of a Radford Hopf algebra (with the Taft algebra as
//! the `m = 1` special case).
//!
//! The crate builds the three rings from their polynomial presentations,
//! extracts structure constants into generic based rings, computes the
//! unit-coefficient bilinear form with its radical lattices, Frobenius-Perron
//! dimensions and fusion-ring checks, and constructs and verifies the
//! group-like and bi-Frobenius structure carried by the complexified stable
//! Green algebra.
//!
//! Everything expressible over the integers or rationals is computed exactly;
//! quantities involving `2cos(pi/n)` (Frobenius-Perron dimensions, counits,
//! comultiplication weights) are floating point with explicit tolerances.

pub mod based;
pub mod bifrob;
pub mod cli;
pub mod dickson;
pub mod lattice;
pub mod poly;
pub mod presented;

pub use based::BasedRing;
pub use poly::Poly;
pub use presented::{make_ring, BasisLabel, RingElement, RingKind, RingSpec};
