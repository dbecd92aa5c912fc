//! Exact-arithmetic engine for the deformed Calogero-Moser-Sutherland (CMS)
//! quantum integrals acting on quasi-invariant Laurent polynomials.
//!
//! The crate provides, over arbitrary-precision rationals:
//!
//! - Laurent polynomials in `n` x-variables and `m` y-variables, the
//!   localized ring with `(x_i - x_j)` denominators, exact linear algebra and
//!   lattice points of convex hulls ([`laurent`], [`localized`], [`matrix`],
//!   [`hull`]);
//! - the recursively defined deformed CMS integrals and their action in
//!   strict (polynomial) or localized mode ([`operators`]);
//! - the algebra of quasi-invariants: membership tests, finite-dimensional
//!   invariant subspaces and Schur-product generators ([`quasi`]);
//! - the Harish-Chandra images of the integrals, character evaluation and the
//!   shifted-symmetry/hyperplane membership test ([`hc`]);
//! - exact joint generalized-eigenspace decompositions with nilpotency
//!   profiles ([`spectral`]);
//! - highest-weight combinatorics: admissible weights, the (A, B) set
//!   calculus, central-character equivalence classes, spherical typicality,
//!   Kac flags and odd reflections ([`weights`]);
//! - a complete worked treatment of the `(1, 1)` case with the explicit
//!   third-order integral ([`gl12`]);
//! - the end-to-end verification suite ([`suite`]).

pub mod gl12;
pub mod hc;
pub mod hull;
pub mod laurent;
pub mod localized;
pub mod matrix;
pub mod operators;
pub mod params;
pub mod quasi;
pub mod rat;
pub mod spectral;
pub mod suite;
pub mod weights;

pub use hull::hull_lattice_points;
pub use laurent::{dominance_leq, Exponent, LaurentPoly};
pub use localized::LocalizedFn;
pub use matrix::{ExactMatrix, LinearSolver};
pub use params::DeformedParams;
pub use rat::{Rat, DEFAULT_SEED};
