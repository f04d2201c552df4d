//! Exact-arithmetic classification of real structures.
//!
//! A real structure on a complex manifold is an antiholomorphic involution;
//! this crate turns the classification theory for the simplest cases into
//! executable decision procedures, all over exact integer/rational
//! arithmetic:
//!
//! * [`exact_linalg`] — integer/rational linear algebra: Smith normal form,
//!   congruence solving on tori, and the canonical decomposition of a lattice
//!   under an integral involution. Substrate for everything else.
//! * [`torus_real`] — real structures on n-dimensional complex tori:
//!   invariants `(r, splits)`, normal forms, topology of the real part, and
//!   the compatible-complex-structure parametrization (genus 1 included).
//! * [`finite_group`] — finite groups as multiplication tables or structured
//!   semidirect products, with the inverting-automorphism test.
//! * [`triangle`] — triangle curves `(G, a, c)`: Riemann–Hurwitz genus,
//!   reality of the curve, and a catalog (Fermat, Accola, metacyclic family).
//! * [`hyperelliptic`] — real hyperelliptic surfaces `(E x F)/G` from the
//!   Bagnera–de Franchis list: involutive lifts, fixed circles, and the
//!   torus/Klein-bottle census of the real part.
//! * [`bc_threefold`] — numeric invariants of torus-bundle 3-folds built from
//!   a rank-2 bundle with four everywhere R-independent sections.

pub mod bc_threefold;
pub mod exact_linalg;
pub mod finite_group;
pub mod hyperelliptic;
pub mod torus_real;
pub mod triangle;

pub use exact_linalg::{IntMatrix, RatMatrix, RatVector};
