//! Real hyperelliptic surfaces `(E x F)/G` and the topology of their real
//! parts.
//!
//! A hyperelliptic surface is the quotient of a product of two elliptic
//! curves by a finite group `G` of translations of `E` acting on `F` with
//! quotient the line; the seven Bagnera–de Franchis families fix `G` and
//! its action on `F` ([`bdf_family`]). A real structure downstairs lifts
//! to a product-type antiholomorphic map on `E x F`; attaching one lift
//! ([`SurfaceGroupAction::attach_real_structure`]) determines the extended
//! symmetry group and, through the involutive-lift calculus
//! ([`SurfaceGroupAction::real_part_topology`]), the topology of the real
//! part: a disjoint union of 2-tori and Klein bottles. The allowed census
//! is checked by [`validate_topology`]; [`sweep`] enumerates real
//! structures with bounded translation denominators across the families.

mod affine;
mod families;
mod topology;

pub use affine::{
    fixed_circles, format_rat, parse_rat, AffineMap, Circle, CurveLattice, LatticeKind, Mat2,
    Rat, RatVec2,
};
pub use families::{
    bdf_family, family_order, ExtendedGroupKind, ExtendedGroupReport, FamilyParams, ProductMap,
    SigmaActionReport, SurfaceGroupAction,
};
pub use topology::{
    sweep, validate_topology, LiftSummary, RealSurfaceTopology, SigmaDescriptor, SweepRecord,
    TopologyReport,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("family index must be 1..=7, got {0}")]
    BadFamily(u8),
    #[error("translation parameter {param} must have exact order {expected} on the torus, got {got}")]
    BadTorsionOrder { param: String, expected: i64, got: i64 },
    #[error("translation parameters must generate the family's group: {0}")]
    DegenerateParameters(String),
    #[error("deck transformation is not holomorphic for the curve lattice")]
    DeckNotHolomorphic,
    #[error("deck transformations must act on E by translations")]
    DeckNotTranslationOnE,
    #[error("generated deck group has order {got}, family requires {expected}")]
    WrongDeckOrder { expected: usize, got: usize },
    #[error("the deck action is not free")]
    ActionNotFree,
    #[error("the deck action on F is not faithful")]
    ActionNotFaithful,
    #[error("the two factors of a product map must share the (anti)holomorphy type")]
    MixedProductType,
    #[error("the lift must be antiholomorphic on both factors")]
    NotAntiholomorphic,
    #[error("map is not an involution")]
    NotInvolutive,
    #[error("linear part is not compatible with the curve lattice")]
    IncompatibleLinearPart,
    #[error("the lift does not normalize the deck group")]
    SigmaNotNormalizing,
    #[error("the square of the lift is not a deck transformation")]
    SigmaSquareNotDeck,
    #[error("no real structure attached to the action")]
    NoRealStructure,
    #[error("linear part must be unimodular")]
    NotUnimodular,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
