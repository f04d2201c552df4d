//! The seven Bagnera–de Franchis families and real-structure attachment.
//!
//! Family data (group of translations of `E`, action on `F`, `rho` a
//! primitive cube root of unity):
//!
//! | k | G            | action on F                      | F lattice |
//! |---|--------------|----------------------------------|-----------|
//! | 1 | Z/2          | x -> -x                          | any       |
//! | 2 | Z/2 + Z/2    | x -> -x, x -> x + eps            | any       |
//! | 3 | Z/4          | x -> ix                          | square    |
//! | 4 | Z/4 + Z/2    | x -> ix, x -> x + (1+i)/2        | square    |
//! | 5 | Z/3          | x -> rho x                       | hexagonal |
//! | 6 | Z/3 + Z/3    | x -> rho x, x -> x + (1-rho)/3   | hexagonal |
//! | 7 | Z/6          | x -> -rho x                      | hexagonal |
//!
//! "any" lattices are fixed to the square one here: the real-part
//! computations only consume the integral/rational data, and the square
//! lattice carries all the antiholomorphic matrices needed.

use std::collections::HashSet;

use serde::Serialize;

use super::affine::{AffineMap, CurveLattice, Mat2, Rat, RatVec2};
use super::HyperError;
use crate::finite_group::FiniteGroup;

/// A self-map of `E x F` of product type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProductMap {
    pub on_e: AffineMap,
    pub on_f: AffineMap,
}

impl ProductMap {
    pub fn new(on_e: AffineMap, on_f: AffineMap) -> Result<ProductMap, HyperError> {
        if on_e.antiholo != on_f.antiholo {
            return Err(HyperError::MixedProductType);
        }
        Ok(ProductMap { on_e, on_f })
    }

    pub fn identity() -> ProductMap {
        ProductMap { on_e: AffineMap::identity(), on_f: AffineMap::identity() }
    }

    pub fn antiholo(&self) -> bool {
        self.on_e.antiholo
    }

    pub fn compose(&self, rhs: &ProductMap) -> ProductMap {
        ProductMap {
            on_e: self.on_e.compose(&rhs.on_e),
            on_f: self.on_f.compose(&rhs.on_f),
        }
    }

    pub fn inverse(&self) -> ProductMap {
        ProductMap { on_e: self.on_e.inverse(), on_f: self.on_f.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.on_e.is_identity() && self.on_f.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Fixed points exist on the product iff they exist on both factors.
    pub fn has_fixed_point(&self) -> bool {
        self.on_e.has_fixed_point() && self.on_f.has_fixed_point()
    }
}

/// Translation parameters selecting one member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    /// First translation on `E` (order 2, 3, 4 or 6 as the family requires).
    pub eta: RatVec2,
    /// Second translation on `E` (families 2, 4, 6).
    pub eta2: Option<RatVec2>,
    /// Half-period translation on `F` (family 2).
    pub eps: Option<RatVec2>,
}

impl FamilyParams {
    pub fn one(eta: RatVec2) -> FamilyParams {
        FamilyParams { eta, eta2: None, eps: None }
    }
}

/// Deck-group orders of families 1..7.
pub fn family_order(family: u8) -> Result<usize, HyperError> {
    match family {
        1 => Ok(2),
        2 => Ok(4),
        3 => Ok(4),
        4 => Ok(8),
        5 => Ok(3),
        6 => Ok(9),
        7 => Ok(6),
        k => Err(HyperError::BadFamily(k)),
    }
}

/// A hyperelliptic-surface group action: the deck group on `E x F`, and
/// optionally one antiholomorphic lift of a real structure downstairs.
#[derive(Clone, Debug)]
pub struct SurfaceGroupAction {
    family: u8,
    params: FamilyParams,
    lattice_e: CurveLattice,
    lattice_f: CurveLattice,
    deck_gens: Vec<ProductMap>,
    /// All deck elements, identity first, in deterministic closure order.
    deck: Vec<ProductMap>,
    sigma: Option<ProductMap>,
}

fn check_order(name: &str, v: &RatVec2, expected: i64) -> Result<(), HyperError> {
    let got = v.torsion_order();
    if got != expected {
        return Err(HyperError::BadTorsionOrder {
            param: name.to_string(),
            expected,
            got,
        });
    }
    Ok(())
}

/// Construct the deck part of a family member. The generated group is
/// closed, its order checked against the family, and the action verified
/// free (fixed-point congruences unsolvable for every nontrivial element)
/// and faithful on `F`.
pub fn bdf_family(family: u8, params: &FamilyParams) -> Result<SurfaceGroupAction, HyperError> {
    let lattice_e = CurveLattice::square();
    let lattice_f = match family {
        1 | 2 | 3 | 4 => CurveLattice::square(),
        5 | 6 | 7 => CurveLattice::hexagonal(),
        k => return Err(HyperError::BadFamily(k)),
    };
    let j = lattice_f.j;
    let eta = params.eta;
    let need_eta2 = matches!(family, 2 | 4 | 6);
    if need_eta2 && params.eta2.is_none() {
        return Err(HyperError::DegenerateParameters("missing eta2".into()));
    }
    if family == 2 && params.eps.is_none() {
        return Err(HyperError::DegenerateParameters("missing eps".into()));
    }

    let minus_id = Mat2::IDENTITY.neg();
    let half = Rat::new(1, 2);
    let third = Rat::new(1, 3);
    let mut gens: Vec<ProductMap> = Vec::new();
    let gen = |e_t: RatVec2, f: AffineMap| -> Result<ProductMap, HyperError> {
        ProductMap::new(AffineMap::translation(e_t), f)
    };
    match family {
        1 => {
            check_order("eta", &eta, 2)?;
            gens.push(gen(eta, AffineMap::new(minus_id, RatVec2::zero(), false))?);
        }
        2 => {
            let eta2 = params.eta2.unwrap();
            let eps = params.eps.unwrap();
            check_order("eta", &eta, 2)?;
            check_order("eta2", &eta2, 2)?;
            check_order("eps", &eps, 2)?;
            if eta.reduce_mod_one() == eta2.reduce_mod_one() {
                return Err(HyperError::DegenerateParameters("eta = eta2".into()));
            }
            gens.push(gen(eta, AffineMap::new(minus_id, RatVec2::zero(), false))?);
            gens.push(gen(eta2, AffineMap::new(Mat2::IDENTITY, eps, false))?);
        }
        3 => {
            check_order("eta", &eta, 4)?;
            gens.push(gen(eta, AffineMap::new(j, RatVec2::zero(), false))?);
        }
        4 => {
            let eta2 = params.eta2.unwrap();
            check_order("eta", &eta, 4)?;
            check_order("eta2", &eta2, 2)?;
            let double_eta = eta.add(&eta).reduce_mod_one();
            if eta2.reduce_mod_one() == double_eta {
                return Err(HyperError::DegenerateParameters("eta2 = 2 eta".into()));
            }
            gens.push(gen(eta, AffineMap::new(j, RatVec2::zero(), false))?);
            gens.push(gen(
                eta2,
                AffineMap::new(Mat2::IDENTITY, RatVec2(half, half), false),
            )?);
        }
        5 => {
            check_order("eta", &eta, 3)?;
            gens.push(gen(eta, AffineMap::new(j, RatVec2::zero(), false))?);
        }
        6 => {
            let eta2 = params.eta2.unwrap();
            check_order("eta", &eta, 3)?;
            check_order("eta2", &eta2, 3)?;
            let orbit = [
                eta.reduce_mod_one(),
                eta.add(&eta).reduce_mod_one(),
                RatVec2::zero(),
            ];
            if orbit.contains(&eta2.reduce_mod_one()) {
                return Err(HyperError::DegenerateParameters("eta2 in <eta>".into()));
            }
            gens.push(gen(eta, AffineMap::new(j, RatVec2::zero(), false))?);
            gens.push(gen(
                eta2,
                AffineMap::new(Mat2::IDENTITY, RatVec2(third, -third), false),
            )?);
        }
        7 => {
            check_order("eta", &eta, 6)?;
            gens.push(gen(eta, AffineMap::new(j.neg(), RatVec2::zero(), false))?);
        }
        k => return Err(HyperError::BadFamily(k)),
    }

    for g in &gens {
        if g.antiholo() {
            return Err(HyperError::DeckNotHolomorphic);
        }
        if !g.on_e.is_translation() {
            return Err(HyperError::DeckNotTranslationOnE);
        }
        if g.on_f.m.det().abs() != 1 {
            return Err(HyperError::NotUnimodular);
        }
        if !lattice_f.is_holo_matrix(&g.on_f.m) {
            return Err(HyperError::DeckNotHolomorphic);
        }
    }

    let deck = closure(&gens);
    let expected = family_order(family)?;
    if deck.len() != expected {
        return Err(HyperError::WrongDeckOrder { expected, got: deck.len() });
    }
    // free action: no nontrivial element fixes a point of E x F
    for g in &deck {
        if !g.is_identity() && g.has_fixed_point() {
            return Err(HyperError::ActionNotFree);
        }
    }
    // faithful on F
    let f_parts: HashSet<AffineMap> = deck.iter().map(|g| g.on_f).collect();
    if f_parts.len() != deck.len() {
        return Err(HyperError::ActionNotFaithful);
    }

    Ok(SurfaceGroupAction {
        family,
        params: *params,
        lattice_e,
        lattice_f,
        deck_gens: gens,
        deck,
        sigma: None,
    })
}

/// Deterministic closure of a generating set under composition.
fn closure(gens: &[ProductMap]) -> Vec<ProductMap> {
    let mut seen: HashSet<ProductMap> = HashSet::new();
    let mut list = vec![ProductMap::identity()];
    seen.insert(ProductMap::identity());
    let mut frontier = vec![ProductMap::identity()];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h);
            if seen.insert(gh) {
                list.push(gh);
                frontier.push(gh);
            }
        }
    }
    list.sort();
    // keep the identity first for readability of reports
    if let Some(pos) = list.iter().position(|g| g.is_identity()) {
        list.swap(0, pos);
    }
    list
}

/// The isomorphism types the extended symmetry group can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendedGroupKind {
    /// `D_q` (with `D_2` the Klein four-group)
    Dihedral(usize),
    /// `Z/2 x Z/2 x Z/2`
    ElementaryAbelian8,
    /// `Z/4 x Z/2`
    Z4xZ2,
    /// `Z/2 x D_4`
    Z2xD4,
    /// the order-16 group `G1` (`c1`)
    G1,
    /// `D_3 x Z/3`
    D3xZ3,
}

impl std::fmt::Display for ExtendedGroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedGroupKind::Dihedral(q) => write!(f, "D_{q}"),
            ExtendedGroupKind::ElementaryAbelian8 => write!(f, "Z/2 x Z/2 x Z/2"),
            ExtendedGroupKind::Z4xZ2 => write!(f, "Z/4 x Z/2"),
            ExtendedGroupKind::Z2xD4 => write!(f, "Z/2 x D_4"),
            ExtendedGroupKind::G1 => write!(f, "G1 (c1)"),
            ExtendedGroupKind::D3xZ3 => write!(f, "D_3 x Z/3"),
        }
    }
}

/// How the real structure acts on the deck group by conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaActionReport {
    /// `sigma g sigma^-1 = g` for all deck `g`
    pub trivial: bool,
    /// `sigma g sigma^-1 = g^-1` for all deck `g`
    pub inversion: bool,
}

/// Extended symmetry group data computed when a real structure attaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedGroupReport {
    pub order: usize,
    /// Sorted element-order multiset, the recognition invariant.
    pub element_orders: Vec<usize>,
    pub abelian: bool,
    /// `None` when outside the known catalog (reported, not an error).
    pub kind: Option<ExtendedGroupKind>,
    pub sigma_action: SigmaActionReport,
}

impl SurfaceGroupAction {
    pub fn family(&self) -> u8 {
        self.family
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn lattice_e(&self) -> &CurveLattice {
        &self.lattice_e
    }

    pub fn lattice_f(&self) -> &CurveLattice {
        &self.lattice_f
    }

    pub fn deck(&self) -> &[ProductMap] {
        &self.deck
    }

    pub fn deck_generators(&self) -> &[ProductMap] {
        &self.deck_gens
    }

    pub fn sigma(&self) -> Option<&ProductMap> {
        self.sigma.as_ref()
    }

    /// Attach one antiholomorphic product-type lift of a real structure.
    /// Preconditions checked exactly: antiholomorphy on both factors
    /// (against the curve lattices), normalization of the deck group, and
    /// `sigma^2` being a deck transformation.
    pub fn attach_real_structure(mut self, sigma: ProductMap) -> Result<Self, HyperError> {
        if !sigma.antiholo() {
            return Err(HyperError::NotAntiholomorphic);
        }
        if sigma.on_e.m.det().abs() != 1 || sigma.on_f.m.det().abs() != 1 {
            return Err(HyperError::NotUnimodular);
        }
        if !self.lattice_e.is_antiholo_matrix(&sigma.on_e.m)
            || !self.lattice_f.is_antiholo_matrix(&sigma.on_f.m)
        {
            return Err(HyperError::IncompatibleLinearPart);
        }
        let sigma_inv = sigma.inverse();
        for g in &self.deck {
            let conj = sigma.compose(g).compose(&sigma_inv);
            if !self.deck.contains(&conj) {
                return Err(HyperError::SigmaNotNormalizing);
            }
        }
        if !self.deck.contains(&sigma.compose(&sigma)) {
            return Err(HyperError::SigmaSquareNotDeck);
        }
        self.sigma = Some(sigma);
        Ok(self)
    }

    /// The extended symmetry group generated by the deck group and the
    /// attached lift, recognized against the catalog of possible types.
    pub fn extended_group_report(&self) -> Result<ExtendedGroupReport, HyperError> {
        let sigma = self.sigma.as_ref().ok_or(HyperError::NoRealStructure)?;
        let mut elements = self.deck.clone();
        elements.extend(self.deck.iter().map(|g| g.compose(sigma)));
        let order = elements.len();
        if order != 2 * self.deck.len() {
            return Err(HyperError::Internal("extended group size".into()));
        }
        let index_of = |x: &ProductMap| -> Result<usize, HyperError> {
            elements
                .iter()
                .position(|y| y == x)
                .ok_or_else(|| HyperError::Internal("extended group not closed".into()))
        };
        // element orders by iterated composition
        let mut element_orders = Vec::with_capacity(order);
        for x in &elements {
            let mut acc = *x;
            let mut k = 1;
            while !acc.is_identity() {
                acc = acc.compose(x);
                k += 1;
                if k > 2 * order {
                    return Err(HyperError::Internal("unbounded element order".into()));
                }
            }
            element_orders.push(k);
        }
        element_orders.sort_unstable();
        let abelian = elements.iter().enumerate().all(|(i, x)| {
            elements[i..].iter().all(|y| x.compose(y) == y.compose(x))
        });
        // closure sanity
        for x in &elements {
            index_of(&x.inverse())?;
        }

        let sigma_inv = sigma.inverse();
        let trivial = self
            .deck
            .iter()
            .all(|g| sigma.compose(g).compose(&sigma_inv) == *g);
        let inversion = self
            .deck
            .iter()
            .all(|g| sigma.compose(g).compose(&sigma_inv) == g.inverse());

        let kind = recognize_extended_group(order, &element_orders, abelian);
        Ok(ExtendedGroupReport {
            order,
            element_orders,
            abelian,
            kind,
            sigma_action: SigmaActionReport { trivial, inversion },
        })
    }
}

/// Match `(order, element-order multiset)` against the catalog of extended
/// symmetry groups. The signatures are pairwise distinct across the
/// catalog (asserted in tests), so a match identifies the type.
fn recognize_extended_group(
    order: usize,
    element_orders: &[usize],
    abelian: bool,
) -> Option<ExtendedGroupKind> {
    let candidates: Vec<(ExtendedGroupKind, FiniteGroup)> = match order {
        4 => vec![(
            ExtendedGroupKind::Dihedral(2),
            FiniteGroup::dihedral(2).expect("valid"),
        )],
        6 => vec![(
            ExtendedGroupKind::Dihedral(3),
            FiniteGroup::dihedral(3).expect("valid"),
        )],
        8 => vec![
            (ExtendedGroupKind::Dihedral(4), FiniteGroup::dihedral(4).expect("valid")),
            (
                ExtendedGroupKind::ElementaryAbelian8,
                FiniteGroup::abelian(&[2, 2, 2]).expect("valid"),
            ),
            (ExtendedGroupKind::Z4xZ2, FiniteGroup::abelian(&[4, 2]).expect("valid")),
        ],
        12 => vec![(
            ExtendedGroupKind::Dihedral(6),
            FiniteGroup::dihedral(6).expect("valid"),
        )],
        16 => vec![
            (
                ExtendedGroupKind::Z2xD4,
                FiniteGroup::direct_product(
                    &FiniteGroup::cyclic(2).expect("valid"),
                    &FiniteGroup::dihedral(4).expect("valid"),
                )
                .expect("valid"),
            ),
            (ExtendedGroupKind::G1, FiniteGroup::g1().expect("valid")),
        ],
        18 => vec![(
            ExtendedGroupKind::D3xZ3,
            FiniteGroup::direct_product(
                &FiniteGroup::dihedral(3).expect("valid"),
                &FiniteGroup::cyclic(3).expect("valid"),
            )
            .expect("valid"),
        )],
        _ => vec![],
    };
    candidates
        .into_iter()
        .find(|(_, g)| {
            g.is_abelian() == abelian && g.element_order_multiset() == element_orders
        })
        .map(|(kind, _)| kind)
}
