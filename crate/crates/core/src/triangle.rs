//! Triangle curves: Galois covers of the line branched over three points.
//!
//! The combinatorial shadow of such a cover is a finite group `G` with a
//! marked generating pair `(a, c)`; the third element is `b = (a c)^-1`, so
//! that `a b c = 1`, and the branching multiplicities are the orders of
//! `a`, `b`, `c`. The cover's genus comes from the Riemann–Hurwitz count
//! `|G| = 2 (g - 1) (1 - 1/m - 1/n - 1/p)^-1`, evaluated here in exact
//! rationals. The curve is *real* (isomorphic to its conjugate, with the
//! three branch points on the real line) exactly when `G` has an
//! automorphism inverting both `a` and `c`.
//!
//! The catalog carries the classical families: the Fermat curve of degree
//! n with its `(Z/n)^2` deck group, the Accola curve `y^2 = x^(2g+2) - 1`
//! with `Z/2 x Z/(2g+2)`, and the non-real metacyclic family. Where the
//! deck group has three distinct branching multiplicities it is the full
//! automorphism group, which pins the curve's reality down completely.

use num_rational::Rational64;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::finite_group::{
    semidirect_inverting_criterion, Element, FiniteGroup, GroupError, MetacyclicParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the pair does not generate the group")]
    NonGeneratingPair,
    #[error("element of order {0} < 2 cannot be a branching generator")]
    UnramifiedGenerator(usize),
    #[error("Riemann-Hurwitz genus is not an integer for |G| = {order}, multiplicities {mult:?}")]
    NonIntegralGenus { order: usize, mult: (usize, usize, usize) },
    #[error("Riemann-Hurwitz genus is negative for |G| = {order}, multiplicities {mult:?}")]
    NegativeGenus { order: usize, mult: (usize, usize, usize) },
    #[error("Harnack bound needs g >= 0, got {0}")]
    NegativeGenusInput(i64),
    #[error("catalog parameter out of range: {0}")]
    BadCatalogParameter(String),
}

/// Whether the deck group is known to equal the full automorphism group.
/// Three pairwise distinct multiplicities are a sufficient condition;
/// otherwise the question is left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AutVersusDeck {
    Yes,
    Unknown,
}

/// A triangle datum: group with marked generators `a`, `c` and
/// `b = (a c)^-1`, plus the branching multiplicities (their orders).
#[derive(Clone, Debug)]
pub struct TriangleDatum {
    group: FiniteGroup,
    a: Element,
    b: Element,
    c: Element,
    multiplicities: (usize, usize, usize),
}

/// Summary of the triangle-curve computations for one datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub group_order: usize,
    pub multiplicities: (usize, usize, usize),
    pub genus: i64,
    pub is_real: bool,
    pub aut_equals_deck: AutVersusDeck,
    /// Set when the triple is spherical or euclidean (genus <= 1); such
    /// data fall outside the hyperbolic triangle-curve setting proper.
    pub degenerate: bool,
}

impl TriangleDatum {
    /// Build the datum from `(G, a, c)`, taking `b = (a c)^-1` so that
    /// `a b c = 1`. Requires `{a, c}` to generate and all three orders to
    /// be at least 2 (order 1 would mean an unramified point).
    pub fn new(group: FiniteGroup, a: Element, c: Element) -> Result<Self, TriangleError> {
        if !group.is_generating_pair(a, c)? {
            return Err(TriangleError::NonGeneratingPair);
        }
        let b = group.inverse(group.mul(a, c));
        let orders = (
            group.element_order(a)?,
            group.element_order(b)?,
            group.element_order(c)?,
        );
        for &o in [orders.0, orders.1, orders.2].iter() {
            if o < 2 {
                return Err(TriangleError::UnramifiedGenerator(o));
            }
        }
        Ok(TriangleDatum { group, a, b, c, multiplicities: orders })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn a(&self) -> Element {
        self.a
    }

    pub fn b(&self) -> Element {
        self.b
    }

    pub fn c(&self) -> Element {
        self.c
    }

    pub fn multiplicities(&self) -> (usize, usize, usize) {
        self.multiplicities
    }

    /// Riemann–Hurwitz genus of the cover.
    pub fn genus(&self) -> Result<i64, TriangleError> {
        hurwitz_genus(self.group.order(), self.multiplicities)
    }

    /// Degenerate means spherical or euclidean: `1 - 1/m - 1/n - 1/p <= 0`,
    /// equivalently genus <= 1.
    pub fn is_degenerate(&self) -> bool {
        let (m, n, p) = self.multiplicities;
        hyperbolicity_bracket(m, n, p) <= Rational64::from_integer(0)
    }

    /// Does complex conjugation lift to the cover, i.e. is the curve real?
    /// Reduces to the inverting-automorphism test on `(a, c)`.
    pub fn is_real(&self) -> Result<bool, TriangleError> {
        Ok(self.group.inverting_automorphism_exists(self.a, self.c)?)
    }

    /// Sufficient condition: pairwise distinct multiplicities force the
    /// deck group to be the full automorphism group.
    pub fn aut_equals_deck(&self) -> AutVersusDeck {
        let (m, n, p) = self.multiplicities;
        if m != n && n != p && m != p {
            AutVersusDeck::Yes
        } else {
            AutVersusDeck::Unknown
        }
    }

    pub fn report(&self) -> Result<TriangleReport, TriangleError> {
        Ok(TriangleReport {
            group_order: self.group.order(),
            multiplicities: self.multiplicities,
            genus: self.genus()?,
            is_real: self.is_real()?,
            aut_equals_deck: self.aut_equals_deck(),
            degenerate: self.is_degenerate(),
        })
    }
}

fn hyperbolicity_bracket(m: usize, n: usize, p: usize) -> Rational64 {
    let one = Rational64::from_integer(1);
    one - Rational64::new(1, m as i64) - Rational64::new(1, n as i64)
        - Rational64::new(1, p as i64)
}

/// Genus from the Riemann–Hurwitz count
/// `g = 1 + |G| (1 - 1/m - 1/n - 1/p) / 2`, in exact rationals. Errors on
/// a non-integral or negative result (the datum would be inconsistent).
pub fn hurwitz_genus(order: usize, mult: (usize, usize, usize)) -> Result<i64, TriangleError> {
    let (m, n, p) = mult;
    let bracket = hyperbolicity_bracket(m, n, p);
    let g = Rational64::from_integer(1) + Rational64::new(order as i64, 2) * bracket;
    if !g.is_integer() {
        return Err(TriangleError::NonIntegralGenus { order, mult });
    }
    if g.is_negative() {
        return Err(TriangleError::NegativeGenus { order, mult });
    }
    Ok(g.to_integer())
}

/// Harnack's bound: a real curve of genus `g` has `t` ovals with
/// `0 <= t <= g + 1`.
pub fn harnack_check(g: i64, t: i64) -> Result<bool, TriangleError> {
    if g < 0 {
        return Err(TriangleError::NegativeGenusInput(g));
    }
    Ok((0..=g + 1).contains(&t))
}

/// Realization of the same curve by a larger automorphism group, carried
/// as numeric metadata (the full group is not materialized).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullGroupRealization {
    pub description: String,
    pub order: usize,
    pub multiplicities: (usize, usize, usize),
}

/// A named catalog entry: the datum plus its expected invariants.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub datum: TriangleDatum,
    pub expected_genus: i64,
    pub expected_real: bool,
    pub full_group: Option<FullGroupRealization>,
}

/// Fermat curve of degree `n >= 3` as a triangle curve: deck group
/// `(Z/n)^2` with multiplicities `(n, n, n)`; the full automorphism group
/// has order `6 n^2` and multiplicities `(2, 3, 2n)`.
pub fn fermat(n: usize) -> Result<CatalogEntry, TriangleError> {
    if n < 3 {
        return Err(TriangleError::BadCatalogParameter(format!(
            "fermat needs n >= 3, got {n}"
        )));
    }
    let group = FiniteGroup::abelian(&[n, n])?;
    let a = group.generator("g1").expect("abelian generator");
    let c = group.generator("g2").expect("abelian generator");
    let datum = TriangleDatum::new(group, a, c)?;
    let expected_genus = ((n - 1) * (n - 2) / 2) as i64;
    Ok(CatalogEntry {
        name: format!("fermat({n})"),
        datum,
        expected_genus,
        expected_real: true,
        full_group: Some(FullGroupRealization {
            description: format!("(Z/{n})^2 extended by the coordinate permutations"),
            order: 6 * n * n,
            multiplicities: (2, 3, 2 * n),
        }),
    })
}

/// Accola curve `y^2 = x^(2g+2) - 1` for `g >= 2`: deck group
/// `Z/2 x Z/(2g+2)` with multiplicities `(2, 2g+2, 2g+2)`; the full group
/// `Z/2 x D_(2g+2)` of order `8g+8` realizes it with `(2, 4, 2g+2)`.
pub fn accola(g: usize) -> Result<CatalogEntry, TriangleError> {
    if g < 2 {
        return Err(TriangleError::BadCatalogParameter(format!(
            "accola needs g >= 2, got {g}"
        )));
    }
    let group = FiniteGroup::abelian(&[2, 2 * g + 2])?;
    let a = group.generator("g1").expect("abelian generator");
    let c = group.generator("g2").expect("abelian generator");
    let datum = TriangleDatum::new(group, a, c)?;
    Ok(CatalogEntry {
        name: format!("accola({g})"),
        datum,
        expected_genus: g as i64,
        expected_real: true,
        full_group: Some(FullGroupRealization {
            description: format!("Z/2 x D_{}", 2 * g + 2),
            order: 8 * g + 8,
            multiplicities: (2, 4, 2 * g + 2),
        }),
    })
}

/// The non-real metacyclic family with parameters `(r, m)`.
pub fn catanese(r: i64, m: i64) -> Result<CatalogEntry, TriangleError> {
    let params = MetacyclicParams::new(r, m)?;
    let (group, a, c) = FiniteGroup::metacyclic(&params)?;
    let datum = TriangleDatum::new(group, a, c)?;
    let expected_genus = datum.genus()?;
    Ok(CatalogEntry {
        name: format!("catanese({r},{m})"),
        datum,
        expected_genus,
        expected_real: false,
        full_group: None,
    })
}

/// The default catalog: one representative of each family.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        fermat(5).expect("valid parameters"),
        accola(3).expect("valid parameters"),
        catanese(3, 4).expect("valid parameters"),
    ]
}

/// Reality of the metacyclic entry by the structural criterion; must agree
/// with the search on the constructed group.
pub fn catanese_is_real_structural(r: i64, m: i64) -> Result<bool, TriangleError> {
    Ok(semidirect_inverting_criterion(&MetacyclicParams::new(r, m)?))
}
