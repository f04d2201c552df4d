//! Topology of the real part: involutive lifts, the component census, and
//! the parameter sweep.
//!
//! Components of the real part correspond to deck orbits of connected
//! components of the fixed loci of the involutive lifts, one representative
//! lift per conjugacy class. Each component is a product of one fixed
//! circle on each factor; its quotient by the stabilizer is a Klein bottle
//! exactly when some stabilizer element reverses the `F`-circle (the deck
//! group translates the `E`-circle, so orientation can only be lost on
//! `F`). Two equivalent reversal tests are run and must agree: the linear
//! part negating the circle direction, and the existence of a fixed point
//! on the circle.

use std::collections::HashSet;

use serde::Serialize;

use super::affine::{fixed_circles, AffineMap, Circle, Mat2, RatVec2};
use super::families::{bdf_family, FamilyParams, ProductMap, SurfaceGroupAction};
use super::HyperError;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The real part is a disjoint union of `tori` 2-tori and `klein` Klein
/// bottles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RealSurfaceTopology {
    pub tori: usize,
    pub klein: usize,
}

/// Membership in the allowed census: `c` tori with `0 <= c <= 4`, or `b`
/// Klein bottles with `1 <= b <= 4`, or a torus plus one or two Klein
/// bottles (the empty real part is the `c = 0` case).
pub fn validate_topology(t: &RealSurfaceTopology) -> bool {
    match (t.tori, t.klein) {
        (c, 0) => c <= 4,
        (0, b) => (1..=4).contains(&b),
        (1, 1) | (1, 2) => true,
        _ => false,
    }
}

/// Per-conjugacy-class summary of one involutive lift.
#[derive(Clone, Debug, Serialize)]
pub struct LiftSummary {
    pub on_e: AffineMap,
    pub on_f: AffineMap,
    pub e_circles: usize,
    pub f_circles: usize,
    pub components_upstairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TopologyReport {
    pub topology: RealSurfaceTopology,
    pub involutive_lift_count: usize,
    pub conjugacy_class_count: usize,
    pub lifts: Vec<LiftSummary>,
    pub valid: bool,
}

impl SurfaceGroupAction {
    /// All involutive lifts of the real structure (elements `g * sigma`
    /// squaring to the identity), one representative per deck-conjugacy
    /// class. Conjugacy in the extended group gives the same classes: for
    /// `y` in the antiholomorphic coset, conjugating by `y` itself fixes
    /// `y`, so the extended classes coincide with the deck classes.
    pub fn involutive_lifts(&self) -> Result<Vec<ProductMap>, HyperError> {
        Ok(self.involutive_lift_classes()?.0)
    }

    fn involutive_lift_classes(&self) -> Result<(Vec<ProductMap>, usize), HyperError> {
        let sigma = self.sigma().ok_or(HyperError::NoRealStructure)?;
        let involutive: Vec<ProductMap> = self
            .deck()
            .iter()
            .map(|g| g.compose(sigma))
            .filter(|l| l.is_involution())
            .collect();
        let mut reps: Vec<ProductMap> = Vec::new();
        let mut seen: HashSet<ProductMap> = HashSet::new();
        for lift in &involutive {
            if seen.contains(lift) {
                continue;
            }
            reps.push(*lift);
            for h in self.deck() {
                let conj = h.compose(lift).compose(&h.inverse());
                seen.insert(conj);
            }
        }
        Ok((reps, involutive.len()))
    }

    /// Count the components of the real part and sort them into tori and
    /// Klein bottles.
    pub fn real_part_topology(&self) -> Result<TopologyReport, HyperError> {
        let (reps, involutive_count) = self.involutive_lift_classes()?;

        // components upstairs: (class index, E-circle, F-circle)
        let mut components: Vec<(usize, Circle, Circle)> = Vec::new();
        let mut lift_summaries = Vec::new();
        for (idx, lift) in reps.iter().enumerate() {
            let ce = fixed_circles(&lift.on_e)?;
            let cf = fixed_circles(&lift.on_f)?;
            for e in &ce {
                for f in &cf {
                    components.push((idx, *e, *f));
                }
            }
            lift_summaries.push(LiftSummary {
                on_e: lift.on_e,
                on_f: lift.on_f,
                e_circles: ce.len(),
                f_circles: cf.len(),
                components_upstairs: ce.len() * cf.len(),
            });
        }

        // deck orbits on the disjoint union of the fixed loci
        let n = components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in self.deck().iter().skip(1) {
            for i in 0..n {
                let (_, ce, cf) = components[i];
                let image = (ce.transported(&g.on_e), cf.transported(&g.on_f));
                if let Some(j) = components
                    .iter()
                    .position(|(_, e, f)| *e == image.0 && *f == image.1)
                {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }

        let mut tori = 0;
        let mut klein = 0;
        let mut seen_roots = HashSet::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            if !seen_roots.insert(root) {
                continue;
            }
            let (_, ce, cf) = components[i];
            // stabilizer of the component in the deck group
            let stabilizer: Vec<&ProductMap> = self
                .deck()
                .iter()
                .filter(|g| ce.transported(&g.on_e) == ce && cf.transported(&g.on_f) == cf)
                .collect();
            let reverses = |g: &ProductMap| -> bool {
                g.on_f.m.mul_int_vec(cf.dir) == (-cf.dir.0, -cf.dir.1)
            };
            let is_klein = stabilizer.iter().any(|g| reverses(g));
            // cross-check: reversal <=> a stabilizer element fixes a point
            // of the F-circle
            let has_fixed_on_circle = stabilizer.iter().any(|g| {
                !g.is_identity()
                    && !g.on_f.m.is_identity()
                    && g.on_f
                        .isolated_fixed_points()
                        .iter()
                        .any(|p| cf.contains(p))
            });
            if is_klein != has_fixed_on_circle {
                return Err(HyperError::Internal(
                    "orientation criteria disagree on a component".into(),
                ));
            }
            if is_klein {
                klein += 1;
            } else {
                tori += 1;
            }
        }

        let topology = RealSurfaceTopology { tori, klein };
        Ok(TopologyReport {
            topology,
            involutive_lift_count: involutive_count,
            conjugacy_class_count: reps.len(),
            lifts: lift_summaries,
            valid: validate_topology(&topology),
        })
    }
}

/// Serializable description of a candidate real-structure lift.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaDescriptor {
    pub m_e: Mat2,
    pub t_e: RatVec2,
    pub m_f: Mat2,
    pub t_f: RatVec2,
}

impl From<&ProductMap> for SigmaDescriptor {
    fn from(p: &ProductMap) -> Self {
        SigmaDescriptor { m_e: p.on_e.m, t_e: p.on_e.t, m_f: p.on_f.m, t_f: p.on_f.t }
    }
}

/// One record of the sweep: a family member, a real structure on it, and
/// the computed topology.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub family: u8,
    pub params: FamilyParams,
    pub sigma: SigmaDescriptor,
    pub tori: usize,
    pub klein: usize,
    pub valid: bool,
    pub extended_group: Option<String>,
}

/// Torus points of exact order `k` with denominators dividing `k`.
fn points_of_exact_order(k: i64) -> Vec<RatVec2> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let v = RatVec2(
                super::affine::Rat::new(a, k),
                super::affine::Rat::new(b, k),
            );
            if v.torsion_order() == k {
                out.push(v);
            }
        }
    }
    out
}

/// All deck-parameter tuples of one family (translation points of the
/// exact orders the family requires).
fn family_parameter_space(family: u8) -> Result<Vec<FamilyParams>, HyperError> {
    let mut out = Vec::new();
    match family {
        1 => {
            for eta in points_of_exact_order(2) {
                out.push(FamilyParams::one(eta));
            }
        }
        2 => {
            for eta in points_of_exact_order(2) {
                for eta2 in points_of_exact_order(2) {
                    if eta2 == eta {
                        continue;
                    }
                    for eps in points_of_exact_order(2) {
                        out.push(FamilyParams { eta, eta2: Some(eta2), eps: Some(eps) });
                    }
                }
            }
        }
        3 => {
            for eta in points_of_exact_order(4) {
                out.push(FamilyParams::one(eta));
            }
        }
        4 => {
            for eta in points_of_exact_order(4) {
                let double = eta.add(&eta).reduce_mod_one();
                for eta2 in points_of_exact_order(2) {
                    if eta2 == double {
                        continue;
                    }
                    out.push(FamilyParams { eta, eta2: Some(eta2), eps: None });
                }
            }
        }
        5 => {
            for eta in points_of_exact_order(3) {
                out.push(FamilyParams::one(eta));
            }
        }
        6 => {
            for eta in points_of_exact_order(3) {
                let span = [eta.reduce_mod_one(), eta.add(&eta).reduce_mod_one()];
                for eta2 in points_of_exact_order(3) {
                    if span.contains(&eta2) {
                        continue;
                    }
                    out.push(FamilyParams { eta, eta2: Some(eta2), eps: None });
                }
            }
        }
        7 => {
            for eta in points_of_exact_order(6) {
                out.push(FamilyParams::one(eta));
            }
        }
        k => return Err(HyperError::BadFamily(k)),
    }
    Ok(out)
}

/// Candidate lifts for one family member: antiholomorphic linear parts of
/// both lattices, translation parts on the `1/denominator` grid, filtered
/// by the attachment preconditions and deduplicated modulo composition
/// with deck transformations (lifts in the same deck coset present the
/// same real structure downstairs).
fn real_structures_on(
    action: &SurfaceGroupAction,
    denominator: i64,
) -> Vec<SurfaceGroupAction> {
    let grid: Vec<RatVec2> = {
        let mut v = Vec::with_capacity((denominator * denominator) as usize);
        for a in 0..denominator {
            for b in 0..denominator {
                v.push(RatVec2(
                    super::affine::Rat::new(a, denominator),
                    super::affine::Rat::new(b, denominator),
                ));
            }
        }
        v
    };
    let mats_e = action.lattice_e().antiholo_matrices();
    let mats_f = action.lattice_f().antiholo_matrices();
    let mut canonical: HashSet<ProductMap> = HashSet::new();
    let mut out = Vec::new();
    for m_e in &mats_e {
        for t_e in &grid {
            let on_e = AffineMap::new(*m_e, *t_e, true);
            for m_f in &mats_f {
                for t_f in &grid {
                    let on_f = AffineMap::new(*m_f, *t_f, true);
                    let sigma = ProductMap { on_e, on_f };
                    // cheap precondition first: sigma^2 must be a deck map
                    if !action.deck().contains(&sigma.compose(&sigma)) {
                        continue;
                    }
                    // deduplicate modulo the deck coset
                    let rep = action
                        .deck()
                        .iter()
                        .map(|g| g.compose(&sigma))
                        .min()
                        .expect("deck is nonempty");
                    if !canonical.insert(rep) {
                        continue;
                    }
                    if let Ok(with_sigma) = action.clone().attach_real_structure(sigma) {
                        out.push(with_sigma);
                    }
                }
            }
        }
    }
    out
}

/// Sweep all real structures with translation denominators dividing
/// `denominator` over the given families; every computed topology is
/// reported together with its validity against the allowed census.
pub fn sweep(families: &[u8], denominator: i64) -> Result<Vec<SweepRecord>, HyperError> {
    let mut jobs: Vec<(u8, FamilyParams)> = Vec::new();
    for &family in families {
        for params in family_parameter_space(family)? {
            jobs.push((family, params));
        }
    }

    let run = |(family, params): &(u8, FamilyParams)| -> Result<Vec<SweepRecord>, HyperError> {
        let action = bdf_family(*family, params)?;
        let mut records = Vec::new();
        for with_sigma in real_structures_on(&action, denominator) {
            let report = with_sigma.real_part_topology()?;
            let extended = with_sigma
                .extended_group_report()?
                .kind
                .map(|k| k.to_string());
            records.push(SweepRecord {
                family: *family,
                params: *params,
                sigma: SigmaDescriptor::from(
                    with_sigma.sigma().expect("real structure attached"),
                ),
                tori: report.topology.tori,
                klein: report.topology.klein,
                valid: report.valid,
                extended_group: extended,
            });
        }
        Ok(records)
    };

    #[cfg(feature = "parallel")]
    let nested: Result<Vec<Vec<SweepRecord>>, HyperError> = jobs.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let nested: Result<Vec<Vec<SweepRecord>>, HyperError> = jobs.iter().map(run).collect();

    Ok(nested?.into_iter().flatten().collect())
}
