//! Brute-force grid oracle for the real parts of hyperelliptic surfaces.
//!
//! The oracle rasterizes `E x F` on a `(1/q)`-grid, extracts the fixed set
//! of every involutive lift by exact modular arithmetic, joins grid points
//! along kernel directions of the linear parts (so adjacency never leaves
//! the true fixed locus), quotients by the deck action, and classifies
//! each orbit by searching for a stabilizer fixed point on the F-circle.
//! It shares no code with the library's circle/orientation computations.

use std::collections::{HashMap, HashSet};

use realstruct::hyperelliptic::{
    bdf_family, sweep, AffineMap, FamilyParams, Mat2, ProductMap, Rat, RatVec2,
    RealSurfaceTopology, SurfaceGroupAction,
};

fn rv(p0: i64, q0: i64, p1: i64, q1: i64) -> RatVec2 {
    RatVec2(Rat::new(p0, q0), Rat::new(p1, q1))
}

/// Integer form of an affine map on the `(1/q)`-grid.
#[derive(Clone, Copy)]
struct GridMap {
    m: [[i64; 2]; 2],
    /// translation scaled by `q`
    tq: [i64; 2],
}

impl GridMap {
    fn of(map: &AffineMap, q: i64) -> GridMap {
        let scale = |x: Rat| -> i64 {
            let s = x * Rat::from_integer(q);
            assert!(s.is_integer(), "grid must refine the translation denominators");
            s.to_integer()
        };
        GridMap { m: map.m.0, tq: [scale(map.t.0), scale(map.t.1)] }
    }

    fn apply(&self, v: [i64; 2], q: i64) -> [i64; 2] {
        [
            (self.m[0][0] * v[0] + self.m[0][1] * v[1] + self.tq[0]).rem_euclid(q),
            (self.m[1][0] * v[0] + self.m[1][1] * v[1] + self.tq[1]).rem_euclid(q),
        ]
    }

    fn is_involution(&self, q: i64) -> bool {
        let m2 = [
            [
                self.m[0][0] * self.m[0][0] + self.m[0][1] * self.m[1][0],
                self.m[0][0] * self.m[0][1] + self.m[0][1] * self.m[1][1],
            ],
            [
                self.m[1][0] * self.m[0][0] + self.m[1][1] * self.m[1][0],
                self.m[1][0] * self.m[0][1] + self.m[1][1] * self.m[1][1],
            ],
        ];
        if m2 != [[1, 0], [0, 1]] {
            return false;
        }
        let mt = [
            self.m[0][0] * self.tq[0] + self.m[0][1] * self.tq[1] + self.tq[0],
            self.m[1][0] * self.tq[0] + self.m[1][1] * self.tq[1] + self.tq[1],
        ];
        mt[0].rem_euclid(q) == 0 && mt[1].rem_euclid(q) == 0
    }

    fn fixed_grid_points(&self, q: i64) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                if self.apply([a, b], q) == [a, b] {
                    out.push([a, b]);
                }
            }
        }
        out
    }

    /// Small integer kernel steps of `M - I` (exact, not mod q): moving a
    /// fixed point by such a step stays inside the fixed locus.
    fn kernel_steps(&self, radius: i64) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for a in -radius..=radius {
            for b in -radius..=radius {
                if (a, b) == (0, 0) {
                    continue;
                }
                let w = [
                    (self.m[0][0] - 1) * a + self.m[0][1] * b,
                    self.m[1][0] * a + (self.m[1][1] - 1) * b,
                ];
                if w == [0, 0] {
                    out.push([a, b]);
                }
            }
        }
        out
    }
}

struct ProductGridMap {
    e: GridMap,
    f: GridMap,
}

impl ProductGridMap {
    fn of(map: &ProductMap, q: i64) -> ProductGridMap {
        ProductGridMap { e: GridMap::of(&map.on_e, q), f: GridMap::of(&map.on_f, q) }
    }
}

fn find<T: Copy + Eq + std::hash::Hash>(parent: &mut HashMap<T, T>, mut x: T) -> T {
    while parent[&x] != x {
        let up = parent[&parent[&x]];
        parent.insert(x, up);
        x = up;
    }
    x
}

/// The oracle: component census of the real part by rasterization.
fn rasterized_topology(action: &SurfaceGroupAction, q: i64) -> RealSurfaceTopology {
    let sigma = action.sigma().expect("real structure attached");
    // all involutive lifts, kept as exact maps and as grid maps
    let lifts: Vec<(ProductMap, ProductGridMap)> = action
        .deck()
        .iter()
        .map(|g| g.compose(sigma))
        .map(|l| {
            let gm = ProductGridMap::of(&l, q);
            (l, gm)
        })
        .filter(|(_, gm)| gm.e.is_involution(q) && gm.f.is_involution(q))
        .collect();

    // per lift: fixed grid points and their components
    type Key = (usize, [i64; 4]);
    let mut comp_of: HashMap<Key, usize> = HashMap::new();
    let mut comp_count = 0usize;
    let mut members: Vec<Vec<Key>> = Vec::new();
    for (li, (_, gm)) in lifts.iter().enumerate() {
        let fe = gm.e.fixed_grid_points(q);
        let ff = gm.f.fixed_grid_points(q);
        if fe.is_empty() || ff.is_empty() {
            continue;
        }
        let pts: HashSet<[i64; 4]> = fe
            .iter()
            .flat_map(|e| ff.iter().map(move |f| [e[0], e[1], f[0], f[1]]))
            .collect();
        let steps_e = gm.e.kernel_steps(2);
        let steps_f = gm.f.kernel_steps(2);
        let mut parent: HashMap<[i64; 4], [i64; 4]> =
            pts.iter().map(|&p| (p, p)).collect();
        let shift = |p: [i64; 4], we: &[i64; 2], wf: &[i64; 2]| -> [i64; 4] {
            [
                (p[0] + we[0]).rem_euclid(q),
                (p[1] + we[1]).rem_euclid(q),
                (p[2] + wf[0]).rem_euclid(q),
                (p[3] + wf[1]).rem_euclid(q),
            ]
        };
        let zero = [0i64, 0];
        for &p in &pts {
            for we in steps_e.iter().chain(std::iter::once(&zero)) {
                for wf in steps_f.iter().chain(std::iter::once(&zero)) {
                    let n = shift(p, we, wf);
                    if n != p && pts.contains(&n) {
                        let (rp, rn) = (find(&mut parent, p), find(&mut parent, n));
                        if rp != rn {
                            parent.insert(rp, rn);
                        }
                    }
                }
            }
        }
        let mut root_to_comp: HashMap<[i64; 4], usize> = HashMap::new();
        for &p in &pts {
            let root = find(&mut parent, p);
            let comp = *root_to_comp.entry(root).or_insert_with(|| {
                members.push(Vec::new());
                comp_count += 1;
                comp_count - 1
            });
            comp_of.insert((li, p), comp);
            members[comp].push((li, p));
        }
    }

    if comp_count == 0 {
        return RealSurfaceTopology { tori: 0, klein: 0 };
    }

    // deck action on the components (g maps Fix(l) to Fix(g l g^-1))
    let mut parent: HashMap<usize, usize> = (0..comp_count).map(|c| (c, c)).collect();
    for g in action.deck().iter() {
        if g.is_identity() {
            continue;
        }
        let ge = GridMap::of(&g.on_e, q);
        let gf = GridMap::of(&g.on_f, q);
        for (li, (l, _)) in lifts.iter().enumerate() {
            let conj = g.compose(l).compose(&g.inverse());
            let Some(lj) = lifts.iter().position(|(l2, _)| *l2 == conj) else {
                continue;
            };
            // map one point of each component of lift li
            let mut done: HashSet<usize> = HashSet::new();
            for (&(l_idx, p), &c) in comp_of.iter() {
                if l_idx != li || done.contains(&c) {
                    continue;
                }
                done.insert(c);
                let pe = ge.apply([p[0], p[1]], q);
                let pf = gf.apply([p[2], p[3]], q);
                let image_key = (lj, [pe[0], pe[1], pf[0], pf[1]]);
                let c2 = *comp_of
                    .get(&image_key)
                    .expect("deck image of a fixed point is fixed by the conjugate lift");
                let (ra, rb) = (find(&mut parent, c), find(&mut parent, c2));
                if ra != rb {
                    parent.insert(ra, rb);
                }
            }
        }
    }

    // orbit representatives and the Klein test: some stabilizer element
    // has a fixed point on the F-circle of the component
    let mut orbit_reps: HashMap<usize, usize> = HashMap::new();
    for c in 0..comp_count {
        let root = find(&mut parent, c);
        orbit_reps.entry(root).or_insert(c);
    }
    let mut tori = 0;
    let mut klein = 0;
    for (_, &c) in orbit_reps.iter() {
        let pts = &members[c];
        let (li, _) = pts[0];
        let (l, _) = &lifts[li];
        let pt_set: HashSet<[i64; 4]> = pts.iter().map(|&(_, p)| p).collect();
        let f_points: HashSet<[i64; 2]> =
            pts.iter().map(|&(_, p)| [p[2], p[3]]).collect();
        let mut is_klein = false;
        for g in action.deck().iter() {
            if g.is_identity() {
                continue;
            }
            // g must stabilize this component of this lift
            if g.compose(l).compose(&g.inverse()) != *l {
                continue;
            }
            let ge = GridMap::of(&g.on_e, q);
            let gf = GridMap::of(&g.on_f, q);
            let p0 = pts[0].1;
            let image = [
                ge.apply([p0[0], p0[1]], q)[0],
                ge.apply([p0[0], p0[1]], q)[1],
                gf.apply([p0[2], p0[3]], q)[0],
                gf.apply([p0[2], p0[3]], q)[1],
            ];
            if !pt_set.contains(&image) {
                continue;
            }
            // stabilizer element: fixed point on the F-circle?
            if f_points.iter().any(|&pf| gf.apply(pf, q) == pf) {
                is_klein = true;
                break;
            }
        }
        if is_klein {
            klein += 1;
        } else {
            tori += 1;
        }
    }
    RealSurfaceTopology { tori, klein }
}

fn conj() -> Mat2 {
    Mat2([[1, 0], [0, -1]])
}

#[test]
fn oracle_confirms_family1_worked_example() {
    let action = bdf_family(1, &FamilyParams::one(rv(1, 2, 0, 1))).unwrap();
    let sigma = ProductMap::new(
        AffineMap::new(conj(), RatVec2::zero(), true),
        AffineMap::new(conj(), RatVec2::zero(), true),
    )
    .unwrap();
    let action = action.attach_real_structure(sigma).unwrap();
    let lib = action.real_part_topology().unwrap();
    assert_eq!(lib.topology, RealSurfaceTopology { tori: 0, klein: 4 });
    let oracle = rasterized_topology(&action, 8);
    assert_eq!(lib.topology, oracle);
}

#[test]
fn oracle_confirms_family3_d4_example() {
    let action = bdf_family(3, &FamilyParams::one(rv(0, 1, 1, 4))).unwrap();
    let sigma = ProductMap::new(
        AffineMap::new(conj(), RatVec2::zero(), true),
        AffineMap::new(conj(), RatVec2::zero(), true),
    )
    .unwrap();
    let action = action.attach_real_structure(sigma).unwrap();
    let report = action.extended_group_report().unwrap();
    assert_eq!(report.order, 8);
    let lib = action.real_part_topology().unwrap();
    let oracle = rasterized_topology(&action, 8);
    assert_eq!(lib.topology, oracle);
    assert!(lib.valid);
}

#[test]
fn oracle_confirms_square_lattice_sweep_samples() {
    // all real structures with denominator-4 translations on families 1-4
    for family in [1u8, 2, 3, 4] {
        let records = sweep(&[family], 4).unwrap();
        assert!(!records.is_empty(), "family {family} sweep is empty");
        for r in records.iter().take(40) {
            let action = bdf_family(family, &r.params).unwrap();
            let sigma = ProductMap::new(
                AffineMap::new(r.sigma.m_e, r.sigma.t_e, true),
                AffineMap::new(r.sigma.m_f, r.sigma.t_f, true),
            )
            .unwrap();
            let action = action.attach_real_structure(sigma).unwrap();
            let oracle = rasterized_topology(&action, 8);
            assert_eq!(
                (r.tori, r.klein),
                (oracle.tori, oracle.klein),
                "family {family} params {:?} sigma {:?}",
                r.params,
                r.sigma
            );
        }
    }
}

#[test]
fn oracle_confirms_hexagonal_lattice_sweep_samples() {
    // families 5-7 with denominator-6 translations; the grid must refine
    // both the thirds of the deck data and the halves of the reflections
    for family in [5u8, 6, 7] {
        let records = sweep(&[family], 6).unwrap();
        assert!(!records.is_empty(), "family {family} sweep is empty");
        for r in records.iter().take(12) {
            let action = bdf_family(family, &r.params).unwrap();
            let sigma = ProductMap::new(
                AffineMap::new(r.sigma.m_e, r.sigma.t_e, true),
                AffineMap::new(r.sigma.m_f, r.sigma.t_f, true),
            )
            .unwrap();
            let action = action.attach_real_structure(sigma).unwrap();
            let oracle = rasterized_topology(&action, 12);
            assert_eq!(
                (r.tori, r.klein),
                (oracle.tori, oracle.klein),
                "family {family} params {:?} sigma {:?}",
                r.params,
                r.sigma
            );
        }
    }
}

#[test]
fn fixed_circle_counts_match_torus_real_parts() {
    // cross-module consistency: per-factor circle counts agree with the
    // rank-2 torus real-part computation
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use realstruct::exact_linalg::{IntMatrix, RatVector};
    use realstruct::hyperelliptic::fixed_circles;
    use realstruct::torus_real::RealTorusStructure;

    let to_structure = |map: &AffineMap| -> RealTorusStructure {
        let m = map.m.0;
        let s = IntMatrix::from_rows(&[&m[0][..], &m[1][..]]);
        let b = RatVector::new(vec![
            BigRational::new(BigInt::from(*map.t.0.numer()), BigInt::from(*map.t.0.denom())),
            BigRational::new(BigInt::from(*map.t.1.numer()), BigInt::from(*map.t.1.denom())),
        ]);
        RealTorusStructure::new(1, s, b).unwrap()
    };
    let candidates = [
        AffineMap::new(Mat2([[1, 0], [0, -1]]), RatVec2::zero(), true),
        AffineMap::new(Mat2([[1, 0], [0, -1]]), rv(1, 2, 0, 1), true),
        AffineMap::new(Mat2([[1, 0], [0, -1]]), rv(0, 1, 1, 2), true),
        AffineMap::new(Mat2([[0, 1], [1, 0]]), RatVec2::zero(), true),
        AffineMap::new(Mat2([[0, 1], [1, 0]]), rv(1, 2, 1, 2), true),
        AffineMap::new(Mat2([[1, -1], [0, -1]]), RatVec2::zero(), true),
        AffineMap::new(Mat2([[1, -1], [0, -1]]), rv(1, 3, 2, 3), true),
    ];
    for map in &candidates {
        if !map.is_involution() {
            continue;
        }
        let circles = fixed_circles(map).unwrap();
        let structure = to_structure(map);
        assert_eq!(
            circles.len() as u64,
            structure.real_part().component_count,
            "{map:?}"
        );
        assert!(circles.len() <= 2);
    }
}
