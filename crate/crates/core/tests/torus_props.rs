//! Property tests for real torus structures: invariance under admissible
//! moves, the component-count formula against a rasterization oracle, and
//! completeness of the classification at small dimension.

mod util;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realstruct::exact_linalg::{IntMatrix, RatMatrix, RatVector};
use realstruct::torus_real::{
    moduli_hyperbola_check, CompatibleComplexStructure, RealTorusStructure, TorusClassInvariant,
};

fn random_rat_vector<R: Rng>(dim: usize, max_denom: i64, rng: &mut R) -> RatVector {
    RatVector::new(
        (0..dim)
            .map(|_| {
                let d = rng.gen_range(1..=max_denom);
                let p = rng.gen_range(-3 * d..=3 * d);
                BigRational::new(BigInt::from(p), BigInt::from(d))
            })
            .collect(),
    )
}

/// Apply a random sequence of admissible moves (conjugation, lattice shift,
/// origin change); the class invariant and normal form must not change.
fn randomly_moved<R: Rng>(st: &RealTorusStructure, rng: &mut R) -> RealTorusStructure {
    let k = 2 * st.n();
    let mut cur = st.clone();
    for _ in 0..4 {
        match rng.gen_range(0..3) {
            0 => {
                let p = util::random_unimodular(k, 6, rng);
                cur = cur.conjugated(&p).unwrap();
            }
            1 => {
                let lambda: Vec<BigInt> =
                    (0..k).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
                cur = cur.shifted(&lambda).unwrap();
            }
            _ => {
                let c = random_rat_vector(k, 4, rng);
                cur = cur.origin_moved(&c).unwrap();
            }
        }
    }
    cur
}

fn all_invariants(n: usize) -> Vec<TorusClassInvariant> {
    let mut out = Vec::new();
    for r in 0..=n {
        out.push(TorusClassInvariant { n, r, splits: true });
        if r < n {
            out.push(TorusClassInvariant { n, r, splits: false });
        }
    }
    out
}

#[test]
fn invariants_stable_under_admissible_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=3 {
        for inv in all_invariants(n) {
            let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
            assert_eq!(st.class_invariant(), inv);
            for _ in 0..8 {
                let moved = randomly_moved(&st, &mut rng);
                assert_eq!(moved.class_invariant(), inv, "moves changed the invariant");
                assert_eq!(moved.normal_form(), st.normal_form());
                assert_eq!(moved.real_part(), st.real_part());
                assert!(moved.equivalent(&st).unwrap());
            }
        }
    }
}

#[test]
fn component_count_matches_power_formula_and_torsion() {
    // splits => component count = 2^(n - r) = torsion_order(s - I)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=3 {
        for r in 0..=n {
            let st = RealTorusStructure::canonical(n, r, true).unwrap();
            let expected = 1u64 << (n - r);
            for _ in 0..5 {
                let moved = randomly_moved(&st, &mut rng);
                assert_eq!(moved.real_part().component_count, expected);
            }
        }
    }
}

#[test]
fn component_count_matches_rasterization_oracle_canonical() {
    // all canonical forms with n <= 3, both split and nonsplit
    for n in 1..=3usize {
        for inv in all_invariants(n) {
            let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
            let q = util::oracle_grid_resolution(st.b());
            let radius = util::oracle_step_radius(st.s());
            let oracle = util::rasterized_component_count(st.s(), st.b(), q, radius);
            assert_eq!(
                st.real_part().component_count as usize,
                oracle,
                "canonical n={n} r={} splits={}",
                inv.r,
                inv.splits
            );
        }
    }
}

#[test]
fn component_count_matches_rasterization_oracle_conjugates() {
    // random conjugates at rank <= 4 (n <= 2), where the grid stays small
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=2usize {
        for inv in all_invariants(n) {
            let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
            for _ in 0..6 {
                let p = util::random_unimodular(2 * n, 5, &mut rng);
                let moved = st.conjugated(&p).unwrap();
                let q = util::oracle_grid_resolution(moved.b());
                let radius = util::oracle_step_radius(moved.s());
                let oracle = util::rasterized_component_count(moved.s(), moved.b(), q, radius);
                assert_eq!(moved.real_part().component_count as usize, oracle);
            }
        }
    }
}

#[test]
fn exactly_2n_plus_1_classes_realizable() {
    for n in 1..=3 {
        let invs = all_invariants(n);
        assert_eq!(invs.len(), 2 * n + 1);
        // pairwise inequivalent
        let structures: Vec<_> = invs
            .iter()
            .map(|i| RealTorusStructure::canonical(n, i.r, i.splits).unwrap())
            .collect();
        for (i, a) in structures.iter().enumerate() {
            for (j, b) in structures.iter().enumerate() {
                assert_eq!(a.equivalent(b).unwrap(), i == j);
            }
        }
    }
}

#[test]
fn random_structures_bucket_consistently() {
    // classifying 1000 randomly moved structures agrees with their seeds
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut buckets: HashMap<TorusClassInvariant, usize> = HashMap::new();
    let mut total = 0;
    while total < 1000 {
        for n in 1..=3 {
            for inv in all_invariants(n) {
                let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
                let moved = randomly_moved(&st, &mut rng);
                let got = moved.class_invariant();
                assert_eq!(got, inv);
                let canon = RealTorusStructure::canonical(n, got.r, got.splits).unwrap();
                assert!(moved.equivalent(&canon).unwrap());
                *buckets.entry(got).or_default() += 1;
                total += 1;
            }
        }
    }
    for n in 1..=3 {
        let count = buckets.keys().filter(|i| i.n == n).count();
        assert_eq!(count, 2 * n + 1, "n={n} must realize exactly 2n+1 classes");
    }
}

#[test]
fn elliptic_nu_parity_matches_diagonalizability() {
    // nu is even <=> r = 0
    for (r, splits) in [(0, true), (0, false), (1, true)] {
        let st = RealTorusStructure::canonical(1, r, splits).unwrap();
        let nu = st.elliptic_nu().unwrap();
        assert_eq!(nu % 2 == 0, r == 0, "nu={nu} r={r}");
    }
}

#[test]
fn normal_form_reconstruction_is_identity_on_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 1..=3 {
        for inv in all_invariants(n) {
            let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
            let moved = randomly_moved(&st, &mut rng);
            let nf = moved.normal_form();
            // rebuild a structure from the normal-form data and reclassify
            let rebuilt = RealTorusStructure::new(
                n,
                realstruct::exact_linalg::canonical_involution(
                    realstruct::exact_linalg::Z2Decomposition {
                        regular: nf.invariant.r,
                        plus_free: n - nf.invariant.r,
                        minus_free: n - nf.invariant.r,
                    },
                ),
                nf.canonical_b.clone(),
            )
            .unwrap();
            assert_eq!(rebuilt.class_invariant(), inv);
            assert_eq!(rebuilt.normal_form(), nf);
        }
    }
}

#[test]
fn complex_structure_identities_hold_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in 1..=2usize {
        for inv in all_invariants(n) {
            let st = RealTorusStructure::canonical(n, inv.r, inv.splits).unwrap();
            let moved = randomly_moved(&st, &mut rng);
            for _ in 0..4 {
                // random invertible rational A
                let a = loop {
                    let mut m = RatMatrix::zeros(n, n);
                    for i in 0..n {
                        for j in 0..n {
                            let d = rng.gen_range(1i64..=4);
                            let p = rng.gen_range(-4 * d..=4 * d);
                            m.set(i, j, BigRational::new(BigInt::from(p), BigInt::from(d)));
                        }
                    }
                    if m.inverse().is_some() {
                        break m;
                    }
                };
                let ccs = moved.compatible_complex_structure(&a).unwrap();
                let j = &ccs.j_lattice;
                let k = 2 * n;
                assert_eq!(j.mul(j).unwrap(), RatMatrix::identity(k).neg());
                let s_rat = moved.s().to_rat();
                assert_eq!(j.mul(&s_rat).unwrap(), s_rat.mul(j).unwrap().neg());
                // round-trip: A is recoverable from the eigenbasis form
                let back = CompatibleComplexStructure::extract_parameter(&ccs.j_eigen).unwrap();
                assert_eq!(back, a);
            }
        }
    }
}

#[test]
fn swap_lattice_form_sweeps_the_hyperbola() {
    // on the swap structure, every rational parameter lands on b^2 - a^2 = 1
    let st = RealTorusStructure::new(
        1,
        IntMatrix::from_rows(&[&[0, 1], &[1, 0]]),
        RatVector::zeros(2),
    )
    .unwrap();
    for p in [-5i64, -2, -1, 1, 2, 3, 7] {
        for d in [1i64, 2, 3, 4] {
            let a = RatMatrix::new(1, 1, vec![BigRational::new(BigInt::from(p), BigInt::from(d))])
                .unwrap();
            let ccs = st.compatible_complex_structure(&a).unwrap();
            let j = &ccs.j_lattice;
            assert!(moduli_hyperbola_check(j.get(0, 0), j.get(0, 1)));
        }
    }
}
