//! Shared helpers for the integration tests: deterministic random
//! generators for unimodular matrices and involutions, and brute-force
//! oracles kept independent of the library's own solution paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use realstruct::exact_linalg::{canonical_involution, IntMatrix, RatVector, Z2Decomposition};

/// Random unimodular matrix: a product of `ops` elementary matrices
/// (row adds with small coefficients, swaps, sign flips).
pub fn random_unimodular<R: Rng>(k: usize, ops: usize, rng: &mut R) -> IntMatrix {
    let mut p = IntMatrix::identity(k);
    for _ in 0..ops {
        let mut e = IntMatrix::identity(k);
        match rng.gen_range(0..6) {
            0 | 1 | 2 => {
                // I + c * E_ij, c in {-2..2} \ {0}
                let i = rng.gen_range(0..k);
                let mut j = rng.gen_range(0..k);
                if k > 1 {
                    while j == i {
                        j = rng.gen_range(0..k);
                    }
                    let mut c = 0i64;
                    while c == 0 {
                        c = rng.gen_range(-2..=2);
                    }
                    e.set(i, j, BigInt::from(c));
                }
            }
            3 | 4 => {
                let i = rng.gen_range(0..k);
                let mut j = rng.gen_range(0..k);
                if k > 1 {
                    while j == i {
                        j = rng.gen_range(0..k);
                    }
                    e.set(i, i, BigInt::zero());
                    e.set(j, j, BigInt::zero());
                    e.set(i, j, BigInt::from(1));
                    e.set(j, i, BigInt::from(1));
                }
            }
            _ => {
                let i = rng.gen_range(0..k);
                e.set(i, i, BigInt::from(-1));
            }
        }
        p = p.mul(&e).unwrap();
    }
    p
}

/// Random integral involution: a unimodular conjugate of the canonical
/// block form with the given summand counts.
pub fn random_involution<R: Rng>(dec: Z2Decomposition, ops: usize, rng: &mut R) -> IntMatrix {
    let k = dec.lattice_rank();
    let s0 = canonical_involution(dec);
    let g = random_unimodular(k, ops, rng);
    let gi = g.inverse_unimodular().unwrap();
    g.mul(&s0).unwrap().mul(&gi).unwrap()
}

/// All summand decompositions with `2*regular + plus + minus == rank`.
pub fn decompositions_of_rank(rank: usize) -> Vec<Z2Decomposition> {
    let mut out = Vec::new();
    for regular in 0..=rank / 2 {
        for plus in 0..=(rank - 2 * regular) {
            let minus = rank - 2 * regular - plus;
            out.push(Z2Decomposition { regular, plus_free: plus, minus_free: minus });
        }
    }
    out
}

/// Brute-force oracle for `A x ≡ b (mod Z^k)`: search the grid
/// `(1/q) Z^k mod Z^k`. Only meaningful when solvability on that grid is
/// equivalent to solvability (true for matrices whose elementary divisors
/// lie in {1, 2} and `q = 2 * lcm(denominators of b)`).
pub fn congruence_grid_oracle(a: &IntMatrix, b: &RatVector, q: i64) -> bool {
    let k = a.cols();
    assert!(k <= 4, "oracle grid too large");
    // work in integers: x = v/q, test A v - q b ≡ 0 (mod q)
    let qb: Vec<BigInt> = b
        .iter()
        .map(|x| {
            let scaled = x * BigInt::from(q);
            assert!(scaled.is_integer(), "grid must refine the denominators of b");
            scaled.to_integer()
        })
        .collect();
    let mut v = vec![0i64; k];
    loop {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let av = a.mul_vec(&vb).unwrap();
        let ok = av
            .iter()
            .zip(&qb)
            .all(|(ax, qbx)| ((ax - qbx) % BigInt::from(q)).is_zero());
        if ok {
            return true;
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Rasterization oracle for the real part of a torus structure: enumerate
/// the fixed set of `x -> s x + b` on a `(1/q)`-grid of the torus and count
/// connected components. Adjacency steps are grid vectors `w/q` that lie in
/// the kernel of `s - I` (so the whole segment between neighbours stays in
/// the fixed set), with coordinates bounded by `radius`.
pub fn rasterized_component_count(s: &IntMatrix, b: &RatVector, q: i64, radius: i64) -> usize {
    let k = s.rows();
    let q_big = BigInt::from(q);
    let qb: Vec<BigInt> = b
        .iter()
        .map(|x| {
            let scaled = x * &q_big;
            assert!(scaled.is_integer(), "grid must refine the translation denominators");
            scaled.to_integer()
        })
        .collect();
    let s_minus_i = s.minus_identity().unwrap();

    // fixed grid points: (s - I) v + q b ≡ 0 (mod q)
    let total = (q as usize).pow(k as u32);
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut v = vec![0i64; k];
        for vi in v.iter_mut() {
            *vi = (idx % q as usize) as i64;
            idx /= q as usize;
        }
        v
    };
    let encode = |v: &[i64]| -> usize {
        let mut idx = 0usize;
        for &vi in v.iter().rev() {
            idx = idx * q as usize + vi.rem_euclid(q) as usize;
        }
        idx
    };
    let is_fixed = |v: &[i64]| -> bool {
        let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let av = s_minus_i.mul_vec(&vb).unwrap();
        av.iter()
            .zip(&qb)
            .all(|(ax, qbx)| ((ax + qbx) % &q_big).is_zero())
    };

    let mut fixed = vec![false; total];
    let mut any = false;
    for idx in 0..total {
        if is_fixed(&decode(idx)) {
            fixed[idx] = true;
            any = true;
        }
    }
    if !any {
        return 0;
    }

    // kernel steps within the radius box
    let mut steps: Vec<Vec<i64>> = Vec::new();
    let span = 2 * radius + 1;
    let box_total = (span as usize).pow(k as u32);
    for idx in 0..box_total {
        let mut rem = idx;
        let mut w = vec![0i64; k];
        for wi in w.iter_mut() {
            *wi = (rem % span as usize) as i64 - radius;
            rem /= span as usize;
        }
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let wb: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        if s_minus_i.mul_vec(&wb).unwrap().iter().all(Zero::is_zero) {
            steps.push(w);
        }
    }

    // union-find over fixed grid points
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for idx in 0..total {
        if !fixed[idx] {
            continue;
        }
        let v = decode(idx);
        for w in &steps {
            let u: Vec<i64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
            let uidx = encode(&u);
            if fixed[uidx] {
                let (ra, rb) = (find(&mut parent, idx), find(&mut parent, uidx));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut roots = std::collections::HashSet::new();
    for idx in 0..total {
        if fixed[idx] {
            let r = find(&mut parent, idx);
            roots.insert(r);
        }
    }
    roots.len()
}

/// Grid resolution adapted to the structure: `4 * lcm(denominators of b)`.
pub fn oracle_grid_resolution(b: &RatVector) -> i64 {
    let l: BigInt = b.denominator_lcm();
    let l: i64 = i64::try_from(&l).expect("denominator lcm fits i64");
    4 * l
}

/// Step radius adapted to the structure: kernel directions of `s - I` are
/// spanned by the columns of `s + I`, so their entries bound what is needed.
pub fn oracle_step_radius(s: &IntMatrix) -> i64 {
    let m = s.plus_identity().unwrap().max_abs();
    i64::try_from(&m).expect("entry bound fits i64").max(1)
}
