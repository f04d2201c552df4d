//! Finite groups for the triangle-curve machinery.
//!
//! Small catalog groups (cyclic, abelian, dihedral, direct products, the
//! order-16 group `G1`) are materialized as dense multiplication tables and
//! fully checked on construction: Latin-square property, identity,
//! inverses, and associativity (all triples up to order 512, seeded random
//! sampling above). The metacyclic family
//! `G = <a, c | a^m = 1, c^p = 1, a c a^-1 = c^r>` with `p = r^m - 1` is
//! kept in structured form on pairs `(i, j) in Z/m x Z/p`, so groups up to
//! order 20000 multiply without a quadratic table.
//!
//! The reality test for triangle curves reduces to one question answered
//! here: does the group admit an automorphism sending both marked
//! generators to their inverses
//! ([`FiniteGroup::inverting_automorphism_exists`])? For the metacyclic
//! family there is also the closed-form criterion `r^2 ≡ 1 (mod p)`
//! ([`semidirect_inverting_criterion`]).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

/// Full associativity check bound; above it, triples are sampled.
const FULL_ASSOC_LIMIT: usize = 512;
/// Number of sampled associativity triples for large groups.
const SAMPLED_TRIPLES: usize = 1_000_000;
/// Hard cap on group order.
pub const MAX_ORDER: usize = 20_000;
/// Dense tables only below this order; larger groups need structure.
const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("multiplication table is not a Latin square")]
    NotLatinSquare,
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element index {index} out of range for order {order}")]
    BadElement { index: usize, order: usize },
    #[error("the pair does not generate the group")]
    NonGeneratingPair,
    #[error("metacyclic parameters need r >= 3 and m >= 4, got r = {r}, m = {m}")]
    BadMetacyclicParams { r: i64, m: i64 },
    #[error("metacyclic parameter overflow computing r^m - 1")]
    MetacyclicOverflow,
    #[error("invalid constructor parameter: {0}")]
    BadParameter(String),
}

/// Group elements are indices `0..order`.
pub type Element = usize;

#[derive(Clone, Debug)]
enum Repr {
    Dense {
        table: Vec<u32>,
        identity: usize,
        inverses: Vec<u32>,
    },
    /// `(i, j) <-> i*p + j`, multiplication
    /// `(i, j)(i', j') = (i + i', j * r^(-i') + j')`.
    Metacyclic {
        m: i64,
        p: i64,
        /// `r^k mod p` for `k in 0..m`
        r_pows: Vec<i64>,
        /// `r^-k mod p` for `k in 0..m`
        r_inv_pows: Vec<i64>,
    },
}

/// A finite group with named generators for the expression interface.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    repr: Repr,
    generators: Vec<(String, Element)>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Named generators (constructor-specific), for the CLI expressions.
    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<Element> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, e)| e)
    }

    pub fn identity(&self) -> Element {
        match &self.repr {
            Repr::Dense { identity, .. } => *identity,
            Repr::Metacyclic { .. } => 0,
        }
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.order && b < self.order);
        match &self.repr {
            Repr::Dense { table, .. } => table[a * self.order + b] as usize,
            Repr::Metacyclic { m, p, r_inv_pows, .. } => {
                let (i1, j1) = ((a / *p as usize) as i64, (a % *p as usize) as i64);
                let (i2, j2) = ((b / *p as usize) as i64, (b % *p as usize) as i64);
                let i = (i1 + i2) % m;
                let j = (mul_mod(j1, r_inv_pows[i2 as usize], *p) + j2) % p;
                (i * p + j) as usize
            }
        }
    }

    pub fn inverse(&self, a: Element) -> Element {
        match &self.repr {
            Repr::Dense { inverses, .. } => inverses[a] as usize,
            Repr::Metacyclic { m, p, r_pows, .. } => {
                let (i, j) = ((a / *p as usize) as i64, (a % *p as usize) as i64);
                let ii = (m - i) % m;
                let jj = (p - mul_mod(j, r_pows[i as usize], *p)) % p;
                (ii * p + jj) as usize
            }
        }
    }

    pub fn element_order(&self, a: Element) -> Result<usize, GroupError> {
        self.check_element(a)?;
        let e = self.identity();
        let mut x = a;
        for k in 1..=self.order {
            if x == e {
                return Ok(k);
            }
            x = self.mul(x, a);
        }
        unreachable!("element order divides the group order")
    }

    fn check_element(&self, a: Element) -> Result<(), GroupError> {
        if a >= self.order {
            return Err(GroupError::BadElement { index: a, order: self.order });
        }
        Ok(())
    }

    /// Closure of `{a, c}` under multiplication equals the whole group.
    pub fn is_generating_pair(&self, a: Element, c: Element) -> Result<bool, GroupError> {
        self.check_element(a)?;
        self.check_element(c)?;
        Ok(self.closure_size(a, c) == self.order)
    }

    fn closure_size(&self, a: Element, c: Element) -> usize {
        let mut seen = vec![false; self.order];
        let mut stack = vec![self.identity()];
        seen[self.identity()] = true;
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for &x in &[a, c] {
                let h = self.mul(g, x);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count
    }

    /// Does an automorphism `rho` with `rho(a) = a^-1`, `rho(c) = c^-1`
    /// exist? Since `(a, c)` generates, such a map is unique if it exists:
    /// the candidate assignment is propagated over the whole group by a
    /// breadth-first closure and checked for well-definedness and
    /// bijectivity.
    pub fn inverting_automorphism_exists(
        &self,
        a: Element,
        c: Element,
    ) -> Result<bool, GroupError> {
        self.check_element(a)?;
        self.check_element(c)?;
        if !self.is_generating_pair(a, c)? {
            return Err(GroupError::NonGeneratingPair);
        }
        let e = self.identity();
        let pairs = [(a, self.inverse(a)), (c, self.inverse(c))];
        let mut image: Vec<Option<u32>> = vec![None; self.order];
        image[e] = Some(e as u32);
        let mut queue = std::collections::VecDeque::from([e]);
        while let Some(g) = queue.pop_front() {
            let img_g = image[g].expect("queued elements have images") as usize;
            for &(x, img_x) in &pairs {
                let gx = self.mul(g, x);
                let candidate = self.mul(img_g, img_x) as u32;
                match image[gx] {
                    None => {
                        image[gx] = Some(candidate);
                        queue.push_back(gx);
                    }
                    Some(existing) if existing != candidate => return Ok(false),
                    Some(_) => {}
                }
            }
        }
        // every (g, generator) product was checked, so the map is a
        // homomorphism; it remains to check it is a permutation
        let mut hit = vec![false; self.order];
        for img in &image {
            let img = img.expect("generating pair reaches every element") as usize;
            if hit[img] {
                return Ok(false);
            }
            hit[img] = true;
        }
        Ok(true)
    }

    /// Build a dense group from a multiplication closure, running the full
    /// construction checks.
    fn from_mul_fn(
        order: usize,
        generators: Vec<(String, Element)>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if order > DENSE_LIMIT {
            return Err(GroupError::OrderTooLarge(order));
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                if v >= order {
                    return Err(GroupError::BadElement { index: v, order });
                }
                table[a * order + b] = v as u32;
            }
        }
        let repr = validate_table(order, table)?;
        Ok(FiniteGroup { order, repr, generators })
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let g = 1 % n;
        FiniteGroup::from_mul_fn(n, vec![("g".into(), g)], |a, b| (a + b) % n)
    }

    /// Direct sum of cyclic groups with the given factor orders; elements
    /// are mixed-radix tuples, generators `g1, g2, ...` the unit vectors.
    pub fn abelian(factors: &[usize]) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.iter().any(|&f| f == 0) {
            return Err(GroupError::BadParameter("abelian factors must be positive".into()));
        }
        let order: usize = factors.iter().product();
        let encode =
            |tuple: &[usize]| -> usize { tuple.iter().zip(factors).fold(0, |idx, (t, f)| idx * f + t) };
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut tuple = vec![0; factors.len()];
            for (t, f) in tuple.iter_mut().zip(factors).rev() {
                *t = idx % f;
                idx /= f;
            }
            tuple
        };
        let mut generators = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let mut tuple = vec![0; factors.len()];
            tuple[i] = 1 % f;
            generators.push((format!("g{}", i + 1), encode(&tuple)));
        }
        FiniteGroup::from_mul_fn(order, generators, |a, b| {
            let (ta, tb) = (decode(a), decode(b));
            let sum: Vec<usize> = ta
                .iter()
                .zip(&tb)
                .zip(factors)
                .map(|((x, y), f)| (x + y) % f)
                .collect();
            encode(&sum)
        })
    }

    /// Dihedral group of order `2q`: elements `(k, f)` act as
    /// `rot^k refl^f`, generators `r` (rotation) and `s` (reflection).
    pub fn dihedral(q: usize) -> Result<Self, GroupError> {
        if q == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let gens = vec![("r".into(), 2 % (2 * q)), ("s".into(), 1)];
        FiniteGroup::from_mul_fn(2 * q, gens, |a, b| {
            let (ka, fa) = (a / 2, a % 2);
            let (kb, fb) = (b / 2, b % 2);
            let k = if fa == 0 { (ka + kb) % q } else { (ka + q - kb) % q };
            let f = (fa + fb) % 2;
            k * 2 + f
        })
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self, GroupError> {
        let order = g.order * h.order;
        let mut generators = Vec::new();
        for (name, e) in &g.generators {
            generators.push((format!("{name}.1"), e * h.order + h.identity()));
        }
        for (name, e) in &h.generators {
            generators.push((format!("{name}.2"), g.identity() * h.order + e));
        }
        FiniteGroup::from_mul_fn(order, generators, |a, b| {
            let (ga, ha) = (a / h.order, a % h.order);
            let (gb, hb) = (b / h.order, b % h.order);
            g.mul(ga, gb) * h.order + h.mul(ha, hb)
        })
    }

    /// The order-16 group
    /// `G1 = <sigma, g, t | sigma^2 = t^2 = 1, g^4 = 1, t central,
    /// sigma g = g^-1 t sigma>` (classically labelled `c1`). Elements are
    /// `g^k t^d sigma^e`.
    pub fn g1() -> Result<Self, GroupError> {
        let encode = |k: usize, d: usize, e: usize| (k * 2 + d) * 2 + e;
        let decode = |idx: usize| (idx / 4, (idx / 2) % 2, idx % 2);
        let gens = vec![
            ("sigma".into(), encode(0, 0, 1)),
            ("g".into(), encode(1, 0, 0)),
            ("t".into(), encode(0, 1, 0)),
        ];
        FiniteGroup::from_mul_fn(16, gens, |a, b| {
            let (k1, d1, e1) = decode(a);
            let (k2, d2, e2) = decode(b);
            // sigma g^k = g^-k t^k sigma
            let (k2c, d2c) = if e1 == 1 { ((4 - k2) % 4, (d2 + k2) % 2) } else { (k2, d2) };
            encode((k1 + k2c) % 4, (d1 + d2c) % 2, (e1 + e2) % 2)
        })
    }

    /// The metacyclic semidirect product
    /// `<a, c | a^m = 1, c^p = 1, a c a^-1 = c^r>` with `p = r^m - 1`,
    /// realized on pairs `(i, j) in Z/m x Z/p`. Returns the group together
    /// with the marked generators `a = (1, 0)` and `c = (0, 1)`.
    pub fn metacyclic(params: &MetacyclicParams) -> Result<(Self, Element, Element), GroupError> {
        let (r, m, p) = (params.r, params.m, params.p);
        let order = (m * p) as usize;
        if order > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        let r_inv = mod_pow(r, m - 1, p); // r * r^(m-1) = r^m ≡ 1 (mod p)
        debug_assert_eq!(mul_mod(r, r_inv, p), 1);
        let mut r_pows = Vec::with_capacity(m as usize);
        let mut r_inv_pows = Vec::with_capacity(m as usize);
        let (mut x, mut y) = (1i64, 1i64);
        for _ in 0..m {
            r_pows.push(x);
            r_inv_pows.push(y);
            x = mul_mod(x, r, p);
            y = mul_mod(y, r_inv, p);
        }
        let group = FiniteGroup {
            order,
            repr: Repr::Metacyclic { m, p, r_pows, r_inv_pows },
            generators: vec![("a".into(), p as usize), ("c".into(), 1)],
        };
        let a = p as usize; // (1, 0)
        let c = 1; // (0, 1)
        group.verify_metacyclic(a, c, params)?;
        Ok((group, a, c))
    }

    /// Construction-time guard for the structural representation: defining
    /// relations hold exactly; associativity is checked in full up to order
    /// 512 and on seeded random triples above (the multiplication law is
    /// algebraically a semidirect product, the check guards the code).
    fn verify_metacyclic(
        &self,
        a: Element,
        c: Element,
        params: &MetacyclicParams,
    ) -> Result<(), GroupError> {
        if self.element_order(a)? != params.m as usize
            || self.element_order(c)? != params.p as usize
        {
            return Err(GroupError::BadParameter("metacyclic generator orders".into()));
        }
        let conj = self.mul(self.mul(a, c), self.inverse(a));
        let c_to_r = (params.r % params.p) as usize; // c^r = (0, r)
        if conj != c_to_r {
            return Err(GroupError::BadParameter("metacyclic conjugation relation".into()));
        }
        if self.order <= FULL_ASSOC_LIMIT {
            for x in 0..self.order {
                for y in 0..self.order {
                    for z in 0..self.order {
                        if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                            return Err(GroupError::NotAssociative(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed ^ self.order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let x = rng.gen_range(0..self.order);
                let y = rng.gen_range(0..self.order);
                let z = rng.gen_range(0..self.order);
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Err(GroupError::NotAssociative(x, y, z));
                }
            }
        }
        Ok(())
    }

    /// Orders of all elements, sorted; an isomorphism invariant used to
    /// recognize the extended symmetry groups.
    pub fn element_order_multiset(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order)
            .map(|g| self.element_order(g).expect("valid element"))
            .collect();
        orders.sort_unstable();
        orders
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn validate_table(order: usize, table: Vec<u32>) -> Result<Repr, GroupError> {
    // Latin square
    for a in 0..order {
        let mut row = vec![false; order];
        let mut col = vec![false; order];
        for b in 0..order {
            let rv = table[a * order + b] as usize;
            let cv = table[b * order + a] as usize;
            if rv >= order || cv >= order || row[rv] || col[cv] {
                return Err(GroupError::NotLatinSquare);
            }
            row[rv] = true;
            col[cv] = true;
        }
    }
    // identity
    let identity = (0..order)
        .find(|&e| {
            (0..order)
                .all(|a| table[e * order + a] as usize == a && table[a * order + e] as usize == a)
        })
        .ok_or(GroupError::NoIdentity)?;
    // inverses
    let mut inverses = vec![0u32; order];
    for a in 0..order {
        let inv = (0..order)
            .find(|&b| {
                table[a * order + b] as usize == identity
                    && table[b * order + a] as usize == identity
            })
            .ok_or(GroupError::NoInverse(a))?;
        inverses[a] = inv as u32;
    }
    // associativity
    if order <= FULL_ASSOC_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b] as usize;
                for c in 0..order {
                    let bc = table[b * order + c] as usize;
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed ^ order as u64);
        for _ in 0..SAMPLED_TRIPLES {
            let (a, b, c) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            let ab = table[a * order + b] as usize;
            let bc = table[b * order + c] as usize;
            if table[ab * order + c] != table[a * order + bc] {
                return Err(GroupError::NotAssociative(a, b, c));
            }
        }
    }
    Ok(Repr::Dense { table, identity, inverses })
}

/// Parameters of the metacyclic family: `p = r^m - 1`, `n = (r - 1) m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MetacyclicParams {
    pub r: i64,
    pub m: i64,
    pub p: i64,
    pub n: i64,
}

impl MetacyclicParams {
    pub fn new(r: i64, m: i64) -> Result<Self, GroupError> {
        if r < 3 || m < 4 {
            return Err(GroupError::BadMetacyclicParams { r, m });
        }
        let mut p: i64 = 1;
        for _ in 0..m {
            p = p.checked_mul(r).ok_or(GroupError::MetacyclicOverflow)?;
        }
        let p = p - 1;
        // gcd(r, p) = 1 since p ≡ -1 (mod r); the multiplicative order of
        // r mod p is exactly m: r^m = p + 1 ≡ 1 and 0 < r^k - 1 < p for k < m
        debug_assert_eq!(num_integer::gcd(r, p), 1);
        debug_assert_eq!(mod_pow(r, m, p), 1);
        Ok(MetacyclicParams { r, m, p, n: (r - 1) * m })
    }

    pub fn group_order(&self) -> i64 {
        self.m * self.p
    }
}

/// Closed-form test for the inverting automorphism on the metacyclic
/// family: it exists iff `r^2 ≡ 1 (mod p)` — which fails for all admissible
/// parameters since `0 < r^2 - 1 < r^m - 1 = p`.
pub fn semidirect_inverting_criterion(params: &MetacyclicParams) -> bool {
    mul_mod(params.r % params.p, params.r % params.p, params.p) == 1
}

fn mul_mod(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128) % p as i128) as i64
}

fn mod_pow(mut base: i64, mut exp: i64, p: i64) -> i64 {
    let mut acc = 1i64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(g.identity()).unwrap(), 1);
        assert_eq!(g.element_order(1).unwrap(), 6);
        assert_eq!(g.element_order(2).unwrap(), 3);
        assert_eq!(g.element_order(3).unwrap(), 2);
    }

    #[test]
    fn dihedral_4_has_order_8() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let r = d4.generator("r").unwrap();
        let s = d4.generator("s").unwrap();
        assert_eq!(d4.element_order(r).unwrap(), 4);
        assert_eq!(d4.element_order(s).unwrap(), 2);
        // s r s^-1 = r^-1
        let conj = d4.mul(d4.mul(s, r), d4.inverse(s));
        assert_eq!(conj, d4.inverse(r));
        assert!(!d4.is_abelian());
    }

    #[test]
    fn direct_product_order() {
        let g = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::dihedral(4).unwrap(),
        )
        .unwrap();
        assert_eq!(g.order(), 16);
    }

    #[test]
    fn g1_relations() {
        let g1 = FiniteGroup::g1().unwrap();
        assert_eq!(g1.order(), 16);
        let sigma = g1.generator("sigma").unwrap();
        let g = g1.generator("g").unwrap();
        let t = g1.generator("t").unwrap();
        assert_eq!(g1.element_order(sigma).unwrap(), 2);
        assert_eq!(g1.element_order(g).unwrap(), 4);
        assert_eq!(g1.element_order(t).unwrap(), 2);
        // t central
        for x in 0..g1.order() {
            assert_eq!(g1.mul(t, x), g1.mul(x, t));
        }
        // sigma g = g^-1 t sigma
        let lhs = g1.mul(sigma, g);
        let rhs = g1.mul(g1.mul(g1.inverse(g), t), sigma);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn metacyclic_3_4() {
        let params = MetacyclicParams::new(3, 4).unwrap();
        assert_eq!(params.p, 80);
        assert_eq!(params.n, 8);
        assert_eq!(params.group_order(), 320);
        let (g, a, c) = FiniteGroup::metacyclic(&params).unwrap();
        assert_eq!(g.order(), 320);
        assert_eq!(g.element_order(a).unwrap(), 4);
        assert_eq!(g.element_order(c).unwrap(), 80);
        // a c a^-1 = c^r
        let conj = g.mul(g.mul(a, c), g.inverse(a));
        let mut c_r = g.identity();
        for _ in 0..3 {
            c_r = g.mul(c_r, c);
        }
        assert_eq!(conj, c_r);
        // b = (a c)^-1 has order n = (r - 1) m = 8
        let b = g.inverse(g.mul(a, c));
        assert_eq!(g.element_order(b).unwrap(), 8);
        assert!(g.is_generating_pair(a, c).unwrap());
    }

    #[test]
    fn metacyclic_orders_by_family() {
        assert_eq!(MetacyclicParams::new(3, 5).unwrap().group_order(), 1210);
        assert_eq!(MetacyclicParams::new(5, 4).unwrap().p, 624);
        assert_eq!(MetacyclicParams::new(5, 4).unwrap().group_order(), 2496);
        assert!(MetacyclicParams::new(2, 4).is_err());
        assert!(MetacyclicParams::new(3, 3).is_err());
    }

    #[test]
    fn generating_pairs() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        // g^2 and g^3 together generate Z/6
        assert!(c6.is_generating_pair(2, 3).unwrap());
        let c4 = FiniteGroup::cyclic(4).unwrap();
        // g^2 alone generates the proper subgroup {0, 2}
        assert!(!c4.is_generating_pair(2, 2).unwrap());
        assert!(c4.is_generating_pair(1, 1).unwrap());
    }

    #[test]
    fn abelian_groups_invert() {
        let g = FiniteGroup::abelian(&[5, 5]).unwrap();
        let a = g.generator("g1").unwrap();
        let c = g.generator("g2").unwrap();
        assert!(g.inverting_automorphism_exists(a, c).unwrap());
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert!(c6.inverting_automorphism_exists(1, 1).unwrap());
    }

    #[test]
    fn dihedral_standard_generators_invert() {
        // conjugation by the reflection sends r to r^-1 and fixes s
        for q in [2usize, 3, 4, 6] {
            let d = FiniteGroup::dihedral(q).unwrap();
            let r = d.generator("r").unwrap();
            let s = d.generator("s").unwrap();
            assert!(d.inverting_automorphism_exists(r, s).unwrap(), "D_{q}");
        }
    }

    #[test]
    fn metacyclic_3_4_does_not_invert() {
        let params = MetacyclicParams::new(3, 4).unwrap();
        let (g, a, c) = FiniteGroup::metacyclic(&params).unwrap();
        assert!(!g.inverting_automorphism_exists(a, c).unwrap());
        assert!(!semidirect_inverting_criterion(&params));
    }

    #[test]
    fn criterion_values() {
        // r^2 mod p: 9 mod 80, 16 mod 255, 25 mod 3124 — all != 1
        for (r, m) in [(3, 4), (4, 4), (5, 5)] {
            let params = MetacyclicParams::new(r, m).unwrap();
            assert!(!semidirect_inverting_criterion(&params));
        }
    }

    #[test]
    fn non_generating_pair_is_an_error() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            c4.inverting_automorphism_exists(2, 2),
            Err(GroupError::NonGeneratingPair)
        );
    }

    #[test]
    fn bad_table_is_rejected() {
        // constant multiplication is not a Latin square
        let r = FiniteGroup::from_mul_fn(2, vec![], |_, _| 0);
        assert_eq!(r.err(), Some(GroupError::NotLatinSquare));
    }
}
