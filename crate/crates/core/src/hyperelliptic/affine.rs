//! Exact affine self-maps of a 2-torus `R^2 / Z^2`.
//!
//! Group elements and real-structure lifts on an elliptic curve are maps
//! `x -> M x + t` with `M` integral unimodular and `t` rational mod `Z^2`.
//! Holomorphy is bookkept against the curve's multiplication matrix `J`
//! (multiplication by `i` on the square lattice, by a primitive cube root
//! of unity on the hexagonal one): a map is holomorphic when `M J = J M`
//! and antiholomorphic when `M J = J^-1 M`.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::HyperError;
use crate::exact_linalg::{self, IntMatrix, RatVector};

pub type Rat = Rational64;

/// Integral 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [[i64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }

    pub fn neg(&self) -> Mat2 {
        let a = &self.0;
        Mat2([[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]])
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let a = &self.0;
        Some(Mat2([
            [d * a[1][1], -d * a[0][1]],
            [-d * a[1][0], d * a[0][0]],
        ]))
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::IDENTITY
    }

    pub fn mul_vec(&self, v: &RatVec2) -> RatVec2 {
        let a = &self.0;
        RatVec2(
            Rat::from_integer(a[0][0]) * v.0 + Rat::from_integer(a[0][1]) * v.1,
            Rat::from_integer(a[1][0]) * v.0 + Rat::from_integer(a[1][1]) * v.1,
        )
    }

    pub fn mul_int_vec(&self, v: (i64, i64)) -> (i64, i64) {
        let a = &self.0;
        (a[0][0] * v.0 + a[0][1] * v.1, a[1][0] * v.0 + a[1][1] * v.1)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[&self.0[0][..], &self.0[1][..]])
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Rational point / translation on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec2(pub Rat, pub Rat);

impl RatVec2 {
    pub fn zero() -> RatVec2 {
        RatVec2(Rat::zero(), Rat::zero())
    }

    pub fn add(&self, rhs: &RatVec2) -> RatVec2 {
        RatVec2(self.0 + rhs.0, self.1 + rhs.1)
    }

    pub fn sub(&self, rhs: &RatVec2) -> RatVec2 {
        RatVec2(self.0 - rhs.0, self.1 - rhs.1)
    }

    pub fn neg(&self) -> RatVec2 {
        RatVec2(-self.0, -self.1)
    }

    pub fn reduce_mod_one(&self) -> RatVec2 {
        RatVec2(self.0 - self.0.floor(), self.1 - self.1.floor())
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integer() && self.1.is_integer()
    }

    /// Order of the point in the torus group: lcm of the denominators.
    pub fn torsion_order(&self) -> i64 {
        num_integer::lcm(*self.0.denom(), *self.1.denom())
    }

    pub fn to_rat_vector(&self) -> RatVector {
        RatVector::from_i64s(&[
            (*self.0.numer(), *self.0.denom()),
            (*self.1.numer(), *self.1.denom()),
        ])
    }
}

impl Serialize for RatVec2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&format_rat(&self.0))?;
        seq.serialize_element(&format_rat(&self.1))?;
        seq.end()
    }
}

pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, HyperError> {
    let bad = || HyperError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => t.parse::<i64>().map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Which elliptic curve lattice the maps respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    /// `Z + iZ`; multiplication by `i` is `[[0,-1],[1,0]]`.
    Square,
    /// `Z + rho Z` with `rho` a primitive cube root of unity;
    /// multiplication by `rho` is `[[0,-1],[1,-1]]`.
    Hexagonal,
}

/// An elliptic curve given by its lattice and the integral matrix of its
/// extra multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveLattice {
    pub kind: LatticeKind,
    pub j: Mat2,
}

impl CurveLattice {
    pub fn square() -> CurveLattice {
        CurveLattice { kind: LatticeKind::Square, j: Mat2([[0, -1], [1, 0]]) }
    }

    pub fn hexagonal() -> CurveLattice {
        CurveLattice { kind: LatticeKind::Hexagonal, j: Mat2([[0, -1], [1, -1]]) }
    }

    /// Complex conjugation in the lattice basis.
    fn conjugation_matrix(&self) -> Mat2 {
        match self.kind {
            // 1 -> 1, i -> -i
            LatticeKind::Square => Mat2([[1, 0], [0, -1]]),
            // 1 -> 1, rho -> conj(rho) = rho^2 = -1 - rho
            LatticeKind::Hexagonal => Mat2([[1, -1], [0, -1]]),
        }
    }

    /// Units of the multiplication ring, i.e. the holomorphic matrices of
    /// the curve's automorphisms fixing the origin.
    fn unit_matrices(&self) -> Vec<Mat2> {
        let j = self.j;
        match self.kind {
            LatticeKind::Square => vec![Mat2::IDENTITY, j, j.neg(), Mat2::IDENTITY.neg()],
            LatticeKind::Hexagonal => {
                let j2 = j.mul(&j);
                vec![
                    Mat2::IDENTITY,
                    j,
                    j2,
                    Mat2::IDENTITY.neg(),
                    j.neg(),
                    j2.neg(),
                ]
            }
        }
    }

    pub fn is_holo_matrix(&self, m: &Mat2) -> bool {
        m.mul(&self.j) == self.j.mul(m)
    }

    /// Antiholomorphic linear parts conjugate the multiplication:
    /// `M J = J^-1 M`.
    pub fn is_antiholo_matrix(&self, m: &Mat2) -> bool {
        let j_inv = self.j.inverse().expect("multiplication matrix is unimodular");
        m.mul(&self.j) == j_inv.mul(m)
    }

    /// All antiholomorphic unimodular linear parts: the conjugation matrix
    /// composed with each unit. Every one of them squares to the identity.
    pub fn antiholo_matrices(&self) -> Vec<Mat2> {
        let c = self.conjugation_matrix();
        self.unit_matrices().iter().map(|u| c.mul(u)).collect()
    }
}

/// Affine self-map `x -> M x + t` of the torus, tagged holomorphic or
/// antiholomorphic. Translations are kept reduced into `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineMap {
    pub m: Mat2,
    pub t: RatVec2,
    pub antiholo: bool,
}

impl AffineMap {
    pub fn new(m: Mat2, t: RatVec2, antiholo: bool) -> AffineMap {
        AffineMap { m, t: t.reduce_mod_one(), antiholo }
    }

    pub fn identity() -> AffineMap {
        AffineMap::new(Mat2::IDENTITY, RatVec2::zero(), false)
    }

    pub fn translation(t: RatVec2) -> AffineMap {
        AffineMap::new(Mat2::IDENTITY, t, false)
    }

    pub fn is_identity(&self) -> bool {
        !self.antiholo && self.m.is_identity() && self.t.reduce_mod_one().is_integral()
    }

    pub fn is_translation(&self) -> bool {
        !self.antiholo && self.m.is_identity()
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &AffineMap) -> AffineMap {
        AffineMap::new(
            self.m.mul(&rhs.m),
            self.m.mul_vec(&rhs.t).add(&self.t),
            self.antiholo ^ rhs.antiholo,
        )
    }

    pub fn inverse(&self) -> AffineMap {
        let m_inv = self.m.inverse().expect("group elements are unimodular");
        AffineMap::new(m_inv, m_inv.mul_vec(&self.t).neg(), self.antiholo)
    }

    pub fn apply(&self, x: &RatVec2) -> RatVec2 {
        self.m.mul_vec(x).add(&self.t).reduce_mod_one()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Whether the map has a fixed point on the torus: solvability of the
    /// congruence `(M - I) x ≡ -t (mod Z^2)`.
    pub fn has_fixed_point(&self) -> bool {
        let a = self.m_minus_identity();
        exact_linalg::solve_congruence(&a, &self.t.neg().to_rat_vector())
            .expect("dimensions agree")
            .is_some()
    }

    fn m_minus_identity(&self) -> IntMatrix {
        let a = &self.m.0;
        IntMatrix::from_rows(&[&[a[0][0] - 1, a[0][1]], &[a[1][0], a[1][1] - 1]])
    }

    /// All fixed points of a map with finitely many of them (`M - I`
    /// invertible over Q), as exact torus points.
    pub fn isolated_fixed_points(&self) -> Vec<RatVec2> {
        let a = self.m_minus_identity();
        solution_classes(&a, &self.t.neg().to_rat_vector())
    }
}

/// A circle on the torus: `base + span(dir)` with `dir` a primitive
/// integer vector (sign-normalized).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Circle {
    pub base: RatVec2,
    pub dir: (i64, i64),
}

impl Circle {
    pub fn new(base: RatVec2, dir: (i64, i64)) -> Circle {
        Circle { base: base.reduce_mod_one(), dir: normalize_dir(dir) }
    }

    /// Image circle under an affine map.
    pub fn transported(&self, map: &AffineMap) -> Circle {
        Circle::new(map.apply(&self.base), map.m.mul_int_vec(self.dir))
    }

    pub fn contains(&self, p: &RatVec2) -> bool {
        let w = p.sub(&self.base);
        cross(&w, self.dir).is_integer()
    }
}

impl PartialEq for Circle {
    /// Set equality: same direction line through base points that differ
    /// by a lattice vector along the line.
    fn eq(&self, other: &Circle) -> bool {
        self.dir == other.dir && {
            let w = self.base.sub(&other.base);
            cross(&w, self.dir).is_integer()
        }
    }
}

impl Eq for Circle {}

fn normalize_dir(dir: (i64, i64)) -> (i64, i64) {
    let g = num_integer::gcd(dir.0.abs(), dir.1.abs());
    assert!(g > 0, "circle direction must be nonzero");
    let mut d = (dir.0 / g, dir.1 / g);
    if d.0 < 0 || (d.0 == 0 && d.1 < 0) {
        d = (-d.0, -d.1);
    }
    d
}

fn cross(w: &RatVec2, dir: (i64, i64)) -> Rat {
    w.0 * Rat::from_integer(dir.1) - w.1 * Rat::from_integer(dir.0)
}

/// All solution classes of `A x ≡ b (mod Z^2)` modulo the connected
/// component of the solution set: one representative per discrete class.
fn solution_classes(a: &IntMatrix, b: &RatVector) -> Vec<RatVec2> {
    let Some(_x0) = exact_linalg::solve_congruence(a, b).expect("dimensions agree") else {
        return Vec::new();
    };
    let snf = exact_linalg::smith_normal_form(a);
    // in SNF coordinates y = V^-1 x: d_i y_i ≡ c_i with c = U b
    let c = snf.u.mul_rat_vec(b).expect("dimensions agree");
    let to_i64 = |x: &num_rational::BigRational| -> Rat {
        let n: i64 = i64::try_from(x.numer()).expect("small numerator");
        let d: i64 = i64::try_from(x.denom()).expect("small denominator");
        Rat::new(n, d)
    };
    let divisors: Vec<i64> = snf
        .divisors()
        .iter()
        .map(|d| i64::try_from(d).expect("small divisor"))
        .collect();
    let mut classes = vec![vec![Rat::zero(); 2]];
    for (i, &d) in divisors.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let base = to_i64(c.get(i)) / Rat::from_integer(d);
        let mut next = Vec::new();
        for y in &classes {
            for k in 0..d {
                let mut y2 = y.clone();
                y2[i] = base + Rat::new(k, d);
                next.push(y2);
            }
        }
        classes = next;
    }
    classes
        .into_iter()
        .map(|y| {
            let x0 = Rat::from_integer(snf.v.get(0, 0).try_into().expect("small"))
                * y[0]
                + Rat::from_integer(snf.v.get(0, 1).try_into().expect("small")) * y[1];
            let x1 = Rat::from_integer(snf.v.get(1, 0).try_into().expect("small"))
                * y[0]
                + Rat::from_integer(snf.v.get(1, 1).try_into().expect("small")) * y[1];
            RatVec2(x0, x1).reduce_mod_one()
        })
        .collect()
}

/// Fixed circles of an antiholomorphic involution on the curve: empty, or
/// `2^a` parallel circles (`a = 1` exactly when the linear part is
/// integrally diagonalizable).
pub fn fixed_circles(map: &AffineMap) -> Result<Vec<Circle>, HyperError> {
    if !map.antiholo {
        return Err(HyperError::NotAntiholomorphic);
    }
    if !map.is_involution() {
        return Err(HyperError::NotInvolutive);
    }
    let a = map.m_minus_identity();
    if exact_linalg::solve_congruence(&a, &map.t.neg().to_rat_vector())
        .expect("dimensions agree")
        .is_none()
    {
        return Ok(Vec::new());
    }
    let kernel = exact_linalg::kernel_basis(&a);
    if kernel.len() != 1 {
        return Err(HyperError::Internal(format!(
            "antiholomorphic involution with kernel rank {}",
            kernel.len()
        )));
    }
    let dir = (
        i64::try_from(&kernel[0][0]).expect("small direction"),
        i64::try_from(&kernel[0][1]).expect("small direction"),
    );
    let bases = solution_classes(&a, &map.t.neg().to_rat_vector());
    let mut circles: Vec<Circle> = Vec::new();
    for base in bases {
        let c = Circle::new(base, dir);
        if !circles.contains(&c) {
            circles.push(c);
        }
    }
    Ok(circles)
}
