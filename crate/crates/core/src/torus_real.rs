//! Real structures on complex tori.
//!
//! A real structure on an n-dimensional complex torus is encoded, up to the
//! data that determines its topology, by an integral involution `s` of the
//! rank-2n lattice together with a rational translation class `b` (the
//! affine lift acts as `x -> s x + b`). Two integers decide everything:
//! `r`, the rank of `s - I` mod 2, and whether the structure *splits*, i.e.
//! whether the lift has a fixed point on the torus. The split case is
//! represented by the linear normal form, the nonsplit case by
//! `x -> s x + e1+/2` with `e1+` the first fixed basis vector; when `r = n`
//! the structure always splits.
//!
//! For genus 1 this reproduces the classical trichotomy: the number of
//! ovals of a real elliptic curve is 2, 1 or 0, and `s` is diagonalizable
//! exactly when that number is even.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{
    adapted_basis, canonical_involution, is_involution, rank_mod2, solve_congruence,
    torsion_order, z2_decomposition, IntMatrix, LinalgError, RatMatrix, RatVector,
    Z2Decomposition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("s must be a {expected}x{expected} matrix for n = {n}, got {rows}x{cols}")]
    BadMatrixSize { n: usize, expected: usize, rows: usize, cols: usize },
    #[error("translation class must have dimension {expected}, got {got}")]
    BadTranslationSize { expected: usize, got: usize },
    #[error("s is not an involution (s*s != identity)")]
    NotInvolution,
    #[error("s*b + b is not an integral vector")]
    NonIntegralTranslation,
    #[error("eigenvalue imbalance: dim ker(s-I) = {plus}, dim ker(s+I) = {minus}, both must equal n = {n}")]
    EigenvalueImbalance { plus: usize, minus: usize, n: usize },
    #[error("structures live on tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("invariant (n={n}, r={r}, splits={splits}) is not realizable")]
    UnrealizableInvariant { n: usize, r: usize, splits: bool },
    #[error("matrix parameter must be invertible")]
    SingularParameter,
    #[error("conjugating matrix must be unimodular")]
    NotUnimodular,
    #[error("operation requires n = 1, structure has n = {0}")]
    NotGenusOne(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A real structure on an n-torus: involution `s` on the rank-2n lattice
/// plus translation class `b` mod `Z^2n`. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealTorusStructure {
    n: usize,
    s: IntMatrix,
    b: RatVector,
}

/// The complete topological invariant: complex dimension, rank of
/// `(s - I)` mod 2, and whether the lift has a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusClassInvariant {
    pub n: usize,
    pub r: usize,
    pub splits: bool,
}

/// Topology of the real part: a disjoint union of `component_count` real
/// tori, each of dimension `component_dimension`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPartTopology {
    pub component_count: u64,
    pub component_dimension: usize,
}

/// Normal form of a structure: the invariant plus the canonical translation
/// class, expressed in the coordinates of the canonical block model
/// (`r` swap pairs, then the `+1` block, then the `-1` block).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub invariant: TorusClassInvariant,
    pub canonical_b: RatVector,
}

impl RealTorusStructure {
    pub fn new(n: usize, s: IntMatrix, b: RatVector) -> Result<Self, TorusError> {
        let k = 2 * n;
        if n == 0 || s.rows() != k || s.cols() != k {
            return Err(TorusError::BadMatrixSize {
                n,
                expected: k,
                rows: s.rows(),
                cols: s.cols(),
            });
        }
        if b.dim() != k {
            return Err(TorusError::BadTranslationSize { expected: k, got: b.dim() });
        }
        if !is_involution(&s) {
            return Err(TorusError::NotInvolution);
        }
        if !s.mul_rat_vec(&b)?.add(&b)?.is_integral() {
            return Err(TorusError::NonIntegralTranslation);
        }
        let dec = z2_decomposition(&s)?;
        let plus = dec.regular + dec.plus_free;
        let minus = dec.regular + dec.minus_free;
        if plus != n || minus != n {
            return Err(TorusError::EigenvalueImbalance { plus, minus, n });
        }
        Ok(RealTorusStructure { n, s, b })
    }

    /// Canonical model for the invariant `(n, r, splits)`.
    pub fn canonical(n: usize, r: usize, splits: bool) -> Result<Self, TorusError> {
        if n == 0 || r > n || (r == n && !splits) {
            return Err(TorusError::UnrealizableInvariant { n, r, splits });
        }
        let dec = Z2Decomposition { regular: r, plus_free: n - r, minus_free: n - r };
        let s = canonical_involution(dec);
        let mut b = vec![BigRational::zero(); 2 * n];
        if !splits {
            // half of the first +1-block basis vector
            b[2 * r] = BigRational::new(BigInt::one(), BigInt::from(2));
        }
        RealTorusStructure::new(n, s, RatVector::new(b))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn b(&self) -> &RatVector {
        &self.b
    }

    fn decomposition(&self) -> Z2Decomposition {
        z2_decomposition(&self.s).expect("validated structure")
    }

    /// `(n, r, splits)`: `r` is the mod-2 rank of `s - I`; the structure
    /// splits iff `(s - I) x ≡ -b` has a solution on the torus, i.e. iff
    /// the affine lift has a fixed point.
    pub fn class_invariant(&self) -> TorusClassInvariant {
        let s_minus_i = self.s.minus_identity().expect("square");
        let r = rank_mod2(&s_minus_i);
        let splits = solve_congruence(&s_minus_i, &self.b.neg())
            .expect("dimensions agree")
            .is_some();
        TorusClassInvariant { n: self.n, r, splits }
    }

    /// A fixed point of the affine lift, as a solution of the congruence
    /// `(s - I) x ≡ -b` reduced into `[0,1)^2n`; `None` when fixed-point
    /// free (the nonsplit case).
    pub fn fixed_point(&self) -> Option<RatVector> {
        let s_minus_i = self.s.minus_identity().expect("square");
        solve_congruence(&s_minus_i, &self.b.neg()).expect("dimensions agree")
    }

    pub fn normal_form(&self) -> NormalForm {
        let invariant = self.class_invariant();
        let k = 2 * self.n;
        let mut b = vec![BigRational::zero(); k];
        if !invariant.splits {
            assert!(
                invariant.r < self.n,
                "nonsplit structure with r = n contradicts the splitting criterion"
            );
            b[2 * invariant.r] = BigRational::new(BigInt::one(), BigInt::from(2));
        }
        NormalForm { invariant, canonical_b: RatVector::new(b) }
    }

    /// Equality of topological types: same `(n, r, splits)`.
    pub fn equivalent(&self, other: &RealTorusStructure) -> Result<bool, TorusError> {
        if self.n != other.n {
            return Err(TorusError::DimensionMismatch(self.n, other.n));
        }
        Ok(self.class_invariant() == other.class_invariant())
    }

    /// Topology of the real part: empty when nonsplit, otherwise
    /// `torsion_order(s - I) = 2^(n - r)` disjoint real n-tori.
    pub fn real_part(&self) -> RealPartTopology {
        let invariant = self.class_invariant();
        if !invariant.splits {
            return RealPartTopology { component_count: 0, component_dimension: self.n };
        }
        let t = torsion_order(&self.s.minus_identity().expect("square")).expect("square");
        let count = u64::try_from(&t).expect("component count fits u64");
        RealPartTopology { component_count: count, component_dimension: self.n }
    }

    /// The classical oval count for genus 1.
    pub fn elliptic_nu(&self) -> Result<u8, TorusError> {
        if self.n != 1 {
            return Err(TorusError::NotGenusOne(self.n));
        }
        Ok(self.real_part().component_count as u8)
    }

    /// Compatible translation-invariant complex structure determined by an
    /// invertible rational `n x n` parameter matrix `A`: in a rational
    /// eigenbasis of `s` the structure is `J(y1, y2) = (A y2, -A^-1 y1)`,
    /// which satisfies `J^2 = -I` and `J s = -s J` exactly.
    pub fn compatible_complex_structure(
        &self,
        a: &RatMatrix,
    ) -> Result<CompatibleComplexStructure, TorusError> {
        let n = self.n;
        if a.rows() != n || a.cols() != n {
            return Err(TorusError::DimensionMismatch(a.rows(), n));
        }
        let a_inv = a.inverse().ok_or(TorusError::SingularParameter)?;
        let p = adapted_basis(&self.s)?;
        let dec = self.decomposition();
        let eigenbasis = p.to_rat().mul(&eigen_splitting(dec).to_rat())?;

        let k = 2 * n;
        let mut j_eigen = RatMatrix::zeros(k, k);
        for i in 0..n {
            for j in 0..n {
                j_eigen.set(i, n + j, a.get(i, j).clone());
                j_eigen.set(n + i, j, -a_inv.get(i, j).clone());
            }
        }
        let q_inv = eigenbasis
            .inverse()
            .ok_or_else(|| LinalgError::Internal("eigenbasis is singular".into()))?;
        let j_lattice = eigenbasis.mul(&j_eigen)?.mul(&q_inv)?;
        Ok(CompatibleComplexStructure {
            a: a.clone(),
            adapted_basis: p,
            eigenbasis,
            j_eigen,
            j_lattice,
        })
    }

    /// Conjugate the structure by a unimodular `P`: `s -> P s P^-1`,
    /// `b -> P b`. An admissible move: the class invariant is unchanged.
    pub fn conjugated(&self, p: &IntMatrix) -> Result<Self, TorusError> {
        if !p.is_unimodular() {
            return Err(TorusError::NotUnimodular);
        }
        let p_inv = p.inverse_unimodular()?;
        let s = p.mul(&self.s)?.mul(&p_inv)?;
        let b = p.mul_rat_vec(&self.b)?;
        RealTorusStructure::new(self.n, s, b)
    }

    /// Change the lift by a lattice vector: `b -> b + lambda`.
    pub fn shifted(&self, lambda: &[BigInt]) -> Result<Self, TorusError> {
        if lambda.len() != 2 * self.n {
            return Err(TorusError::BadTranslationSize { expected: 2 * self.n, got: lambda.len() });
        }
        let shift = RatVector::new(lambda.iter().map(|x| BigRational::from(x.clone())).collect());
        RealTorusStructure::new(self.n, self.s.clone(), self.b.add(&shift)?)
    }

    /// Move the origin by `c`: `b -> b + s c - c`.
    pub fn origin_moved(&self, c: &RatVector) -> Result<Self, TorusError> {
        if c.dim() != 2 * self.n {
            return Err(TorusError::BadTranslationSize { expected: 2 * self.n, got: c.dim() });
        }
        let b = self.b.add(&self.s.mul_rat_vec(c)?)?.sub(c)?;
        RealTorusStructure::new(self.n, self.s.clone(), b)
    }
}

impl<'de> Deserialize<'de> for RealTorusStructure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            s: IntMatrix,
            b: RatVector,
        }
        let raw = Raw::deserialize(deserializer)?;
        RealTorusStructure::new(raw.n, raw.s, raw.b).map_err(serde::de::Error::custom)
    }
}

/// Integer change of basis from the canonical block coordinates to a
/// rational eigenbasis: the first n columns span the `+1` eigenspace
/// (`u_i + v_i` per swap pair, then the `+1` block), the last n the `-1`
/// eigenspace (`u_i - v_i`, then the `-1` block).
fn eigen_splitting(dec: Z2Decomposition) -> IntMatrix {
    let r = dec.regular;
    let n = r + dec.plus_free; // = r + minus_free for balanced structures
    let k = dec.lattice_rank();
    let mut t = IntMatrix::zeros(k, k);
    for i in 0..r {
        // +1 eigenvector from pair i
        t.set(2 * i, i, BigInt::one());
        t.set(2 * i + 1, i, BigInt::one());
        // -1 eigenvector from pair i
        t.set(2 * i, n + i, BigInt::one());
        t.set(2 * i + 1, n + i, BigInt::from(-1));
    }
    for j in 0..dec.plus_free {
        t.set(2 * r + j, r + j, BigInt::one());
    }
    for j in 0..dec.minus_free {
        t.set(2 * r + dec.plus_free + j, n + r + j, BigInt::one());
    }
    t
}

/// A compatible complex structure on the torus, parametrized by `A`.
#[derive(Clone, Debug)]
pub struct CompatibleComplexStructure {
    /// The parameter matrix (invertible, rational n x n).
    pub a: RatMatrix,
    /// Unimodular change of basis putting `s` in block form.
    pub adapted_basis: IntMatrix,
    /// Rational basis of eigenvectors of `s` (+1 block first).
    pub eigenbasis: RatMatrix,
    /// `J` in the eigenbasis: `[[0, A], [-A^-1, 0]]`.
    pub j_eigen: RatMatrix,
    /// `J` in the original lattice coordinates.
    pub j_lattice: RatMatrix,
}

impl CompatibleComplexStructure {
    /// Recover the parameter from the eigenbasis form of `J` (the upper
    /// right block); inverse of the `A -> J` parametrization.
    pub fn extract_parameter(j_eigen: &RatMatrix) -> Result<RatMatrix, TorusError> {
        let k = j_eigen.rows();
        if k % 2 != 0 || j_eigen.cols() != k {
            return Err(TorusError::DimensionMismatch(j_eigen.rows(), j_eigen.cols()));
        }
        let n = k / 2;
        let mut a = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, j_eigen.get(i, n + j).clone());
            }
        }
        Ok(a)
    }
}

/// Whether `[[a, b], [-b, -a]]` squares to `-I`, i.e. whether `(a, b)` lies
/// on the moduli hyperbola `b^2 - a^2 = 1` of complex structures compatible
/// with the swap involution.
pub fn moduli_hyperbola_check(a: &BigRational, b: &BigRational) -> bool {
    b * b - a * a == BigRational::one()
}
