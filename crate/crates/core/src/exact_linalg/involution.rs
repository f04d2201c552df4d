//! Decomposition of a lattice under an integral involution.
//!
//! An integral matrix `s` with `s*s = I` splits `Z^k` into `r` swap pairs
//! `(u, v) -> (v, u)`, a fixed block `w+ -> w+`, and an anti-fixed block
//! `w- -> -w-`. [`z2_decomposition`] computes the three counts;
//! [`adapted_basis`] returns a unimodular change of basis `P` with
//! `P^-1 s P` in the canonical block form (swap pairs first, then the `+1`
//! block, then the `-1` block).
//!
//! The construction goes through the saturated eigenlattices
//! `L+ = ker(s - I)`, `L- = ker(s + I)` and the index-2^a inclusions
//! `(I + s)Z^k ⊆ L+`, `(I - s)Z^k ⊆ L-`; the pair lifts are corrected
//! modulo 2 so that the assembled basis is unimodular. The result is not
//! trusted: the block form and unimodularity are verified before returning.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{kernel_data, rank_mod2, smith_normal_form, KernelData};
use super::LinalgError;

/// Counts of indecomposable summands of the lattice under the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Decomposition {
    /// Number of regular (swap-pair) summands.
    pub regular: usize,
    /// Number of trivial summands (`s` acts as `+1`).
    pub plus_free: usize,
    /// Number of sign summands (`s` acts as `-1`).
    pub minus_free: usize,
}

impl Z2Decomposition {
    pub fn lattice_rank(&self) -> usize {
        2 * self.regular + self.plus_free + self.minus_free
    }
}

pub fn is_involution(s: &IntMatrix) -> bool {
    s.is_square() && s.mul(s).map(|m| m.is_identity()).unwrap_or(false)
}

pub fn z2_decomposition(s: &IntMatrix) -> Result<Z2Decomposition, LinalgError> {
    if !is_involution(s) {
        return Err(LinalgError::NotInvolution);
    }
    let k = s.rows();
    let s_minus = s.minus_identity()?;
    let s_plus = s.plus_identity()?;
    let r = rank_mod2(&s_minus);
    let plus_dim = k - super::snf::rank(&s_minus); // dim ker(s - I) over Q
    let minus_dim = k - super::snf::rank(&s_plus); // dim ker(s + I) over Q
    if plus_dim < r || minus_dim < r || plus_dim + minus_dim != k {
        return Err(LinalgError::Internal(
            "eigenspace dimensions inconsistent with mod-2 rank".into(),
        ));
    }
    Ok(Z2Decomposition {
        regular: r,
        plus_free: plus_dim - r,
        minus_free: minus_dim - r,
    })
}

/// The canonical block involution: `regular` adjacent swap pairs, then a
/// `+1` diagonal block, then a `-1` diagonal block.
pub fn canonical_involution(dec: Z2Decomposition) -> IntMatrix {
    let k = dec.lattice_rank();
    assert!(k > 0, "canonical involution needs positive rank");
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..dec.regular {
        m.set(2 * i, 2 * i + 1, BigInt::one());
        m.set(2 * i + 1, 2 * i, BigInt::one());
    }
    let base = 2 * dec.regular;
    for i in 0..dec.plus_free {
        m.set(base + i, base + i, BigInt::one());
    }
    let base = base + dec.plus_free;
    for i in 0..dec.minus_free {
        m.set(base + i, base + i, BigInt::from(-1));
    }
    m
}

/// Adapted basis of the eigenlattice `lat` (the kernel of `s -/+ I`): a
/// basis `f_1..f_n` such that `f_1..f_j, 2 f_{j+1}..2 f_n` is a basis of the
/// image lattice `img * Z^k`, where `j` is the number of divisor-1 factors.
/// Returns the basis vectors and `j`.
fn snf_adapted_eigenbasis(
    lat: &KernelData,
    img: &IntMatrix,
) -> Result<(Vec<Vec<BigInt>>, usize), LinalgError> {
    let n = lat.basis.len();
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    let k = img.rows();
    let mut x = IntMatrix::zeros(n, k);
    for j in 0..k {
        let col = img.column(j);
        let coords = lat.coords(&col).ok_or_else(|| {
            LinalgError::Internal("image column not inside eigenlattice".into())
        })?;
        for i in 0..n {
            x.set(i, j, coords[i].clone());
        }
    }
    let snf = smith_normal_form(&x);
    let divs = snf.divisors();
    let ones = divs.iter().take_while(|d| d.is_one()).count();
    for d in &divs[ones..] {
        if *d != BigInt::from(2) {
            return Err(LinalgError::Internal(format!(
                "eigenlattice quotient has invariant factor {d}, expected 1 or 2"
            )));
        }
    }
    let u_inv = snf.u.inverse_unimodular()?;
    let mut basis = Vec::with_capacity(n);
    for i in 0..n {
        let mut vec = vec![BigInt::zero(); k];
        for (l, b) in lat.basis.iter().enumerate() {
            let c = u_inv.get(l, i);
            if c.is_zero() {
                continue;
            }
            for (t, bt) in b.iter().enumerate() {
                vec[t] += c * bt;
            }
        }
        basis.push(vec);
    }
    Ok((basis, ones))
}

/// Solve `A x = w` exactly over the integers; `None` if no integral solution.
fn solve_integral(snf: &super::snf::SnfResult, a: &IntMatrix, w: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = snf.u.mul_vec(w).ok()?;
    let min = a.rows().min(a.cols());
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, yi) in y.iter().enumerate() {
        let d = if i < min { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !yi.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = yi.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    snf.v.mul_vec(&z).ok()
}

/// Unimodular `P` with `P^-1 s P` equal to [`canonical_involution`] of the
/// decomposition of `s`. Rejects non-involutions; the postcondition is
/// checked before returning.
pub fn adapted_basis(s: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let dec = z2_decomposition(s)?;
    let (r, plus, minus) = (dec.regular, dec.plus_free, dec.minus_free);
    let k = s.rows();
    let s_minus = s.minus_identity()?;
    let s_plus = s.plus_identity()?;
    let lat_plus = kernel_data(&s_minus);
    let lat_minus = kernel_data(&s_plus);

    let (f, ones_plus) = snf_adapted_eigenbasis(&lat_plus, &s_plus)?;
    let (g, ones_minus) = snf_adapted_eigenbasis(&lat_minus, &s_minus)?;
    if ones_plus != r || ones_minus != r {
        return Err(LinalgError::Internal(format!(
            "pair count mismatch: mod-2 rank {r}, divisor-1 counts {ones_plus}/{ones_minus}"
        )));
    }

    // lift each divisor-1 generator f_i to x_i with (s + I) x_i = f_i
    let snf_plus = smith_normal_form(&s_plus);
    let mut xs: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    for fi in f.iter().take(r) {
        let x = solve_integral(&snf_plus, &s_plus, fi).ok_or_else(|| {
            LinalgError::Internal("divisor-1 generator not in (I+s)-image".into())
        })?;
        xs.push(x);
    }

    // correct the lifts so that the traces (I - s) x_i together with the
    // minus block complete to a basis of the minus eigenlattice
    if r > 0 {
        let mut a = IntMatrix::zeros(r, r);
        for (i, x) in xs.iter().enumerate() {
            let sx = s.mul_vec(x)?;
            let mu: Vec<BigInt> = x.iter().zip(&sx).map(|(a, b)| a - b).collect();
            let coords = lat_minus
                .coords(&mu)
                .ok_or_else(|| LinalgError::Internal("trace not inside minus eigenlattice".into()))?;
            let g_snf_u = g_coords(&g, &lat_minus, &coords)?;
            for j in 0..r {
                a.set(i, j, g_snf_u[j].clone());
            }
            for (j, c) in g_snf_u.iter().enumerate().skip(r) {
                if c.is_odd() {
                    return Err(LinalgError::Internal(format!(
                        "trace has odd coefficient {c} on minus block {j}"
                    )));
                }
            }
        }
        // unimodular W congruent to A mod 2
        let snf_a = smith_normal_form(&a);
        for d in snf_a.divisors() {
            if d.is_even() {
                return Err(LinalgError::Internal(
                    "pair-trace matrix is singular mod 2".into(),
                ));
            }
        }
        let w = snf_a
            .u
            .inverse_unimodular()?
            .mul(&snf_a.v.inverse_unimodular()?)?;
        for i in 0..r {
            for j in 0..r {
                let diff = w.get(i, j) - a.get(i, j);
                let (e, rem) = diff.div_rem(&BigInt::from(2));
                if !rem.is_zero() {
                    return Err(LinalgError::Internal("mod-2 correction is not even".into()));
                }
                if e.is_zero() {
                    continue;
                }
                for t in 0..k {
                    xs[i][t] = &xs[i][t] + &e * &g[j][t];
                }
            }
        }
    }

    // assemble P: pairs (x_i, s x_i), then the free plus block, then minus
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for x in &xs {
        columns.push(x.clone());
        columns.push(s.mul_vec(x)?);
    }
    columns.extend(f.iter().skip(r).cloned());
    columns.extend(g.iter().skip(r).cloned());
    if columns.len() != k {
        return Err(LinalgError::Internal(format!(
            "assembled {} basis vectors for rank {k}",
            columns.len()
        )));
    }
    let p = IntMatrix::from_columns(k, &columns)?;
    if !p.det()?.abs().is_one() {
        return Err(LinalgError::Internal("adapted basis is not unimodular".into()));
    }
    let p_inv = p.inverse_unimodular()?;
    let block = p_inv.mul(s)?.mul(&p)?;
    if block != canonical_involution(Z2Decomposition { regular: r, plus_free: plus, minus_free: minus }) {
        return Err(LinalgError::Internal("adapted basis does not block-diagonalize".into()));
    }
    Ok(p)
}

/// Coordinates of a vector (given in `lat.basis` coordinates) with respect
/// to the alternative basis `g` of the same lattice.
fn g_coords(
    g: &[Vec<BigInt>],
    lat: &KernelData,
    coords_in_lat: &[BigInt],
) -> Result<Vec<BigInt>, LinalgError> {
    let n = g.len();
    // change-of-basis matrix: columns = lat-coordinates of each g_j
    let mut c = IntMatrix::zeros(n, n);
    for (j, gj) in g.iter().enumerate() {
        let gc = lat
            .coords(gj)
            .ok_or_else(|| LinalgError::Internal("basis vector outside lattice".into()))?;
        for i in 0..n {
            c.set(i, j, gc[i].clone());
        }
    }
    let c_inv = c.inverse_unimodular()?;
    c_inv.mul_vec(coords_in_lat)
}
