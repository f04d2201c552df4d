//! Smith normal form and everything it buys: ranks, kernels, torsion
//! orders, and congruence solving on tori.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatVector};
use super::LinalgError;

/// Smith normal form `U * M * V = D` with `U`, `V` unimodular and `D`
/// (rectangular-)diagonal, entries nonnegative and ordered by divisibility
/// `d_1 | d_2 | ...`. The canonical choice here: pivots are picked by
/// smallest absolute value (ties broken row-major), diagonal entries are
/// normalized to be nonnegative, so the output is deterministic.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries = rank over Q.
    pub fn rank(&self) -> usize {
        self.divisors().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_abs_pivot(&a, t) else {
                break; // remaining submatrix is zero
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // clear the pivot column and row by Euclidean steps
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the submatrix for the chain
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j) % a.get(t, t)).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    debug_assert!(u.mul(m).unwrap().mul(&v).unwrap() == a);
    SnfResult { u, d: a, v }
}

fn min_abs_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            match &best {
                Some((b, _, _)) if *b <= ax => {}
                _ => best = Some((ax, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Rank over Q (count of nonzero elementary divisors).
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Rank of `M` over the field with two elements.
pub fn rank_mod2(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut bits: Vec<Vec<bool>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).is_odd()).collect())
        .collect();
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| bits[i][col]) else {
            continue;
        };
        bits.swap(r, pivot);
        for i in 0..rows {
            if i != r && bits[i][col] {
                let (head, tail) = if i < r {
                    let (a, b) = bits.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = bits.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for j in 0..cols {
                    head[j] ^= tail[j];
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Order of the torsion subgroup of `Z^k / M Z^k`: the product of the
/// nonzero elementary divisors (zero divisors contribute free rank).
pub fn torsion_order(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let snf = smith_normal_form(m);
    Ok(snf
        .divisors()
        .iter()
        .filter(|d| !d.is_zero())
        .product())
}

/// Basis of the kernel lattice `ker(M) ∩ Z^cols` together with the ambient
/// data needed to take coordinates with respect to it. The basis columns
/// extend to a basis of `Z^cols`, so the kernel lattice is saturated.
pub(crate) struct KernelData {
    /// Basis vectors of the kernel lattice (possibly empty).
    pub basis: Vec<Vec<BigInt>>,
    /// Full unimodular matrix whose trailing columns are the kernel basis.
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Rank of `M`; kernel basis = columns `rank..cols` of `v`.
    pub rank: usize,
}

impl KernelData {
    /// Coordinates of `w` in the kernel basis; `None` if `w` is not in the
    /// rational span of the kernel.
    pub fn coords(&self, w: &[BigInt]) -> Option<Vec<BigInt>> {
        let full = self.v_inv.mul_vec(w).ok()?;
        if full[..self.rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(full[self.rank..].to_vec())
    }
}

pub(crate) fn kernel_data(m: &IntMatrix) -> KernelData {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    let v_inv = snf
        .v
        .inverse_unimodular()
        .expect("SNF transform is unimodular");
    KernelData { basis, v: snf.v, v_inv, rank }
}

/// Basis of the saturated kernel lattice `ker(M) ∩ Z^cols`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_data(m).basis
}

/// Solve the congruence `A·x ≡ b (mod Z^rows)`: find a rational `x` with
/// `A·x - b` integral, coordinates reduced into `[0, 1)`, or `None` if no
/// rational solution exists.
pub fn solve_congruence(a: &IntMatrix, b: &RatVector) -> Result<Option<RatVector>, LinalgError> {
    if b.dim() != a.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "congruence: matrix has {} rows, vector has dimension {}",
            a.rows(),
            b.dim()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_rat_vec(b)?;
    let min = a.rows().min(a.cols());
    // rows with zero divisor (or beyond the diagonal) force integrality
    for i in 0..a.rows() {
        let zero_divisor = i >= min || snf.d.get(i, i).is_zero();
        if zero_divisor && !c.get(i).denom().is_one() {
            return Ok(None);
        }
    }
    let mut y = vec![BigRational::zero(); a.cols()];
    for i in 0..min {
        let d = snf.d.get(i, i);
        if !d.is_zero() {
            y[i] = c.get(i) / BigRational::from(d.clone());
        }
    }
    let x = snf.v.mul_rat_vec(&RatVector::new(y))?.reduced_mod_one();
    debug_assert!(a.mul_rat_vec(&x)?.sub(b)?.iter().all(|e| e.denom().is_one()));
    Ok(Some(x))
}
