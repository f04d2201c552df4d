//! Numeric invariants of torus-bundle 3-folds over a curve.
//!
//! The input is a genus-g base curve together with a rank-2 holomorphic
//! bundle `W` carrying four everywhere R-independent holomorphic sections;
//! the quotient of `W` by the fibrewise `Z^4` they span is a compact
//! 3-fold fibered in 2-tori over the curve. The split case `W = L + L`
//! with `H^0(L)` base-point free is the workhorse family. Everything
//! computed here is elementary exact arithmetic:
//!
//! * Kähler  <=>  `W` trivial (then the 3-fold is a product);
//! * `deg K_X = (2g - 2) - deg W`, trivial canonical iff `deg W = 2g - 2`
//!   (for `W = L + L` with `L` a theta-characteristic);
//! * `h^0(Omega^1) = g`, jumping to `g + 2` in the trivial case;
//! * `h^1(O_X) = g + h^0(V^dual)` with `V^dual = L + L` in the split case;
//! * two deformation-dimension counts for `d >= g`: the cohomological
//!   `3g - 3 + 4 h^0(L^2) = 8d + 1 - g`, and the closed form `4d + 1 - g`
//!   as printed in the source derivation. The two disagree; both are
//!   reported, and both grow without bound in `d`, which is the point.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BcError {
    #[error("genus must be >= 0, got {0}")]
    NegativeGenus(i64),
    #[error("a theta-characteristic has degree g - 1 = {expected}, got {got}")]
    BadThetaDegree { expected: i64, got: i64 },
    #[error("a trivial rank-2 bundle has degree 0, got {0}")]
    BadTrivialDegree(i64),
    #[error("deformation table needs d >= g = {g}, got d = {d}")]
    RangeBelowGenus { g: i64, d: i64 },
    #[error("empty degree range")]
    EmptyRange,
}

/// The bundle datum: either the split family `W = L + L` (given by the
/// degree `d` of `L`) or a general rank-2 bundle known only by degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BundleSpec {
    SplitLl {
        /// degree of `L`
        d: i64,
        /// `L` is a theta-characteristic (`L^2 = K_C`, so `d = g - 1`)
        theta: bool,
        /// `H^0(L)` has no base points (the section hypothesis)
        base_point_free: bool,
    },
    General {
        deg_w: i64,
        trivial: bool,
    },
}

/// Input datum: base-curve genus and bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BcData {
    pub genus: i64,
    pub bundle: BundleSpec,
}

/// `h^1(O_X)` in the split case: the value, and whether it relied on the
/// generic count `h^0(L) = max(0, d - g + 1)` (exact only for
/// `d >= 2g - 1` or `d < 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct H1Structure {
    pub value: i64,
    pub generic_bundle_assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BcInvariants {
    pub kahler: bool,
    pub canonical_degree: i64,
    pub h0_omega1: i64,
    /// Absent for general-W input (needs the splitting).
    pub h1_o: Option<H1Structure>,
    /// `3g - 3 + 4 h^0(L^2)`; present when `d >= g` (the vanishing range).
    pub def_dim_cohomological: Option<i64>,
    /// The closed form `4d + 1 - g` carried verbatim for comparison.
    pub def_dim_as_printed: Option<i64>,
    pub trivial_canonical: bool,
    /// The Calabi configuration: split with `L` a theta-characteristic.
    pub theta_case: bool,
    /// `Some(false)` when a nonconstant section rules the ruled surface
    /// out of the developable case (split, d >= 1); `Some(true)` for the
    /// trivial bundle (constant classifying map); `None` when undecided.
    pub developable: Option<bool>,
    pub warnings: Vec<String>,
}

impl BcData {
    pub fn new(genus: i64, bundle: BundleSpec) -> Result<Self, BcError> {
        if genus < 0 {
            return Err(BcError::NegativeGenus(genus));
        }
        match bundle {
            BundleSpec::SplitLl { d, theta, .. } => {
                if theta && d != genus - 1 {
                    return Err(BcError::BadThetaDegree { expected: genus - 1, got: d });
                }
            }
            BundleSpec::General { deg_w, trivial } => {
                if trivial && deg_w != 0 {
                    return Err(BcError::BadTrivialDegree(deg_w));
                }
            }
        }
        Ok(BcData { genus, bundle })
    }

    pub fn deg_w(&self) -> i64 {
        match self.bundle {
            BundleSpec::SplitLl { d, .. } => 2 * d,
            BundleSpec::General { deg_w, .. } => deg_w,
        }
    }

    pub fn is_trivial_bundle(&self) -> bool {
        match self.bundle {
            // degree 0 with base-point-free sections forces L = O
            BundleSpec::SplitLl { d, base_point_free, .. } => d == 0 && base_point_free,
            BundleSpec::General { trivial, .. } => trivial,
        }
    }
}

/// All numeric invariants computable from the datum.
pub fn invariants(data: &BcData) -> BcInvariants {
    let g = data.genus;
    let trivial = data.is_trivial_bundle();
    let deg_w = data.deg_w();
    let mut warnings = Vec::new();

    let kahler = trivial;
    let canonical_degree = (2 * g - 2) - deg_w;
    let h0_omega1 = if trivial { g + 2 } else { g };
    let trivial_canonical = deg_w == 2 * g - 2;

    let (h1_o, def_dim_cohomological, def_dim_as_printed, theta_case, developable) =
        match data.bundle {
            BundleSpec::SplitLl { d, theta, base_point_free } => {
                if !base_point_free {
                    warnings.push(
                        "section hypothesis not asserted: H^0(L) may have base points".into(),
                    );
                }
                if d < 0 {
                    warnings.push("deg L < 0: no holomorphic sections, the bundle \
                                   construction has no section basis"
                        .into());
                }
                // V^dual = L + L, so h^1(O) = g + 2 h^0(L)
                let (h0_l, generic) = if d < 0 {
                    (0, false)
                } else if d >= 2 * g - 1 {
                    (d - g + 1, false)
                } else {
                    ((d - g + 1).max(0), true)
                };
                if generic {
                    warnings.push(format!(
                        "h^0(L) = {h0_l} assumes a generic bundle (0 <= d <= 2g - 2)"
                    ));
                }
                let h1 = Some(H1Structure { value: g + 2 * h0_l, generic_bundle_assumed: generic });
                let (coh, printed) = if d >= g {
                    // h^0(L^2) = 2d - g + 1 exactly since deg L^2 > 2g - 2
                    let h0_l2 = 2 * d - g + 1;
                    (Some(3 * g - 3 + 4 * h0_l2), Some(4 * d + 1 - g))
                } else {
                    (None, None)
                };
                if coh.is_some() && coh != printed {
                    warnings.push(format!(
                        "deformation-dimension readings disagree: cohomological \
                         3g-3+4h^0(L^2) = {} vs printed closed form 4d+1-g = {}",
                        coh.unwrap(),
                        printed.unwrap()
                    ));
                }
                let dev = if d >= 1 {
                    // nonconstant section: the Wronskian of the section
                    // basis is not identically zero
                    Some(false)
                } else if trivial {
                    Some(true)
                } else {
                    None
                };
                (h1, coh, printed, theta, dev)
            }
            BundleSpec::General { .. } => {
                let dev = if trivial { Some(true) } else { None };
                (None, None, None, false, dev)
            }
        };

    BcInvariants {
        kahler,
        canonical_degree,
        h0_omega1,
        h1_o,
        def_dim_cohomological,
        def_dim_as_printed,
        trivial_canonical,
        theta_case,
        developable,
        warnings,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: i64,
    pub def_dim_cohomological: i64,
    pub def_dim_as_printed: i64,
}

/// Deformation dimensions of the split family over `d` in
/// `d_min..=d_max`; requires the whole range to sit in `d >= g`. Both
/// columns are strictly increasing — the dimensions are unbounded in `d`.
pub fn unboundedness_table(g: i64, d_min: i64, d_max: i64) -> Result<Vec<TableRow>, BcError> {
    if g < 0 {
        return Err(BcError::NegativeGenus(g));
    }
    if d_min > d_max {
        return Err(BcError::EmptyRange);
    }
    if d_min < g {
        return Err(BcError::RangeBelowGenus { g, d: d_min });
    }
    Ok((d_min..=d_max)
        .map(|d| TableRow {
            d,
            def_dim_cohomological: 8 * d + 1 - g,
            def_dim_as_printed: 4 * d + 1 - g,
        })
        .collect())
}
