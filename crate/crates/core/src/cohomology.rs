//! Mod-p cohomology of a finite p-group, in two independent models.
//!
//! Submodules:
//!   - `minres`: dimensions of H^i from a minimal free resolution over the
//!     group algebra, any degree (the production dimension oracle).
//!   - `bar`: explicit normalized cochains in degrees ≤ 3, with cocycle
//!     tables for every H² class (the witness-producing model).
//!   - `ring`: degree ≤ 2 products, Bockstein, restriction, and the
//!     criteria built from them.
//!
//! The two models are cross-checked against each other in degrees ≤ 3.
//! Every operation is deterministic for a fixed seed; randomized rank
//! shortcuts certify their output exactly and fall back to full
//! elimination when certification fails.

use thiserror::Error;

pub mod bar;
pub mod minres;
pub mod ring;

pub use bar::{h2_bar_basis, low_degree_dims, Cocycle2, H2Presentation, BAR3_ORDER_CAP, H2_ORDER_CAP};
pub use minres::{minres_dims, MINRES_DIM_CAP};
pub use ring::{
    abelian_shape_check, abelian_shape_of, bockstein1, bockstein_subspace, cup11,
    omega_extendible, omega_from, param2_analogue, param2_check, param2_from, powerful_cohom,
    powerful_from, restrict1, restrict2, OmegaReport, Param2Report, PowerfulCohomReport,
};

// === errors ===

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomError {
    #[error("group order {order} exceeds the cap {cap} for this operation")]
    OrderCap { order: usize, cap: usize },
    #[error("operation is defined for odd p only")]
    OddPrimeOnly,
}

// === graded dimension sequences ===

/// Cohomology dimension sequence: dims[i] = dim H^i for i = 0, 1, ….
/// If the computation hit a size cap, `truncated_at` is the first degree
/// whose dimension is missing and `dims` holds the exact prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub dims: Vec<usize>,
    pub truncated_at: Option<usize>,
}

impl GradedDims {
    #[must_use]
    pub fn complete(dims: Vec<usize>) -> Self {
        GradedDims { dims, truncated_at: None }
    }

    /// Dimension in one degree, None beyond the computed prefix.
    #[must_use]
    pub fn dim(&self, i: usize) -> Option<usize> {
        self.dims.get(i).copied()
    }
}
