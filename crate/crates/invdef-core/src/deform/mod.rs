//! Equivariant presentation, tangent space and the obstruction iteration
//! producing the universal deformation `(S, K, U, V)`.

pub mod iterate;
pub mod presentation;
pub mod tangent;
pub mod verify;

pub use iterate::{first_order, run, DeformationState, Layout, UniversalDeformation};
pub use presentation::{build_presentation, Presentation};
pub use tangent::{covariant_basis, tangent_space, Covariant, Tangent};
pub use verify::{fiber_over_zero, verify, VerifyReport};

use crate::action::{ActionError, GroupAction};
use crate::algebra::{Polynomial, Ring};
use crate::groebner::GbError;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct Options {
    /// Truncation order; `None` means run until the stop condition, which
    /// needs every tangent weight positive.
    pub max_order: Option<usize>,
    /// Largest `G_m`-weight of the monomials tried in the covariant search.
    pub max_covariant_degree: i64,
    /// Drop tangent directions of non-positive weight.
    pub positive_weight_only: bool,
    pub krylov_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_order: None,
            max_covariant_degree: 16,
            positive_weight_only: false,
            krylov_cap: crate::action::DEFAULT_CAP,
        }
    }
}

/// Hard stop for runs without an explicit truncation order.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Input of the algorithm: a `G x G_m`-stable ideal of `k[W]`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub ring: Ring,
    pub gm_weights: Vec<i64>,
    pub action: GroupAction,
    pub ideal: Vec<Polynomial>,
    /// Pairs `(m_j, h(M_j))`.
    pub decomposition: Vec<(usize, usize)>,
    pub invariants: Vec<Polynomial>,
    pub options: Options,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DeformError {
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("group action: {0}")]
    Action(#[from] ActionError),
    #[error("Gröbner basis: {0:?}")]
    Gb(GbError),
    #[error("covariant search reached weight {cap} with rank {found} of {needed}")]
    CovariantCap { cap: i64, found: usize, needed: usize },
    #[error("tangent weight {0} is not positive; use positive-only mode or a truncation order")]
    Hypothesis(i64),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl From<GbError> for DeformError {
    fn from(e: GbError) -> Self {
        DeformError::Gb(e)
    }
}

impl Problem {
    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// `D = sum m_j h(M_j)`, the dimension of the covariant space.
    pub fn covariant_count(&self) -> usize {
        self.decomposition.iter().map(|(m, h)| m * h).sum()
    }

    /// Checks positivity of the grading, compatibility of the group with it,
    /// and homogeneity of the generators.
    pub fn validate(&self) -> Result<(), DeformError> {
        let n = self.nvars();
        if self.gm_weights.len() != n {
            return Err(DeformError::Validation("one G_m weight per variable is required".into()));
        }
        if let Some(w) = self.gm_weights.iter().find(|&&w| w < 1) {
            return Err(DeformError::Validation(format!("G_m weight {w} is not positive")));
        }
        if self.action.nvars() != n {
            return Err(DeformError::Validation("group acts on a different number of variables".into()));
        }
        let mats = self
            .action
            .finite()
            .iter()
            .chain(self.action.lie().iter().flat_map(|(a, b)| [a, b]));
        for m in mats {
            for i in 0..n {
                for j in 0..n {
                    if !crate::algebra::rational::is_zero(m.get(i, j)) && self.gm_weights[i] != self.gm_weights[j] {
                        return Err(DeformError::Validation(format!(
                            "group mixes variables {} and {} of different G_m weight",
                            self.ring.names()[i],
                            self.ring.names()[j]
                        )));
                    }
                }
            }
        }
        if self.ideal.is_empty() {
            return Err(DeformError::Validation("the ideal has no generators".into()));
        }
        for (i, f) in self.ideal.iter().enumerate() {
            if f.is_zero() {
                return Err(DeformError::Validation(format!("generator {} is zero", i + 1)));
            }
            if f.weight(&self.gm_weights).is_none() {
                return Err(DeformError::Validation(format!("generator {} is not homogeneous", i + 1)));
            }
        }
        for (i, f) in self.invariants.iter().enumerate() {
            if !self.action.is_invariant(f) {
                return Err(DeformError::Validation(format!("invariant {} is not invariant", i + 1)));
            }
        }
        Ok(())
    }
}
