//! Group actions on polynomial rings and free modules, representation
//! matrices and Reynolds projections.

pub mod group;
pub mod twist;

pub use group::GroupAction;
pub use twist::{g_closure, rep_on_subspace, Rep, Twist};

use crate::algebra::{PolyMatrix, Polynomial};
use thiserror::Error;

/// Default cap on Krylov and closure dimensions.
pub const DEFAULT_CAP: usize = 64;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("finite part is not a group: {0}")]
    NotAGroup(String),
    #[error("derivations or finite elements do not preserve torus weights")]
    TorusMismatch,
    #[error("Casimir does not commute with operator {0}")]
    NotCentral(usize),
    #[error("Casimir is not semisimple on the Krylov space")]
    NotSemisimple,
    #[error("dimension cap {0} exceeded")]
    TooLarge(usize),
    #[error("span is not stable under the group")]
    NotStable(PolyMatrix),
    #[error("basis vector is not a torus weight vector")]
    NotHomogeneous,
    #[error("basis is linearly dependent")]
    Dependent,
}

/// Invariant part of a polynomial.
pub fn reynolds(f: &Polynomial, action: &GroupAction) -> Result<Polynomial, ActionError> {
    let c = PolyMatrix::row(vec![f.clone()]);
    let r = Twist::new(action, None, None).reynolds(&c, DEFAULT_CAP)?;
    Ok(r.get(0, 0).clone())
}

#[cfg(test)]
pub(crate) fn so3_pairs() -> Vec<(crate::algebra::QMatrix, crate::algebra::QMatrix)> {
    use crate::algebra::rational::int;
    use crate::algebra::QMatrix;
    // rotation generators; each is its own dual up to the common scalar
    let mut out = Vec::new();
    for (a, b) in [(1, 2), (2, 0), (0, 1)] {
        let mut m = QMatrix::zeros(3, 3);
        m.set(b, a, int(1));
        m.set(a, b, int(-1));
        out.push((m.clone(), m));
    }
    out
}
