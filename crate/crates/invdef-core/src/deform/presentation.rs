//! `P (x) N2 -> P (x) N1 -> P -> P/I`: generators, stable syzygies and the
//! representations on both.

use super::{DeformError, Problem};
use crate::action::{g_closure, rep_on_subspace, ActionError, Rep, Twist};
use crate::algebra::{MonomialOrder, PolyMatrix, Polynomial};
use crate::groebner::{groebner_tracked, syzygies, GroebnerBasis, ModuleBasis};

/// Cap on the dimension of the stable syzygy space.
const SYZYGY_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct Presentation {
    /// `1 x n1`, the generators in input order.
    pub a0: PolyMatrix,
    /// `n1 x n2`, columns form a basis of `N2`.
    pub b0: PolyMatrix,
    pub rho1: Rep,
    pub rho2: Rep,
    pub f_weights: Vec<i64>,
    pub r_weights: Vec<i64>,
    /// Tracked against the generators.
    pub ideal_gb: GroebnerBasis,
    /// Submodule of `P^{n2}` spanned by the rows of `B0` and `I e_j`, whose
    /// quotient is the obstruction module.
    pub module: ModuleBasis,
}

impl Presentation {
    pub fn n1(&self) -> usize {
        self.a0.cols
    }

    pub fn n2(&self) -> usize {
        self.b0.cols
    }
}

pub fn build_presentation(problem: &Problem) -> Result<Presentation, DeformError> {
    problem.validate()?;
    let nw = problem.nvars();
    let w = &problem.gm_weights;
    let action = &problem.action;
    let f = &problem.ideal;
    let n1 = f.len();
    let f_weights: Vec<i64> = f.iter().map(|p| p.weight(w).unwrap()).collect();

    let singletons: Vec<PolyMatrix> = f.iter().map(|p| PolyMatrix::row(vec![p.clone()])).collect();
    let rho1 = rep_on_subspace(&singletons, None, action).map_err(|e| match e {
        ActionError::NotStable(_) => DeformError::Validation("the generators do not span a stable space".into()),
        ActionError::Dependent => DeformError::Validation("the generators are linearly dependent".into()),
        other => DeformError::Action(other),
    })?;

    let order = MonomialOrder::GrevLex;
    let ideal_gb = groebner_tracked(f, &order, nw)?;

    let raw = syzygies(f, nw, Some(w))?;
    let seed: Vec<PolyMatrix> = raw.into_iter().map(PolyMatrix::column).collect();
    let mut cols = g_closure(&seed, Some(&rho1), action, SYZYGY_CAP)?;

    let col_weight = |c: &PolyMatrix| -> Option<i64> {
        let mut out = None;
        for i in 0..n1 {
            for (m, _) in c.get(i, 0).terms() {
                let x = m.weight(w) + f_weights[i];
                match out {
                    None => out = Some(x),
                    Some(y) if y != x => return None,
                    _ => {}
                }
            }
        }
        out
    };
    let mut weighted = Vec::with_capacity(cols.len());
    for c in cols.drain(..) {
        let wt = col_weight(&c)
            .ok_or_else(|| DeformError::Internal("syzygy is not homogeneous".into()))?;
        weighted.push((wt, c));
    }
    weighted.sort_by_key(|(wt, _)| *wt);
    let r_weights: Vec<i64> = weighted.iter().map(|(wt, _)| *wt).collect();
    let columns: Vec<PolyMatrix> = weighted.into_iter().map(|(_, c)| c).collect();
    let rho2 = rep_on_subspace(&columns, Some(&rho1), action)?;
    let col_vecs: Vec<Vec<Polynomial>> = columns.iter().map(|c| c.column_vec(0)).collect();
    let b0 = PolyMatrix::from_columns(n1, &col_vecs);
    let a0 = PolyMatrix::row(f.clone());
    if !a0.mul(&b0).is_zero() {
        return Err(DeformError::Internal("A0 B0 is not zero".into()));
    }
    if !Twist::new(action, None, Some(&rho1)).is_equivariant(&a0)
        || !Twist::new(action, Some(&rho1), Some(&rho2)).is_equivariant(&b0)
    {
        return Err(DeformError::Internal("presentation is not equivariant".into()));
    }

    let rows: Vec<Vec<Polynomial>> = (0..n1).map(|i| b0.row_vec(i)).collect();
    let module = ModuleBasis::new(&rows, Some(&ideal_gb), &order, nw, b0.cols)?;
    Ok(Presentation {
        a0,
        b0,
        rho1,
        rho2,
        f_weights,
        r_weights,
        ideal_gb,
        module,
    })
}
