//! Covariants `Hom^G(N1, P/I)` and the tangent space, the kernel of
//! composition with `B0`.

use super::presentation::Presentation;
use super::{DeformError, Problem};
use crate::action::Twist;
use crate::algebra::linalg::{Echelon, Insert, QMatrix, SparseVec};
use crate::algebra::rational::{self, Rational};
use crate::algebra::{Monomial, PolyMatrix, Polynomial};
use std::collections::BTreeMap;

/// An equivariant row `s` (`1 x n1`) with `s_l` of weight `wt(f_l) - shift`.
#[derive(Clone, Debug)]
pub struct Covariant {
    pub row: PolyMatrix,
    pub shift: i64,
}

#[derive(Clone, Debug)]
pub struct Tangent {
    pub rows: Vec<PolyMatrix>,
    /// `G_m`-weights of the dual coordinates `t_i`.
    pub weights: Vec<i64>,
}

impl Tangent {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Keeps only the directions of positive weight.
    pub fn positive_part(&self) -> Tangent {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.weights[i] > 0).collect();
        Tangent {
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
        }
    }
}

fn nf_row(pres: &Presentation, row: &PolyMatrix) -> PolyMatrix {
    row.map(|p| pres.ideal_gb.normal_form(p))
}

fn row_sparse(row: &PolyMatrix) -> SparseVec<(usize, Monomial)> {
    let mut v = SparseVec::new();
    for j in 0..row.cols {
        for (m, c) in row.get(0, j).terms() {
            v.insert((j, m.clone()), c.clone());
        }
    }
    v
}

/// Finds `D` equivariant rows independent modulo `I`, trying `R(p E_l)` for
/// standard monomials `p` by increasing weight.
pub fn covariant_basis(problem: &Problem, pres: &Presentation) -> Result<Vec<Covariant>, DeformError> {
    let needed = problem.covariant_count();
    let mut out = Vec::new();
    if needed == 0 {
        return Ok(out);
    }
    let action = &problem.action;
    let w = &problem.gm_weights;
    let n1 = pres.n1();
    let twist = Twist::new(action, None, Some(&pres.rho1));
    let mut ech: Echelon<(usize, Monomial)> = Echelon::new(false);
    let cap = problem.options.max_covariant_degree;
    for m in 0..=cap {
        for p in pres.ideal_gb.standard_monomials_of_weight(w, m) {
            let tw = action.torus_weight(&p);
            for l in 0..n1 {
                if tw != pres.rho1.torus[l] {
                    continue;
                }
                let mut c = PolyMatrix::zeros(1, n1);
                c.set(0, l, Polynomial::term(p.clone(), rational::one()));
                let r = twist.reynolds(&c, problem.options.krylov_cap)?;
                if r.is_zero() {
                    continue;
                }
                let reduced = nf_row(pres, &r);
                if let Insert::Independent(_) = ech.insert(row_sparse(&reduced)) {
                    out.push(Covariant {
                        row: r,
                        shift: pres.f_weights[l] - m,
                    });
                    if out.len() == needed {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Err(DeformError::CovariantCap {
        cap,
        found: out.len(),
        needed,
    })
}

/// Kernel of `s -> s B0 mod I` on the covariants, block by weight; rows are
/// scaled to integer coefficients with content one.
pub fn tangent_space(pres: &Presentation, covariants: &[Covariant]) -> Tangent {
    let mut blocks: BTreeMap<i64, Vec<&Covariant>> = BTreeMap::new();
    for c in covariants {
        blocks.entry(c.shift).or_default().push(c);
    }
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for (shift, covs) in blocks {
        let images: Vec<SparseVec<(usize, Monomial)>> = covs
            .iter()
            .map(|c| row_sparse(&nf_row(pres, &c.row.mul(&pres.b0))))
            .collect();
        let mut keys: Vec<(usize, Monomial)> = images.iter().flat_map(|v| v.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let index: BTreeMap<&(usize, Monomial), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = QMatrix::zeros(keys.len(), covs.len());
        for (j, v) in images.iter().enumerate() {
            for (k, a) in v {
                m.set(index[k], j, a.clone());
            }
        }
        for kv in m.kernel() {
            let mut s = PolyMatrix::zeros(1, pres.n1());
            for (a, c) in kv.iter().zip(&covs) {
                if !rational::is_zero(a) {
                    s = s.add(&c.row.scale(a));
                }
            }
            rows.push(primitive_row(&s));
            weights.push(shift);
        }
    }
    Tangent { rows, weights }
}

/// Scales a matrix to integer coefficients with content one and a positive
/// first coefficient.
pub fn primitive_row(s: &PolyMatrix) -> PolyMatrix {
    let scale = rational::primitive_scale(s.data.iter().flat_map(|p| p.terms().iter().map(|(_, c)| c)));
    let first: Option<&Rational> = s.data.iter().find(|p| !p.is_zero()).map(|p| &p.terms()[0].1);
    let sign = match first {
        Some(c) if rational::is_negative(c) => rational::int(-1),
        _ => rational::one(),
    };
    s.scale(&(&scale * &sign))
}
