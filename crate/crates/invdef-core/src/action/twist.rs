//! The group acting on matrices `C` whose rows and columns carry
//! representations, and the projections built from it.

use super::group::GroupAction;
use super::ActionError;
use crate::algebra::linalg::{Echelon, Insert, QMatrix, SparseVec};
use crate::algebra::rational::{self, Rational};
use crate::algebra::{Monomial, PolyMatrix, Polynomial};
use std::collections::BTreeMap;

/// Representation of the group on a finite-dimensional space with a fixed
/// basis, in column convention: `D(b_j) = sum_i rho(D)_ij b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    /// Matrices of each derivation and of its dual partner.
    pub lie: Vec<(QMatrix, QMatrix)>,
    pub finite: Vec<QMatrix>,
    pub finite_inv: Vec<QMatrix>,
    /// Torus weights of each basis vector.
    pub torus: Vec<Vec<i64>>,
}

impl Rep {
    pub fn trivial(action: &GroupAction, dim: usize) -> Rep {
        let id = QMatrix::identity(dim);
        let zero = QMatrix::zeros(dim, dim);
        Rep {
            lie: vec![(zero.clone(), zero); action.lie().len()],
            finite: vec![id.clone(); action.finite().len()],
            finite_inv: vec![id; action.finite().len()],
            torus: vec![vec![0; action.torus().len()]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.torus.len()
    }
}

pub(crate) type Key = (usize, usize, Monomial);

pub(crate) fn to_sparse(c: &PolyMatrix) -> SparseVec<Key> {
    let mut v = SparseVec::new();
    for i in 0..c.rows {
        for j in 0..c.cols {
            for (m, a) in c.get(i, j).terms() {
                v.insert((i, j, m.clone()), a.clone());
            }
        }
    }
    v
}

/// The action on `rows x cols` matrices `C`, read as equivariant-map
/// candidates from the right representation to `P` tensor the left one:
/// `D.C = D(C) + rho_L(D) C - C rho_R(D)` and
/// `g.C = rho_L(g) g(C) rho_R(g)^{-1}`. A missing side is trivial.
#[derive(Clone, Copy)]
pub struct Twist<'a> {
    pub action: &'a GroupAction,
    pub left: Option<&'a Rep>,
    pub right: Option<&'a Rep>,
}

impl<'a> Twist<'a> {
    pub fn new(action: &'a GroupAction, left: Option<&'a Rep>, right: Option<&'a Rep>) -> Self {
        Twist { action, left, right }
    }

    fn check_shape(&self, c: &PolyMatrix) -> Result<(), ActionError> {
        let lr = self.left.map_or(1, |r| r.dim());
        let rr = self.right.map_or(1, |r| r.dim());
        if c.rows != lr || c.cols != rr {
            return Err(ActionError::Shape(format!(
                "matrix is {}x{}, representations need {lr}x{rr}",
                c.rows, c.cols
            )));
        }
        Ok(())
    }

    pub fn lie(&self, k: usize, dual: bool, c: &PolyMatrix) -> PolyMatrix {
        let mut out = c.map(|p| self.action.derive(k, dual, p));
        if let Some(l) = self.left {
            let m = if dual { &l.lie[k].1 } else { &l.lie[k].0 };
            if !m.is_zero() {
                out = out.add(&c.left_mul_q(m));
            }
        }
        if let Some(r) = self.right {
            let m = if dual { &r.lie[k].1 } else { &r.lie[k].0 };
            if !m.is_zero() {
                out = out.sub(&c.right_mul_q(m));
            }
        }
        out
    }

    pub fn casimir(&self, c: &PolyMatrix) -> PolyMatrix {
        let mut acc = PolyMatrix::zeros(c.rows, c.cols);
        for k in 0..self.action.lie().len() {
            acc = acc.add(&self.lie(k, false, &self.lie(k, true, c)));
        }
        acc
    }

    pub fn finite(&self, g: usize, c: &PolyMatrix) -> PolyMatrix {
        let mut out = c.map(|p| self.action.substitute(g, p));
        if let Some(l) = self.left {
            out = out.left_mul_q(&l.finite[g]);
        }
        if let Some(r) = self.right {
            out = out.right_mul_q(&r.finite_inv[g]);
        }
        out
    }

    /// Torus weight of the term `m` sitting in entry `(i, j)`, relative to
    /// the weight an equivariant map needs there.
    fn torus_defect(&self, i: usize, j: usize, m: &Monomial) -> Vec<i64> {
        let mut w = self.action.torus_weight(m);
        for (t, x) in w.iter_mut().enumerate() {
            if let Some(l) = self.left {
                *x += l.torus[i][t];
            }
            if let Some(r) = self.right {
                *x -= r.torus[j][t];
            }
        }
        w
    }

    pub fn torus_project(&self, c: &PolyMatrix) -> PolyMatrix {
        if self.action.torus().is_empty() {
            return c.clone();
        }
        let mut out = PolyMatrix::zeros(c.rows, c.cols);
        for i in 0..c.rows {
            for j in 0..c.cols {
                let p = c
                    .get(i, j)
                    .filter_terms(|m| self.torus_defect(i, j, m).iter().all(|&w| w == 0));
                out.set(i, j, p);
            }
        }
        out
    }

    /// Splits `c` into torus weight components.
    pub fn torus_components(&self, c: &PolyMatrix) -> BTreeMap<Vec<i64>, PolyMatrix> {
        let mut out: BTreeMap<Vec<i64>, PolyMatrix> = BTreeMap::new();
        for i in 0..c.rows {
            for j in 0..c.cols {
                let mut parts: BTreeMap<Vec<i64>, Vec<(Monomial, Rational)>> = BTreeMap::new();
                for (m, a) in c.get(i, j).terms() {
                    parts
                        .entry(self.torus_defect(i, j, m))
                        .or_default()
                        .push((m.clone(), a.clone()));
                }
                for (w, t) in parts {
                    out.entry(w)
                        .or_insert_with(|| PolyMatrix::zeros(c.rows, c.cols))
                        .set(i, j, Polynomial::from_terms(t));
                }
            }
        }
        out
    }

    /// Projection onto the invariant part: finite average, then the torus
    /// weight-zero part, then the kernel of the Casimir. The last step finds
    /// the minimal polynomial `u^s q(u)` of the Casimir on the Krylov space of
    /// `c`; complete reducibility forces `s <= 1`, and the projection is
    /// `q(Cas) c / q(0)` (zero when `s = 0`).
    pub fn reynolds(&self, c: &PolyMatrix, cap: usize) -> Result<PolyMatrix, ActionError> {
        self.check_shape(c)?;
        let nf = self.action.finite().len();
        let mut v = if nf > 1 {
            let mut acc = c.clone();
            for g in 1..nf {
                acc = acc.add(&self.finite(g, c));
            }
            acc.scale(&rational::frac(1, nf as i64))
        } else {
            c.clone()
        };
        v = self.torus_project(&v);
        if self.action.lie().is_empty() || v.is_zero() {
            return Ok(v);
        }
        let mut ech: Echelon<Key> = Echelon::new(true);
        let mut krylov: Vec<PolyMatrix> = Vec::new();
        let mut cur = v;
        loop {
            if krylov.len() > cap {
                return Err(ActionError::TooLarge(cap));
            }
            match ech.insert(to_sparse(&cur)) {
                Insert::Independent(_) => {
                    let next = self.casimir(&cur);
                    krylov.push(cur);
                    cur = next;
                }
                Insert::Dependent(comb) => {
                    // Cas^k v = sum a_i Cas^i v, so p(u) = u^k - sum a_i u^i
                    let k = krylov.len();
                    let mut p: Vec<Rational> = vec![rational::zero(); k + 1];
                    p[k] = rational::one();
                    for (i, a) in comb {
                        p[i] = -a;
                    }
                    if !rational::is_zero(&p[0]) {
                        return Ok(PolyMatrix::zeros(c.rows, c.cols));
                    }
                    if rational::is_zero(&p[1]) {
                        return Err(ActionError::NotSemisimple);
                    }
                    let mut acc = PolyMatrix::zeros(c.rows, c.cols);
                    for (i, w) in krylov.iter().enumerate() {
                        let coef = &p[i + 1] / &p[1];
                        if !rational::is_zero(&coef) {
                            acc = acc.add(&w.scale(&coef));
                        }
                    }
                    return Ok(acc);
                }
            }
        }
    }

    pub fn is_equivariant(&self, c: &PolyMatrix) -> bool {
        if self.check_shape(c).is_err() {
            return false;
        }
        (0..self.action.lie().len()).all(|k| self.lie(k, false, c).is_zero())
            && (1..self.action.finite().len()).all(|g| &self.finite(g, c) == c)
            && &self.torus_project(c) == c
    }
}

/// Matrices of the action on the span of `basis`, whose elements are column
/// vectors in `P` tensor the `left` representation (or plain `1x1`
/// polynomials). Fails with a witness when the span is not stable.
pub fn rep_on_subspace(
    basis: &[PolyMatrix],
    left: Option<&Rep>,
    action: &GroupAction,
) -> Result<Rep, ActionError> {
    let tw = Twist::new(action, left, None);
    let mut ech: Echelon<Key> = Echelon::new(true);
    for b in basis {
        tw.check_shape(b)?;
        if let Insert::Dependent(_) = ech.insert(to_sparse(b)) {
            return Err(ActionError::Dependent);
        }
    }
    let d = basis.len();
    let express = |img: PolyMatrix| -> Result<Vec<Rational>, ActionError> {
        match ech.express(&to_sparse(&img)) {
            Some(coords) => {
                let mut col = vec![rational::zero(); d];
                for (i, a) in coords {
                    col[i] = a;
                }
                Ok(col)
            }
            None => Err(ActionError::NotStable(img)),
        }
    };
    let build = |f: &dyn Fn(&PolyMatrix) -> PolyMatrix| -> Result<QMatrix, ActionError> {
        let mut m = QMatrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            for (i, a) in express(f(b))?.into_iter().enumerate() {
                m.set(i, j, a);
            }
        }
        Ok(m)
    };
    let mut lie = Vec::new();
    for k in 0..action.lie().len() {
        let a = build(&|b| tw.lie(k, false, b))?;
        let b = build(&|b| tw.lie(k, true, b))?;
        lie.push((a, b));
    }
    let mut finite = Vec::new();
    let mut finite_inv = Vec::new();
    for g in 0..action.finite().len() {
        let m = build(&|b| tw.finite(g, b))?;
        finite_inv.push(m.inverse().ok_or(ActionError::NotAGroup("singular finite element".into()))?);
        finite.push(m);
    }
    let mut torus = Vec::new();
    for b in basis {
        let comps = tw.torus_components(b);
        if comps.len() != 1 {
            return Err(ActionError::NotHomogeneous);
        }
        torus.push(comps.into_keys().next().unwrap());
    }
    Ok(Rep {
        lie,
        finite,
        finite_inv,
        torus,
    })
}

/// Basis of the smallest stable subspace containing `seed`, made of torus
/// weight vectors. Vectors are columns in `P` tensor `left`, as in
/// [`rep_on_subspace`]; `cap` bounds the dimension.
pub fn g_closure(
    seed: &[PolyMatrix],
    left: Option<&Rep>,
    action: &GroupAction,
    cap: usize,
) -> Result<Vec<PolyMatrix>, ActionError> {
    let tw = Twist::new(action, left, None);
    let mut ech: Echelon<Key> = Echelon::new(false);
    let mut found: Vec<PolyMatrix> = Vec::new();
    let mut queue: Vec<PolyMatrix> = Vec::new();
    for s in seed {
        tw.check_shape(s)?;
        queue.push(s.clone());
    }
    while let Some(v) = queue.pop() {
        if let Insert::Independent(_) = ech.insert(to_sparse(&v)) {
            if found.len() >= cap {
                return Err(ActionError::TooLarge(cap));
            }
            for k in 0..action.lie().len() {
                queue.push(tw.lie(k, false, &v));
                queue.push(tw.lie(k, true, &v));
            }
            for g in 1..action.finite().len() {
                queue.push(tw.finite(g, &v));
            }
            found.push(v);
        }
    }
    if action.torus().is_empty() {
        return Ok(found);
    }
    let rank = found.len();
    let mut ech: Echelon<Key> = Echelon::new(false);
    let mut out = Vec::new();
    for v in &found {
        for (_, part) in tw.torus_components(v) {
            if let Insert::Independent(_) = ech.insert(to_sparse(&part)) {
                out.push(part);
            }
        }
    }
    debug_assert_eq!(out.len(), rank);
    Ok(out)
}
