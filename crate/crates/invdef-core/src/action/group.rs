//! Linear actions of `F x T x G°` on the first `n` variables of a polynomial
//! ring; any further variables (deformation parameters) are fixed.

use super::ActionError;
use crate::algebra::linalg::QMatrix;
use crate::algebra::rational::{self, Rational};
use crate::algebra::{Monomial, Polynomial};
use std::collections::HashMap;

/// Sparse columns: `col[j]` lists `(i, M_ij)` with `M_ij != 0`.
type Columns = Vec<Vec<(usize, Rational)>>;

fn columns(m: &QMatrix) -> Columns {
    (0..m.cols)
        .map(|j| {
            (0..m.rows)
                .filter(|&i| !rational::is_zero(m.get(i, j)))
                .map(|i| (i, m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct GroupAction {
    nvars: usize,
    finite: Vec<QMatrix>,
    finite_cols: Vec<Columns>,
    torus: Vec<Vec<i64>>,
    lie: Vec<(QMatrix, QMatrix)>,
    lie_cols: Vec<(Columns, Columns)>,
}

impl GroupAction {
    /// Validates the data: the finite part must be a group containing the
    /// identity, derivations must preserve torus weights, and the Casimir
    /// `sum D_i D'_i` must commute with every `D_i` and every finite element
    /// on polynomials of degree at most two.
    pub fn new(
        nvars: usize,
        finite: Vec<QMatrix>,
        torus: Vec<Vec<i64>>,
        lie: Vec<(QMatrix, QMatrix)>,
    ) -> Result<Self, ActionError> {
        let finite = if finite.is_empty() {
            vec![QMatrix::identity(nvars)]
        } else {
            finite
        };
        for m in finite.iter().chain(lie.iter().flat_map(|(a, b)| [a, b])) {
            if m.rows != nvars || m.cols != nvars {
                return Err(ActionError::Shape(format!(
                    "expected {nvars}x{nvars} matrix, got {}x{}",
                    m.rows, m.cols
                )));
            }
        }
        for row in &torus {
            if row.len() != nvars {
                return Err(ActionError::Shape("torus weight row has wrong length".into()));
            }
        }
        let finite_cols = finite.iter().map(columns).collect();
        let lie_cols = lie.iter().map(|(a, b)| (columns(a), columns(b))).collect();
        let action = GroupAction {
            nvars,
            finite,
            finite_cols,
            torus,
            lie,
            lie_cols,
        };
        action.validate()?;
        Ok(action)
    }

    /// Trivial action on `nvars` variables.
    pub fn trivial(nvars: usize) -> Self {
        Self::new(nvars, Vec::new(), Vec::new(), Vec::new()).unwrap()
    }

    /// Closes a set of generators under multiplication, up to `cap` elements.
    pub fn close_finite(gens: &[QMatrix], nvars: usize, cap: usize) -> Result<Vec<QMatrix>, ActionError> {
        let mut all = vec![QMatrix::identity(nvars)];
        let mut i = 0;
        while i < all.len() {
            for g in gens {
                let h = all[i].mul(g);
                if !all.contains(&h) {
                    if all.len() >= cap {
                        return Err(ActionError::TooLarge(cap));
                    }
                    all.push(h);
                }
            }
            i += 1;
        }
        Ok(all)
    }

    fn validate(&self) -> Result<(), ActionError> {
        let n = self.nvars;
        if !self.finite.contains(&QMatrix::identity(n)) {
            return Err(ActionError::NotAGroup("finite part lacks the identity".into()));
        }
        for a in &self.finite {
            for b in &self.finite {
                if !self.finite.contains(&a.mul(b)) {
                    return Err(ActionError::NotAGroup("finite part is not closed".into()));
                }
            }
        }
        for cols in self.lie_cols.iter().flat_map(|(a, b)| [a, b]).chain(&self.finite_cols) {
            for (j, col) in cols.iter().enumerate() {
                for &(i, _) in col {
                    if self.torus.iter().any(|w| w[i] != w[j]) {
                        return Err(ActionError::TorusMismatch);
                    }
                }
            }
        }
        if self.lie.is_empty() {
            return Ok(());
        }
        let mut probes = Vec::new();
        for d in 1..=2 {
            for m in Monomial::all_of_degree(n, d) {
                probes.push(Polynomial::term(m, rational::one()));
            }
        }
        for p in &probes {
            let cp = self.casimir(p);
            for k in 0..self.lie.len() {
                if self.derive(k, false, &cp) != self.casimir(&self.derive(k, false, p)) {
                    return Err(ActionError::NotCentral(k));
                }
            }
            for g in 0..self.finite.len() {
                if self.substitute(g, &cp) != self.casimir(&self.substitute(g, p)) {
                    return Err(ActionError::NotCentral(self.lie.len() + g));
                }
            }
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn finite(&self) -> &[QMatrix] {
        &self.finite
    }

    pub fn torus(&self) -> &[Vec<i64>] {
        &self.torus
    }

    pub fn lie(&self) -> &[(QMatrix, QMatrix)] {
        &self.lie
    }

    pub fn is_trivial(&self) -> bool {
        self.finite.len() == 1 && self.torus.is_empty() && self.lie.is_empty()
    }

    /// Torus weights of a monomial, one per torus row.
    pub fn torus_weight(&self, m: &Monomial) -> Vec<i64> {
        self.torus
            .iter()
            .map(|w| (0..self.nvars).map(|j| w[j] * m.exp(j) as i64).sum())
            .collect()
    }

    /// Applies the `k`-th derivation (or its dual partner) via Leibniz, with
    /// `D(x_j) = sum_i M_ij x_i`.
    pub fn derive(&self, k: usize, dual: bool, p: &Polynomial) -> Polynomial {
        let cols = if dual { &self.lie_cols[k].1 } else { &self.lie_cols[k].0 };
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            for (j, col) in cols.iter().enumerate() {
                let e = m.exp(j);
                if e == 0 || col.is_empty() {
                    continue;
                }
                let ce = c * Rational::from(e);
                let mut base = m.clone();
                base.set_exp(j, e - 1);
                for (i, mij) in col {
                    let mut t = base.clone();
                    t.set_exp(*i, t.exp(*i) + 1);
                    terms.push((t, &ce * mij));
                }
            }
        }
        Polynomial::from_terms(terms)
    }

    pub fn casimir(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for k in 0..self.lie.len() {
            acc = &acc + &self.derive(k, false, &self.derive(k, true, p));
        }
        acc
    }

    /// Applies the `g`-th finite element: `x_j -> sum_i M_ij x_i`.
    pub fn substitute(&self, g: usize, p: &Polynomial) -> Polynomial {
        let cols = &self.finite_cols[g];
        if cols.iter().all(|c| c.len() == 1) {
            // monomial matrix: each term maps to a single term
            let mut terms = Vec::with_capacity(p.len());
            for (m, c) in p.terms() {
                let mut t = m.clone();
                let mut coef = c.clone();
                for j in 0..self.nvars {
                    t.set_exp(j, 0);
                }
                for (j, col) in cols.iter().enumerate() {
                    let e = m.exp(j);
                    if e > 0 {
                        let (i, a) = &col[0];
                        t.set_exp(*i, t.exp(*i) + e);
                        for _ in 0..e {
                            coef *= a;
                        }
                    }
                }
                terms.push((t, coef));
            }
            return Polynomial::from_terms(terms);
        }
        let nv = match p.nvars() {
            Some(v) => v,
            None => return Polynomial::zero(),
        };
        let images: Vec<Polynomial> = cols
            .iter()
            .map(|col| {
                Polynomial::from_terms(
                    col.iter()
                        .map(|(i, a)| (Monomial::var(nv, *i), a.clone())),
                )
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut rest = m.clone();
            for j in 0..self.nvars {
                rest.set_exp(j, 0);
            }
            let mut t = Polynomial::term(rest, c.clone());
            for j in 0..self.nvars {
                let e = m.exp(j);
                if e > 0 {
                    let pw = powers
                        .entry((j, e))
                        .or_insert_with(|| images[j].pow(e, nv));
                    t = &t * pw;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Keeps the terms of torus weight zero.
    pub fn torus_invariant_part(&self, p: &Polynomial) -> Polynomial {
        if self.torus.is_empty() {
            return p.clone();
        }
        p.filter_terms(|m| self.torus_weight(m).iter().all(|&w| w == 0))
    }

    /// True when `p` is fixed by the whole group.
    pub fn is_invariant(&self, p: &Polynomial) -> bool {
        (0..self.finite.len()).all(|g| &self.substitute(g, p) == p)
            && &self.torus_invariant_part(p) == p
            && (0..self.lie.len()).all(|k| self.derive(k, false, p).is_zero())
    }
}
