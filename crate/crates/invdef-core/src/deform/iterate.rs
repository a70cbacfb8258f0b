//! The obstruction iteration. Matrices live in `P (x) S = k[W, t]` with the
//! `W`-variables first; `G` acts trivially on the `t`-variables.
//!
//! The state keeps the exact identity
//! `U_n V_n = sum_a c_a R(m_a)  mod (t)^{n+1}`,
//! where the `m_a` are the standard monomial vectors of the obstruction
//! module `P^{n2} / (rows(B0) + I P^{n2})` and `c_a` are polynomials in `t`.
//! The base ideal is generated by the `c_a`.

use super::presentation::Presentation;
use super::tangent::Tangent;
use super::{DeformError, Problem, DEFAULT_MAX_ORDER};
use crate::action::Twist;
use crate::algebra::rational::{self, Rational};
use crate::algebra::{Monomial, MonomialOrder, PolyMatrix, Polynomial};
use crate::groebner::{groebner, GroebnerBasis};
use log::info;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Variable layout of `k[W, t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub nw: usize,
    pub gm_weights: Vec<i64>,
    pub t_weights: Vec<i64>,
}

impl Layout {
    pub fn d(&self) -> usize {
        self.t_weights.len()
    }

    pub fn nvars(&self) -> usize {
        self.nw + self.d()
    }

    pub fn weights(&self) -> Vec<i64> {
        let mut w = self.gm_weights.clone();
        w.extend_from_slice(&self.t_weights);
        w
    }

    pub fn min_t_weight(&self) -> Option<i64> {
        self.t_weights.iter().copied().min()
    }

    /// `p * tau` for `p` in `k[W]` and a `t`-monomial `tau`.
    pub fn embed(&self, p: &Polynomial, tau: &Monomial) -> Polynomial {
        Polynomial::join_outer([(tau, p)])
    }

    pub fn embed_matrix(&self, m: &PolyMatrix, tau: &Monomial) -> PolyMatrix {
        m.map(|p| self.embed(p, tau))
    }

    /// `t`-coefficients of a polynomial of `k[W, t]`.
    pub fn split_t(&self, p: &Polynomial) -> BTreeMap<Monomial, Polynomial> {
        p.split_outer(self.nw)
    }

    /// `W`-coefficients (polynomials in `t`) of a polynomial of `k[W, t]`.
    pub fn split_w(&self, p: &Polynomial) -> BTreeMap<Monomial, Polynomial> {
        let mut acc: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (x, t) = m.split(self.nw);
            acc.entry(x).or_default().push((t, c.clone()));
        }
        acc.into_iter().map(|(x, v)| (x, Polynomial::from_terms(v))).collect()
    }

    /// A polynomial of `k[t]` seen in `k[W, t]`.
    pub fn lift_t(&self, c: &Polynomial) -> Polynomial {
        c.map_monomials(|t| Monomial::one(self.nw).concat(t))
    }

    pub fn t_var(&self, i: usize) -> Monomial {
        Monomial::var(self.d(), i)
    }
}

fn split_matrix(layout: &Layout, m: &PolyMatrix) -> BTreeMap<Monomial, PolyMatrix> {
    let mut out: BTreeMap<Monomial, PolyMatrix> = BTreeMap::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            for (tau, p) in layout.split_t(m.get(i, j)) {
                out.entry(tau)
                    .or_insert_with(|| PolyMatrix::zeros(m.rows, m.cols))
                    .set(i, j, p);
            }
        }
    }
    out
}

fn join_pieces(rows: usize, cols: usize, pieces: &[(Monomial, PolyMatrix)]) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let parts: Vec<(&Monomial, &Polynomial)> = pieces
                .iter()
                .filter(|(_, m)| !m.get(i, j).is_zero())
                .map(|(tau, m)| (tau, m.get(i, j)))
                .collect();
            out.set(i, j, Polynomial::join_outer(parts));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct DeformationState {
    pub order: usize,
    pub layout: Layout,
    /// `A_0..A_n` (`1 x n1`), `A_i` of pure `t`-degree `i`.
    pub a: Vec<PolyMatrix>,
    /// `B_0..B_n` (`n1 x n2`).
    pub b: Vec<PolyMatrix>,
    /// `c_a` in `k[t]`, keyed by the standard vector `m e_k`.
    pub obstruction: BTreeMap<(Monomial, usize), Polynomial>,
    /// `R(m e_k)` in `k[W]`, as `1 x n2` rows.
    pub projected: BTreeMap<(Monomial, usize), PolyMatrix>,
    pub log: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct UniversalDeformation {
    pub t_names: Vec<String>,
    pub t_weights: Vec<i64>,
    /// Generators of `K` in `k[t]`.
    pub k: Vec<Polynomial>,
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub stop_order: usize,
    pub stopped: bool,
    pub log: Vec<String>,
}

impl DeformationState {
    pub fn u(&self) -> PolyMatrix {
        self.a.iter().skip(1).fold(self.a[0].clone(), |acc, x| acc.add(x))
    }

    pub fn v(&self) -> PolyMatrix {
        self.b.iter().skip(1).fold(self.b[0].clone(), |acc, x| acc.add(x))
    }

    /// `G_m`-weight of `c_a`.
    pub fn obstruction_weight(&self, pres: &Presentation, key: &(Monomial, usize)) -> i64 {
        pres.r_weights[key.1] - key.0.weight(&self.layout.gm_weights)
    }

    /// `sum_a c_a R(m_a)` in `k[W, t]`.
    pub fn obstruction_sum(&self, n2: usize) -> PolyMatrix {
        let mut acc = PolyMatrix::zeros(1, n2);
        for (key, c) in &self.obstruction {
            if c.is_zero() {
                continue;
            }
            let r = &self.projected[key];
            let lc = self.layout.lift_t(c);
            for k in 0..n2 {
                let e = r.get(0, k);
                if !e.is_zero() {
                    let x = &e.extend_vars(self.layout.d()) * &lc;
                    acc.set(0, k, acc.get(0, k) + &x);
                }
            }
        }
        acc
    }

    /// True when `U_n V_n - sum c_a R(m_a)` has no terms of `t`-degree `<= n`.
    pub fn invariant_holds(&self, pres: &Presentation) -> bool {
        let diff = self.u().mul(&self.v()).sub(&self.obstruction_sum(pres.n2()));
        let nw = self.layout.nw;
        diff.data
            .iter()
            .all(|p| p.truncate_outer(nw, self.order as u32).is_zero())
    }
}

/// `A_1 = sum t_i s_i` and `B_1 = -R(X)` with `A_0 X = A_1 B_0`.
pub fn first_order(problem: &Problem, pres: &Presentation, tangent: &Tangent) -> Result<DeformationState, DeformError> {
    let layout = Layout {
        nw: problem.nvars(),
        gm_weights: problem.gm_weights.clone(),
        t_weights: tangent.weights.clone(),
    };
    let d = layout.d();
    let (n1, n2) = (pres.n1(), pres.n2());
    let tb = Twist::new(&problem.action, Some(&pres.rho1), Some(&pres.rho2));
    let cap = problem.options.krylov_cap;
    let pieces: Result<Vec<(Monomial, PolyMatrix)>, DeformError> = tangent
        .rows
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let v = s.mul(&pres.b0);
            let mut x = PolyMatrix::zeros(n1, n2);
            for k in 0..n2 {
                let e = v.get(0, k);
                if e.is_zero() {
                    continue;
                }
                let coeffs = pres
                    .ideal_gb
                    .lift(e)
                    .ok_or_else(|| DeformError::Internal("tangent row does not kill the syzygies".into()))?;
                for (j, c) in coeffs.into_iter().enumerate() {
                    x.set(j, k, c);
                }
            }
            Ok((layout.t_var(i), tb.reynolds(&x, cap)?.neg()))
        })
        .collect();
    let pieces = pieces?;
    let mut a1 = PolyMatrix::zeros(1, n1);
    for (i, s) in tangent.rows.iter().enumerate() {
        a1 = a1.add(&layout.embed_matrix(s, &layout.t_var(i)));
    }
    let b1 = join_pieces(n1, n2, &pieces);
    let state = DeformationState {
        order: 1,
        a: vec![layout.embed_matrix(&pres.a0, &Monomial::one(d)), a1],
        b: vec![layout.embed_matrix(&pres.b0, &Monomial::one(d)), b1],
        obstruction: BTreeMap::new(),
        projected: BTreeMap::new(),
        log: vec![format!("order 1: {d} parameters")],
        layout,
    };
    Ok(state)
}

struct StepPiece {
    tau: Monomial,
    a: PolyMatrix,
    b: PolyMatrix,
    remainder: Vec<Polynomial>,
}

/// Extends the state from order `n` to `n + 1`: the top part of `U_n V_n`
/// is reduced in the obstruction module, its normal form is recorded in the
/// `c_a`, and the rest is lifted to corrections `A_{n+1}`, `B_{n+1}`.
pub fn obstruction_step(problem: &Problem, pres: &Presentation, state: &mut DeformationState) -> Result<(), DeformError> {
    let n = state.order;
    let (n1, n2) = (pres.n1(), pres.n2());
    let mut top = PolyMatrix::zeros(1, n2);
    for p in 1..=n {
        let q = n + 1 - p;
        if q >= 1 && q <= n {
            top = top.add(&state.a[p].mul(&state.b[q]));
        }
    }
    let parts = split_matrix(&state.layout, &top);
    let ta = Twist::new(&problem.action, None, Some(&pres.rho1));
    let tb = Twist::new(&problem.action, Some(&pres.rho1), Some(&pres.rho2));
    let cap = problem.options.krylov_cap;
    let pieces: Result<Vec<StepPiece>, DeformError> = parts
        .into_par_iter()
        .map(|(tau, v)| {
            let (r, c, dcof) = pres.module.decompose(&v.row_vec(0));
            let x2 = PolyMatrix::row(c);
            let mut x1 = PolyMatrix::zeros(n1, n2);
            for (k, col) in dcof.into_iter().enumerate() {
                for (j, p) in col.into_iter().enumerate() {
                    x1.set(j, k, p);
                }
            }
            let a = if x2.is_zero() { x2 } else { ta.reynolds(&x2, cap)?.neg() };
            let b = if x1.is_zero() { x1 } else { tb.reynolds(&x1, cap)?.neg() };
            Ok(StepPiece {
                tau,
                a,
                b,
                remainder: r,
            })
        })
        .collect();
    let pieces = pieces?;

    let tr = Twist::new(&problem.action, None, Some(&pres.rho2));
    let mut new_c: BTreeMap<(Monomial, usize), Vec<(Monomial, Rational)>> = BTreeMap::new();
    for piece in &pieces {
        for (k, p) in piece.remainder.iter().enumerate() {
            for (m, c) in p.terms() {
                new_c
                    .entry((m.clone(), k))
                    .or_default()
                    .push((piece.tau.clone(), c.clone()));
            }
        }
    }
    for (key, terms) in new_c {
        if !state.projected.contains_key(&key) {
            let mut e = PolyMatrix::zeros(1, n2);
            e.set(0, key.1, Polynomial::term(key.0.clone(), rational::one()));
            let r = tr.reynolds(&e, cap)?;
            state.projected.insert(key.clone(), r);
        }
        let add = Polynomial::from_terms(terms);
        let entry = state.obstruction.entry(key).or_insert_with(Polynomial::zero);
        *entry = &*entry + &add;
    }
    let a_pieces: Vec<(Monomial, PolyMatrix)> = pieces.iter().map(|p| (p.tau.clone(), p.a.clone())).collect();
    let b_pieces: Vec<(Monomial, PolyMatrix)> = pieces.iter().map(|p| (p.tau.clone(), p.b.clone())).collect();
    state.a.push(join_pieces(1, n1, &a_pieces));
    state.b.push(join_pieces(n1, n2, &b_pieces));
    state.order = n + 1;
    let live = state.obstruction.values().filter(|c| !c.is_zero()).count();
    let msg = format!(
        "order {}: {} t-monomials, {} obstruction coefficients",
        n + 1,
        pieces.len(),
        live
    );
    info!("{msg}");
    state.log.push(msg);
    Ok(())
}

/// Minimal homogeneous generating subset, by increasing weight.
pub fn minimal_generators(gens: &[Polynomial], weights: &[i64], nvars: usize) -> Result<Vec<Polynomial>, DeformError> {
    let order = MonomialOrder::GrevLex;
    let mut cands: Vec<(i64, Polynomial)> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let w = p
                .weight(weights)
                .ok_or_else(|| DeformError::Internal("obstruction coefficient is not homogeneous".into()))?;
            Ok((w, p.primitive(&order)))
        })
        .collect::<Result<_, DeformError>>()?;
    cands.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.len().cmp(&b.1.len())));
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for (_, p) in cands {
        if gb.as_ref().is_some_and(|g| g.contains(&p)) {
            continue;
        }
        kept.push(p);
        gb = Some(groebner(&kept, &order, nvars)?);
    }
    Ok(kept)
}

/// `K'_n` (the `c_a` of weight below `n` times the least `t`-weight) and
/// whether `U_n V_n` lies in `K'_n (P (x) S)`.
pub fn stop_check(pres: &Presentation, state: &DeformationState) -> Result<(Vec<Polynomial>, bool), DeformError> {
    let layout = &state.layout;
    let bound = match layout.min_t_weight() {
        Some(w) if w > 0 => w * state.order as i64,
        Some(_) => return Ok((Vec::new(), false)),
        None => i64::MAX,
    };
    let kp: Vec<Polynomial> = state
        .obstruction
        .iter()
        .filter(|(key, c)| !c.is_zero() && state.obstruction_weight(pres, key) < bound)
        .map(|(_, c)| c.clone())
        .collect();
    let kp = minimal_generators(&kp, &layout.t_weights, layout.d())?;
    let gb = groebner(&kp, &MonomialOrder::GrevLex, layout.d())?;
    let uv = state.u().mul(&state.v());
    let stopped = uv
        .data
        .iter()
        .all(|p| layout.split_w(p).values().all(|c| gb.contains(c)));
    Ok((kp, stopped))
}

pub fn t_names(problem: &Problem, d: usize) -> Vec<String> {
    let taken = |s: &str| problem.ring.index_of(s).is_some();
    let prefix = ["t", "s", "tt", "par"]
        .into_iter()
        .find(|p| (1..=d).all(|i| !taken(&format!("{p}{i}"))))
        .unwrap_or("par_");
    (1..=d).map(|i| format!("{prefix}{i}")).collect()
}

/// The full algorithm from a tangent basis.
pub fn run(problem: &Problem, pres: &Presentation, tangent: &Tangent) -> Result<UniversalDeformation, DeformError> {
    let tangent = if problem.options.positive_weight_only {
        tangent.positive_part()
    } else {
        tangent.clone()
    };
    if let Some(&w) = tangent.weights.iter().find(|&&w| w <= 0) {
        if problem.options.max_order.is_none() {
            return Err(DeformError::Hypothesis(w));
        }
    }
    let max_order = problem.options.max_order.unwrap_or(DEFAULT_MAX_ORDER).max(1);
    let mut state = first_order(problem, pres, &tangent)?;
    loop {
        let (kp, stopped) = stop_check(pres, &state)?;
        if stopped || state.order >= max_order {
            let msg = if stopped {
                format!("stopped at order {} with {} generators", state.order, kp.len())
            } else {
                format!("truncated at order {}", state.order)
            };
            info!("{msg}");
            state.log.push(msg);
            let k = if stopped {
                kp
            } else {
                let all: Vec<Polynomial> = state.obstruction.values().cloned().collect();
                minimal_generators(&all, &state.layout.t_weights, state.layout.d())?
            };
            return Ok(UniversalDeformation {
                t_names: t_names(problem, state.layout.d()),
                t_weights: state.layout.t_weights.clone(),
                k,
                u: state.u(),
                v: state.v(),
                stop_order: state.order,
                stopped,
                log: state.log,
            });
        }
        obstruction_step(problem, pres, &mut state)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::algebra::Ring;
    use crate::deform::{build_presentation, covariant_basis, tangent_space, verify, Options};

    fn hilb2() -> Problem {
        let ring = Ring::new(&["x", "y"]).unwrap();
        Problem {
            ideal: vec![ring.parse("x^2").unwrap(), ring.parse("y").unwrap()],
            ring,
            gm_weights: vec![1, 2],
            action: GroupAction::trivial(2),
            decomposition: vec![(2, 2)],
            invariants: Vec::new(),
            options: Options::default(),
        }
    }

    #[test]
    fn length_two_subscheme_is_unobstructed() {
        let p = hilb2();
        let pres = build_presentation(&p).unwrap();
        assert_eq!(pres.n2(), 1);
        let covs = covariant_basis(&p, &pres).unwrap();
        let tan = tangent_space(&pres, &covs);
        assert_eq!(tan.dim(), 4);
        assert!(tan.weights.iter().all(|&w| w > 0));
        let res = run(&p, &pres, &tan).unwrap();
        assert!(res.stopped);
        assert!(res.k.is_empty());
        assert!(verify(&p, &res).passed());
    }

    #[test]
    fn invariant_holds_along_the_iteration() {
        let p = hilb2();
        let pres = build_presentation(&p).unwrap();
        let tan = tangent_space(&pres, &covariant_basis(&p, &pres).unwrap());
        let mut st = first_order(&p, &pres, &tan).unwrap();
        for _ in 0..3 {
            assert!(st.invariant_holds(&pres));
            obstruction_step(&p, &pres, &mut st).unwrap();
        }
        assert!(st.invariant_holds(&pres));
    }
}
