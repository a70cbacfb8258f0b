//! Independent re-checks of a computed deformation, and the fiber of the
//! family over the origin of the quotient.

use super::iterate::{minimal_generators, Layout, UniversalDeformation};
use super::{DeformError, Problem};
use crate::action::{rep_on_subspace, Twist};
use crate::algebra::{Monomial, MonomialOrder, PolyMatrix, Polynomial};
use crate::groebner::groebner;

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    /// `(name, passed, detail)`.
    pub checks: Vec<(String, bool, String)>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push((name.to_string(), ok, detail.into()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

fn layout(problem: &Problem, result: &UniversalDeformation) -> Layout {
    Layout {
        nw: problem.nvars(),
        gm_weights: problem.gm_weights.clone(),
        t_weights: result.t_weights.clone(),
    }
}

fn t_free_part(layout: &Layout, p: &Polynomial) -> Polynomial {
    p.truncate_outer(layout.nw, 0)
        .map_monomials(|m| m.split(layout.nw).0)
}

/// Re-checks a result against its problem without reusing any intermediate
/// data of the run.
pub fn verify(problem: &Problem, result: &UniversalDeformation) -> VerifyReport {
    let mut report = VerifyReport::default();
    let lay = layout(problem, result);
    let d = lay.d();
    let n1 = problem.ideal.len();
    let (u, v) = (&result.u, &result.v);

    let shapes = u.rows == 1 && u.cols == n1 && v.rows == n1;
    report.push("shapes", shapes, format!("U is {}x{}, V is {}x{}", u.rows, u.cols, v.rows, v.cols));
    if !shapes {
        return report;
    }

    let u0: Vec<Polynomial> = u.data.iter().map(|p| t_free_part(&lay, p)).collect();
    report.push(
        "special fiber",
        u0 == problem.ideal,
        "U at t = 0 equals the generators",
    );

    let tg = groebner(&result.k, &MonomialOrder::GrevLex, d);
    let uv = u.mul(v);
    let member = match &tg {
        Ok(gb) => uv
            .data
            .iter()
            .all(|p| lay.split_w(p).values().all(|c| gb.contains(c))),
        Err(_) => false,
    };
    report.push("relations", member, "entries of U V lie in K");

    let homog_k = result
        .k
        .iter()
        .all(|p| p.weight(&lay.t_weights).is_some_and(|w| w > 0));
    report.push("K weights", homog_k, "generators of K are homogeneous of positive weight");

    let all_w = lay.weights();
    let f_weights: Vec<Option<i64>> = problem.ideal.iter().map(|f| f.weight(&problem.gm_weights)).collect();
    let mut graded = (0..n1).all(|j| u.get(0, j).is_zero() || u.get(0, j).weight(&all_w) == f_weights[j]);
    let mut r_weights = Vec::new();
    for k in 0..v.cols {
        let mut wk = None;
        for i in 0..n1 {
            let e = v.get(i, k);
            if e.is_zero() {
                continue;
            }
            match (e.weight(&all_w), f_weights[i]) {
                (Some(a), Some(b)) => match wk {
                    None => wk = Some(a + b),
                    Some(x) if x != a + b => graded = false,
                    _ => {}
                },
                _ => graded = false,
            }
        }
        r_weights.push(wk);
    }
    report.push("G_m grading", graded, "U and V are weight-homogeneous");

    let action = &problem.action;
    let singles: Vec<PolyMatrix> = problem.ideal.iter().map(|f| PolyMatrix::row(vec![f.clone()])).collect();
    let rho1 = match rep_on_subspace(&singles, None, action) {
        Ok(r) => r,
        Err(e) => {
            report.push("equivariance", false, format!("generators: {e}"));
            return report;
        }
    };
    let cols: Vec<PolyMatrix> = (0..v.cols)
        .map(|k| PolyMatrix::column((0..n1).map(|i| t_free_part(&lay, v.get(i, k))).collect()))
        .collect();
    let rho2 = match rep_on_subspace(&cols, Some(&rho1), action) {
        Ok(r) => r,
        Err(e) => {
            report.push("equivariance", false, format!("syzygies at t = 0: {e}"));
            return report;
        }
    };
    let eq_u = Twist::new(action, None, Some(&rho1)).is_equivariant(u);
    let eq_v = Twist::new(action, Some(&rho1), Some(&rho2)).is_equivariant(v);
    report.push("equivariance", eq_u && eq_v, format!("U: {eq_u}, V: {eq_v}"));
    report
}

/// `K_0 = K + (residues of the invariants)`: each positive-degree invariant
/// is reduced modulo the family ideal in an order eliminating `W`, and must
/// leave a polynomial in `t` alone.
pub fn fiber_over_zero(problem: &Problem, result: &UniversalDeformation) -> Result<Vec<Polynomial>, DeformError> {
    let lay = layout(problem, result);
    let (nw, d) = (lay.nw, lay.d());
    let mut gens: Vec<Polynomial> = result.u.data.clone();
    gens.extend(result.k.iter().map(|c| lay.lift_t(c)));
    let mut mask = vec![true; nw];
    mask.extend(vec![false; d]);
    let gb = groebner(&gens, &MonomialOrder::Elimination(mask), nw + d)?;
    let mut k0 = result.k.clone();
    for (i, phi) in problem.invariants.iter().enumerate() {
        let r = gb.normal_form(&phi.extend_vars(d));
        if r.terms().iter().any(|(m, _)| m.exps()[..nw].iter().any(|&e| e > 0)) {
            return Err(DeformError::Internal(format!(
                "invariant {} does not reduce to a function on the base",
                i + 1
            )));
        }
        k0.push(r.map_monomials(|m: &Monomial| m.split(nw).1));
    }
    minimal_generators(&k0, &lay.t_weights, d)
}
