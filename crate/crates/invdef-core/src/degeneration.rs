//! Flat limits of ideals along one-parameter subgroups acting diagonally on
//! the variables.
//!
//! A subgroup scaling `x_i` by `t^{a_i}` on functions sends `P` to
//! `sum_m c_m t^{<a, m>} m`; clearing the lowest power of `t` and letting
//! `t -> 0` keeps the part of minimal `a`-weight. Applied to a Gröbner basis
//! for an order refining that weight, the parts generate the limit ideal.

use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use crate::groebner::{groebner, GbError};
use log::debug;

/// Per-variable weights induced by a subgroup `t -> diag(t^{n_1}, ..)`:
/// `coefficients[v]` expresses the weight of variable `v` as a linear form
/// in `n`.
pub fn subgroup_weights(coefficients: &[Vec<i64>], n: &[i64]) -> Vec<i64> {
    coefficients
        .iter()
        .map(|c| c.iter().zip(n).map(|(a, b)| a * b).sum())
        .collect()
}

/// Part of `p` of minimal `a`-weight.
pub fn initial_form_min(p: &Polynomial, a: &[i64]) -> Polynomial {
    match p.homogeneous_parts(a).into_iter().next() {
        Some((_, part)) => part,
        None => Polynomial::zero(),
    }
}

fn homogenize(p: &Polynomial, nvars: usize) -> Polynomial {
    let d = p.total_degree().unwrap_or(0);
    Polynomial::from_terms(p.terms().iter().map(|(m, c)| {
        let mut e: Vec<u32> = m.exps().iter().map(|&x| x as u32).collect();
        e.push(d - m.degree());
        debug_assert_eq!(e.len(), nvars + 1);
        (Monomial::from_exps(&e), c.clone())
    }))
}

fn dehomogenize(p: &Polynomial, nvars: usize) -> Polynomial {
    Polynomial::from_terms(p.terms().iter().map(|(m, c)| (m.split(nvars).0, c.clone())))
}

/// Generators of the limit ideal `L_0`, returned as the reduced GrevLex
/// basis.
///
/// The order "smaller `a`-weight first" need not be global, so the ideal is
/// homogenized by an extra variable of degree one; on the homogenized ideal
/// the weight `c - a_i` (and `c` on the extra variable) with `c = max a_i`
/// induces the same initial forms and is non-negative.
pub fn flat_limit(gens: &[Polynomial], a: &[i64], nvars: usize) -> Result<Vec<Polynomial>, GbError> {
    assert_eq!(a.len(), nvars, "one weight per variable");
    let c = a.iter().copied().max().unwrap_or(0).max(0);
    let mut w: Vec<i64> = a.iter().map(|x| c - x).collect();
    w.push(c);
    let hom: Vec<Polynomial> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| homogenize(p, nvars))
        .collect();
    let gb = groebner(&hom, &MonomialOrder::WeightGrevLex(w.clone()), nvars + 1)?;
    debug!("flat limit: {} basis elements after homogenization", gb.len());
    let parts: Vec<Polynomial> = gb
        .polys()
        .iter()
        .map(|g| {
            // Largest `w`-weight on the homogenized side is the minimal
            // `a`-weight after setting the extra variable to one.
            let top = g.homogeneous_parts(&w).into_iter().next_back().map(|(_, q)| q).unwrap();
            dehomogenize(&top, nvars)
        })
        .collect();
    Ok(groebner(&parts, &MonomialOrder::GrevLex, nvars)?.polys())
}

/// True when every generator is homogeneous for `a`, so that the subgroup
/// fixes the ideal.
pub fn is_fixed(gens: &[Polynomial], a: &[i64]) -> bool {
    gens.iter().all(|p| p.is_zero() || p.is_homogeneous(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::groebner::ideal_equal;

    fn ps(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| r.parse(x).unwrap()).collect()
    }

    #[test]
    fn zero_weight_is_identity() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let l = ps(&r, &["x^2-y", "x*y-1"]);
        let l0 = flat_limit(&l, &[0, 0], 2).unwrap();
        assert!(ideal_equal(&l, &l0, 2).unwrap());
    }

    #[test]
    fn unique_minimal_part() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let l0 = flat_limit(&ps(&r, &["x+y^2"]), &[1, 0], 2).unwrap();
        assert!(ideal_equal(&l0, &ps(&r, &["y^2"]), 2).unwrap());
    }

    #[test]
    fn limit_needs_the_whole_basis() {
        // Initial forms of the two generators alone give (y^2), not the
        // colength-3 limit of three points.
        let r = Ring::new(&["x", "y"]).unwrap();
        let l = ps(&r, &["x-y^2", "y^3-1"]);
        let l0 = flat_limit(&l, &[-1, -1], 2).unwrap();
        assert!(ideal_equal(&l0, &ps(&r, &["x^2", "x*y", "y^2"]), 2).unwrap());
    }

    #[test]
    fn limit_is_idempotent_and_scale_free() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let l = ps(&r, &["x*y-z", "x^2-y+1"]);
        let a = [-2, 1, -1];
        let l0 = flat_limit(&l, &a, 3).unwrap();
        assert!(is_fixed(&l0, &a));
        assert!(ideal_equal(&flat_limit(&l0, &a, 3).unwrap(), &l0, 3).unwrap());
        let a3: Vec<i64> = a.iter().map(|x| 3 * x).collect();
        assert!(ideal_equal(&flat_limit(&l, &a3, 3).unwrap(), &l0, 3).unwrap());
    }
}
