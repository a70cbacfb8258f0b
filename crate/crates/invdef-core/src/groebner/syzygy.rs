//! Syzygies of a row of polynomials via Schreyer's construction.

use super::engine::{GbError, Vector};
use super::ideal::groebner_tracked;
use super::module::ModuleBasis;
use crate::algebra::linalg::{Echelon, Insert, SparseVec};
use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use std::collections::BTreeMap;

/// Generators of the syzygy module `{s : sum s_i f_i = 0}`.
///
/// With `weights` given (positive, and every `f_i` homogeneous) the result is
/// a minimal homogeneous generating set, sorted by degree; otherwise the
/// raw Schreyer generators are returned.
pub fn syzygies(f: &[Polynomial], nvars: usize, weights: Option<&[i64]>) -> Result<Vec<Vec<Polynomial>>, GbError> {
    let n = f.len();
    let order = MonomialOrder::GrevLex;
    let gb = groebner_tracked(f, &order, nvars)?;
    let g = gb.polys();
    let t = gb.transformation();
    let mut raw: Vec<Vec<Polynomial>> = Vec::new();
    let one = crate::algebra::rational::one();

    for k in 0..g.len() {
        for l in k + 1..g.len() {
            let (mk, ck) = g[k].leading(&order).unwrap().clone();
            let (ml, cl) = g[l].leading(&order).unwrap().clone();
            let lcm = mk.lcm(&ml);
            let qk = mk.div(&lcm).unwrap();
            let ql = ml.div(&lcm).unwrap();
            let ak = crate::algebra::rational::inv(&ck);
            let al = -crate::algebra::rational::inv(&cl);
            let s = g[k].mul_term(&qk, &ak).add_scaled(&g[l], &al, &ql);
            let (r, c) = gb.basis().reduce_tracked(Vector::from_poly(&s, &order));
            debug_assert!(r.is_zero());
            let mut sigma: Vec<Polynomial> = (0..n)
                .map(|i| {
                    t[k][i]
                        .mul_term(&qk, &ak)
                        .add_scaled(&t[l][i], &al, &ql)
                })
                .collect();
            for i in 0..n {
                sigma[i] = &sigma[i] - &c[i];
            }
            raw.push(sigma);
        }
    }
    for (i, fi) in f.iter().enumerate() {
        let (r, c) = gb.basis().reduce_tracked(Vector::from_poly(fi, &order));
        debug_assert!(r.is_zero());
        let mut sigma: Vec<Polynomial> = c.iter().map(|p| -p).collect();
        sigma[i] = sigma[i].add_scaled(&Polynomial::one(nvars), &one, &Monomial::one(nvars));
        raw.push(sigma);
    }
    raw.retain(|s| s.iter().any(|p| !p.is_zero()));

    match weights {
        None => Ok(raw),
        Some(w) => minimalize(raw, f, w, nvars),
    }
}

fn vec_degree(s: &[Polynomial], fdeg: &[i64], w: &[i64]) -> Option<i64> {
    let mut d = None;
    for (p, &fd) in s.iter().zip(fdeg) {
        for (m, _) in p.terms() {
            let x = m.weight(w) + fd;
            match d {
                None => d = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
    }
    d
}

fn homogeneous_components(s: &[Polynomial], fdeg: &[i64], w: &[i64]) -> BTreeMap<i64, Vec<Polynomial>> {
    let mut out: BTreeMap<i64, Vec<Polynomial>> = BTreeMap::new();
    for (i, p) in s.iter().enumerate() {
        for (d, part) in p.homogeneous_parts(w) {
            let e = out
                .entry(d + fdeg[i])
                .or_insert_with(|| vec![Polynomial::zero(); s.len()]);
            e[i] = part;
        }
    }
    out
}

pub(crate) fn to_sparse(s: &[Polynomial]) -> SparseVec<(usize, Monomial)> {
    let mut v = SparseVec::new();
    for (i, p) in s.iter().enumerate() {
        for (m, c) in p.terms() {
            v.insert((i, m.clone()), c.clone());
        }
    }
    v
}

/// Keeps a minimal homogeneous generating subset, degree by degree: a
/// candidate is redundant when its normal form modulo the module spanned by
/// the lower-degree survivors is a combination of the same-degree ones.
fn minimalize(
    raw: Vec<Vec<Polynomial>>,
    f: &[Polynomial],
    w: &[i64],
    nvars: usize,
) -> Result<Vec<Vec<Polynomial>>, GbError> {
    let fdeg: Vec<i64> = f
        .iter()
        .map(|p| p.weight(w).expect("generators must be homogeneous"))
        .collect();
    let mut cands: Vec<(i64, Vec<Polynomial>)> = Vec::new();
    for s in raw {
        match vec_degree(&s, &fdeg, w) {
            Some(d) => cands.push((d, s)),
            None => {
                for (d, part) in homogeneous_components(&s, &fdeg, w) {
                    if part.iter().any(|p| !p.is_zero()) {
                        cands.push((d, part));
                    }
                }
            }
        }
    }
    // stable by degree, then by size for nicer generators
    cands.sort_by_key(|(d, s)| (*d, s.iter().map(|p| p.len()).sum::<usize>()));
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    let mut current: Option<(i64, Option<ModuleBasis>, Echelon<(usize, Monomial)>)> = None;
    for (d, s) in cands {
        if current.as_ref().map(|c| c.0) != Some(d) {
            let below = match kept.is_empty() {
                true => None,
                false => Some(ModuleBasis::new(&kept, None, &MonomialOrder::GrevLex, nvars, f.len())?),
            };
            current = Some((d, below, Echelon::new(false)));
        }
        let (_, below, ech) = current.as_mut().unwrap();
        let nf = match below {
            Some(m) => m.normal_form(&s),
            None => s.clone(),
        };
        if nf.iter().all(|p| p.is_zero()) {
            continue;
        }
        if let Insert::Independent(_) = ech.insert(to_sparse(&nf)) {
            kept.push(s);
        }
    }
    Ok(kept)
}
