//! Buchberger's algorithm for submodules of free modules `P^r`, with the
//! Gebauer–Möller pair criteria and optional cofactor tracking. Ideals are
//! the rank-one case. Module terms are compared term-over-position: the
//! monomial decides first, then the lower component index is larger.

use crate::algebra::rational::{self, Rational};
use crate::algebra::{Monomial, MonomialOrder, Polynomial};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Term = (Monomial, u32, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    /// Sorted by decreasing term order, no zero coefficients.
    pub terms: Vec<Term>,
}

pub fn cmp_pos(order: &MonomialOrder, a: (&Monomial, u32), b: (&Monomial, u32)) -> Ordering {
    order.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1))
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_polys(polys: &[Polynomial], order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = Vec::new();
        for (k, p) in polys.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((m.clone(), k as u32, c.clone()));
            }
        }
        terms.sort_by(|a, b| cmp_pos(order, (&b.0, b.1), (&a.0, a.1)));
        Vector { terms }
    }

    pub fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        Self::from_polys(std::slice::from_ref(p), order)
    }

    pub fn to_polys(&self, rank: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for (m, k, c) in &self.terms {
            parts[*k as usize].push((m.clone(), c.clone()));
        }
        parts.into_iter().map(Polynomial::from_terms).collect()
    }

    pub fn to_poly(&self) -> Polynomial {
        self.to_polys(1).pop().unwrap()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.2 *= c;
        }
    }
}

/// `a - c * m * b` where both inputs are sorted.
fn sub_scaled(order: &MonomialOrder, a: &[Term], c: &Rational, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(bm, bk, bc)| (bm.mul(m), *bk, bc * c)).peekable();
    loop {
        let next_b = bi.peek();
        match (i < a.len(), next_b) {
            (false, None) => break,
            (true, None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (false, Some(_)) => {
                let (m2, k2, c2) = bi.next().unwrap();
                out.push((m2, k2, -c2));
            }
            (true, Some((m2, k2, _))) => match cmp_pos(order, (&a[i].0, a[i].1), (m2, *k2)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m2, k2, c2) = bi.next().unwrap();
                    out.push((m2, k2, -c2));
                }
                Ordering::Equal => {
                    let (m2, k2, c2) = bi.next().unwrap();
                    let s = &a[i].2 - c2;
                    if !rational::is_zero(&s) {
                        out.push((m2, k2, s));
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

fn cof_add_scaled(acc: &mut [Polynomial], src: &[Polynomial], c: &Rational, m: &Monomial) {
    for (a, s) in acc.iter_mut().zip(src) {
        if !s.is_zero() {
            *a = a.add_scaled(s, c, m);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Element {
    pub v: Vector,
    /// Representation in terms of the tracked generators; `None` means zero.
    pub cof: Option<Vec<Polynomial>>,
    mask: u64,
    group: Option<u32>,
}

impl Element {
    fn new(v: Vector, cof: Option<Vec<Polynomial>>, group: Option<u32>) -> Self {
        let mask = v.lead().map_or(0, |t| t.0.support_mask());
        Element { v, cof, mask, group }
    }

    pub fn lead(&self) -> &Term {
        &self.v.terms[0]
    }
}

/// Generator fed to Buchberger's algorithm.
#[derive(Clone, Debug)]
pub struct Input {
    pub v: Vector,
    pub cof: Option<Vec<Polynomial>>,
    /// Inputs sharing a group are already a Gröbner basis among themselves;
    /// their mutual pairs are skipped.
    pub group: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Smallest lcm in the term order first, ties by pair index.
    Normal,
    /// Pairs in creation order.
    Fifo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbError {
    /// Resource cap exceeded (number of basis elements).
    TooLarge(usize),
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub strategy: Strategy,
    /// Number of tracked generators, when cofactors are tracked.
    pub track: Option<usize>,
    pub max_elements: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            strategy: Strategy::Normal,
            track: None,
            max_elements: 200_000,
        }
    }
}

/// Reduced Gröbner basis of a submodule of `P^rank`.
#[derive(Clone, Debug)]
pub struct Basis {
    pub order: MonomialOrder,
    pub nvars: usize,
    pub rank: usize,
    pub track: Option<usize>,
    pub elems: Vec<Element>,
}

struct Reducer<'a> {
    order: &'a MonomialOrder,
    elems: &'a [Element],
    live: &'a [bool],
    track: Option<usize>,
}

impl Reducer<'_> {
    fn find(&self, m: &Monomial, k: u32) -> Option<usize> {
        let mask = m.support_mask();
        for (i, e) in self.elems.iter().enumerate() {
            if !self.live[i] || e.mask & !mask != 0 {
                continue;
            }
            let (lm, lk, _) = e.lead();
            if *lk == k && lm.divides(m) {
                return Some(i);
            }
        }
        None
    }

    /// Full reduction. When tracking, `cof` accumulates the combination of
    /// basis cofactors subtracted, so that `input = sum + remainder`.
    fn reduce(&self, v: Vector, mut cof: Option<&mut Vec<Polynomial>>) -> Vector {
        let mut todo = v.terms;
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        while start < todo.len() {
            let (m, k, c) = &todo[start];
            match self.find(m, *k) {
                None => {
                    rem.push(todo[start].clone());
                    start += 1;
                }
                Some(i) => {
                    let g = &self.elems[i];
                    let (gm, _, gc) = g.lead();
                    let q = gm.div(m).unwrap();
                    let f = c / gc;
                    if let (Some(acc), Some(_)) = (cof.as_deref_mut(), self.track) {
                        if let Some(gcof) = &g.cof {
                            cof_add_scaled(acc, gcof, &f, &q);
                        }
                    }
                    todo = sub_scaled(self.order, &todo[start..], &f, &q, &g.v.terms);
                    start = 0;
                }
            }
        }
        Vector { terms: rem }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    primary: Vec<i64>,
    i: usize,
    j: usize,
}

struct Pair {
    lcm: Monomial,
    comp: u32,
}

pub fn buchberger(
    inputs: Vec<Input>,
    order: &MonomialOrder,
    nvars: usize,
    rank: usize,
    settings: &Settings,
) -> Result<Basis, GbError> {
    let ideal_mode = rank == 1;
    let track = settings.track;
    let mut elems: Vec<Element> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: BTreeMap<PairKey, Pair> = BTreeMap::new();
    let mut counter: i64 = 0;

    let zero_cof = || track.map(|q| vec![Polynomial::zero(); q]);

    let make_monic = |v: &mut Vector, cof: &mut Option<Vec<Polynomial>>| {
        let lc = v.lead().unwrap().2.clone();
        if !rational::is_one(&lc) {
            let inv = rational::inv(&lc);
            v.scale(&inv);
            if let Some(c) = cof {
                for p in c.iter_mut() {
                    *p = p.scale(&inv);
                }
            }
        }
    };

    let mut queue: Vec<(Vector, Option<Vec<Polynomial>>, Option<u32>)> = Vec::new();
    for inp in inputs {
        if inp.v.is_zero() {
            continue;
        }
        let cof = if track.is_some() {
            Some(inp.cof.unwrap_or_else(|| zero_cof().unwrap()))
        } else {
            None
        };
        queue.push((inp.v, cof, inp.group));
    }

    // grouped inputs enter first and untouched, so their pairs can be skipped
    queue.sort_by_key(|x| x.2.is_none());

    let add = |mut v: Vector,
                   mut cof: Option<Vec<Polynomial>>,
                   group: Option<u32>,
                   elems: &mut Vec<Element>,
                   live: &mut Vec<bool>,
                   pairs: &mut BTreeMap<PairKey, Pair>,
                   counter: &mut i64| {
        make_monic(&mut v, &mut cof);
        let h = Element::new(v, cof, group);
        let (hm, hk, _) = h.lead().clone();
        let hidx = elems.len();
        // Gebauer–Möller update
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, e) in elems.iter().enumerate() {
            if !live[i] {
                continue;
            }
            if group.is_some() && e.group == group {
                continue;
            }
            let (em, ek, _) = e.lead();
            if *ek != hk {
                continue;
            }
            cands.push((i, em.lcm(&hm), ideal_mode && em.coprime(&hm)));
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (i, ref l, coprime) = cands[idx];
            let dominated = cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if coprime || !dominated {
                kept.push((i, l.clone(), coprime));
            }
        }
        // criterion B on old pairs
        let to_remove: Vec<PairKey> = pairs
            .iter()
            .filter(|(key, p)| {
                if p.comp != hk || !hm.divides(&p.lcm) {
                    return false;
                }
                let li = elems[key.i].lead().0.lcm(&hm);
                let lj = elems[key.j].lead().0.lcm(&hm);
                li != p.lcm && lj != p.lcm
            })
            .map(|(k, _)| k.clone())
            .collect();
        for k in to_remove {
            pairs.remove(&k);
        }
        for (i, l, coprime) in kept {
            if coprime {
                continue;
            }
            let primary = match settings.strategy {
                Strategy::Normal => {
                    let mut p = order.key(&l);
                    p.push(-(hk as i64));
                    p
                }
                Strategy::Fifo => {
                    *counter += 1;
                    vec![*counter]
                }
            };
            pairs.insert(
                PairKey {
                    primary,
                    i,
                    j: hidx,
                },
                Pair { lcm: l, comp: hk },
            );
        }
        for (i, e) in elems.iter().enumerate() {
            if live[i] && e.lead().1 == hk && hm.divides(&e.lead().0) {
                live[i] = false;
            }
        }
        elems.push(h);
        live.push(true);
    };

    for (v, cof, group) in queue {
        if group.is_some() {
            add(v, cof, group, &mut elems, &mut live, &mut pairs, &mut counter);
            continue;
        }
        let mut cof = cof;
        let r = {
            let red = Reducer {
                order,
                elems: &elems,
                live: &live,
                track,
            };
            let mut acc = zero_cof();
            let r = red.reduce(v, acc.as_mut());
            if let (Some(c), Some(a)) = (cof.as_mut(), acc) {
                for (x, y) in c.iter_mut().zip(a) {
                    *x = &*x - &y;
                }
            }
            r
        };
        if !r.is_zero() {
            add(r, cof, None, &mut elems, &mut live, &mut pairs, &mut counter);
        }
    }

    while let Some((key, pair)) = pairs.pop_first() {
        let (gi, gj) = (&elems[key.i], &elems[key.j]);
        let qi = gi.lead().0.div(&pair.lcm).unwrap();
        let qj = gj.lead().0.div(&pair.lcm).unwrap();
        let one = rational::one();
        let mut s = Vector {
            terms: gi.v.terms.iter().map(|(m, k, c)| (m.mul(&qi), *k, c.clone())).collect(),
        };
        s.terms = sub_scaled(order, &s.terms, &one, &qj, &gj.v.terms);
        let mut cof = None;
        if let Some(q) = track {
            let mut c = vec![Polynomial::zero(); q];
            if let Some(x) = &gi.cof {
                cof_add_scaled(&mut c, x, &one, &qi);
            }
            if let Some(x) = &gj.cof {
                cof_add_scaled(&mut c, x, &rational::int(-1), &qj);
            }
            cof = Some(c);
        }
        let red = Reducer {
            order,
            elems: &elems,
            live: &live,
            track,
        };
        let mut acc = zero_cof();
        let r = red.reduce(s, acc.as_mut());
        if r.is_zero() {
            continue;
        }
        if let (Some(c), Some(a)) = (cof.as_mut(), acc) {
            for (x, y) in c.iter_mut().zip(a) {
                *x = &*x - &y;
            }
        }
        if elems.len() >= settings.max_elements {
            return Err(GbError::TooLarge(elems.len()));
        }
        add(r, cof, None, &mut elems, &mut live, &mut pairs, &mut counter);
    }

    // minimal basis is the live set; interreduce tails
    let minimal: Vec<Element> = elems
        .iter()
        .zip(&live)
        .filter(|(_, &l)| l)
        .map(|(e, _)| e.clone())
        .collect();
    let mut out: Vec<Element> = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let mut others_live = vec![true; minimal.len()];
        others_live[idx] = false;
        let red = Reducer {
            order,
            elems: &minimal,
            live: &others_live,
            track,
        };
        let e = &minimal[idx];
        let mut acc = zero_cof();
        let r = red.reduce(e.v.clone(), acc.as_mut());
        let mut cof = e.cof.clone();
        if let (Some(c), Some(a)) = (cof.as_mut(), acc) {
            for (x, y) in c.iter_mut().zip(a) {
                *x = &*x - &y;
            }
        }
        let mut r = r;
        make_monic(&mut r, &mut cof);
        out.push(Element::new(r, cof, e.group));
    }
    out.sort_by(|a, b| {
        let (am, ak, _) = a.lead();
        let (bm, bk, _) = b.lead();
        cmp_pos(order, (am, *ak), (bm, *bk))
    });
    Ok(Basis {
        order: order.clone(),
        nvars,
        rank,
        track,
        elems: out,
    })
}

impl Basis {
    fn reducer<'a>(&'a self, live: &'a [bool]) -> Reducer<'a> {
        Reducer {
            order: &self.order,
            elems: &self.elems,
            live,
            track: self.track,
        }
    }

    pub fn reduce(&self, v: Vector) -> Vector {
        let live = vec![true; self.elems.len()];
        self.reducer(&live).reduce(v, None)
    }

    /// Remainder and the combination of tracked generators `c` with
    /// `v = c * generators + remainder`.
    pub fn reduce_tracked(&self, v: Vector) -> (Vector, Vec<Polynomial>) {
        let q = self.track.expect("basis was computed without tracking");
        let live = vec![true; self.elems.len()];
        let mut acc = vec![Polynomial::zero(); q];
        let r = self.reducer(&live).reduce(v, Some(&mut acc));
        (r, acc)
    }

    pub fn leads(&self) -> Vec<(Monomial, u32)> {
        self.elems
            .iter()
            .map(|e| {
                let (m, k, _) = e.lead();
                (m.clone(), *k)
            })
            .collect()
    }

    /// True when the term `m e_k` is not divisible by any leading term.
    pub fn is_standard(&self, m: &Monomial, k: u32) -> bool {
        !self
            .elems
            .iter()
            .any(|e| e.lead().1 == k && e.lead().0.divides(m))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}
