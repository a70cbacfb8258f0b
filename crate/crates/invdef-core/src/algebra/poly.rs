use super::monomial::Monomial;
use super::order::{grevlex_cmp, MonomialOrder};
use super::rational::{self, Rational};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial with rational coefficients. Terms are kept sorted by
/// decreasing GrevLex with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if rational::is_zero(&c) {
            return Self::zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            if rational::is_zero(&c) {
                continue;
            }
            match acc.get_mut(&m) {
                Some(x) => *x += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !rational::is_zero(c))
            .collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    /// Terms already sorted by decreasing GrevLex without duplicates or zeros.
    pub fn from_sorted_terms(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| grevlex_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !rational::is_zero(c)));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.nvars())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| grevlex_cmp(m, x)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => rational::zero(),
        }
    }

    /// Leading term for `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, Rational)> {
        if let MonomialOrder::GrevLex = order {
            return self.terms.first();
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common weight of all terms, if the polynomial is homogeneous.
    /// The zero polynomial has no weight.
    pub fn weight(&self, w: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| m.weight(w));
        let first = it.next()?;
        if it.all(|x| x == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self, w: &[i64]) -> bool {
        self.is_zero() || self.weight(w).is_some()
    }

    /// Decomposition into weight-homogeneous parts, sorted by weight.
    pub fn homogeneous_parts(&self, w: &[i64]) -> BTreeMap<i64, Polynomial> {
        let mut parts: BTreeMap<i64, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.weight(w)).or_default().push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(k, v)| (k, Polynomial { terms: v }))
            .collect()
    }

    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .cloned()
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if rational::is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if rational::is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.mul(m), a * c))
                .collect(),
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Polynomial, c: &Rational, m: &Monomial) -> Polynomial {
        if rational::is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        let mut bj: Option<(Monomial, Rational)> = None;
        loop {
            if bj.is_none() && j < b.len() {
                bj = Some((b[j].0.mul(m), &b[j].1 * c));
                j += 1;
            }
            match (i < a.len(), &bj) {
                (false, None) => break,
                (true, None) => {
                    out.extend_from_slice(&a[i..]);
                    break;
                }
                (false, Some(_)) => {
                    out.push(bj.take().unwrap());
                }
                (true, Some((mb, _))) => match grevlex_cmp(&a[i].0, mb) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(bj.take().unwrap()),
                    Ordering::Equal => {
                        let (mb, cb) = bj.take().unwrap();
                        let s = &a[i].1 + cb;
                        if !rational::is_zero(&s) {
                            out.push((mb, s));
                        }
                        i += 1;
                    }
                },
            }
        }
        Polynomial { terms: out }
    }

    pub fn pow(&self, e: u32, nvars: usize) -> Polynomial {
        let mut r = Polynomial::one(nvars);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Rescales to integer coefficients with content one and a positive
    /// leading coefficient for `order`.
    pub fn primitive(&self, order: &MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut q = rational::primitive_scale(self.terms.iter().map(|(_, c)| c));
        if rational::is_negative(&self.leading(order).unwrap().1) {
            q = -q;
        }
        self.scale(&q)
    }

    /// Divides by the leading coefficient for `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading(order) {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&rational::inv(c)),
        }
    }

    /// Re-embeds into a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        if extra == 0 {
            return self.clone();
        }
        // appending zero exponents preserves the relative GrevLex order
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend(extra), c.clone()))
                .collect(),
        }
    }

    /// Applies a monomial map, combining terms that collide.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Splits variables into the first `k` ("inner") and the rest ("outer"),
    /// returning the coefficient (a polynomial in the inner variables) of each
    /// outer monomial.
    pub fn split_outer(&self, k: usize) -> BTreeMap<Monomial, Polynomial> {
        let mut acc: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inner, outer) = m.split(k);
            acc.entry(outer).or_default().push((inner, c.clone()));
        }
        acc.into_iter()
            .map(|(o, v)| (o, Polynomial::from_terms(v)))
            .collect()
    }

    /// Inverse of `split_outer`.
    pub fn join_outer<'a, I>(parts: I) -> Polynomial
    where
        I: IntoIterator<Item = (&'a Monomial, &'a Polynomial)>,
    {
        let mut terms = Vec::new();
        for (outer, p) in parts {
            for (inner, c) in p.terms() {
                terms.push((inner.concat(outer), c.clone()));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Largest total degree in the outer variables (those from index `k`).
    pub fn outer_degree(&self, k: usize) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.exps()[k..].iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Terms whose outer degree (variables from index `k`) equals `d`.
    pub fn outer_degree_part(&self, k: usize, d: u32) -> Polynomial {
        self.filter_terms(|m| m.exps()[k..].iter().map(|&e| e as u32).sum::<u32>() == d)
    }

    /// Drops terms of outer degree above `d`.
    pub fn truncate_outer(&self, k: usize, d: u32) -> Polynomial {
        self.filter_terms(|m| m.exps()[k..].iter().map(|&e| e as u32).sum::<u32>() <= d)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let nv = match rhs.nvars() {
            None => return self.clone(),
            Some(n) => n,
        };
        self.add_scaled(rhs, &rational::one(), &Monomial::one(nv))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let nv = match rhs.nvars() {
            None => return self.clone(),
            Some(n) => n,
        };
        self.add_scaled(rhs, &rational::int(-1), &Monomial::one(nv))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn arithmetic_basics() {
        let p = &x(0) + &x(1);
        let q = &x(0) - &x(1);
        let pq = &p * &q;
        let expect = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(pq, expect);
        assert!((&p - &p).is_zero());
        assert_eq!(p.pow(2, 3).len(), 3);
    }

    #[test]
    fn primitive_normalization() {
        let p = (&x(0) * &x(1)).scale(&crate::algebra::rational::frac(-2, 3));
        let p = &p + &x(2).scale(&int(4));
        let q = p.primitive(&MonomialOrder::GrevLex);
        assert_eq!(q.terms()[0].1, int(1));
        assert_eq!(q.terms()[1].1, int(-6));
    }

    #[test]
    fn split_and_join_roundtrip() {
        let p = &(&x(0) * &x(2)) + &(&x(1) * &x(2)).scale(&int(3));
        let p = &p + &x(0);
        let parts = p.split_outer(2);
        assert_eq!(parts.len(), 2);
        assert_eq!(Polynomial::join_outer(parts.iter()), p);
    }
}
