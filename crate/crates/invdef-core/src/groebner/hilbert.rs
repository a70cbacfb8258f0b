//! Weighted Hilbert series and Krull dimension of monomial ideals.

use super::ideal::GroebnerBasis;
use crate::algebra::Monomial;
use std::collections::{BTreeMap, HashMap};

/// Hilbert series `N(u) / prod_i (1 - u^{w_i})` of `P/I` for a positive
/// grading; the numerator is stored sparsely by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: BTreeMap<i64, i128>,
    pub weights: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTooLarge;

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn poly_add(a: &mut BTreeMap<i64, i128>, b: &BTreeMap<i64, i128>, sign: i128, shift: i64) {
    for (&e, &c) in b {
        let v = a.entry(e + shift).or_insert(0);
        *v = v
            .checked_add(sign.checked_mul(c).expect("hilbert overflow"))
            .expect("hilbert overflow");
        if *v == 0 {
            a.remove(&(e + shift));
        }
    }
}

struct Numerator<'a> {
    weights: &'a [i64],
    memo: HashMap<Vec<Monomial>, BTreeMap<i64, i128>>,
    nodes: usize,
    cap: usize,
}

impl Numerator<'_> {
    /// Inclusion–exclusion on the last generator:
    /// `N(J + (m)) = N(J) - u^{w(m)} N(J : m)`.
    fn eval(&mut self, gens: Vec<Monomial>) -> Result<BTreeMap<i64, i128>, HilbertTooLarge> {
        if let Some(v) = self.memo.get(&gens) {
            return Ok(v.clone());
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(HilbertTooLarge);
        }
        let result = if gens.is_empty() {
            BTreeMap::from([(0, 1)])
        } else if gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b))) {
            let mut acc = BTreeMap::from([(0i64, 1i128)]);
            for g in &gens {
                let mut next = acc.clone();
                poly_add(&mut next, &acc, -1, g.weight(self.weights));
                acc = next;
            }
            acc
        } else {
            let mut rest = gens.clone();
            let m = rest.pop().unwrap();
            let colon: Vec<Monomial> = rest
                .iter()
                .map(|g| m.gcd(g).div(g).unwrap())
                .collect();
            let mut a = self.eval(minimalize(rest))?;
            let b = self.eval(minimalize(colon))?;
            poly_add(&mut a, &b, -1, m.weight(self.weights));
            a
        };
        self.memo.insert(gens, result.clone());
        Ok(result)
    }
}

impl HilbertSeries {
    /// Hilbert series of `P / (gens)` for monomial generators.
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[i64], cap: usize) -> Result<Self, HilbertTooLarge> {
        assert!(weights.iter().all(|&w| w > 0), "grading must be positive");
        let mut num = Numerator {
            weights,
            memo: HashMap::new(),
            nodes: 0,
            cap,
        };
        let numerator = num.eval(minimalize(gens.to_vec()))?;
        Ok(HilbertSeries {
            numerator,
            weights: weights.to_vec(),
        })
    }

    /// Hilbert series of `P/I` from a Gröbner basis of a homogeneous ideal.
    pub fn of_ideal(gb: &GroebnerBasis, weights: &[i64]) -> Result<Self, HilbertTooLarge> {
        Self::of_monomial_ideal(&gb.leading_monomials(), weights, 1_000_000)
    }

    /// Numerator over the common denominator `prod (1 - u^{w})` of both series,
    /// so that series in differently weighted rings can be compared.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        let mut a = self.numerator.clone();
        for &w in &other.weights {
            let mut next = a.clone();
            poly_add(&mut next, &a, -1, w);
            a = next;
        }
        let mut b = other.numerator.clone();
        for &w in &self.weights {
            let mut next = b.clone();
            poly_add(&mut next, &b, -1, w);
            b = next;
        }
        a == b
    }

    /// First coefficients of the power series expansion.
    pub fn expand(&self, terms: usize) -> Vec<i128> {
        let n = terms as i64;
        let mut series: Vec<i128> = vec![0; terms];
        for (&e, &c) in &self.numerator {
            if e < n {
                series[e as usize] += c;
            }
        }
        for &w in &self.weights {
            // multiply by 1 / (1 - u^w)
            for i in (w as usize)..terms {
                series[i] += series[i - w as usize];
            }
        }
        series
    }

    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        for (&e, &c) in &self.numerator {
            parts.push(match e {
                0 => format!("{c}"),
                _ => format!("{c}*u^{e}"),
            });
        }
        let num = parts.join(" + ").replace("+ -", "- ");
        let den: Vec<String> = self.weights.iter().map(|w| format!("(1-u^{w})")).collect();
        format!("({num}) / {}", den.join("*"))
    }
}

/// Krull dimension of `P/I` from the leading monomials of a Gröbner basis:
/// the largest set of variables containing no leading monomial's support.
/// Returns `None` for the unit ideal.
pub fn krull_dimension(leads: &[Monomial], nvars: usize) -> Option<usize> {
    if leads.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<Vec<usize>> = minimalize(leads.to_vec())
        .iter()
        .map(|m| m.support())
        .collect();
    // complement of a minimum hitting set of the supports
    fn hit(supports: &[Vec<usize>], chosen: &mut Vec<bool>, k: usize, best: &mut usize) {
        if k >= *best {
            return;
        }
        let open = supports.iter().find(|s| !s.iter().any(|&v| chosen[v]));
        match open {
            None => *best = k,
            Some(s) => {
                for &v in s {
                    chosen[v] = true;
                    hit(supports, chosen, k + 1, best);
                    chosen[v] = false;
                }
            }
        }
    }
    let mut best = nvars;
    hit(&supports, &mut vec![false; nvars], 0, &mut best);
    Some(nvars - best)
}
