//! Coordinate-free comparison of base ideals.
//!
//! Two presentations of the same germ differ by a weight-preserving change of
//! the t-coordinates, which leaves the Krull dimension and the weighted
//! Hilbert series unchanged. Published ideals often come without numeric
//! weights; [`weight_assignments`] recovers every grading drawn from a given
//! multiset under which the generators are homogeneous.

use invdef_core::algebra::{MonomialOrder, Polynomial};
use invdef_core::groebner::{groebner, krull_dimension, GbError, GroebnerBasis, HilbertSeries};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FingerprintError {
    #[error("Gröbner basis: {0:?}")]
    Gb(GbError),
    #[error("weights must be positive, one per variable")]
    Weights,
    #[error("generator {0} is not homogeneous for the weights")]
    NotHomogeneous(usize),
    #[error("Hilbert series computation too large")]
    TooLarge,
}

impl From<GbError> for FingerprintError {
    fn from(e: GbError) -> Self {
        FingerprintError::Gb(e)
    }
}

#[derive(Clone, Debug)]
pub struct Fingerprint {
    /// `None` for the unit ideal.
    pub dimension: Option<usize>,
    pub series: HilbertSeries,
}

impl Fingerprint {
    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.dimension == other.dimension && self.series.same_series(&other.series)
    }
}

fn check_weights(gens: &[Polynomial], nvars: usize, weights: &[i64]) -> Result<(), FingerprintError> {
    if weights.len() != nvars || weights.iter().any(|&w| w < 1) {
        return Err(FingerprintError::Weights);
    }
    match gens.iter().position(|p| !p.is_zero() && p.weight(weights).is_none()) {
        Some(i) => Err(FingerprintError::NotHomogeneous(i + 1)),
        None => Ok(()),
    }
}

fn from_basis(gb: &GroebnerBasis, nvars: usize, weights: &[i64]) -> Result<Fingerprint, FingerprintError> {
    let series = HilbertSeries::of_ideal(gb, weights).map_err(|_| FingerprintError::TooLarge)?;
    Ok(Fingerprint {
        dimension: krull_dimension(&gb.leading_monomials(), nvars),
        series,
    })
}

pub fn fingerprint(gens: &[Polynomial], nvars: usize, weights: &[i64]) -> Result<Fingerprint, FingerprintError> {
    check_weights(gens, nvars, weights)?;
    let gb = groebner(gens, &MonomialOrder::GrevLex, nvars)?;
    from_basis(&gb, nvars, weights)
}

/// All gradings using each value of `multiset` once (up to repeated values)
/// for which every generator is homogeneous, in lexicographic order.
pub fn weight_assignments(gens: &[Polynomial], nvars: usize, multiset: &[i64]) -> Vec<Vec<i64>> {
    assert_eq!(multiset.len(), nvars, "one weight per variable");
    let gens: Vec<&Polynomial> = gens.iter().filter(|p| !p.is_zero()).collect();
    // A generator can be tested once its last variable has a weight.
    let mut ready: Vec<Vec<&Polynomial>> = vec![Vec::new(); nvars];
    for g in &gens {
        if let Some(v) = g.terms().iter().flat_map(|(m, _)| m.support()).max() {
            ready[v].push(g);
        }
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &w in multiset {
        *counts.entry(w).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; nvars];
    fn go(
        v: usize,
        current: &mut Vec<i64>,
        counts: &mut BTreeMap<i64, usize>,
        ready: &[Vec<&Polynomial>],
        out: &mut Vec<Vec<i64>>,
    ) {
        if v == current.len() {
            out.push(current.clone());
            return;
        }
        let values: Vec<i64> = counts.iter().filter(|(_, &c)| c > 0).map(|(&w, _)| w).collect();
        for w in values {
            current[v] = w;
            // unassigned variables never occur in the generators tested here
            if ready[v].iter().all(|g| g.weight(current).is_some()) {
                *counts.get_mut(&w).unwrap() -= 1;
                go(v + 1, current, counts, ready, out);
                *counts.get_mut(&w).unwrap() += 1;
            }
        }
        current[v] = 0;
    }
    go(0, &mut current, &mut counts, &ready, &mut out);
    out
}

/// Outcome of comparing a computed ideal with a published one.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub ours: Fingerprint,
    pub theirs_dimension: Option<usize>,
    /// Gradings of the published generators compatible with our weights.
    pub candidates: usize,
    /// First candidate grading under which the series agree.
    pub matching: Option<Vec<i64>>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.matching.is_some() && self.theirs_dimension == self.ours.dimension
    }
}

/// Compares `ours` (graded by `weights`) with the published generators
/// `theirs`, trying every grading of `theirs` by the same weight multiset.
pub fn compare(
    ours: &[Polynomial],
    weights: &[i64],
    theirs: &[Polynomial],
    nvars: usize,
) -> Result<Comparison, FingerprintError> {
    let mine = fingerprint(ours, nvars, weights)?;
    // The leading monomials of a GrevLex basis serve every grading under
    // which the ideal is homogeneous.
    let gb = groebner(theirs, &MonomialOrder::GrevLex, nvars)?;
    let theirs_dimension = krull_dimension(&gb.leading_monomials(), nvars);
    let cands = weight_assignments(theirs, nvars, weights);
    let mut matching = None;
    for w in &cands {
        let fp = from_basis(&gb, nvars, w)?;
        if fp.matches(&mine) {
            matching = Some(w.clone());
            break;
        }
    }
    Ok(Comparison {
        ours: mine,
        theirs_dimension,
        candidates: cands.len(),
        matching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use invdef_core::algebra::Ring;

    fn ps(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| r.parse(x).unwrap()).collect()
    }

    #[test]
    fn assignments_respect_homogeneity() {
        let r = Ring::new(&["a", "b", "c"]).unwrap();
        let g = ps(&r, &["a*b-c"]);
        let got = weight_assignments(&g, 3, &[1, 1, 2]);
        assert_eq!(got, vec![vec![1, 1, 2]]);
        let got = weight_assignments(&g, 3, &[1, 2, 3]);
        assert_eq!(got, vec![vec![1, 2, 3], vec![2, 1, 3]]);
        assert!(weight_assignments(&g, 3, &[1, 1, 1]).is_empty());
    }

    #[test]
    fn coordinate_change_is_invisible() {
        let r = Ring::new(&["s", "t", "u"]).unwrap();
        let a = ps(&r, &["s*t-u^2"]);
        let b = ps(&r, &["s*u+t^2-s^2"]);
        let c = compare(&a, &[1, 1, 1], &b, 3).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn different_degrees_are_seen() {
        let r = Ring::new(&["s", "t"]).unwrap();
        let a = ps(&r, &["s*t"]);
        let b = ps(&r, &["s^3-t"]);
        let c = compare(&a, &[1, 2], &b, 2).unwrap();
        assert_eq!(c.candidates, 0);
        assert!(!c.passed());
    }

    #[test]
    fn series_needs_the_right_grading() {
        // (t4 - t5)(t1, t2) with weights forced by ours: t4, t5 of weight 1
        let r = Ring::new(&["t1", "t2", "t3", "t4", "t5"]).unwrap();
        let theirs = ps(&r, &["t2*t4-t2*t5", "t1*t4-t1*t5"]);
        let ours = ps(&r, &["t1*t3^2-t1*t4", "t1*t5"]);
        let c = compare(&ours, &[1, 2, 1, 2, 2], &theirs, 5).unwrap();
        assert!(c.passed(), "{c:?}");
        let w = c.matching.unwrap();
        assert_eq!((w[3], w[4]), (1, 1));
    }
}
