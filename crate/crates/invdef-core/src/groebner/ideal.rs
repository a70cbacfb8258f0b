use super::engine::{buchberger, Basis, GbError, Input, Settings, Strategy, Vector};
use crate::algebra::{Monomial, MonomialOrder, Polynomial};

/// Reduced Gröbner basis of a polynomial ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    basis: Basis,
    ngens: usize,
}

pub fn groebner(gens: &[Polynomial], order: &MonomialOrder, nvars: usize) -> Result<GroebnerBasis, GbError> {
    groebner_with(gens, order, nvars, Strategy::Normal, false)
}

/// Gröbner basis recording, for each element, its expression in `gens`.
pub fn groebner_tracked(
    gens: &[Polynomial],
    order: &MonomialOrder,
    nvars: usize,
) -> Result<GroebnerBasis, GbError> {
    groebner_with(gens, order, nvars, Strategy::Normal, true)
}

pub fn groebner_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    nvars: usize,
    strategy: Strategy,
    track: bool,
) -> Result<GroebnerBasis, GbError> {
    let n = gens.len();
    let inputs = gens
        .iter()
        .enumerate()
        .map(|(i, g)| Input {
            v: Vector::from_poly(g, order),
            cof: track.then(|| {
                let mut c = vec![Polynomial::zero(); n];
                c[i] = Polynomial::one(nvars);
                c
            }),
            group: None,
        })
        .collect();
    let settings = Settings {
        strategy,
        track: track.then_some(n),
        ..Settings::default()
    };
    let basis = buchberger(inputs, order, nvars, 1, &settings)?;
    Ok(GroebnerBasis { basis, ngens: n })
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.basis.order
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.basis.elems.iter().map(|e| e.v.to_poly()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.elems.iter().any(|e| e.lead().0.is_one())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.elems.iter().map(|e| e.lead().0.clone()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.basis.reduce(Vector::from_poly(p, &self.basis.order)).to_poly()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_all(&self, ps: &[Polynomial]) -> bool {
        ps.iter().all(|p| self.contains(p))
    }

    /// Cofactors `c` with `p = sum c_i gens_i`, if `p` lies in the ideal.
    /// Requires a tracked basis.
    pub fn lift(&self, p: &Polynomial) -> Option<Vec<Polynomial>> {
        let (r, c) = self
            .basis
            .reduce_tracked(Vector::from_poly(p, &self.basis.order));
        if r.is_zero() {
            Some(c)
        } else {
            None
        }
    }

    /// Expression of each basis element in the original generators.
    pub fn transformation(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .elems
            .iter()
            .map(|e| e.cof.clone().unwrap_or_else(|| vec![Polynomial::zero(); self.ngens]))
            .collect()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.basis.is_standard(m, 0)
    }

    /// Standard monomials of the given weight; weights must be positive.
    pub fn standard_monomials_of_weight(&self, weights: &[i64], w: i64) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = Monomial::all_of_weight(weights, w)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        v.sort_by(|a, b| self.basis.order.cmp(b, a));
        v
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }
}

pub fn ideal_contains(big: &GroebnerBasis, small: &[Polynomial]) -> bool {
    big.contains_all(small)
}

/// Equality of ideals via their reduced GrevLex bases.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial], nvars: usize) -> Result<bool, GbError> {
    let ga = groebner(a, &MonomialOrder::GrevLex, nvars)?;
    let gb = groebner(b, &MonomialOrder::GrevLex, nvars)?;
    Ok(ga.polys() == gb.polys())
}

/// Generators of the elimination ideal `I ∩ k[x_i : !mask_i]`, expressed in
/// the original ring.
pub fn eliminate(gens: &[Polynomial], mask: &[bool], nvars: usize) -> Result<Vec<Polynomial>, GbError> {
    let gb = groebner(gens, &MonomialOrder::Elimination(mask.to_vec()), nvars)?;
    Ok(gb
        .polys()
        .into_iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| m.exps().iter().zip(mask).all(|(&e, &x)| !x || e == 0))
        })
        .collect())
}

/// `I ∩ J` by eliminating `u` from `u I + (1 - u) J`.
pub fn intersect(a: &[Polynomial], b: &[Polynomial], nvars: usize) -> Result<Vec<Polynomial>, GbError> {
    let n = nvars + 1;
    let u = Polynomial::var(n, nvars);
    let one_minus_u = &Polynomial::one(n) - &u;
    let mut gens = Vec::new();
    for p in a {
        gens.push(&u * &p.extend_vars(1));
    }
    for p in b {
        gens.push(&one_minus_u * &p.extend_vars(1));
    }
    let mut mask = vec![false; n];
    mask[nvars] = true;
    let elim = eliminate(&gens, &mask, n)?;
    Ok(elim
        .into_iter()
        .map(|p| p.map_monomials(|m| m.split(nvars).0))
        .collect())
}
