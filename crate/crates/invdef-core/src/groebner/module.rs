//! Submodules `M = <rows> + I * P^r` of a free module, with lifting of
//! members back to the rows and to the generators of `I`.

use super::engine::{buchberger, Basis, GbError, Input, Settings, Vector};
use super::ideal::GroebnerBasis;
use crate::algebra::{Monomial, MonomialOrder, Polynomial};

/// Raised by [`ModuleBasis::lift`] when the vector is not in the submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInImage {
    pub remainder: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct ModuleBasis {
    basis: Basis,
    rows: Vec<Vec<Polynomial>>,
    ideal: Option<GroebnerBasis>,
}

impl ModuleBasis {
    /// Gröbner basis of the submodule of `P^rank` spanned by `rows` and, if
    /// given, by `I e_j` for every component `j`. The ideal basis must use
    /// the same order; it should be tracked when [`Self::lift_full`] is used.
    pub fn new(
        rows: &[Vec<Polynomial>],
        ideal: Option<&GroebnerBasis>,
        order: &MonomialOrder,
        nvars: usize,
        rank: usize,
    ) -> Result<Self, GbError> {
        let q = rows.len();
        let mut inputs = Vec::new();
        if let Some(gb) = ideal {
            assert_eq!(gb.order(), order, "ideal basis uses a different order");
            for g in gb.polys() {
                for j in 0..rank {
                    let mut v = vec![Polynomial::zero(); rank];
                    v[j] = g.clone();
                    inputs.push(Input {
                        v: Vector::from_polys(&v, order),
                        cof: None,
                        group: Some(0),
                    });
                }
            }
        }
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rank);
            let mut cof = vec![Polynomial::zero(); q];
            cof[i] = Polynomial::one(nvars);
            inputs.push(Input {
                v: Vector::from_polys(r, order),
                cof: Some(cof),
                group: None,
            });
        }
        let settings = Settings {
            track: Some(q),
            ..Settings::default()
        };
        let basis = buchberger(inputs, order, nvars, rank, &settings)?;
        Ok(ModuleBasis {
            basis,
            rows: rows.to_vec(),
            ideal: ideal.cloned(),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.basis.order
    }

    pub fn leads(&self) -> Vec<(Monomial, u32)> {
        self.basis.leads()
    }

    pub fn is_standard(&self, m: &Monomial, k: usize) -> bool {
        self.basis.is_standard(m, k as u32)
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        self.basis
            .reduce(Vector::from_polys(v, &self.basis.order))
            .to_polys(self.basis.rank)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.basis
            .reduce(Vector::from_polys(v, &self.basis.order))
            .is_zero()
    }

    /// Normal form together with row cofactors `c`:
    /// `v = sum c_i rows_i + (element of I P^r) + remainder`.
    pub fn reduce_tracked(&self, v: &[Polynomial]) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let (r, c) = self
            .basis
            .reduce_tracked(Vector::from_polys(v, &self.basis.order));
        (r.to_polys(self.basis.rank), c)
    }

    /// Row cofactors `c` with `v - sum c_i rows_i` in `I P^r`.
    pub fn lift(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, NotInImage> {
        let (r, c) = self.reduce_tracked(v);
        if r.iter().all(|p| p.is_zero()) {
            Ok(c)
        } else {
            Err(NotInImage { remainder: r })
        }
    }

    /// Splits `v = c * rows + sum_j (d_j * gens) e_j + r` with `r` the normal
    /// form; `d_j` are cofactors in the original generators of `I` (needs a
    /// tracked ideal basis). Returns `(r, c, d)`.
    #[allow(clippy::type_complexity)]
    pub fn decompose(&self, v: &[Polynomial]) -> (Vec<Polynomial>, Vec<Polynomial>, Vec<Vec<Polynomial>>) {
        let rank = self.basis.rank;
        let (r, c) = self.reduce_tracked(v);
        let mut rest: Vec<Polynomial> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for j in 0..rank {
                if !row[j].is_zero() {
                    rest[j] = &rest[j] - &(ci * &row[j]);
                }
            }
        }
        let mut d = Vec::with_capacity(rank);
        for p in rest {
            match &self.ideal {
                None => {
                    assert!(p.is_zero(), "nonzero ideal part without an ideal");
                    d.push(Vec::new());
                }
                Some(gb) if p.is_zero() => d.push(vec![Polynomial::zero(); gb.ngens()]),
                Some(gb) => d.push(gb.lift(&p).expect("ideal part must lie in the ideal")),
            }
        }
        (r, c, d)
    }

    /// Row cofactors together with, per component, cofactors in the original
    /// generators of `I`, so that `v = c * rows + sum_j (d_j * gens) e_j`.
    #[allow(clippy::type_complexity)]
    pub fn lift_full(&self, v: &[Polynomial]) -> Result<(Vec<Polynomial>, Vec<Vec<Polynomial>>), NotInImage> {
        let (r, c, d) = self.decompose(v);
        if r.iter().all(|p| p.is_zero()) {
            Ok((c, d))
        } else {
            Err(NotInImage { remainder: r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::groebner::groebner_tracked;

    #[test]
    fn lift_full_reconstructs_vector() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let order = MonomialOrder::GrevLex;
        let ideal = groebner_tracked(&[p("x^2"), p("x*y")], &order, 2).unwrap();
        let rows = vec![vec![p("x"), p("y")], vec![p("y"), p("0")]];
        let mb = ModuleBasis::new(&rows, Some(&ideal), &order, 2, 2).unwrap();
        let target = vec![p("x^2*y + x*y + 3*y^2"), p("y^2 + x^3")];
        let (c, d) = mb.lift_full(&target).unwrap();
        let gens = [p("x^2"), p("x*y")];
        for j in 0..2 {
            let mut acc = Polynomial::zero();
            for (ci, row) in c.iter().zip(&rows) {
                acc = &acc + &(ci * &row[j]);
            }
            for (dk, g) in d[j].iter().zip(&gens) {
                acc = &acc + &(dk * g);
            }
            assert_eq!(acc, target[j]);
        }
        assert!(mb.lift(&[p("1"), p("0")]).is_err());
    }
}
