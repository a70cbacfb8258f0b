use super::monomial::Monomial;
use std::cmp::Ordering;

/// Monomial orders. `cmp(a, b) == Greater` means `a` is the larger
/// (leading) monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Larger weight first, ties broken by GrevLex. Weights may be negative;
    /// such orders are only used on homogeneous input.
    WeightGrevLex(Vec<i64>),
    /// Variables flagged `true` form an outer block compared first by
    /// GrevLex restricted to them; the remaining variables are compared
    /// by GrevLex afterwards.
    Elimination(Vec<bool>),
}

pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.degree(), b.degree());
    if da != db {
        return da.cmp(&db);
    }
    let (ea, eb) = (a.exps(), b.exps());
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

fn masked_grevlex(a: &Monomial, b: &Monomial, mask: &[bool], want: bool) -> Ordering {
    let (ea, eb) = (a.exps(), b.exps());
    let mut da = 0u32;
    let mut db = 0u32;
    for i in 0..ea.len() {
        if mask[i] == want {
            da += ea[i] as u32;
            db += eb[i] as u32;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..ea.len()).rev() {
        if mask[i] == want && ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::WeightGrevLex(w) => {
                a.weight(w).cmp(&b.weight(w)).then_with(|| grevlex_cmp(a, b))
            }
            MonomialOrder::Elimination(mask) => masked_grevlex(a, b, mask, true)
                .then_with(|| masked_grevlex(a, b, mask, false)),
        }
    }

    /// True when every variable is larger than one, so that Buchberger's
    /// algorithm terminates on arbitrary input.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::WeightGrevLex(w) => w.iter().all(|&x| x >= 0),
            _ => true,
        }
    }

    /// A key whose lexicographic comparison agrees with `cmp`.
    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let e = m.exps();
        let grevlex = |mask: Option<(&[bool], bool)>| -> Vec<i64> {
            let keep = |i: usize| mask.is_none_or(|(mk, want)| mk[i] == want);
            let mut k = Vec::with_capacity(e.len() + 1);
            k.push((0..e.len()).filter(|&i| keep(i)).map(|i| e[i] as i64).sum());
            for i in (0..e.len()).rev() {
                if keep(i) {
                    k.push(-(e[i] as i64));
                }
            }
            k
        };
        match self {
            MonomialOrder::Lex => e.iter().map(|&x| x as i64).collect(),
            MonomialOrder::GrevLex => grevlex(None),
            MonomialOrder::WeightGrevLex(w) => {
                let mut k = vec![m.weight(w)];
                k.extend(grevlex(None));
                k
            }
            MonomialOrder::Elimination(mask) => {
                let mut k = grevlex(Some((mask, true)));
                k.extend(grevlex(Some((mask, false))));
                k
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = MonomialOrder::Elimination(vec![true, false]);
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn keys_agree_with_cmp() {
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::WeightGrevLex(vec![-1, 2, 0]),
            MonomialOrder::Elimination(vec![false, true, true]),
        ];
        let mons = Monomial::all_of_degree(3, 2)
            .into_iter()
            .chain(Monomial::all_of_degree(3, 3))
            .collect::<Vec<_>>();
        for o in &orders {
            for a in &mons {
                for b in &mons {
                    assert_eq!(o.cmp(a, b), o.key(a).cmp(&o.key(b)), "{o:?} {a:?} {b:?}");
                }
            }
        }
    }
}
