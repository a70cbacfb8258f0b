use smallvec::SmallVec;

pub type Exps = SmallVec<[u8; 32]>;

/// Exponent vector of a power product. All monomials combined in one
/// operation must have the same number of variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(e: &[u32]) -> Self {
        Monomial(
            e.iter()
                .map(|&x| u8::try_from(x).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn from_slice(e: &[u8]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.0[i] = u8::try_from(e).expect("exponent overflow");
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weight(&self, w: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(w)
            .map(|(&e, &wi)| e as i64 * wi)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(&a, &b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i mod 64` is set when variable `i` occurs.
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Appends `extra` zero exponents.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    /// Splits into the first `k` exponents and the rest.
    pub fn split(&self, k: usize) -> (Monomial, Monomial) {
        (
            Monomial(SmallVec::from_slice(&self.0[..k])),
            Monomial(SmallVec::from_slice(&self.0[k..])),
        )
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        Monomial(e)
    }

    /// All monomials in `nvars` variables of total degree `d`.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exps(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of the given positive weight. Every weight must be positive.
    pub fn all_of_weight(weights: &[i64], w: i64) -> Vec<Monomial> {
        assert!(weights.iter().all(|&x| x > 0), "weights must be positive");
        let n = weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(
            i: usize,
            left: i64,
            weights: &[i64],
            cur: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if i == weights.len() {
                if left == 0 {
                    out.push(Monomial::from_exps(cur));
                }
                return;
            }
            let max = left / weights[i];
            for e in (0..=max).rev() {
                cur[i] = e as u32;
                rec(i + 1, left - e * weights[i], weights, cur, out);
            }
            cur[i] = 0;
        }
        if w < 0 {
            return out;
        }
        rec(0, w, weights, &mut cur, &mut out);
        out
    }
}
