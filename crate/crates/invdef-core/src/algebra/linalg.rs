//! Exact linear algebra over the rationals.

use super::rational::{self, Rational};
use std::collections::{BTreeMap, HashMap};
use std::ops::Bound;

/// Sparse vector indexed by an ordered key.
pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    if rational::is_zero(a) {
        return;
    }
    for (k, v) in x {
        let add = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += add;
                if rational::is_zero(e) {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), add);
            }
        }
    }
}

pub fn scale_vec<K: Ord + Clone>(x: &SparseVec<K>, a: &Rational) -> SparseVec<K> {
    if rational::is_zero(a) {
        return SparseVec::new();
    }
    x.iter().map(|(k, v)| (k.clone(), v * a)).collect()
}

struct Row<K> {
    vec: SparseVec<K>,
    /// The row as a combination of the inserted vectors.
    comb: SparseVec<usize>,
}

/// Incremental triangular basis. Each stored row is normalized so that its
/// smallest key (the pivot) has coefficient one; reducing a vector sweeps its
/// keys in increasing order.
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: HashMap<K, usize>,
    inserted: usize,
    track: bool,
}

pub enum Insert {
    /// The vector was independent; the value is its index among the
    /// independent vectors.
    Independent(usize),
    /// The vector was dependent: `v = sum comb[i] * input_i` over previously
    /// inserted inputs (all insertion indices, tracked only when enabled).
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone + std::hash::Hash> Echelon<K> {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
            inserted: 0,
            track,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination of stored rows subtracted (in terms of inputs).
    fn reduce_inner(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut comb = SparseVec::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.iter().next().map(|(k, c)| (k.clone(), c.clone())),
                Some(c) => v
                    .range((Bound::Excluded(c.clone()), Bound::Unbounded))
                    .next()
                    .map(|(k, c)| (k.clone(), c.clone())),
            };
            let (k, c) = match next {
                None => break,
                Some(x) => x,
            };
            if let Some(&ri) = self.pivots.get(&k) {
                let row = &self.rows[ri];
                let neg = -&c;
                axpy(&mut v, &neg, &row.vec);
                if self.track {
                    axpy(&mut comb, &c, &row.comb);
                }
            }
            cursor = Some(k);
        }
        (v, comb)
    }

    pub fn reduce(&self, v: SparseVec<K>) -> SparseVec<K> {
        self.reduce_inner(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce_inner(v.clone()).0.is_empty()
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` is in the
    /// span. Requires tracking.
    pub fn express(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        assert!(self.track, "express requires tracking");
        let (r, comb) = self.reduce_inner(v.clone());
        if r.is_empty() {
            Some(comb)
        } else {
            None
        }
    }

    pub fn insert(&mut self, v: SparseVec<K>) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let (r, comb) = self.reduce_inner(v);
        if r.is_empty() {
            return Insert::Dependent(comb);
        }
        let (pk, pc) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = rational::inv(&pc);
        let vec = scale_vec(&r, &inv);
        let mut rc = SparseVec::new();
        if self.track {
            rc.insert(id, rational::one());
            axpy(&mut rc, &rational::int(-1), &comb);
            rc = scale_vec(&rc, &inv);
        }
        self.pivots.insert(pk, self.rows.len());
        self.rows.push(Row { vec, comb: rc });
        Insert::Independent(self.rows.len() - 1)
    }

    pub fn pivot_keys(&self) -> Vec<K> {
        self.rows
            .iter()
            .map(|r| r.vec.keys().next().unwrap().clone())
            .collect()
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(rational::is_zero)
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows);
        let mut r = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if rational::is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !rational::is_zero(b) {
                        let idx = i * r.cols + j;
                        r.data[idx] += a * b;
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let p = (r..m.rows).find(|&i| !rational::is_zero(m.get(i, c)));
            let p = match p {
                None => continue,
                Some(p) => p,
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = rational::inv(m.get(r, c));
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || rational::is_zero(m.get(i, c)) {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    if rational::is_zero(m.get(r, j)) {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![rational::zero(); self.cols];
            v[f] = rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f);
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn echelon_detects_dependency_with_coordinates() {
        let mut e: Echelon<u32> = Echelon::new(true);
        let v0: SparseVec<u32> = [(0, int(1)), (1, int(2))].into_iter().collect();
        let v1: SparseVec<u32> = [(1, int(1)), (2, int(1))].into_iter().collect();
        assert!(matches!(e.insert(v0.clone()), Insert::Independent(0)));
        assert!(matches!(e.insert(v1.clone()), Insert::Independent(1)));
        let mut w = scale_vec(&v0, &int(3));
        axpy(&mut w, &frac(-1, 2), &v1);
        match e.insert(w) {
            Insert::Dependent(c) => {
                assert_eq!(c.get(&0), Some(&int(3)));
                assert_eq!(c.get(&1), Some(&frac(-1, 2)));
            }
            _ => panic!("expected dependency"),
        }
    }

    #[test]
    fn dense_kernel_and_inverse() {
        let m = QMatrix::from_rows(vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        let a = QMatrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), QMatrix::identity(2));
    }
}
