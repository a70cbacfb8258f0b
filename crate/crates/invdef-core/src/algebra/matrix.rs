use super::linalg::QMatrix;
use super::poly::Polynomial;
use super::rational::{self, Rational};

/// Row-major matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn row(entries: Vec<Polynomial>) -> Self {
        PolyMatrix {
            rows: 1,
            cols: entries.len(),
            data: entries,
        }
    }

    pub fn column(entries: Vec<Polynomial>) -> Self {
        PolyMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Polynomial>]) -> Self {
        let mut m = PolyMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn column_vec(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vec(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut r = PolyMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    /// `Q * self` for a rational matrix `Q`.
    pub fn left_mul_q(&self, q: &QMatrix) -> PolyMatrix {
        assert_eq!(q.cols, self.rows);
        let mut r = PolyMatrix::zeros(q.rows, self.cols);
        for i in 0..q.rows {
            for k in 0..q.cols {
                let c = q.get(i, k);
                if rational::is_zero(c) {
                    continue;
                }
                for j in 0..self.cols {
                    let src = self.get(k, j);
                    if src.is_zero() {
                        continue;
                    }
                    let nv = src.nvars().unwrap();
                    let v = r
                        .get(i, j)
                        .add_scaled(src, c, &super::monomial::Monomial::one(nv));
                    r.set(i, j, v);
                }
            }
        }
        r
    }

    /// `self * Q` for a rational matrix `Q`.
    pub fn right_mul_q(&self, q: &QMatrix) -> PolyMatrix {
        assert_eq!(self.cols, q.rows);
        let mut r = PolyMatrix::zeros(self.rows, q.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let src = self.get(i, k);
                if src.is_zero() {
                    continue;
                }
                let nv = src.nvars().unwrap();
                for j in 0..q.cols {
                    let c = q.get(k, j);
                    if rational::is_zero(c) {
                        continue;
                    }
                    let v = r
                        .get(i, j)
                        .add_scaled(src, c, &super::monomial::Monomial::one(nv));
                    r.set(i, j, v);
                }
            }
        }
        r
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn rational_multiplication_matches_polynomial_multiplication() {
        let x = |i| Polynomial::var(2, i);
        let m = PolyMatrix::from_columns(2, &[vec![x(0), x(1)], vec![x(1), Polynomial::zero()]]);
        let q = QMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(0), int(-1)]]);
        let qp = PolyMatrix::from_columns(
            2,
            &[
                vec![Polynomial::one(2), Polynomial::zero()],
                vec![Polynomial::constant(2, int(2)), Polynomial::constant(2, int(-1))],
            ],
        );
        assert_eq!(m.right_mul_q(&q), m.mul(&qp));
        assert_eq!(m.left_mul_q(&q), qp.mul(&m));
    }
}
