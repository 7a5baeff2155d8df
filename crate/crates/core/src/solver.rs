//! Dense exact linear algebra over Q(ω).

pub mod modular;

use std::fmt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![CycloNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloNum::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycloNum) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self − λ·I`.
    pub fn shift(&self, lambda: &CycloNum) -> ExactMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let d = &m.data[i * self.cols + i] - lambda;
            m.set(i, i, d);
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j);
                if !x.is_zero() {
                    let y = x * &inv;
                    m.set(r, j, y);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = m.get(i, j) - &(&f * x);
                        m.set(i, j, y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : M v = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<CycloNum>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycloNum::zero(); self.cols];
                v[f] = CycloNum::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Unique solution of `M x = b`.
    pub fn solve(&self, b: &[CycloNum]) -> Result<Vec<CycloNum>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = ExactMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                cols: self.cols,
            });
        }
        Ok((0..self.cols).map(|i| r.get(i, self.cols).clone()).collect())
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let aug = ExactMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                CycloNum::one()
            } else {
                CycloNum::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::RankDeficient {
                rank: pivots.iter().filter(|&&c| c < n).count(),
                cols: n,
            });
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> CycloNum {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = CycloNum::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return CycloNum::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for j in c..n {
                    let x = m.get(c, j);
                    if !x.is_zero() {
                        let y = m.get(i, j) - &(&f * x);
                        m.set(i, j, y);
                    }
                }
            }
        }
        det
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> CycloNum {
        CycloNum::from_ints(a, b)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(ExactMatrix::identity(3).nullspace().is_empty());
        assert_eq!(ExactMatrix::zeros(2, 2).nullspace().len(), 2);
    }

    #[test]
    fn solve_cases() {
        let b = vec![c(1, 2), c(-3, 0), c(0, 5)];
        assert_eq!(ExactMatrix::identity(3).solve(&b).unwrap(), b);
        let m = ExactMatrix::from_rows(vec![vec![c(1, 0)], vec![c(0, 1)]]);
        assert!(matches!(m.solve(&[c(1, 0), c(1, 0)]), Err(Error::Inconsistent)));
        assert_eq!(m.solve(&[c(2, 0), c(0, 2)]).unwrap(), vec![c(2, 0)]);
        let z = ExactMatrix::from_rows(vec![vec![c(1, 0), c(1, 0)], vec![c(2, 0), c(2, 0)]]);
        assert!(matches!(
            z.solve(&[c(1, 0), c(2, 0)]),
            Err(Error::RankDeficient { rank: 1, cols: 2 })
        ));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = ExactMatrix::from_rows(vec![
            vec![c(1, 1), c(2, 0), c(0, 0)],
            vec![c(0, 1), c(0, 0), c(3, -1)],
            vec![c(1, 0), c(1, 1), c(1, 0)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(3));
        let d = m.determinant();
        assert_eq!(&d * &inv.determinant(), CycloNum::one());
        assert!(ExactMatrix::zeros(2, 2).inverse().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, k)| {
                proptest::collection::vec((-2i64..3, -2i64..3), r * k).prop_map(move |v| {
                    ExactMatrix::from_fn(r, k, |i, j| {
                        let (a, b) = v[i * k + j];
                        c(a, b)
                    })
                })
            })
        }

        proptest! {
            #[test]
            fn kernel_vectors_are_annihilated(m in arb_matrix()) {
                let ns = m.nullspace();
                for v in &ns {
                    prop_assert!(m.mul_vec(v).iter().all(CycloNum::is_zero));
                }
                prop_assert_eq!(ns.len() + m.rank(), m.cols());
            }

            #[test]
            fn rank_matches_independent_elimination(m in arb_matrix()) {
                // rank via determinant-free check: rank(M) = rank(Mᵀ)
                let t = ExactMatrix::from_fn(m.cols(), m.rows(), |i, j| m.get(j, i).clone());
                prop_assert_eq!(m.rank(), t.rank());
            }
        }
    }
}
