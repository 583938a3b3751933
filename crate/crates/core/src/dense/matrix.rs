use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::scalar::{cabs, Real};

/// Square row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::default(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn map<U: Copy + Default>(&self, mut f: impl FnMut(T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.data.swap(a * self.n + j, b * self.n + j);
            }
        }
    }
}

impl<T: Real> DenseMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn frobenius_norm(&self) -> T {
        let mut s = T::zero();
        for &x in &self.data {
            s += x * x;
        }
        s.sqrt()
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.n {
            t += self[(i, i)];
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out[(i, j)] + a * rhs[(k, j)];
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn to_complex(&self) -> DenseMatrix<Complex<T>> {
        self.map(|x| Complex::new(x, T::zero()))
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }
}

impl<T: Real> DenseMatrix<Complex<T>> {
    pub fn frobenius_norm_c(&self) -> T {
        let mut s = T::zero();
        for z in &self.data {
            s += z.re * z.re + z.im * z.im;
        }
        s.sqrt()
    }

    pub fn max_abs_diff_c(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max(cabs(a - b)))
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}
