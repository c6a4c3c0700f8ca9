//! Dense square matrices, generic over the scalar kernel.

use num_complex::Complex64;

use super::exact::ExactScalar;

/// Ring operations a matrix kernel must supply.
///
/// Implemented by [`ExactScalar`] (exact) and [`Complex64`] (float).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ExactScalar::conj(self)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        ExactScalar::to_complex(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Row-major dense square matrix.
///
/// Dimensions are unrestricted here; the kernel-tagged [`super::UMatrix`]
/// wrapper enforces the supported gate dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SquareMatrix<S> {
    pub fn new(dim: usize, entries: Vec<S>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim²");
        SquareMatrix { dim, entries }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| S::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product needs equal dims");
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            let mut acc = S::zero();
            for k in 0..n {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn scaled(&self, factor: &S) -> Self {
        Self::from_fn(self.dim, |i, j| factor.mul(self.get(i, j)))
    }

    /// Kronecker product; `self` indexes the more-significant block.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        Self::from_fn(n * m, |i, j| {
            self.get(i / m, j / m).mul(rhs.get(i % m, j % m))
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Determinant by cofactor expansion along the first row.
    ///
    /// Division-free, so exact kernels stay in the ring. Fine for the
    /// dimensions this crate works at.
    pub fn determinant(&self) -> S {
        match self.dim {
            0 => S::one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = S::zero();
                for j in 0..self.dim {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let term = self.get(0, j).mul(&self.minor(0, j).determinant());
                    acc = if j % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.dim - 1;
        Self::from_fn(n, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.get(si, sj).clone()
        })
    }

    /// Largest entrywise absolute difference, evaluated in floating point.
    pub fn max_abs_diff<T: Scalar>(&self, rhs: &SquareMatrix<T>) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self.get(i, j).to_complex() - rhs.get(i, j).to_complex()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn to_float(&self) -> SquareMatrix<Complex64> {
        SquareMatrix::from_fn(self.dim, |i, j| self.get(i, j).to_complex())
    }
}
