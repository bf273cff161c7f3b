//! Dense complex matrices sized for few-qubit problems.
//!
//! Storage is row-major and every operation allocates a fresh result. Nothing
//! here is larger than 8x8 in practice, so there is no blocking or sparsity.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::BadShape {
                rows,
                cols,
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("ComplexMatrix::new"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::BadShape {
                rows: rows.len(),
                cols: ncols,
                expected: rows.len() * ncols,
                actual: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(rows.len(), ncols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (k, &z) in diag.iter().enumerate() {
            m[(k, k)] = z;
        }
        m
    }

    /// Outer product `|v><w|`.
    pub fn outer(v: &[Complex<T>], w: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (r, a) in v.iter().enumerate() {
            for (c, b) in w.iter().enumerate() {
                m[(r, c)] = a * b.conj();
            }
        }
        m
    }

    /// Pauli X.
    pub fn sigma_x() -> Self {
        let (o, l) = (
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::one(), T::zero()),
        );
        Self {
            rows: 2,
            cols: 2,
            data: vec![o, l, l, o],
        }
    }

    /// Pauli Z.
    pub fn sigma_z() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::from_diagonal(&[one, -one])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols))
            .map(|k| self[(k, k)])
            .collect()
    }

    /// Standard matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o = *o + a * b;
                }
            }
        }
        out.ensure_finite("matmul")?;
        Ok(out)
    }

    /// Kronecker product with block layout `self[r][c] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                for br in 0..other.rows {
                    for bc in 0..other.cols {
                        out[(ar * other.rows + br, ac * other.cols + bc)] = a * other[(br, bc)];
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Result<Complex<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "trace",
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self
            .diagonal()
            .into_iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z))
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: T) -> Self {
        self.scale(Complex::new(k, T::zero()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Max-norm of `self - other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).map_or(T::infinity(), |d| d.max_norm())
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// True iff `max |a^dag a - I| <= tol`. Non-square input is never unitary.
    pub fn is_unitary(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        match self.dagger().matmul(self) {
            Ok(p) => p.approx_eq(&Self::identity(self.rows), tol),
            Err(_) => false,
        }
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.is_square() && self.approx_eq(&self.dagger(), tol)
    }

    /// `self * x * self^dag`.
    pub fn conjugate(&self, x: &Self) -> Result<Self> {
        self.matmul(x)?.matmul(&self.dagger())
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn ensure_finite(&self, op: &'static str) -> Result<()> {
        if self
            .data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::NonFinite(op))
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = &self[(r, c)];
                write!(f, "{:+.4?}{:+.4?}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> M {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        M::from_rows(&rows).unwrap()
    }

    fn diag(d: &[f64]) -> M {
        M::from_diagonal(&d.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn matmul_examples() {
        let z = M::sigma_z();
        assert_eq!(M::identity(2).matmul(&z).unwrap(), z);
        assert_eq!(z.matmul(&z).unwrap(), M::identity(2));
        let xz = M::sigma_x().matmul(&z).unwrap();
        assert_eq!(xz, real(&[&[0.0, -1.0], &[1.0, 0.0]]));
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = M::zeros(2, 3);
        let err = a.matmul(&M::zeros(2, 3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { op: "matmul", .. }));
    }

    #[test]
    fn kron_examples() {
        let z = M::sigma_z();
        let i2 = M::identity(2);
        assert_eq!(i2.kron(&i2), M::identity(4));
        assert_eq!(z.kron(&z), diag(&[1.0, -1.0, -1.0, 1.0]));
        assert_eq!(
            z.kron(&i2).kron(&z),
            diag(&[1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0, 1.0])
        );
        let rect = M::zeros(2, 3).kron(&M::zeros(3, 1));
        assert_eq!((rect.rows(), rect.cols()), (6, 3));
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(M::identity(2).dagger(), M::identity(2));
        let a = M::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let expect = M::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, -1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(a.dagger(), expect);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(M::identity(8).trace().unwrap(), c(8.0, 0.0));
        assert_eq!(M::sigma_z().trace().unwrap(), c(0.0, 0.0));
        let mut e0 = vec![c(0.0, 0.0); 8];
        e0[0] = c(1.0, 0.0);
        assert_eq!(M::outer(&e0, &e0).trace().unwrap(), c(1.0, 0.0));
        assert!(matches!(
            M::zeros(2, 3).trace(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn unitary_examples() {
        assert!(M::sigma_x().is_unitary(1e-12));
        assert!(!M::identity(2).scale_real(0.5).is_unitary(1e-12));
        assert!(!M::zeros(2, 3).is_unitary(1e-12));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            M::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::BadShape { .. })
        ));
        assert!(matches!(M::new(0, 2, vec![]), Err(Error::BadShape { .. })));
        assert!(matches!(
            M::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(_))
        ));
        assert!(M::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
    }

    #[test]
    fn matmul_overflow_is_reported() {
        let big = M::identity(1).scale_real(f64::MAX);
        assert!(matches!(big.matmul(&big), Err(Error::NonFinite("matmul"))));
    }

    fn matrix(n: usize, m: usize) -> impl Strategy<Value = M> {
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n * m)
            .prop_map(move |v| M::new(n, m, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn trace_is_cyclic(a in matrix(3, 4), b in matrix(4, 3)) {
            let ab = a.matmul(&b).unwrap().trace().unwrap();
            let ba = b.matmul(&a).unwrap().trace().unwrap();
            prop_assert!((ab - ba).norm() < 1e-12);
        }

        #[test]
        fn kron_is_associative(a in matrix(2, 2), b in matrix(2, 1), cc in matrix(1, 2)) {
            let l = a.kron(&b).kron(&cc);
            let r = a.kron(&b.kron(&cc));
            prop_assert!(l.approx_eq(&r, 1e-12));
        }

        #[test]
        fn dagger_reverses_products(a in matrix(3, 2), b in matrix(2, 4)) {
            let l = a.matmul(&b).unwrap().dagger();
            let r = b.dagger().matmul(&a.dagger()).unwrap();
            prop_assert!(l.approx_eq(&r, 1e-12));
            prop_assert_eq!(a.dagger().dagger(), a);
        }
    }
}
