//! Validated density matrices.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Hermitian, unit-trace matrix that passes a cheap positivity smoke test.
///
/// Positivity is checked on the diagonal and on every 2x2 principal minor,
/// not through a full eigen-decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(mat, T::default_tolerance())
    }

    pub fn with_tolerance(mat: ComplexMatrix<T>, tol: T) -> Result<Self> {
        validate(&mat, tol)?;
        Ok(Self { mat })
    }

    /// `|psi><psi|` for a normalised state vector.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi, psi))
    }

    /// Random state `G G^dag / tr(G G^dag)`, `G` having entries uniform in the unit square.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let data = (0..dim * dim)
            .map(|_| {
                Complex::new(
                    T::lit(rng.gen_range(-1.0..1.0)),
                    T::lit(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let g = ComplexMatrix::new(dim, dim, data).expect("finite entries");
        let gg = g.matmul(&g.dagger()).expect("square");
        let tr = gg.trace().expect("square").re;
        let mat = gg.scale_real(T::one() / tr);
        // Re-symmetrise so that rounding in the product cannot trip validation.
        let mat = mat.add(&mat.dagger()).unwrap().scale_real(T::lit(0.5));
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    /// `<psi| rho |psi>`, real part.
    pub fn expectation(&self, psi: &[Complex<T>]) -> T {
        let n = self.dim();
        let mut acc = Complex::new(T::zero(), T::zero());
        for r in 0..n {
            for c in 0..n {
                acc = acc + psi[r].conj() * self.mat[(r, c)] * psi[c];
            }
        }
        acc.re
    }

    /// Populations on the computational basis.
    pub fn populations(&self) -> Vec<T> {
        self.mat.diagonal().into_iter().map(|z| z.re).collect()
    }
}

fn validate<T: Real>(mat: &ComplexMatrix<T>, tol: T) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::InvalidDensity(format!(
            "matrix is {}x{}, not square",
            mat.rows(),
            mat.cols()
        )));
    }
    if !mat.is_hermitian(tol) {
        return Err(Error::InvalidDensity(format!(
            "not Hermitian (defect {:e})",
            mat.max_abs_diff(&mat.dagger()).to_f64_lossy()
        )));
    }
    let tr = mat.trace()?;
    if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
        return Err(Error::InvalidDensity(format!(
            "trace is {}{:+}i, expected 1",
            tr.re, tr.im
        )));
    }
    let n = mat.rows();
    for i in 0..n {
        let d = mat[(i, i)].re;
        if d < -tol {
            return Err(Error::InvalidDensity(format!(
                "negative population {d} at {i}"
            )));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let minor = mat[(i, i)].re * mat[(j, j)].re - mat[(i, j)].norm_sqr();
            if minor < -tol {
                return Err(Error::InvalidDensity(format!(
                    "principal minor ({i},{j}) is {minor}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepts_pure_and_random_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::pure(&[c(h, 0.0), c(0.0, h)]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert!((rho.expectation(&[c(h, 0.0), c(0.0, h)]) - 1.0).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [2, 4, 8] {
            let r = DensityMatrix::<f64>::random(dim, &mut rng);
            DensityMatrix::new(r.matrix().clone()).unwrap();
        }
    }

    #[test]
    fn rejects_each_failure_mode() {
        let m = |rows: Vec<Vec<Complex64>>| ComplexMatrix::from_rows(&rows).unwrap();
        let not_herm = m(vec![
            vec![c(0.5, 0.0), c(0.1, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ]);
        let bad_trace = m(vec![
            vec![c(0.6, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.6, 0.0)],
        ]);
        let neg_pop = m(vec![
            vec![c(1.5, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-0.5, 0.0)],
        ]);
        let bad_minor = m(vec![
            vec![c(0.5, 0.0), c(0.9, 0.0)],
            vec![c(0.9, 0.0), c(0.5, 0.0)],
        ]);
        for bad in [not_herm, bad_trace, neg_pop, bad_minor] {
            assert!(matches!(
                DensityMatrix::new(bad),
                Err(Error::InvalidDensity(_))
            ));
        }
        assert!(DensityMatrix::new(ComplexMatrix::<f64>::zeros(2, 3)).is_err());
    }
}
