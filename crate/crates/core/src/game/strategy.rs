use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// One player's strategy angles `(theta, alpha, beta)`.
///
/// `theta` lies in `[0, pi]`, the two phases in `[-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrategyParams<T> {
    theta: T,
    alpha: T,
    beta: T,
}

impl<T: Real> StrategyParams<T> {
    pub fn new(theta: T, alpha: T, beta: T) -> Result<Self> {
        check("theta", theta, T::zero(), T::PI())?;
        check("alpha", alpha, -T::PI(), T::PI())?;
        check("beta", beta, -T::PI(), T::PI())?;
        Ok(Self { theta, alpha, beta })
    }

    /// Classical cooperate, `(0, 0, 0)`.
    pub fn cooperate() -> Self {
        Self {
            theta: T::zero(),
            alpha: T::zero(),
            beta: T::zero(),
        }
    }

    /// Classical defect, `(pi, 0, 0)`.
    pub fn defect() -> Self {
        Self {
            theta: T::PI(),
            alpha: T::zero(),
            beta: T::zero(),
        }
    }

    pub fn from_move(m: Move) -> Self {
        match m {
            Move::C => Self::cooperate(),
            Move::D => Self::defect(),
        }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.theta, self.alpha, self.beta]
    }
}

fn check<T: Real>(name: &'static str, v: T, lo: T, hi: T) -> Result<()> {
    if v >= lo && v <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v.to_f64_lossy(),
            min: lo.to_f64_lossy(),
            max: hi.to_f64_lossy(),
        })
    }
}

/// Classical move; `C` encodes outcome bit 0, `D` bit 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    C,
    D,
}

impl Move {
    pub const ALL: [Move; 2] = [Move::C, Move::D];

    pub fn bit(self) -> usize {
        match self {
            Move::C => 0,
            Move::D => 1,
        }
    }
}

/// `U = cos(theta/2) R + sin(theta/2) P` with
/// `R|0> = e^{i alpha}|0>`, `R|1> = e^{-i alpha}|1>`,
/// `P|0> = e^{i(pi/2 - beta)}|1>`, `P|1> = e^{i(pi/2 + beta)}|0>`.
pub fn strategy_unitary<T: Real>(s: &StrategyParams<T>) -> ComplexMatrix<T> {
    let half = s.theta / T::lit(2.0);
    let (c, sn) = (half.cos(), half.sin());
    let i = Complex::new(T::zero(), T::one());
    let phase = |x: T| Complex::from_polar(T::one(), x);
    let u00 = phase(s.alpha) * c;
    let u10 = i * phase(-s.beta) * sn;
    let u01 = i * phase(s.beta) * sn;
    let u11 = phase(-s.alpha) * c;
    ComplexMatrix::new(2, 2, vec![u00, u01, u10, u11]).expect("finite entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn cooperate_is_identity() {
        let u = strategy_unitary(&StrategyParams::<f64>::cooperate());
        assert!(u.approx_eq(&ComplexMatrix::identity(2), 1e-15));
    }

    #[test]
    fn defect_is_i_sigma_x() {
        let u = strategy_unitary(&StrategyParams::<f64>::defect());
        let ix = ComplexMatrix::sigma_x().scale(Complex::new(0.0, 1.0));
        assert!(u.approx_eq(&ix, 1e-15));
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(StrategyParams::new(-0.01, 0.0, 0.0).is_err());
        assert!(StrategyParams::new(PI + 1e-9, 0.0, 0.0).is_err());
        assert!(StrategyParams::new(0.0, -PI - 1e-9, 0.0).is_err());
        assert!(StrategyParams::new(0.0, 0.0, PI + 1e-9).is_err());
        assert!(StrategyParams::new(PI, -PI, PI).is_ok());
    }

    #[test]
    fn columns_match_definition() {
        let s = StrategyParams::new(1.1, 0.4, -2.0).unwrap();
        let u = strategy_unitary(&s);
        let (c, sn) = ((1.1f64 / 2.0).cos(), (1.1f64 / 2.0).sin());
        // P|0> = e^{i(pi/2 - beta)} |1>
        let p0 = Complex::from_polar(1.0, PI / 2.0 + 2.0) * sn;
        let p1 = Complex::from_polar(1.0, PI / 2.0 - 2.0) * sn;
        assert!((u[(1, 0)] - p0).norm() < 1e-15);
        assert!((u[(0, 1)] - p1).norm() < 1e-15);
        assert!((u[(0, 0)] - Complex::from_polar(c, 0.4)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex::from_polar(c, -0.4)).norm() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn unitary_for_all_parameters(t in 0.0..=PI, a in -PI..=PI, b in -PI..=PI) {
            let u = strategy_unitary(&StrategyParams::new(t, a, b).unwrap());
            prop_assert!(u.is_unitary(1e-12));
        }
    }
}
