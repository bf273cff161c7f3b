//! Entangled measurement basis `|psi_lmn> = cos(delta/2)|lmn> + s_lmn i sin(delta/2)|~lmn>`,
//! where `~lmn` is the bitwise complement and `s_lmn` a sign.
//!
//! Two sign conventions are supported. `Uniform` uses `s = +1` everywhere,
//! the basis produced by `exp(i delta/2 X(x)X(x)X)` acting on `|lmn>`; this is
//! the one the closed-form payoff expression is consistent with. `Mixed`
//! uses `s = -1` for the 010/101/011/100 states. Both are orthonormal.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisReading {
    #[default]
    Uniform,
    Mixed,
}

impl BasisReading {
    pub const ALL: [BasisReading; 2] = [BasisReading::Uniform, BasisReading::Mixed];

    /// Sign in front of `i sin(delta/2)` for outcome index `lmn` (Alice = high bit).
    pub fn sign(self, outcome: usize) -> i8 {
        match self {
            BasisReading::Uniform => 1,
            BasisReading::Mixed => match outcome {
                0b000 | 0b111 | 0b001 | 0b110 => 1,
                _ => -1,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisReading::Uniform => "uniform",
            BasisReading::Mixed => "mixed",
        }
    }
}

impl fmt::Display for BasisReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisReading {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(BasisReading::Uniform),
            "mixed" => Ok(BasisReading::Mixed),
            other => Err(format!(
                "unknown basis reading {other:?} (expected uniform|mixed)"
            )),
        }
    }
}

pub(crate) fn check_delta<T: Real>(delta: T) -> Result<()> {
    if delta >= T::zero() && delta <= T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "delta",
            value: delta.to_f64_lossy(),
            min: 0.0,
            max: std::f64::consts::FRAC_PI_2,
        })
    }
}

/// The eight basis vectors, ordered 000, 001, ..., 111.
pub fn measurement_basis<T: Real>(delta: T, reading: BasisReading) -> Result<Vec<Vec<Complex<T>>>> {
    check_delta(delta)?;
    let half = delta / T::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    Ok((0..8)
        .map(|x| {
            let mut v = vec![Complex::new(T::zero(), T::zero()); 8];
            let sign = T::lit(f64::from(reading.sign(x)));
            v[x] = Complex::new(c, T::zero());
            v[7 - x] = Complex::new(T::zero(), sign * s);
            v
        })
        .collect())
}

/// Rank-one projectors `P_lmn = |psi_lmn><psi_lmn|`, ordered 000 .. 111.
pub fn measurement_projectors<T: Real>(
    delta: T,
    reading: BasisReading,
) -> Result<Vec<ComplexMatrix<T>>> {
    Ok(measurement_basis(delta, reading)?
        .iter()
        .map(|v| ComplexMatrix::outer(v, v))
        .collect())
}

/// Completeness and orthogonality figures for one basis reading.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorReport {
    pub delta: f64,
    pub reading: BasisReading,
    /// `max |sum P - I|`.
    pub completeness_defect: f64,
    /// Largest max-norm of `P_a P_b` over `a != b`.
    pub max_cross_product: f64,
    /// Largest `|<psi_a|psi_b>|` over `a != b`.
    pub max_overlap: f64,
}

impl ProjectorReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.completeness_defect <= tol && self.max_cross_product <= tol
    }
}

pub fn projector_soundness<T: Real>(delta: T, reading: BasisReading) -> Result<ProjectorReport> {
    let basis = measurement_basis(delta, reading)?;
    let projs = measurement_projectors(delta, reading)?;
    let mut sum = ComplexMatrix::zeros(8, 8);
    for p in &projs {
        sum = sum.add(p)?;
    }
    let completeness_defect = sum.max_abs_diff(&ComplexMatrix::identity(8)).to_f64_lossy();
    let mut max_cross_product = 0.0_f64;
    let mut max_overlap = 0.0_f64;
    for a in 0..8 {
        for b in 0..8 {
            if a == b {
                continue;
            }
            let prod = projs[a].matmul(&projs[b])?;
            max_cross_product = max_cross_product.max(prod.max_norm().to_f64_lossy());
            let ov = basis[a]
                .iter()
                .zip(&basis[b])
                .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
                    acc + x.conj() * y
                });
            max_overlap = max_overlap.max(ov.norm().to_f64_lossy());
        }
    }
    Ok(ProjectorReport {
        delta: delta.to_f64_lossy(),
        reading,
        completeness_defect,
        max_cross_product,
        max_overlap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::linspace;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_delta_gives_computational_basis() {
        for reading in BasisReading::ALL {
            let projs = measurement_projectors(0.0_f64, reading).unwrap();
            for (x, p) in projs.iter().enumerate() {
                let mut e = vec![Complex::new(0.0, 0.0); 8];
                e[x] = Complex::new(1.0, 0.0);
                assert!(p.approx_eq(&ComplexMatrix::outer(&e, &e), 0.0));
            }
        }
    }

    #[test]
    fn both_readings_are_complete_and_orthogonal() {
        for reading in BasisReading::ALL {
            for delta in linspace(0.0, FRAC_PI_2, 11) {
                let r = projector_soundness(delta, reading).unwrap();
                assert!(r.passes(1e-12), "{r:?}");
                assert!(r.max_overlap < 1e-12);
            }
        }
    }

    #[test]
    fn mixed_signs() {
        let signs: Vec<i8> = (0..8).map(|x| BasisReading::Mixed.sign(x)).collect();
        assert_eq!(signs, vec![1, 1, -1, -1, -1, -1, 1, 1]);
        let b = measurement_basis(FRAC_PI_2, BasisReading::Mixed).unwrap();
        // |psi_010> = cos|010> - i sin|101>
        assert!((b[0b010][0b101] - Complex::new(0.0, -(0.5_f64).sqrt())).norm() < 1e-15);
        assert!((b[0b000][0b111] - Complex::new(0.0, (0.5_f64).sqrt())).norm() < 1e-15);
    }

    #[test]
    fn delta_range_is_enforced() {
        assert!(measurement_projectors(-0.1_f64, BasisReading::Uniform).is_err());
        assert!(measurement_projectors(FRAC_PI_2 + 1e-9, BasisReading::Uniform).is_err());
    }

    #[test]
    fn reading_round_trips_through_text() {
        for r in BasisReading::ALL {
            assert_eq!(r.to_string().parse::<BasisReading>().unwrap(), r);
        }
        assert!("other".parse::<BasisReading>().is_err());
    }
}
