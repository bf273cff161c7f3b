use num_complex::Complex;

use crate::channel::correlated_triple;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::config::GameConfig;
use super::measurement::measurement_basis;
use super::strategy::strategy_unitary;
use super::table::Outcome;

/// `cos(gamma/2)|000> + i sin(gamma/2)|111>` as a density matrix.
pub fn initial_state<T: Real>(gamma: T) -> Result<DensityMatrix<T>> {
    if !(gamma >= T::zero() && gamma <= T::FRAC_PI_2()) {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma.to_f64_lossy(),
            min: 0.0,
            max: std::f64::consts::FRAC_PI_2,
        });
    }
    let half = gamma / T::lit(2.0);
    let mut psi = vec![Complex::new(T::zero(), T::zero()); 8];
    psi[0] = Complex::new(half.cos(), T::zero());
    psi[7] = Complex::new(T::zero(), half.sin());
    DensityMatrix::pure(&psi)
}

/// Result of one full game evaluation.
#[derive(Clone, Debug)]
pub struct GameOutcome<T> {
    /// `(Alice, Bob, Charlie)`.
    pub payoffs: [T; 3],
    /// Probability of each measurement outcome, ordered 000 .. 111.
    pub probabilities: [T; 8],
    pub final_state: DensityMatrix<T>,
}

/// Runs the arbiter's protocol: prepare, first noisy passage, local
/// strategies, second noisy passage, entangled measurement.
pub fn pipeline_payoffs<T: Real>(cfg: &GameConfig<T>) -> Result<GameOutcome<T>> {
    let rho0 = initial_state(cfg.gamma())?;
    let rho1 = correlated_triple(cfg.passage1()).apply(&rho0)?;

    let [a, b, c] = cfg.strategies().map(|s| strategy_unitary(&s));
    let u = a.kron(&b).kron(&c);
    let rho2 = DensityMatrix::new(u.conjugate(rho1.matrix())?)?;

    let rho3 = correlated_triple(cfg.passage2()).apply(&rho2)?;

    let basis = measurement_basis(cfg.delta(), cfg.basis())?;
    let mut probabilities = [T::zero(); 8];
    for (slot, psi) in probabilities.iter_mut().zip(&basis) {
        *slot = rho3.expectation(psi);
    }
    let total = probabilities.iter().fold(T::zero(), |acc, &x| acc + x);
    let tol = T::default_tolerance();
    if (total - T::one()).abs() > tol || probabilities.iter().any(|&x| x < -tol) {
        return Err(Error::InvalidDensity(format!(
            "outcome probabilities sum to {total}"
        )));
    }

    let mut payoffs = [T::zero(); 3];
    for o in Outcome::all() {
        let row = cfg.payoffs().get(o);
        for k in 0..3 {
            payoffs[k] = payoffs[k] + row[k] * probabilities[o.0];
        }
    }
    Ok(GameOutcome {
        payoffs,
        probabilities,
        final_state: rho3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;
    use crate::game::{classical_payoff, Move, PayoffTable, StrategyParams};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn initial_state_examples() {
        let r = initial_state(0.0_f64).unwrap();
        assert_eq!(r.matrix()[(0, 0)].re, 1.0);
        assert_eq!(r.matrix().max_norm(), 1.0);

        let r = initial_state(FRAC_PI_2).unwrap();
        let m = r.matrix();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((m[(7, 7)].re - 0.5).abs() < 1e-15);
        assert!((m[(0, 7)] - Complex::new(0.0, -0.5)).norm() < 1e-15);
        assert!((m[(7, 0)] - Complex::new(0.0, 0.5)).norm() < 1e-15);

        for k in 0..11 {
            let g = FRAC_PI_2 * k as f64 / 10.0;
            let tr = initial_state(g).unwrap().matrix().trace().unwrap();
            assert!((tr.re - 1.0).abs() < 1e-12);
        }
        assert!(initial_state(-0.1_f64).is_err());
        assert!(initial_state(1.6_f64).is_err());
    }

    #[test]
    fn entangled_anchors() {
        for (s, want) in [
            (StrategyParams::cooperate(), 3.0),
            (StrategyParams::defect(), 1.0),
        ] {
            let cfg = GameConfig::new(FRAC_PI_2, FRAC_PI_2, [s; 3]).unwrap();
            let out = pipeline_payoffs(&cfg).unwrap();
            for v in out.payoffs {
                assert!((v - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn classical_embedding() {
        let table = PayoffTable::<f64>::default();
        for x in 0..8usize {
            let moves =
                [x >> 2 & 1, x >> 1 & 1, x & 1].map(|b| if b == 1 { Move::D } else { Move::C });
            let cfg = GameConfig::new(0.0, 0.0, moves.map(StrategyParams::from_move)).unwrap();
            let out = pipeline_payoffs(&cfg).unwrap();
            let want = classical_payoff(moves, &table);
            for (got, want) in out.payoffs.iter().zip(want) {
                assert!((got - want).abs() < 1e-12, "profile {x:03b}");
            }
        }
    }

    #[test]
    fn works_in_single_precision() {
        let cfg = GameConfig::new(
            std::f32::consts::FRAC_PI_2,
            std::f32::consts::FRAC_PI_2,
            [StrategyParams::<f32>::defect(); 3],
        )
        .unwrap()
        .with_channel(ChannelParams::new(0.4, 0.6).unwrap());
        let out = pipeline_payoffs(&cfg).unwrap();
        let reference = pipeline_payoffs(
            &GameConfig::new(FRAC_PI_2, FRAC_PI_2, [StrategyParams::<f64>::defect(); 3])
                .unwrap()
                .with_channel(ChannelParams::new(0.4, 0.6).unwrap()),
        )
        .unwrap();
        for k in 0..3 {
            assert!((f64::from(out.payoffs[k]) - reference.payoffs[k]).abs() < 1e-5);
        }
    }
}
