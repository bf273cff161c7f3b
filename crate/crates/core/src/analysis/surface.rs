use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{pipeline_payoffs, GameConfig, Player, StrategyParams};
use crate::scalar::{linspace, Real};

use super::grid::validate_grid;

/// Alice's payoff over `(alpha1, theta1)`, her `beta1` and everyone else held at `base`.
#[derive(Clone, Debug)]
pub struct SurfaceSpec<T> {
    alpha: Vec<T>,
    theta: Vec<T>,
    base: GameConfig<T>,
}

impl<T: Real> SurfaceSpec<T> {
    pub fn new(alpha: Vec<T>, theta: Vec<T>, base: GameConfig<T>) -> Result<Self> {
        validate_grid("alpha1", &alpha, -T::PI(), T::PI())?;
        validate_grid("theta1", &theta, T::zero(), T::PI())?;
        Ok(Self { alpha, theta, base })
    }

    /// `res` points per axis over `alpha1 in [-pi, pi]`, `theta1 in [0, pi]`.
    pub fn uniform(res: usize, base: GameConfig<T>) -> Result<Self> {
        Self::new(
            linspace(-T::PI(), T::PI(), res),
            linspace(T::zero(), T::PI(), res),
            base,
        )
    }

    pub fn base(&self) -> &GameConfig<T> {
        &self.base
    }
}

/// Row-major surface: `alpha1` is the outer index, `theta1` the inner one.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface<T> {
    pub alpha: Vec<T>,
    pub theta: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> Surface<T> {
    pub fn value(&self, ia: usize, it: usize) -> T {
        self.values[ia * self.theta.len() + it]
    }

    pub fn rows(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        self.alpha.iter().enumerate().flat_map(move |(ia, &a)| {
            self.theta
                .iter()
                .enumerate()
                .map(move |(it, &t)| (a, t, self.value(ia, it)))
        })
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    /// Every `(alpha index, theta index)` within `tol` of the maximum.
    pub fn argmax_set(&self, tol: T) -> Vec<(usize, usize)> {
        let m = self.max();
        let nt = self.theta.len();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= m - tol)
            .map(|(k, _)| (k / nt, k % nt))
            .collect()
    }

    /// Representative argmax: smallest `theta1`, then smallest `alpha1`, among ties.
    pub fn argmax(&self, tol: T) -> (usize, usize) {
        self.argmax_set(tol)
            .into_iter()
            .min_by_key(|&(ia, it)| (it, ia))
            .expect("surface is nonempty")
    }

    /// True when the whole surface is flat within `tol`.
    pub fn is_flat(&self, tol: T) -> bool {
        self.max() - self.min() <= tol
    }
}

pub fn strategy_surface<T: Real>(spec: &SurfaceSpec<T>) -> Result<Surface<T>> {
    let nt = spec.theta.len();
    let beta = spec.base.strategy(Player::Alice).beta();
    let values = (0..spec.alpha.len() * nt)
        .into_par_iter()
        .map(|k| {
            let (a, t) = (spec.alpha[k / nt], spec.theta[k % nt]);
            StrategyParams::new(t, a, beta)
                .map(|s| spec.base.clone().with_strategy(Player::Alice, s))
                .and_then(|cfg| pipeline_payoffs(&cfg))
                .map(|out| out.payoffs[Player::Alice.index()])
                .map_err(|e| Error::GridPoint {
                    index: k,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(Surface {
        alpha: spec.alpha.clone(),
        theta: spec.theta.clone(),
        values,
    })
}

/// Pointwise comparison of two surfaces on the same grid.
#[derive(Clone, Debug, Serialize)]
pub struct Dominance {
    /// `second >= first` everywhere (within tolerance).
    pub second_dominates: bool,
    /// `first >= second` everywhere (within tolerance).
    pub first_dominates: bool,
    pub max_first: f64,
    pub max_second: f64,
    /// Extremes of `second - first`.
    pub min_difference: f64,
    pub max_difference: f64,
}

pub fn compare_surfaces<T: Real>(first: &Surface<T>, second: &Surface<T>, tol: T) -> Dominance {
    assert_eq!(
        first.values.len(),
        second.values.len(),
        "surfaces on different grids"
    );
    let diffs: Vec<T> = first
        .values
        .iter()
        .zip(&second.values)
        .map(|(&a, &b)| b - a)
        .collect();
    let lo = diffs.iter().copied().fold(T::infinity(), T::min);
    let hi = diffs.iter().copied().fold(T::neg_infinity(), T::max);
    Dominance {
        second_dominates: lo >= -tol,
        first_dominates: hi <= tol,
        max_first: first.max().to_f64_lossy(),
        max_second: second.max().to_f64_lossy(),
        min_difference: lo.to_f64_lossy(),
        max_difference: hi.to_f64_lossy(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Preset;

    #[test]
    fn two_by_two_grid_has_four_rows() {
        let spec = SurfaceSpec::uniform(2, Preset::Fig4.config::<f64>().unwrap()).unwrap();
        let s = strategy_surface(&spec).unwrap();
        let rows: Vec<_> = s.rows().collect();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].0, rows[0].1), (-std::f64::consts::PI, 0.0));
        assert_eq!(
            (rows[1].0, rows[1].1),
            (-std::f64::consts::PI, std::f64::consts::PI)
        );
    }

    #[test]
    fn argmax_tie_breaking() {
        let s = Surface {
            alpha: vec![-1.0, 0.0, 1.0],
            theta: vec![0.0, 1.0],
            values: vec![0.0, 2.0, 2.0, 1.0, 0.0, 2.0],
        };
        assert_eq!(s.argmax_set(1e-12), vec![(0, 1), (1, 0), (2, 1)]);
        assert_eq!(s.argmax(1e-12), (1, 0));
        assert!(!s.is_flat(1e-12));
    }

    #[test]
    fn surface_rejects_out_of_range_axes() {
        let base = Preset::Fig4.config::<f64>().unwrap();
        assert!(SurfaceSpec::new(vec![-4.0, 0.0], vec![0.0], base.clone()).is_err());
        assert!(SurfaceSpec::new(vec![0.0], vec![0.0, 3.5], base).is_err());
    }

    #[test]
    fn dominance_report() {
        let a = Surface {
            alpha: vec![0.0],
            theta: vec![0.0, 1.0],
            values: vec![1.0, 2.0],
        };
        let b = Surface {
            alpha: vec![0.0],
            theta: vec![0.0, 1.0],
            values: vec![1.5, 2.0],
        };
        let d = compare_surfaces(&a, &b, 1e-12);
        assert!(d.second_dominates && !d.first_dominates);
        assert_eq!(d.max_difference, 0.5);
    }
}
