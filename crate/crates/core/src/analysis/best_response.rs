use rayon::prelude::*;
use serde::Serialize;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::game::{pipeline_payoffs, GameConfig, Player, StrategyParams};
use crate::scalar::{linspace, Real};

/// Gain above which a unilateral deviation breaks an equilibrium.
pub const NASH_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BestResponseResult<T> {
    pub player: Player,
    pub grid_resolution: usize,
    pub best: StrategyParams<T>,
    pub best_payoff: T,
    pub payoff_at_claimed: T,
    pub gain_over_claimed: T,
}

fn payoff_of<T: Real>(cfg: &GameConfig<T>, player: Player, s: StrategyParams<T>) -> Result<T> {
    let cfg = cfg.clone().with_strategy(player, s);
    Ok(pipeline_payoffs(&cfg)?.payoffs[player.index()])
}

/// Exhaustive search over `theta in [0, pi]`, `alpha, beta in [-pi, pi]` with
/// `resolution` points per axis. Ties within the scalar tolerance go to the
/// smallest `(theta, alpha, beta)`.
pub fn best_response<T: Real>(
    cfg: &GameConfig<T>,
    player: Player,
    claimed: StrategyParams<T>,
    resolution: usize,
) -> Result<BestResponseResult<T>> {
    if resolution < 3 {
        return Err(Error::InvalidGrid(format!(
            "best-response resolution must be at least 3, got {resolution}"
        )));
    }
    let r = resolution;
    let thetas = linspace(T::zero(), T::PI(), r);
    let phases = linspace(-T::PI(), T::PI(), r);
    let point = |k: usize| {
        StrategyParams::new(thetas[k / (r * r)], phases[(k / r) % r], phases[k % r])
            .expect("grid inside strategy ranges")
    };
    let values = (0..r * r * r)
        .into_par_iter()
        .map(|k| {
            payoff_of(cfg, player, point(k)).map_err(|e| Error::GridPoint {
                index: k,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<T>>>()?;
    let max = values.iter().copied().fold(T::neg_infinity(), T::max);
    let tol = T::default_tolerance();
    let k = values
        .iter()
        .position(|&v| v >= max - tol)
        .expect("nonempty grid");
    let payoff_at_claimed = payoff_of(cfg, player, claimed)?;
    Ok(BestResponseResult {
        player,
        grid_resolution: r,
        best: point(k),
        best_payoff: values[k],
        payoff_at_claimed,
        gain_over_claimed: values[k] - payoff_at_claimed,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NashReport<T> {
    pub is_equilibrium: bool,
    /// Best grid gain of each player over the profile.
    pub gains: [T; 3],
    pub responses: Vec<BestResponseResult<T>>,
}

/// Equilibrium iff no player's grid best response gains more than [`NASH_TOLERANCE`].
pub fn nash_check<T: Real>(
    cfg: &GameConfig<T>,
    profile: [StrategyParams<T>; 3],
    resolution: usize,
) -> Result<NashReport<T>> {
    let cfg = cfg.clone().with_strategies(profile);
    let responses = Player::ALL
        .iter()
        .map(|&pl| best_response(&cfg, pl, profile[pl.index()], resolution))
        .collect::<Result<Vec<_>>>()?;
    let gains = [0, 1, 2].map(|i| responses[i].gain_over_claimed);
    let is_equilibrium = gains.iter().all(|&g| g <= T::lit(NASH_TOLERANCE));
    Ok(NashReport {
        is_equilibrium,
        gains,
        responses,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariancePoint<T> {
    pub p: T,
    pub mu: T,
    pub report: NashReport<T>,
}

/// [`nash_check`] at every `(p, mu)` pair, both passages set alike.
pub fn nash_invariance_map<T: Real>(
    cfg: &GameConfig<T>,
    profile: [StrategyParams<T>; 3],
    p_grid: &[T],
    mu_grid: &[T],
    resolution: usize,
) -> Result<Vec<InvariancePoint<T>>> {
    let mut out = Vec::with_capacity(p_grid.len() * mu_grid.len());
    for &p in p_grid {
        for &mu in mu_grid {
            let cfg = cfg.clone().with_channel(ChannelParams::new(p, mu)?);
            out.push(InvariancePoint {
                p,
                mu,
                report: nash_check(&cfg, profile, resolution)?,
            });
        }
    }
    Ok(out)
}
