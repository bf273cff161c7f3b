use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::scalar::Real;

use super::measurement::{check_delta, BasisReading};
use super::strategy::StrategyParams;
use super::table::PayoffTable;

/// Qubit order is Alice, Bob, Charlie from the leftmost tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    Alice,
    Bob,
    Charlie,
}

impl Player {
    pub const ALL: [Player; 3] = [Player::Alice, Player::Bob, Player::Charlie];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Player::Alice => 'A',
            Player::Bob => 'B',
            Player::Charlie => 'C',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" | "alice" | "Alice" => Ok(Player::Alice),
            "B" | "b" | "bob" | "Bob" => Ok(Player::Bob),
            "C" | "c" | "charlie" | "Charlie" => Ok(Player::Charlie),
            other => Err(format!("unknown player {other:?} (expected A|B|C)")),
        }
    }
}

/// A complete game instance.
///
/// The two passages are independent; callers who want `p1 = p2`, `mu1 = mu2`
/// set both through [`GameConfig::with_channel`].
#[derive(Clone, Debug, PartialEq)]
pub struct GameConfig<T> {
    gamma: T,
    delta: T,
    passage1: ChannelParams<T>,
    passage2: ChannelParams<T>,
    strategies: [StrategyParams<T>; 3],
    payoffs: PayoffTable<T>,
    basis: BasisReading,
}

impl<T: Real> GameConfig<T> {
    /// Noiseless game with the default payoff table and measurement basis.
    pub fn new(gamma: T, delta: T, strategies: [StrategyParams<T>; 3]) -> Result<Self> {
        check_gamma(gamma)?;
        check_delta(delta)?;
        Ok(Self {
            gamma,
            delta,
            passage1: ChannelParams::noiseless(),
            passage2: ChannelParams::noiseless(),
            strategies,
            payoffs: PayoffTable::default(),
            basis: BasisReading::default(),
        })
    }

    /// Same channel on both passages.
    pub fn with_channel(self, params: ChannelParams<T>) -> Self {
        self.with_passages(params, params)
    }

    pub fn with_passages(mut self, first: ChannelParams<T>, second: ChannelParams<T>) -> Self {
        self.passage1 = first;
        self.passage2 = second;
        self
    }

    pub fn with_strategies(mut self, strategies: [StrategyParams<T>; 3]) -> Self {
        self.strategies = strategies;
        self
    }

    pub fn with_strategy(mut self, player: Player, s: StrategyParams<T>) -> Self {
        self.strategies[player.index()] = s;
        self
    }

    pub fn with_table(mut self, table: PayoffTable<T>) -> Self {
        self.payoffs = table;
        self
    }

    pub fn with_basis(mut self, basis: BasisReading) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_gamma(mut self, gamma: T) -> Result<Self> {
        check_gamma(gamma)?;
        self.gamma = gamma;
        Ok(self)
    }

    pub fn with_delta(mut self, delta: T) -> Result<Self> {
        check_delta(delta)?;
        self.delta = delta;
        Ok(self)
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn passage1(&self) -> &ChannelParams<T> {
        &self.passage1
    }

    pub fn passage2(&self) -> &ChannelParams<T> {
        &self.passage2
    }

    pub fn strategies(&self) -> &[StrategyParams<T>; 3] {
        &self.strategies
    }

    pub fn strategy(&self, player: Player) -> &StrategyParams<T> {
        &self.strategies[player.index()]
    }

    pub fn payoffs(&self) -> &PayoffTable<T> {
        &self.payoffs
    }

    pub fn basis(&self) -> BasisReading {
        self.basis
    }
}

fn check_gamma<T: Real>(gamma: T) -> Result<()> {
    if gamma >= T::zero() && gamma <= T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "gamma",
            value: gamma.to_f64_lossy(),
            min: 0.0,
            max: std::f64::consts::FRAC_PI_2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_are_range_checked() {
        let s = [StrategyParams::<f64>::cooperate(); 3];
        assert!(GameConfig::new(-0.1, 0.0, s).is_err());
        assert!(GameConfig::new(0.0, 1.6, s).is_err());
        let cfg = GameConfig::new(0.3, 0.4, s).unwrap();
        assert!(cfg.clone().with_gamma(2.0).is_err());
        assert_eq!(cfg.with_delta(1.5).unwrap().delta(), 1.5);
    }

    #[test]
    fn players_parse() {
        assert_eq!("A".parse::<Player>().unwrap(), Player::Alice);
        assert_eq!("charlie".parse::<Player>().unwrap(), Player::Charlie);
        assert!("D".parse::<Player>().is_err());
        assert_eq!(Player::Bob.index(), 1);
    }
}
