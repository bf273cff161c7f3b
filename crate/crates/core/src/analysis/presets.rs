use std::fmt;
use std::str::FromStr;

use crate::channel::ChannelParams;
use crate::error::Result;
use crate::game::{GameConfig, StrategyParams};
use crate::scalar::Real;

/// Named parameter sets.
///
/// * `Fig2` / `Fig3`: restricted game. Alice and Bob play `(pi/2, 0, 0)`,
///   Charlie plays `(pi/2, pi/2, pi/2)`; `gamma = delta = pi/2`.
/// * `Fig4` / `Fig5`: Alice's surface over `(alpha1, theta1)` with
///   `theta2 = theta3 = pi/2`, all other phases zero, `gamma = delta = pi/2`,
///   and `p = mu = 0.3` (Fig4) or `0.7` (Fig5).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl Preset {
    pub fn strategies<T: Real>(self) -> [StrategyParams<T>; 3] {
        let h = T::FRAC_PI_2();
        let z = T::zero();
        let s = |t, a, b| StrategyParams::new(t, a, b).expect("preset angles in range");
        match self {
            Preset::Fig2 | Preset::Fig3 => [s(h, z, z), s(h, z, z), s(h, h, h)],
            Preset::Fig4 | Preset::Fig5 => [s(h, h, z), s(h, z, z), s(h, z, z)],
        }
    }

    /// Default `(p, mu)` for both passages.
    pub fn channel<T: Real>(self) -> (T, T) {
        match self {
            Preset::Fig2 | Preset::Fig3 => (T::zero(), T::zero()),
            Preset::Fig4 => (T::lit(0.3), T::lit(0.3)),
            Preset::Fig5 => (T::lit(0.7), T::lit(0.7)),
        }
    }

    pub fn config<T: Real>(self) -> Result<GameConfig<T>> {
        let (p, mu) = self.channel::<T>();
        Ok(
            GameConfig::new(T::FRAC_PI_2(), T::FRAC_PI_2(), self.strategies())?
                .with_channel(ChannelParams::new(p, mu)?),
        )
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        };
        f.write_str(s)
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            "fig5" => Ok(Preset::Fig5),
            other => Err(format!(
                "unknown preset {other:?} (expected fig2|fig3|fig4|fig5)"
            )),
        }
    }
}
