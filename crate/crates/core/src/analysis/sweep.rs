use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::game::{pipeline_payoffs, GameConfig};
use crate::scalar::Real;

use super::grid::validate_grid;

/// Channel parameter swept on both passages at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    P,
    Mu,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::P => "p",
            SweepVariable::Mu => "mu",
        })
    }
}

impl FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p" => Ok(SweepVariable::P),
            "mu" => Ok(SweepVariable::Mu),
            other => Err(format!("unknown sweep variable {other:?} (expected p|mu)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec<T> {
    variable: SweepVariable,
    grid: Vec<T>,
    base: GameConfig<T>,
}

impl<T: Real> SweepSpec<T> {
    /// The non-swept channel parameter is taken from `base.passage1()`.
    pub fn new(variable: SweepVariable, grid: Vec<T>, base: GameConfig<T>) -> Result<Self> {
        validate_grid(&variable.to_string(), &grid, T::zero(), T::one())?;
        Ok(Self {
            variable,
            grid,
            base,
        })
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn base(&self) -> &GameConfig<T> {
        &self.base
    }

    fn config_at(&self, x: T) -> Result<GameConfig<T>> {
        let fixed = self.base.passage1();
        let params = match self.variable {
            SweepVariable::P => ChannelParams::new(x, fixed.mu())?,
            SweepVariable::Mu => ChannelParams::new(fixed.p(), x)?,
        };
        Ok(self.base.clone().with_channel(params))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow<T> {
    pub x: T,
    pub payoffs: [T; 3],
}

/// One pipeline evaluation per grid point, in grid order.
pub fn sweep<T: Real>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    spec.grid
        .par_iter()
        .enumerate()
        .map(|(index, &x)| {
            spec.config_at(x)
                .and_then(|cfg| pipeline_payoffs(&cfg))
                .map(|out| SweepRow {
                    x,
                    payoffs: out.payoffs,
                })
                .map_err(|e| Error::GridPoint {
                    index,
                    source: Box::new(e),
                })
        })
        .collect()
}
