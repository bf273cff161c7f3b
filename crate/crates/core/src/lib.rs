//! Three-player quantum Prisoner's Dilemma under correlated dephasing noise.
//!
//! A GHZ-type state is sent to three players through a dephasing channel
//! with memory, each player applies a local unitary strategy, the qubits
//! return through the channel, and the arbiter measures in an entangled
//! basis. Payoffs are expectation values over the classical payoff table.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the analysis tooling uses.

pub mod analysis;
pub mod channel;
pub mod density;
pub mod error;
pub mod game;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use channel::{
    apply_channel, correlated_pair, correlated_triple, dephasing_single, product_channel,
    ChannelParams, Dephasing, KrausSet,
};
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use game::{
    classical_payoff, closed_form_payoffs, initial_state, measurement_projectors, mu_p_factor,
    pipeline_payoffs, strategy_unitary, BasisReading, GameConfig, GameOutcome, Move, Outcome,
    PayoffTable, Player, StrategyParams,
};
pub use linalg::ComplexMatrix;
pub use scalar::Real;

pub use num_complex::Complex;

pub type Matrix = ComplexMatrix<f64>;
pub type Density = DensityMatrix<f64>;
pub type Kraus = KrausSet<f64>;
pub type Channel = ChannelParams<f64>;
pub type Strategy = StrategyParams<f64>;
pub type Config = GameConfig<f64>;
pub type Table = PayoffTable<f64>;
