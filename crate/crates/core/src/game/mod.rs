//! The three-player game: initial GHZ-type state, local strategy unitaries,
//! two correlated-dephasing passages, entangled measurement and payoffs.

mod closed_form;
mod config;
mod measurement;
mod pipeline;
mod strategy;
mod table;

pub use closed_form::{
    closed_form_payoffs, closed_form_terms, mu_p_factor, ClosedFormReport, ClosedFormTerm,
    ClosedFormTerms,
};
pub use config::{GameConfig, Player};
pub use measurement::{
    measurement_basis, measurement_projectors, projector_soundness, BasisReading, ProjectorReport,
};
pub use pipeline::{initial_state, pipeline_payoffs, GameOutcome};
pub use strategy::{strategy_unitary, Move, StrategyParams};
pub use table::{classical_payoff, Outcome, PayoffTable};
