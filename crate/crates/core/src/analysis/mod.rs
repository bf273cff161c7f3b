//! Parameter sweeps, strategy surfaces, grid best responses and Nash checks.
//!
//! Grid points are evaluated in parallel but always assembled in grid order,
//! so every table is bit-identical regardless of thread count.

mod best_response;
mod grid;
mod presets;
mod surface;
mod sweep;

pub use best_response::{
    best_response, nash_check, nash_invariance_map, BestResponseResult, InvariancePoint,
    NashReport, NASH_TOLERANCE,
};
pub use grid::{validate_grid, GridSpec};
pub use presets::Preset;
pub use surface::{compare_surfaces, strategy_surface, Dominance, Surface, SurfaceSpec};
pub use sweep::{sweep, SweepRow, SweepSpec, SweepVariable};
