//! Meshes, boundary conditions, time stepping and the solvers.

mod boundary;
mod mesh;
mod options;
mod simulation;
mod solver1d;
mod solver2d;

pub use boundary::{Boundaries1D, Boundaries2D, Boundary, PointPredicate, StateFn};
pub use mesh::{Mesh1D, Mesh2D};
pub use simulation::{Checkpoint, Simulation};
pub use options::{LimiterKind, SolverOptions, TimeConfig, DEFAULT_CFL};
pub use solver1d::{compute_dt_1d, Solver1D};
pub use solver2d::{compute_dt_2d, Solver2D, SpeedSample};

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Ghost layers per side.
pub const NG: usize = 2;

/// Diagnostics of one accepted step.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StepInfo {
    /// Time at the start of the step.
    pub t: f64,
    pub dt: f64,
    pub retries: usize,
    pub alpha_max: f64,
    /// Fraction of elements with a positive blending coefficient.
    pub alpha_fraction: f64,
    /// Smallest fraction of the blended flux kept by the flux correction.
    pub min_lambda: f64,
    pub tvb_limited: usize,
    pub cfl_ratio: Option<f64>,
    pub audit: Option<f64>,
}

pub(crate) fn is_retryable(e: &Error) -> bool {
    matches!(e, Error::Inadmissible { .. } | Error::NonFinite(_))
}

pub(crate) fn with_context(e: Error, ctx: &str) -> Error {
    match e {
        Error::Inadmissible { context, constraint, value } => {
            Error::Inadmissible { context: format!("{ctx}: {context}"), constraint, value }
        }
        Error::NonFinite(s) => Error::NonFinite(format!("{ctx}: {s}")),
        other => other,
    }
}
