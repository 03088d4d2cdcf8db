//! Numerical homotopy continuation and the ED-degree counts built on it.

mod ed;
mod singular;
mod system;
mod tracker;

use thiserror::Error;

use crate::critical::CriticalError;
use crate::groebner::GroebnerError;
use crate::poly::PolyError;

pub use ed::{ed_defect, ed_degree, filter_smooth_critical, DefectReport, EdDegreeReport, EdRun};
pub use singular::{
    isolated_singularities, milnor_at_point, recognize_point, LocalMilnor, LocalRoute, SingularLocus,
};
pub use system::{CompiledPoly, CompiledSystem};
pub use tracker::{
    condition_number, numerical_rank, solve_system, total_degree_start, track_path, Homotopy,
    PathOutcome, PathStatus, PathSummary, PointDiagnostics, SolutionSet, StartSystem,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HomotopyError {
    #[error("Bezout number exceeds the cap of {cap} paths")]
    BezoutOverflow { cap: u64 },
    #[error("system has {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },
    #[error("equation {0} is constant")]
    ConstantEquation(usize),
    #[error("counts differ across seeds: {0:?}")]
    UnstableCount(Vec<u64>),
    #[error("the solution set is positive dimensional")]
    PositiveDimensional,
    #[error("invalid tracker settings: {0}")]
    Settings(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("could not identify an exact coordinate for {0}")]
    Recognition(String),
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TrackerSettings {
    /// Residual (relative backward error) required of a converged endpoint.
    pub newton_tol: f64,
    /// Newton iterations in the final refinement.
    pub max_newton_iters: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Coordinate norm beyond which a path counts as diverged.
    pub infinity_threshold: f64,
    /// Relative distance under which two endpoints are the same point.
    pub dedup_tol: f64,
    pub seed: u64,
    /// Newton iterations allowed per corrector step while tracking.
    pub corrector_iters: usize,
    /// Relative size of the last Newton update for a corrector success.
    pub corrector_tol: f64,
    /// Target residual of the final refinement.
    pub refine_tol: f64,
    /// A path that stalls after its norm grew by more than this factor
    /// over the second half of the homotopy is reported as diverged.
    pub divergence_hint: f64,
    pub max_steps: usize,
    pub bezout_cap: u64,
    /// Relative threshold on the pivots of column-pivoted QR.
    pub rank_tol: f64,
    /// Endpoints whose system Jacobian is worse conditioned are treated as
    /// singular solutions and dropped from ED counts.
    pub max_condition: f64,
    /// Number of independent seeds an ED count must agree across.
    pub stability_runs: usize,
    /// Worker threads for path tracking; 0 or 1 tracks serially.
    pub threads: usize,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        TrackerSettings {
            newton_tol: 1e-10,
            max_newton_iters: 8,
            initial_step: 0.05,
            min_step: 1e-7,
            max_step: 0.1,
            infinity_threshold: 1e8,
            dedup_tol: 1e-6,
            seed: 0,
            corrector_iters: 3,
            corrector_tol: 1e-9,
            refine_tol: 1e-12,
            divergence_hint: 100.0,
            max_steps: 200_000,
            bezout_cap: 10_000_000,
            rank_tol: 1e-6,
            max_condition: 1e11,
            stability_runs: 2,
            threads: 1,
        }
    }
}

impl TrackerSettings {
    pub fn with_seed(seed: u64) -> Self {
        TrackerSettings {
            seed,
            ..TrackerSettings::default()
        }
    }

    pub fn validate(&self) -> Result<(), HomotopyError> {
        let steps_ok = 0.0 < self.min_step
            && self.min_step <= self.initial_step
            && self.initial_step <= self.max_step
            && self.max_step < 1.0;
        let tols_ok = [
            self.newton_tol,
            self.dedup_tol,
            self.corrector_tol,
            self.refine_tol,
            self.rank_tol,
            self.infinity_threshold,
        ]
        .iter()
        .all(|&v| v > 0.0);
        if !steps_ok {
            return Err(HomotopyError::Settings(
                "need 0 < min_step <= initial_step <= max_step < 1".into(),
            ));
        }
        if !tols_ok {
            return Err(HomotopyError::Settings("tolerances must be positive".into()));
        }
        if self.max_newton_iters == 0 || self.corrector_iters == 0 || self.stability_runs == 0 {
            return Err(HomotopyError::Settings("iteration and run counts must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_settings_are_valid() {
        assert!(TrackerSettings::default().validate().is_ok());
        let bad = TrackerSettings {
            min_step: 0.2,
            ..TrackerSettings::default()
        };
        assert!(bad.validate().is_err());
    }
}
