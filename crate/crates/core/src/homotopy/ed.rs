//! ED degrees by counting smooth critical points of the Lagrange system.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::critical::{build_critical_system, CriticalSystem, EDData, VarietyPresentation, WeightMode};

use super::system::CompiledSystem;
use super::tracker::{condition_number, numerical_rank, solve_system, PathSummary};
use super::{HomotopyError, TrackerSettings};

/// Counts for one seed.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EdRun {
    pub seed: u64,
    pub count: u64,
    /// Distinct finite endpoints before the smooth-locus filter.
    pub endpoints: u64,
    pub paths: PathSummary,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EdDegreeReport {
    pub count: u64,
    pub runs: Vec<EdRun>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DefectReport {
    pub generic: EdDegreeReport,
    pub unit: EdDegreeReport,
    /// GED - UED.
    pub defect: i64,
}

/// Keeps the endpoints that are simple critical points on the smooth locus:
/// every input generator vanishes, the generator Jacobian has rank c, the
/// point is not the origin, and the Lagrange Jacobian is nonsingular.
pub fn filter_smooth_critical(
    system: &CriticalSystem,
    points: &[Vec<Complex64>],
    settings: &TrackerSettings,
) -> Vec<Vec<Complex64>> {
    let m = system.num_point_vars;
    let generators = CompiledSystem::new(&system.original_generators, m);
    let lagrange = CompiledSystem::new(&system.equations, system.ring.nvars());
    points
        .iter()
        .filter(|p| {
            let x = &p[..m];
            let scale = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if scale <= 1e-8 {
                return false;
            }
            if generators.residual(x) > 1e-8 {
                return false;
            }
            let jac: DMatrix<Complex64> = generators.jacobian(x);
            if numerical_rank(&jac, settings.rank_tol) != system.num_multipliers {
                return false;
            }
            condition_number(&lagrange.jacobian(p)) <= settings.max_condition
        })
        .cloned()
        .collect()
}

fn single_run(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    settings: &TrackerSettings,
    seed: u64,
) -> Result<EdRun, HomotopyError> {
    let data = EDData::generate(mode, variety.num_coordinates(), seed)?;
    let system = build_critical_system(variety, &data)?;
    let solutions = solve_system(&system.equations, settings, seed)?;
    let kept = filter_smooth_critical(&system, &solutions.points, settings);
    Ok(EdRun {
        seed,
        count: kept.len() as u64,
        endpoints: solutions.count() as u64,
        paths: solutions.summary,
    })
}

/// Number of smooth critical points of the weighted distance function for
/// random data, required to agree across `settings.stability_runs` seeds
/// starting at `settings.seed`.
pub fn ed_degree(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    settings: &TrackerSettings,
) -> Result<EdDegreeReport, HomotopyError> {
    settings.validate()?;
    let runs = (0..settings.stability_runs as u64)
        .map(|k| single_run(variety, mode, settings, settings.seed.wrapping_add(k)))
        .collect::<Result<Vec<_>, _>>()?;
    let count = runs[0].count;
    if runs.iter().any(|r| r.count != count) {
        return Err(HomotopyError::UnstableCount(runs.iter().map(|r| r.count).collect()));
    }
    Ok(EdDegreeReport { count, runs })
}

/// GED - UED.
pub fn ed_defect(variety: &VarietyPresentation, settings: &TrackerSettings) -> Result<DefectReport, HomotopyError> {
    let generic = ed_degree(variety, &WeightMode::Generic, settings)?;
    let unit = ed_degree(variety, &WeightMode::Unit, settings)?;
    let defect = generic.count as i64 - unit.count as i64;
    Ok(DefectReport {
        generic,
        unit,
        defect,
    })
}
