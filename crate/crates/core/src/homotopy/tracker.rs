//! Total-degree start systems, predictor-corrector path tracking and the
//! deterministic (optionally parallel) solver built on them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::poly::Polynomial;
use crate::random::{self, streams};

use super::system::CompiledSystem;
use super::{HomotopyError, TrackerSettings};

/// Start system z_i^{d_i} - r_i and its Π d_i solutions.
#[derive(Debug, Clone)]
pub struct StartSystem {
    pub degrees: Vec<u32>,
    pub constants: Vec<Complex64>,
    /// `roots[i]` are the d_i roots of z^{d_i} = r_i.
    roots: Vec<Vec<Complex64>>,
}

impl StartSystem {
    pub fn num_paths(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// The start solution with mixed-radix index `k`.
    pub fn solution(&self, mut k: u64) -> Vec<Complex64> {
        self.roots
            .iter()
            .map(|r| {
                let d = r.len() as u64;
                let z = r[(k % d) as usize];
                k /= d;
                z
            })
            .collect()
    }

    pub fn solutions(&self) -> impl Iterator<Item = Vec<Complex64>> + '_ {
        (0..self.num_paths()).map(|k| self.solution(k))
    }

    fn values(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(
            x.len(),
            x.iter()
                .zip(&self.degrees)
                .zip(&self.constants)
                .map(|((z, &d), r)| z.powu(d) - r),
        )
    }

    fn jacobian_diagonal(&self, x: &[Complex64]) -> Vec<Complex64> {
        x.iter()
            .zip(&self.degrees)
            .map(|(z, &d)| (d as f64) * z.powu(d - 1))
            .collect()
    }
}

/// Builds the start system for a square target; `r_i` are random unit
/// complex numbers drawn from `seed`.
pub fn total_degree_start(
    target: &CompiledSystem,
    seed: u64,
    bezout_cap: u64,
) -> Result<StartSystem, HomotopyError> {
    if target.len() != target.nvars {
        return Err(HomotopyError::NotSquare {
            equations: target.len(),
            variables: target.nvars,
        });
    }
    let degrees = target.degrees();
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        return Err(HomotopyError::ConstantEquation(i));
    }
    let mut paths: u64 = 1;
    for &d in &degrees {
        paths = paths.saturating_mul(d as u64);
        if paths > bezout_cap {
            return Err(HomotopyError::BezoutOverflow { cap: bezout_cap });
        }
    }
    let mut rng = random::rng(seed, streams::START);
    let constants: Vec<Complex64> = degrees.iter().map(|_| random::unit_complex(&mut rng)).collect();
    let roots = degrees
        .iter()
        .zip(&constants)
        .map(|(&d, r)| {
            let base = r.powf(1.0 / d as f64);
            (0..d)
                .map(|k| base * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64))
                .collect()
        })
        .collect();
    Ok(StartSystem {
        degrees,
        constants,
        roots,
    })
}

/// H(x, t) = γ(1 - t)G(x) + tF(x).
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub target: CompiledSystem,
    pub start: StartSystem,
    pub gamma: Complex64,
}

impl Homotopy {
    pub fn new(target: CompiledSystem, seed: u64, bezout_cap: u64) -> Result<Self, HomotopyError> {
        let start = total_degree_start(&target, seed, bezout_cap)?;
        let gamma = random::unit_complex(&mut random::rng(seed, streams::GAMMA));
        Ok(Homotopy { target, start, gamma })
    }

    /// (H_x, H_t) at (x, t).
    fn derivatives(&self, x: &[Complex64], t: f64) -> (DMatrix<Complex64>, DVector<Complex64>) {
        let g = self.start.values(x);
        let f = self.target.values(x);
        let s = self.gamma * (1.0 - t);
        let mut hx = self.target.jacobian(x) * Complex64::new(t, 0.0);
        for (i, d) in self.start.jacobian_diagonal(x).into_iter().enumerate() {
            hx[(i, i)] += s * d;
        }
        let ht = f - g * self.gamma;
        (hx, ht)
    }

    fn value(&self, x: &[Complex64], t: f64) -> DVector<Complex64> {
        self.start.values(x) * (self.gamma * (1.0 - t)) + self.target.values(x) * Complex64::new(t, 0.0)
    }

    fn jacobian(&self, x: &[Complex64], t: f64) -> DMatrix<Complex64> {
        let mut hx = self.target.jacobian(x) * Complex64::new(t, 0.0);
        let s = self.gamma * (1.0 - t);
        for (i, d) in self.start.jacobian_diagonal(x).into_iter().enumerate() {
            hx[(i, i)] += s * d;
        }
        hx
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathStatus {
    Converged(Vec<Complex64>),
    Diverged,
    Stalled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathOutcome {
    pub status: PathStatus,
    pub steps_taken: usize,
    pub final_residual: f64,
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn solve(a: DMatrix<Complex64>, b: DVector<Complex64>) -> Option<DVector<Complex64>> {
    let sol = a.lu().solve(&b)?;
    sol.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(sol)
}

fn axpy(x: &[Complex64], a: Complex64, v: &DVector<Complex64>) -> Vec<Complex64> {
    x.iter().zip(v.iter()).map(|(xi, vi)| xi + a * vi).collect()
}

/// Newton iterations on H(·, t); succeeds when an update falls below
/// `tol` relative to the point.
fn correct(h: &Homotopy, x: Vec<Complex64>, t: f64, iters: usize, tol: f64) -> Option<Vec<Complex64>> {
    let mut x = x;
    for _ in 0..iters {
        let dx = solve(h.jacobian(&x, t), -h.value(&x, t))?;
        x = axpy(&x, Complex64::new(1.0, 0.0), &dx);
        if dx.norm() <= tol * (1.0 + norm(&x)) {
            return Some(x);
        }
    }
    None
}

/// Newton on the target alone until the residual stops improving.
pub(crate) fn refine(target: &CompiledSystem, x: Vec<Complex64>, iters: usize, tol: f64) -> (Vec<Complex64>, f64) {
    let mut best = x.clone();
    let mut best_res = target.residual(&x);
    let mut x = x;
    for _ in 0..iters {
        if best_res <= tol {
            break;
        }
        let Some(dx) = solve(target.jacobian(&x), -target.values(&x)) else {
            break;
        };
        x = axpy(&x, Complex64::new(1.0, 0.0), &dx);
        let res = target.residual(&x);
        if res < best_res {
            best = x.clone();
            best_res = res;
        }
    }
    (best, best_res)
}

/// Tracks one path from t = 0 to t = 1 with an Euler predictor and a
/// Newton corrector.
pub fn track_path(h: &Homotopy, start: &[Complex64], settings: &TrackerSettings) -> PathOutcome {
    let mut x = start.to_vec();
    let mut t = 0.0f64;
    let mut step = settings.initial_step;
    let mut successes = 0u32;
    let mut steps_taken = 0usize;
    let mut early_norm = norm(&x);
    // a path that gives up after growing far beyond its size on the first
    // half of the homotopy is heading to infinity
    let give_up = |steps_taken, x: &[Complex64], early_norm: f64| {
        if norm(x) > settings.divergence_hint * (1.0 + early_norm) {
            PathOutcome {
                status: PathStatus::Diverged,
                steps_taken,
                final_residual: f64::INFINITY,
            }
        } else {
            PathOutcome {
                status: PathStatus::Stalled,
                steps_taken,
                final_residual: h.target.residual(x),
            }
        }
    };
    while t < 1.0 {
        if steps_taken >= settings.max_steps {
            return give_up(steps_taken, &x, early_norm);
        }
        steps_taken += 1;
        let dt = step.min(1.0 - t);
        let t_next = if dt >= 1.0 - t { 1.0 } else { t + dt };
        let (hx, ht) = h.derivatives(&x, t);
        let predicted = solve(hx, -ht).map(|v| axpy(&x, Complex64::new(dt, 0.0), &v));
        let corrected = predicted.and_then(|p| {
            correct(h, p, t_next, settings.corrector_iters, settings.corrector_tol)
        });
        match corrected {
            Some(next) => {
                x = next;
                t = t_next;
                if t <= 0.5 {
                    early_norm = early_norm.max(norm(&x));
                }
                successes += 1;
                if successes >= 4 {
                    step = (step * 2.0).min(settings.max_step);
                    successes = 0;
                }
                if norm(&x) > settings.infinity_threshold {
                    return PathOutcome {
                        status: PathStatus::Diverged,
                        steps_taken,
                        final_residual: f64::INFINITY,
                    };
                }
            }
            None => {
                step *= 0.5;
                successes = 0;
                if step < settings.min_step {
                    return give_up(steps_taken, &x, early_norm);
                }
            }
        }
    }
    let (x, residual) = refine(&h.target, x, settings.max_newton_iters, settings.refine_tol);
    if residual <= settings.newton_tol && norm(&x) <= settings.infinity_threshold {
        PathOutcome {
            status: PathStatus::Converged(x),
            steps_taken,
            final_residual: residual,
        }
    } else {
        PathOutcome {
            status: PathStatus::Stalled,
            steps_taken,
            final_residual: residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PointDiagnostics {
    pub residual: f64,
    /// Numerical rank of the system Jacobian at the point.
    pub jacobian_rank: usize,
    /// Ratio of extreme singular values of the system Jacobian.
    pub condition: f64,
}

#[derive(Debug, Clone, PartialEq, Default, serde::Serialize)]
pub struct PathSummary {
    pub paths: u64,
    pub converged: u64,
    pub diverged: u64,
    pub stalled: u64,
}

/// Distinct finite solutions of a square system.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub points: Vec<Vec<Complex64>>,
    pub diagnostics: Vec<PointDiagnostics>,
    pub summary: PathSummary,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Numerical rank by column-pivoted QR: diagonal entries of R above
/// `rel_tol` times the largest one.
pub fn numerical_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let r = m.clone().col_piv_qr().r();
    let diag: Vec<f64> = (0..r.nrows().min(r.ncols())).map(|i| r[(i, i)].norm()).collect();
    let largest = diag.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    diag.iter().filter(|&&d| d > rel_tol * largest).count()
}

/// σ_max / σ_min, infinite for singular matrices.
pub fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub(crate) fn same_point(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    diff <= tol * norm(a).max(norm(b)).max(1.0)
}

/// Tracks every start solution and returns the deduplicated endpoints.
/// Results depend only on `seed` and the settings, not on `threads`.
pub fn solve_system(
    equations: &[Polynomial<Complex64>],
    settings: &TrackerSettings,
    seed: u64,
) -> Result<SolutionSet, HomotopyError> {
    let nvars = equations.first().map_or(0, |p| p.ring().nvars());
    let target = CompiledSystem::new(equations, nvars);
    let homotopy = Homotopy::new(target, seed, settings.bezout_cap)?;
    let starts: Vec<Vec<Complex64>> = homotopy.start.solutions().collect();
    let run = |s: &Vec<Complex64>| track_path(&homotopy, s, settings);
    let outcomes: Vec<PathOutcome> = if settings.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(settings.threads)
            .build()
            .map_err(|e| HomotopyError::ThreadPool(e.to_string()))?;
        pool.install(|| starts.par_iter().map(run).collect())
    } else {
        starts.iter().map(run).collect()
    };

    let mut summary = PathSummary {
        paths: starts.len() as u64,
        ..PathSummary::default()
    };
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    let mut diagnostics = Vec::new();
    for outcome in outcomes {
        match outcome.status {
            PathStatus::Converged(x) => {
                summary.converged += 1;
                if points.iter().any(|p| same_point(p, &x, settings.dedup_tol)) {
                    continue;
                }
                let jac = homotopy.target.jacobian(&x);
                diagnostics.push(PointDiagnostics {
                    residual: outcome.final_residual,
                    jacobian_rank: numerical_rank(&jac, settings.rank_tol),
                    condition: condition_number(&jac),
                });
                points.push(x);
            }
            PathStatus::Diverged => summary.diverged += 1,
            PathStatus::Stalled => summary.stalled += 1,
        }
    }
    Ok(SolutionSet {
        points,
        diagnostics,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Domain, RingContext};

    fn system(names: &[&str], eqs: &[&str]) -> Vec<Polynomial<Complex64>> {
        let ring = RingContext::new(names, Domain::ComplexDouble).unwrap();
        eqs.iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect()
    }

    #[test]
    fn start_solution_counts() {
        let s = |names: &[&str], eqs: &[&str]| {
            let e = system(names, eqs);
            total_degree_start(&CompiledSystem::new(&e, names.len()), 0, 10_000_000)
                .unwrap()
                .num_paths()
        };
        assert_eq!(s(&["x", "y"], &["x^2-1", "y^2-4"]), 4);
        assert_eq!(s(&["x", "y"], &["x+y-1", "x-y"]), 1);
        assert_eq!(s(&["a", "b", "c", "d", "e"], &["a^2", "b^2", "c^2", "d^2", "e*a"]), 32);
        let e = system(&["x", "y"], &["x^5000", "y^5000"]);
        assert!(matches!(
            total_degree_start(&CompiledSystem::new(&e, 2), 0, 10_000_000),
            Err(HomotopyError::BezoutOverflow { .. })
        ));
    }

    #[test]
    fn start_solutions_solve_start_system() {
        let e = system(&["x", "y"], &["x^3-1", "x*y^2"]);
        let start = total_degree_start(&CompiledSystem::new(&e, 2), 4, 100).unwrap();
        for s in start.solutions() {
            assert!(start.values(&s).norm() < 1e-12);
        }
    }

    #[test]
    fn univariate_paths() {
        let e = system(&["x"], &["x^2-1"]);
        let h = Homotopy::new(CompiledSystem::new(&e, 1), 3, 100).unwrap();
        let settings = TrackerSettings::default();
        let mut roots: Vec<f64> = h
            .start
            .solutions()
            .map(|s| match track_path(&h, &s, &settings).status {
                PathStatus::Converged(x) => {
                    assert!(x[0].im.abs() < 1e-8);
                    x[0].re
                }
                other => panic!("{other:?}"),
            })
            .collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-8 && (roots[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn linear_target_is_quick() {
        let e = system(&["x", "y"], &["x+2*y-3", "x-y"]);
        let h = Homotopy::new(CompiledSystem::new(&e, 2), 1, 100).unwrap();
        let settings = TrackerSettings::default();
        let out = track_path(&h, &h.start.solution(0), &settings);
        assert!(matches!(out.status, PathStatus::Converged(_)));
        assert!(out.steps_taken <= (2.0 / settings.initial_step) as usize);
    }

    #[test]
    fn escaping_path_diverges() {
        // x*y = 1 together with x = 0 has no finite solution
        let e = system(&["x", "y"], &["x*y-1", "x"]);
        let sols = solve_system(&e, &TrackerSettings::default(), 2).unwrap();
        assert_eq!(sols.count(), 0);
        assert_eq!(sols.summary.converged, 0);
        assert!(sols.summary.diverged + sols.summary.stalled == 2);
        assert!(sols.summary.diverged >= 1);
    }

    #[test]
    fn two_quadrics() {
        let e = system(&["x", "y"], &["x^2-1", "y^2-4"]);
        let sols = solve_system(&e, &TrackerSettings::default(), 0).unwrap();
        assert_eq!(sols.count(), 4);
        assert!(sols.diagnostics.iter().all(|d| d.residual <= 1e-10 && d.jacobian_rank == 2));
    }

    #[test]
    fn parallel_matches_serial() {
        let e = system(&["x", "y"], &["x^3+y^2-2*x*y-1", "y^3-x^2+3"]);
        let serial = solve_system(&e, &TrackerSettings::default(), 7).unwrap();
        let parallel = solve_system(
            &e,
            &TrackerSettings {
                threads: 4,
                ..TrackerSettings::default()
            },
            7,
        )
        .unwrap();
        assert_eq!(serial, parallel);
        assert_eq!(serial.count(), 9);
    }

    #[test]
    fn rank_and_condition() {
        let m = DMatrix::from_row_slice(2, 2, &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)]);
        assert_eq!(numerical_rank(&m, 1e-6), 1);
        assert!(condition_number(&m) > 1e12);
        assert_eq!(numerical_rank(&DMatrix::<Complex64>::identity(3, 3), 1e-6), 3);
    }
}
