//! Isolated points of Z = Sing(X ∩ Q) and their Milnor numbers.

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::critical::{
    combine_generators, isotropic_quadric, jacobian, maximal_minors, singular_locus_system,
    SingularLocusSystem, VarietyKind, VarietyPresentation,
};
use crate::groebner::{local_dimension, milnor_number, GroebnerError, DEFAULT_MILNOR_CAP};
use crate::poly::{Coefficient, Domain, Field, Gaussian, Monomial, Polynomial, RingContext};
use crate::random::{self, streams};

use super::system::CompiledSystem;
use super::tracker::{same_point, solve_system, PathSummary};
use super::{HomotopyError, TrackerSettings};

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SingularLocus {
    /// Projective representatives, scaled so that the first coordinate of
    /// largest modulus equals 1.
    pub points: Vec<Vec<Complex64>>,
    pub paths: PathSummary,
    pub seeds: Vec<u64>,
}

/// Scales `x` so that its first coordinate of (numerically) largest
/// modulus becomes 1.
fn normalize(x: &[Complex64]) -> Vec<Complex64> {
    let max = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = x
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-6))
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    x.iter().map(|z| z / pivot).collect()
}

fn random_linear_form(
    ring: &Arc<RingContext>,
    count: usize,
    constant: bool,
    rng: &mut impl rand::Rng,
) -> Result<Polynomial<Gaussian>, HomotopyError> {
    let mut form = Polynomial::zero(ring);
    for i in 0..count {
        form = form.add(&Polynomial::variable(ring, i)?.scale(&random::small_gaussian(rng, 9)))?;
    }
    if constant {
        form = form.sub(&Polynomial::one(ring)?)?;
    }
    Ok(form)
}

/// Square system: linear equations kept, the others replaced by random
/// combinations so that the equation count matches the variable count.
fn square_up(
    equations: &[Polynomial<Gaussian>],
    ring: &Arc<RingContext>,
    seed: u64,
) -> Result<Vec<Polynomial<Complex64>>, HomotopyError> {
    let n = ring.nvars();
    let complex_ring = ring.with_domain(Domain::ComplexDouble)?;
    let to_complex = |p: &Polynomial<Gaussian>| p.convert(&complex_ring, |c| Ok(c.to_complex()));
    let (linear, nonlinear): (Vec<_>, Vec<_>) = equations
        .iter()
        .filter(|p| !p.is_zero())
        .partition(|p| p.total_degree() == Some(1));
    if linear.len() > n || linear.len() + nonlinear.len() < n {
        return Err(HomotopyError::PositiveDimensional);
    }
    let need = n - linear.len();
    let mut out: Vec<Polynomial<Complex64>> = linear.iter().map(|p| to_complex(p)).collect::<Result<_, _>>()?;
    let nonlinear: Vec<Polynomial<Complex64>> = nonlinear.iter().map(|p| to_complex(p)).collect::<Result<_, _>>()?;
    if nonlinear.len() == need {
        out.extend(nonlinear);
    } else {
        let mut rng = random::rng(seed, streams::RANDOMIZE);
        let (combined, _) = combine_generators(&nonlinear, need, || random::complex_uniform(&mut rng))?;
        out.extend(combined);
    }
    Ok(out)
}

/// Solutions of `equations` (after squaring up) that satisfy every
/// equation, as normalized point coordinates.
fn solve_exactly(
    system: &SingularLocusSystem,
    extra: &[Polynomial<Gaussian>],
    settings: &TrackerSettings,
    seed: u64,
) -> Result<(Vec<Vec<Complex64>>, PathSummary), HomotopyError> {
    let mut all = system.equations.clone();
    all.extend(extra.iter().cloned());
    let square = square_up(&all, &system.ring, seed)?;
    let solutions = solve_system(&square, settings, seed)?;
    let check = CompiledSystem::new(&all, system.ring.nvars());
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    for p in &solutions.points {
        if check.residual(p) > 1e-8 {
            continue;
        }
        let x = normalize(&p[..system.num_point_vars]);
        if !points.iter().any(|q| same_point(q, &x, settings.dedup_tol)) {
            points.push(x);
        }
    }
    Ok((points, solutions.summary))
}

/// Isolated points of Sing(X ∩ Q) for a projective X, found in a random
/// affine chart. Fails with `PositiveDimensional` when a random hyperplane
/// section of the locus is nonempty.
pub fn isolated_singularities(
    variety: &VarietyPresentation,
    settings: &TrackerSettings,
) -> Result<SingularLocus, HomotopyError> {
    settings.validate()?;
    let system = singular_locus_system(variety, settings.seed)?;
    let m = system.num_point_vars;
    let mut rng = random::rng(settings.seed, streams::CHART);
    let chart = random_linear_form(&system.ring, m, true, &mut rng)?;
    let hyperplane = random_linear_form(&system.ring, m, false, &mut rng)?;

    let (on_hyperplane, _) = solve_exactly(&system, &[chart.clone(), hyperplane], settings, settings.seed)?;
    if !on_hyperplane.is_empty() {
        return Err(HomotopyError::PositiveDimensional);
    }

    let mut seeds = Vec::new();
    let mut first: Option<(Vec<Vec<Complex64>>, PathSummary)> = None;
    for k in 0..settings.stability_runs as u64 {
        let seed = settings.seed.wrapping_add(k);
        let (points, summary) = solve_exactly(&system, std::slice::from_ref(&chart), settings, seed)?;
        seeds.push(seed);
        match &first {
            None => first = Some((points, summary)),
            Some((p0, _)) if p0.len() != points.len() => {
                return Err(HomotopyError::UnstableCount(vec![p0.len() as u64, points.len() as u64]));
            }
            Some(_) => {}
        }
    }
    let (points, paths) = first.expect("at least one run");
    Ok(SingularLocus { points, paths, seeds })
}

/// Best rational approximation with denominator at most `max_den`, if it
/// is within `tol` of `x`.
fn rational_near(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a as f64;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Exact Gaussian-rational coordinates (denominators at most 64) within
/// 1e-8 of `point`.
pub fn recognize_point(point: &[Complex64]) -> Result<Vec<Gaussian>, HomotopyError> {
    point
        .iter()
        .map(|z| {
            let re = rational_near(z.re, 64, 1e-8);
            let im = rational_near(z.im, 64, 1e-8);
            match (re, im) {
                (Some(re), Some(im)) => Ok(Gaussian::new(re, im)),
                _ => Err(HomotopyError::Recognition(format!("{z}"))),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalRoute {
    /// X was solved for c coordinates and q restricted to the resulting
    /// graph; μ is the Milnor number of that hypersurface germ.
    Graph,
    /// μ is the local dimension of (generators, (c+1)-minors of the
    /// Jacobian of generators and q).
    Minors,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct LocalMilnor {
    pub mu: u64,
    pub route: LocalRoute,
    /// The local hypersurface equation used on the graph route.
    pub local_equation: Option<String>,
}

fn is_zero_at_origin(p: &Polynomial<Gaussian>) -> bool {
    p.coefficient(&Monomial::one(p.ring().nvars())).is_none()
}

/// If `h = a*y_v + r` with `a` constant and `r` free of `y_v`, returns
/// `(v, a)`.
fn graph_variable(h: &Polynomial<Gaussian>) -> Option<(usize, Gaussian)> {
    let n = h.ring().nvars();
    (0..n).find_map(|v| {
        let mut involving = h.terms().filter(|(m, _)| m.exponents()[v] > 0);
        let (m, a) = involving.next()?;
        if involving.next().is_none() && *m == Monomial::variable(n, v) {
            Some((v, a.clone()))
        } else {
            None
        }
    })
}

/// Eliminates variables along linear-graph generators; returns the germ of
/// q on X when all generators are consumed this way.
fn eliminate_graph(
    mut gens: Vec<Polynomial<Gaussian>>,
    mut q: Polynomial<Gaussian>,
    codim: usize,
) -> Result<Option<Polynomial<Gaussian>>, HomotopyError> {
    let mut eliminated = 0;
    loop {
        gens.retain(|g| !g.is_zero());
        if gens.is_empty() {
            return Ok((eliminated == codim).then_some(q));
        }
        let Some((k, (v, a))) = gens.iter().enumerate().find_map(|(k, g)| graph_variable(g).map(|x| (k, x))) else {
            return Ok(None);
        };
        let ring = q.ring().clone();
        let names: Vec<&String> = ring
            .variable_names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != v)
            .map(|(_, s)| s)
            .collect();
        if names.is_empty() {
            return Ok(None);
        }
        let new_ring = RingContext::new(&names, Domain::GaussianRational)?;
        let mut images: Vec<Polynomial<Gaussian>> = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            images.push(match i.cmp(&v) {
                std::cmp::Ordering::Less => Polynomial::variable(&new_ring, i)?,
                std::cmp::Ordering::Equal => Polynomial::zero(&new_ring),
                std::cmp::Ordering::Greater => Polynomial::variable(&new_ring, i - 1)?,
            });
        }
        let h = gens.remove(k);
        let rest = h.sub(&Polynomial::monomial(&ring, Monomial::variable(ring.nvars(), v), a.clone()))?;
        let scale = a.inv().expect("nonzero coefficient").negated();
        images[v] = rest.substitute(&images, &new_ring)?.scale(&scale);
        gens = gens
            .iter()
            .map(|g| g.substitute(&images, &new_ring))
            .collect::<Result<_, _>>()?;
        q = q.substitute(&images, &new_ring)?;
        eliminated += 1;
    }
}

/// Milnor number of X ∩ Q at an exact point of Sing(X ∩ Q), for a smooth
/// projective X. Works in the chart where the point's first coordinate of
/// largest modulus is 1, with the point moved to the origin.
pub fn milnor_at_point(
    variety: &VarietyPresentation,
    point: &[Gaussian],
    seed: u64,
) -> Result<LocalMilnor, HomotopyError> {
    if variety.kind() != VarietyKind::Projective {
        return Err(HomotopyError::Recognition("Milnor numbers of X ∩ Q need a projective X".into()));
    }
    let ring = variety.ring();
    let m = ring.nvars();
    if point.len() != m {
        return Err(crate::poly::PolyError::Dimension {
            expected: m,
            got: point.len(),
        }
        .into());
    }
    let moduli: Vec<f64> = point.iter().map(|c| c.to_complex().norm()).collect();
    let max = moduli.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(GroebnerError::NotSingular.into());
    }
    let chart = moduli.iter().position(|&r| r >= max * (1.0 - 1e-12)).expect("nonempty");
    let pivot_inv = point[chart].inv().expect("nonzero pivot");
    let point: Vec<Gaussian> = point.iter().map(|c| c.times(&pivot_inv)).collect();

    let names: Vec<&String> = ring
        .variable_names()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != chart)
        .map(|(_, s)| s)
        .collect();
    let local = RingContext::new(&names, Domain::GaussianRational)?;
    let mut images = Vec::with_capacity(m);
    for (i, c) in point.iter().enumerate() {
        let constant = Polynomial::constant(&local, c.clone());
        images.push(match i.cmp(&chart) {
            std::cmp::Ordering::Less => constant.add(&Polynomial::variable(&local, i)?)?,
            std::cmp::Ordering::Equal => constant,
            std::cmp::Ordering::Greater => constant.add(&Polynomial::variable(&local, i - 1)?)?,
        });
    }
    let gens: Vec<Polynomial<Gaussian>> = variety
        .generators()
        .iter()
        .map(|g| g.substitute(&images, &local))
        .collect::<Result<_, _>>()?;
    let q: Polynomial<Gaussian> = isotropic_quadric::<Gaussian>(ring)?.substitute(&images, &local)?;
    if !gens.iter().all(is_zero_at_origin) || !is_zero_at_origin(&q) {
        return Err(GroebnerError::NotSingular.into());
    }

    if let Some(germ) = eliminate_graph(gens.clone(), q.clone(), variety.codim())? {
        let result = milnor_number(&germ, DEFAULT_MILNOR_CAP)?;
        return Ok(LocalMilnor {
            mu: result.mu,
            route: LocalRoute::Graph,
            local_equation: Some(germ.to_string()),
        });
    }

    let mut rng = random::rng(seed, streams::COMBINATION);
    let (chosen, _) = combine_generators(&gens, variety.codim(), || random::small_gaussian(&mut rng, 9))?;
    let mut stacked = chosen;
    stacked.push(q);
    let mut ideal = gens;
    ideal.extend(maximal_minors(&jacobian(&stacked)?)?.into_iter().filter(|p| !p.is_zero()));
    let result = local_dimension(&ideal, DEFAULT_MILNOR_CAP)?;
    Ok(LocalMilnor {
        mu: result.mu,
        route: LocalRoute::Minors,
        local_equation: None,
    })
}
