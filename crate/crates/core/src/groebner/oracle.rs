//! Symbolic ED-degree counts: the saturated Lagrange ideal over a prime
//! field, whose staircase size is the number of critical points on the
//! smooth locus.

use std::sync::Arc;

use rand::Rng;

use crate::critical::{
    combine_generators, jacobian, maximal_minors, multiplier_names, VarietyPresentation, WeightMode,
};
use crate::poly::{Coefficient, Domain, Fp, Gaussian, PolyError, Polynomial, RingContext};
use crate::random::{self, streams};

use super::{buchberger, staircase_count, GroebnerError, MonomialOrder, Staircase};

pub const DEFAULT_PRIME: u32 = 32003;

/// Primes used for the double-run check on real-coefficient inputs.
const REAL_PRIMES: [u32; 2] = [32003, 31991];
/// Primes congruent to 1 mod 4, which contain a square root of -1.
const GAUSSIAN_PRIMES: [u32; 2] = [32009, 32029];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    /// One run per prime; run `k` uses seed `seed + k`.
    pub primes: Vec<u32>,
    pub seed: u64,
}

impl OracleOptions {
    /// Two runs on two primes suitable for the coefficients of `variety`.
    pub fn for_variety(variety: &VarietyPresentation, seed: u64) -> Self {
        let primes = if variety.has_complex_coefficients() {
            GAUSSIAN_PRIMES
        } else {
            REAL_PRIMES
        };
        OracleOptions {
            primes: primes.to_vec(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OracleRun {
    pub prime: u32,
    pub seed: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OracleReport {
    pub count: u64,
    pub runs: Vec<OracleRun>,
}

fn gaussian_to_fp(c: &Gaussian, p: u32, i: Option<Fp>) -> Result<Fp, PolyError> {
    let domain = Domain::PrimeField(p);
    let re = Fp::from_rational(&c.re, &domain)?;
    if c.is_real() {
        return Ok(re);
    }
    let i = i.ok_or_else(|| {
        PolyError::DomainMismatch(format!("Z/{p} has no square root of -1"))
    })?;
    Ok(re.plus(&Fp::from_rational(&c.im, &domain)?.times(&i)))
}

fn random_nonzero(rng: &mut impl Rng, p: u32) -> Fp {
    Fp::new(rng.gen_range(1..p as i64), p)
}

/// Generators of the critical ideal over Z/p in the variables
/// `(x, lambda_1..lambda_c, z)`: the input generators, the Lagrange
/// equations for c random combinations g_j, and 1 - z*h with h a random
/// combination of the maximal minors of the Jacobian of the g_j.
pub fn oracle_critical_ideal(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    prime: u32,
    seed: u64,
) -> Result<Vec<Polynomial<Fp>>, GroebnerError> {
    let m = variety.num_coordinates();
    let c = variety.codim();
    let point_ring = variety.ring().with_domain(Domain::PrimeField(prime))?;
    let mut names = multiplier_names(c);
    names.push("_sat".to_string());
    let ring: Arc<RingContext> = point_ring.extended(&names)?;
    let i = Fp::sqrt_minus_one(prime);

    let originals: Vec<Polynomial<Fp>> = variety
        .generators()
        .iter()
        .map(|g| g.convert(&point_ring, |a| gaussian_to_fp(a, prime, i)))
        .collect::<Result<_, _>>()?;

    let mut rng = random::rng(seed, streams::ORACLE);
    let data: Vec<Fp> = (0..m).map(|_| Fp::new(rng.gen_range(0..prime as i64), prime)).collect();
    let weights: Vec<Fp> = match mode {
        WeightMode::Unit => vec![Fp::new(1, prime); m],
        WeightMode::Generic => (0..m).map(|_| random_nonzero(&mut rng, prime)).collect(),
        WeightMode::Weighted(w) => {
            if w.len() != m {
                return Err(GroebnerError::Setup(format!("expected {m} weights, got {}", w.len())));
            }
            w.iter().map(|a| gaussian_to_fp(a, prime, i)).collect::<Result<_, _>>()?
        }
    };
    if weights.iter().any(Coefficient::is_zero) {
        return Err(GroebnerError::Setup(format!("a weight vanishes modulo {prime}")));
    }

    let (chosen, _) = combine_generators(&originals, c, || random_nonzero(&mut rng, prime))
        .map_err(|e| GroebnerError::Setup(e.to_string()))?;
    let minors = maximal_minors(&jacobian(&chosen)?)?;
    let mut h = Polynomial::zero(&point_ring);
    for minor in &minors {
        h = h.add(&minor.scale(&random_nonzero(&mut rng, prime)))?;
    }
    if h.is_zero() {
        return Err(GroebnerError::Setup("the Jacobian minors vanish identically".into()));
    }

    let lifted: Vec<Polynomial<Fp>> = chosen.iter().map(|g| g.embed(&ring)).collect::<Result<_, _>>()?;
    let mut equations: Vec<Polynomial<Fp>> =
        originals.iter().map(|g| g.embed(&ring)).collect::<Result<_, _>>()?;
    for k in 0..m {
        let mut eq = Polynomial::variable(&ring, k)?
            .sub(&Polynomial::constant(&ring, data[k]))?
            .scale(&weights[k]);
        for (j, g) in lifted.iter().enumerate() {
            let lambda = Polynomial::variable(&ring, m + j)?;
            eq = eq.sub(&lambda.mul(&g.differentiate(k)?)?)?;
        }
        equations.push(eq);
    }
    let z = Polynomial::variable(&ring, m + c)?;
    let saturation = Polynomial::one(&ring)?.sub(&z.mul(&h.embed(&ring)?)?)?;
    equations.push(saturation);
    Ok(equations)
}

/// Staircase size of the critical ideal for one prime and one seed.
pub fn symbolic_ed_degree_single(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    prime: u32,
    seed: u64,
) -> Result<u64, GroebnerError> {
    let ideal = oracle_critical_ideal(variety, mode, prime, seed)?;
    let gb = buchberger(&ideal, MonomialOrder::GrRevLex)?;
    match staircase_count(&gb) {
        Staircase::Finite(n) => Ok(n),
        Staircase::Infinite => Err(GroebnerError::NotZeroDimensional),
    }
}

/// Runs the count once per configured prime (with shifted seeds) and
/// requires all runs to agree.
pub fn symbolic_ed_degree(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    options: &OracleOptions,
) -> Result<OracleReport, GroebnerError> {
    if options.primes.is_empty() {
        return Err(GroebnerError::Setup("no primes configured".into()));
    }
    let mut runs = Vec::with_capacity(options.primes.len());
    for (k, &prime) in options.primes.iter().enumerate() {
        let seed = options.seed.wrapping_add(k as u64);
        let count = symbolic_ed_degree_single(variety, mode, prime, seed)?;
        runs.push(OracleRun { prime, seed, count });
    }
    let count = runs[0].count;
    if runs.iter().any(|r| r.count != count) {
        return Err(GroebnerError::UnluckyPrimeSuspected(
            runs.iter().map(|r| r.count).collect(),
        ));
    }
    Ok(OracleReport { count, runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::VarietyKind;
    use crate::poly::parse_polynomial;

    fn variety(names: &[&str], gens: &[&str], codim: usize, kind: VarietyKind) -> VarietyPresentation {
        let ring = RingContext::new(names, Domain::GaussianRational).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        VarietyPresentation::new(gens, codim, kind).unwrap()
    }

    fn count(v: &VarietyPresentation, mode: WeightMode) -> u64 {
        symbolic_ed_degree(v, &mode, &OracleOptions::for_variety(v, 11)).unwrap().count
    }

    #[test]
    fn circle() {
        let v = variety(&["x", "y"], &["x^2+y^2-1"], 1, VarietyKind::Affine);
        assert_eq!(count(&v, WeightMode::Unit), 2);
        assert_eq!(count(&v, WeightMode::Generic), 4);
    }

    #[test]
    fn determinant_cone() {
        let v = variety(&["x0", "x1", "x2", "x3"], &["x0*x3-x1*x2"], 1, VarietyKind::Projective);
        assert_eq!(count(&v, WeightMode::Unit), 2);
        assert_eq!(count(&v, WeightMode::Generic), 6);
    }

    #[test]
    fn quadric_surface_unit() {
        let v = variety(
            &["x0", "x1", "x2", "x3"],
            &["(x1-I*x0)^2+2*(x3-I*x2)^2+x0^2+x1^2+x2^2+x3^2"],
            1,
            VarietyKind::Projective,
        );
        assert_eq!(OracleOptions::for_variety(&v, 0).primes, GAUSSIAN_PRIMES.to_vec());
        assert_eq!(count(&v, WeightMode::Unit), 1);
        assert_eq!(count(&v, WeightMode::Generic), 6);
    }

    #[test]
    fn complex_coefficients_need_suitable_prime() {
        let v = variety(&["x", "y"], &["x^2+I*y^2-1"], 1, VarietyKind::Affine);
        assert!(matches!(
            symbolic_ed_degree_single(&v, &WeightMode::Unit, 32003, 0),
            Err(GroebnerError::Poly(PolyError::DomainMismatch(_)))
        ));
    }
}
