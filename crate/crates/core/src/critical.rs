//! Variety presentations and the polynomial systems built from them:
//! Lagrange critical systems for weighted squared-distance objectives,
//! weighted quadrics, the non-transversality system for X ∩ Q, and
//! generic linear slices.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{Coefficient, Domain, Gaussian, Monomial, PolyError, Polynomial, RingContext};
use crate::random::{self, streams};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CriticalError {
    #[error("weight {0} is zero")]
    WeightZero(usize),
    #[error("random combination {0} of the generators vanished; reseed")]
    DegenerateCombination(usize),
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyKind {
    Affine,
    Projective,
}

/// Generators of a variety together with its codimension. Projective
/// varieties are handled through their affine cones.
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    ring: Arc<RingContext>,
    generators: Vec<Polynomial<Gaussian>>,
    codim: usize,
    kind: VarietyKind,
}

impl VarietyPresentation {
    pub fn new(
        generators: Vec<Polynomial<Gaussian>>,
        codim: usize,
        kind: VarietyKind,
    ) -> Result<Self, CriticalError> {
        let ring = generators
            .first()
            .ok_or_else(|| CriticalError::InvalidVariety("no generators".into()))?
            .ring()
            .clone();
        if *ring.domain() != Domain::GaussianRational {
            return Err(CriticalError::InvalidVariety(
                "generators must have Gaussian-rational coefficients".into(),
            ));
        }
        if generators.iter().any(|g| g.ring() != &ring) {
            return Err(PolyError::RingMismatch.into());
        }
        let nvars = ring.nvars();
        if codim == 0 || codim > nvars {
            return Err(CriticalError::InvalidVariety(format!(
                "codimension {codim} out of range for {nvars} coordinates"
            )));
        }
        if generators.len() < codim {
            return Err(CriticalError::InvalidVariety(format!(
                "{} generators cannot cut out codimension {codim}",
                generators.len()
            )));
        }
        if generators.iter().any(Polynomial::is_zero) {
            return Err(CriticalError::InvalidVariety("zero generator".into()));
        }
        if kind == VarietyKind::Projective && !generators.iter().all(Polynomial::is_homogeneous) {
            return Err(CriticalError::InvalidVariety(
                "projective generators must be homogeneous".into(),
            ));
        }
        Ok(VarietyPresentation {
            ring,
            generators,
            codim,
            kind,
        })
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<Gaussian>] {
        &self.generators
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn kind(&self) -> VarietyKind {
        self.kind
    }

    /// Number of coordinates of the affine space the computation runs in
    /// (the cone's ambient space for projective inputs).
    pub fn num_coordinates(&self) -> usize {
        self.ring.nvars()
    }

    /// n for a subvariety of C^n or P^n.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            VarietyKind::Affine => self.ring.nvars(),
            VarietyKind::Projective => self.ring.nvars() - 1,
        }
    }

    /// Dimension of the variety itself (projective dimension for
    /// projective inputs). An empty projective variety reports 0.
    pub fn dim(&self) -> usize {
        self.ambient_dim().saturating_sub(self.codim)
    }

    pub fn has_complex_coefficients(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.terms().any(|(_, c)| !c.is_real()))
    }

    /// Applies an invertible linear map to every generator: old coordinate
    /// `i` becomes `sum_j matrix[i][j] * x_j`.
    pub fn transform(&self, matrix: &[Vec<Gaussian>]) -> Result<Self, CriticalError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute_linear(matrix, &self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        VarietyPresentation::new(gens, self.codim, self.kind)
    }
}

/// How the weights of the distance function are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightMode {
    Unit,
    Generic,
    Weighted(Vec<Gaussian>),
}

/// Weights and data point of one ED problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct EDData {
    pub weights: Vec<Complex64>,
    pub data: Vec<Complex64>,
    pub seed: u64,
}

impl EDData {
    /// Draws data (and generic weights) from `seed`. Data coordinates are
    /// complex with parts uniform in [-1, 1]; generic weights additionally
    /// have modulus at least 0.3.
    pub fn generate(mode: &WeightMode, ncoords: usize, seed: u64) -> Result<Self, CriticalError> {
        let mut data_rng = random::rng(seed, streams::DATA);
        let data = (0..ncoords)
            .map(|_| random::complex_uniform(&mut data_rng))
            .collect();
        let weights = match mode {
            WeightMode::Unit => vec![Complex64::new(1.0, 0.0); ncoords],
            WeightMode::Generic => {
                let mut w_rng = random::rng(seed, streams::WEIGHTS);
                (0..ncoords)
                    .map(|_| random::complex_away_from_zero(&mut w_rng, 0.3))
                    .collect()
            }
            WeightMode::Weighted(w) => {
                if w.len() != ncoords {
                    return Err(CriticalError::WeightCount {
                        expected: ncoords,
                        got: w.len(),
                    });
                }
                w.iter().map(Coefficient::to_complex).collect()
            }
        };
        let data = EDData {
            weights,
            data,
            seed,
        };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<(), CriticalError> {
        match self.weights.iter().position(|w| w.norm() == 0.0) {
            Some(i) => Err(CriticalError::WeightZero(i)),
            None => Ok(()),
        }
    }
}

/// Square polynomial system over complex doubles in the variables
/// `(x_0..x_{m-1}, lambda_1..lambda_c)`.
#[derive(Debug, Clone)]
pub struct CriticalSystem {
    pub ring: Arc<RingContext>,
    pub equations: Vec<Polynomial<Complex64>>,
    pub num_point_vars: usize,
    pub num_multipliers: usize,
    pub data: EDData,
    /// Row j holds the coefficients of the combination g_j of the input
    /// generators (identity when generators are used directly).
    pub combination: Vec<Vec<Complex64>>,
    /// The combined generators g_1..g_c in the point variables only.
    pub chosen_generators: Vec<Polynomial<Complex64>>,
    /// All input generators in the point variables, for membership checks.
    pub original_generators: Vec<Polynomial<Complex64>>,
}

/// Names of the Lagrange multiplier variables.
pub fn multiplier_names(c: usize) -> Vec<String> {
    (1..=c).map(|j| format!("_lambda{j}")).collect()
}

pub fn to_complex_poly(
    p: &Polynomial<Gaussian>,
    ring: &Arc<RingContext>,
) -> Result<Polynomial<Complex64>, PolyError> {
    p.convert(ring, |c| Ok(c.to_complex()))
}

/// Σ x_i² over all variables of `ring`.
pub fn isotropic_quadric<C: Coefficient>(ring: &Arc<RingContext>) -> Result<Polynomial<C>, PolyError> {
    let one = C::from_i64(1, ring.domain())?;
    let weights = vec![one; ring.nvars()];
    Ok(sum_of_weighted_squares(ring, &weights))
}

/// Σ w_i x_i², rejecting zero weights.
pub fn weighted_quadric<C: Coefficient>(
    ring: &Arc<RingContext>,
    weights: &[C],
) -> Result<Polynomial<C>, CriticalError> {
    if weights.len() != ring.nvars() {
        return Err(CriticalError::WeightCount {
            expected: ring.nvars(),
            got: weights.len(),
        });
    }
    if let Some(i) = weights.iter().position(Coefficient::is_zero) {
        return Err(CriticalError::WeightZero(i));
    }
    Ok(sum_of_weighted_squares(ring, weights))
}

fn sum_of_weighted_squares<C: Coefficient>(ring: &Arc<RingContext>, weights: &[C]) -> Polynomial<C> {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        weights.iter().enumerate().map(|(i, w)| {
            let mut e = vec![0u16; n];
            e[i] = 2;
            (Monomial::from_exponents(e), w.clone())
        }),
    )
}

/// Random combinations of `gens` into `count` polynomials, or the
/// generators themselves when there are exactly `count` of them.
/// Chosen polynomials and the coefficient matrix that produced them.
pub(crate) type Combination<C> = (Vec<Polynomial<C>>, Vec<Vec<C>>);

pub(crate) fn combine_generators<C: Coefficient>(
    gens: &[Polynomial<C>],
    count: usize,
    coeffs: impl FnMut() -> C,
) -> Result<Combination<C>, CriticalError> {
    let domain = gens[0].ring().domain().clone();
    let zero = C::from_i64(0, &domain)?;
    let one = C::from_i64(1, &domain)?;
    if gens.len() == count {
        let matrix = (0..count)
            .map(|j| {
                (0..count)
                    .map(|k| if j == k { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        return Ok((gens.to_vec(), matrix));
    }
    let mut coeffs = coeffs;
    let mut chosen = Vec::with_capacity(count);
    let mut matrix = Vec::with_capacity(count);
    for j in 0..count {
        let row: Vec<C> = (0..gens.len()).map(|_| coeffs()).collect();
        let mut g = Polynomial::zero(gens[0].ring());
        for (a, f) in row.iter().zip(gens) {
            g = g.add(&f.scale(a))?;
        }
        if g.is_zero() {
            return Err(CriticalError::DegenerateCombination(j));
        }
        chosen.push(g);
        matrix.push(row);
    }
    Ok((chosen, matrix))
}

/// Lagrange system for the critical points of Σ w_i (x_i - u_i)² on V:
/// g_j(x) = 0 for j = 1..c and w_i (x_i - u_i) - Σ_j λ_j ∂g_j/∂x_i = 0.
pub fn build_critical_system(
    variety: &VarietyPresentation,
    data: &EDData,
) -> Result<CriticalSystem, CriticalError> {
    let m = variety.num_coordinates();
    let c = variety.codim();
    if data.weights.len() != m || data.data.len() != m {
        return Err(CriticalError::WeightCount {
            expected: m,
            got: data.weights.len().min(data.data.len()),
        });
    }
    data.validate()?;
    let point_ring = variety.ring().with_domain(Domain::ComplexDouble)?;
    let ring = point_ring.extended(&multiplier_names(c))?;

    let originals: Vec<Polynomial<Complex64>> = variety
        .generators()
        .iter()
        .map(|g| to_complex_poly(g, &point_ring))
        .collect::<Result<_, _>>()?;
    let mut combo_rng = random::rng(data.seed, streams::COMBINATION);
    let (chosen, combination) =
        combine_generators(&originals, c, || random::complex_uniform(&mut combo_rng))?;

    let lifted: Vec<Polynomial<Complex64>> = chosen
        .iter()
        .map(|g| g.embed(&ring))
        .collect::<Result<_, _>>()?;
    let mut equations = lifted.clone();
    for i in 0..m {
        let xi = Polynomial::variable(&ring, i)?;
        let target = xi
            .sub(&Polynomial::constant(&ring, data.data[i]))?
            .scale(&data.weights[i]);
        let mut eq = target;
        for (j, g) in lifted.iter().enumerate() {
            let lambda = Polynomial::variable(&ring, m + j)?;
            eq = eq.sub(&lambda.mul(&g.differentiate(i)?)?)?;
        }
        equations.push(eq);
    }
    Ok(CriticalSystem {
        ring,
        equations,
        num_point_vars: m,
        num_multipliers: c,
        data: data.clone(),
        combination,
        chosen_generators: chosen,
        original_generators: originals,
    })
}

/// Rows of the Jacobian matrix of `gens`.
pub fn jacobian<C: Coefficient>(gens: &[Polynomial<C>]) -> Result<Vec<Vec<Polynomial<C>>>, PolyError> {
    gens.iter()
        .map(|g| (0..g.ring().nvars()).map(|i| g.differentiate(i)).collect())
        .collect()
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn determinant<C: Coefficient>(rows: &[Vec<Polynomial<C>>]) -> Result<Polynomial<C>, PolyError> {
    let k = rows.len();
    let ring = rows[0][0].ring().clone();
    if k == 1 {
        return Ok(rows[0][0].clone());
    }
    let mut total = Polynomial::zero(&ring);
    for col in 0..k {
        if rows[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<C>>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][col].mul(&determinant(&minor)?)?;
        total = if col % 2 == 0 {
            total.add(&term)?
        } else {
            total.sub(&term)?
        };
    }
    Ok(total)
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All maximal minors of a matrix with `rows.len()` rows.
pub fn maximal_minors<C: Coefficient>(rows: &[Vec<Polynomial<C>>]) -> Result<Vec<Polynomial<C>>, PolyError> {
    let k = rows.len();
    let n = rows[0].len();
    subsets(n, k)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<Polynomial<C>>> = rows
                .iter()
                .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
                .collect();
            determinant(&sub)
        })
        .collect()
}

/// Polynomial system whose zero set (in the cone, away from the origin) is
/// Z = Sing(X ∩ Q).
#[derive(Debug, Clone)]
pub struct SingularLocusSystem {
    pub ring: Arc<RingContext>,
    pub equations: Vec<Polynomial<Gaussian>>,
    pub num_point_vars: usize,
    /// Number of auxiliary kernel variables (zero for the minors route).
    pub num_kernel_vars: usize,
}

pub fn kernel_names(count: usize) -> Vec<String> {
    (0..count).map(|j| format!("_kernel{j}")).collect()
}

/// Equations of V, Σ x_i², and the rank drop of the matrix stacking the
/// Jacobian of g_1..g_c over ∇q. Uses all (c+1)-minors when c+1 ≤ 3 and a
/// left-kernel vector with a random affine normalization otherwise.
pub fn singular_locus_system(
    variety: &VarietyPresentation,
    seed: u64,
) -> Result<SingularLocusSystem, CriticalError> {
    if variety.kind() != VarietyKind::Projective {
        return Err(CriticalError::InvalidVariety(
            "the non-transversality system needs a projective variety".into(),
        ));
    }
    let c = variety.codim();
    let m = variety.num_coordinates();
    let mut rng = random::rng(seed, streams::COMBINATION);
    let (chosen, _) = combine_generators(variety.generators(), c, || {
        random::small_gaussian(&mut rng, 9)
    })?;
    let q: Polynomial<Gaussian> = isotropic_quadric(variety.ring())?;
    let mut stacked = chosen.clone();
    stacked.push(q.clone());
    let jac = jacobian(&stacked)?;

    if c < 3 {
        let mut equations: Vec<Polynomial<Gaussian>> = variety.generators().to_vec();
        equations.push(q);
        equations.extend(maximal_minors(&jac)?.into_iter().filter(|p| !p.is_zero()));
        return Ok(SingularLocusSystem {
            ring: variety.ring().clone(),
            equations,
            num_point_vars: m,
            num_kernel_vars: 0,
        });
    }

    let ring = variety.ring().extended(&kernel_names(c + 1))?;
    let mut equations: Vec<Polynomial<Gaussian>> = variety
        .generators()
        .iter()
        .map(|g| g.embed(&ring))
        .collect::<Result<_, _>>()?;
    equations.push(q.embed(&ring)?);
    for i in 0..m {
        let mut eq = Polynomial::zero(&ring);
        for (j, row) in jac.iter().enumerate() {
            let y = Polynomial::variable(&ring, m + j)?;
            eq = eq.add(&y.mul(&row[i].embed(&ring)?)?)?;
        }
        if !eq.is_zero() {
            equations.push(eq);
        }
    }
    let mut kernel_rng = random::rng(seed, streams::KERNEL);
    let mut normalization = Polynomial::from_i64(&ring, -1)?;
    for j in 0..=c {
        let y = Polynomial::variable(&ring, m + j)?;
        normalization = normalization.add(&y.scale(&random::small_gaussian(&mut kernel_rng, 9)))?;
    }
    equations.push(normalization);
    Ok(SingularLocusSystem {
        ring,
        equations,
        num_point_vars: m,
        num_kernel_vars: c + 1,
    })
}

/// Appends `k` random linear forms (homogeneous for projective inputs,
/// affine otherwise) with small Gaussian-integer coefficients.
pub fn slice_with_generic_linear(
    variety: &VarietyPresentation,
    k: usize,
    seed: u64,
) -> Result<VarietyPresentation, CriticalError> {
    if k > variety.dim() {
        return Err(CriticalError::InvalidVariety(format!(
            "cannot slice a {}-dimensional variety {k} times",
            variety.dim()
        )));
    }
    if k == 0 {
        return Ok(variety.clone());
    }
    let ring = variety.ring();
    let mut rng = random::rng(seed, streams::SLICE);
    let mut gens = variety.generators().to_vec();
    for _ in 0..k {
        let mut form = Polynomial::zero(ring);
        for i in 0..ring.nvars() {
            form = form.add(&Polynomial::variable(ring, i)?.scale(&random::small_gaussian(&mut rng, 9)))?;
        }
        if variety.kind() == VarietyKind::Affine {
            form = form.add(&Polynomial::constant(ring, random::small_gaussian(&mut rng, 9)))?;
        }
        gens.push(form);
    }
    VarietyPresentation::new(gens, variety.codim() + k, variety.kind())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use num_rational::BigRational;

    fn variety(names: &[&str], gens: &[&str], codim: usize, kind: VarietyKind) -> VarietyPresentation {
        let ring = RingContext::new(names, Domain::GaussianRational).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        VarietyPresentation::new(gens, codim, kind).unwrap()
    }

    #[test]
    fn quadrics() {
        let ring = RingContext::new(&["x0", "x1", "x2", "x3"], Domain::Rational).unwrap();
        let q: Polynomial<BigRational> = isotropic_quadric(&ring).unwrap();
        assert_eq!(q.to_string(), "x0^2 + x1^2 + x2^2 + x3^2");
        let ones = vec![BigRational::from_integer(1.into()); 4];
        assert_eq!(weighted_quadric(&ring, &ones).unwrap(), q);
        let r2 = RingContext::new(&["x0", "x1"], Domain::Rational).unwrap();
        let w = vec![BigRational::from_integer(1.into()), BigRational::from_integer(2.into())];
        assert_eq!(weighted_quadric(&r2, &w).unwrap().to_string(), "x0^2 + 2*x1^2");
        let bad = vec![BigRational::from_integer(1.into()), BigRational::from_integer(0.into())];
        assert_eq!(weighted_quadric(&r2, &bad), Err(CriticalError::WeightZero(1)));
    }

    #[test]
    fn system_shapes() {
        let circle = variety(&["x", "y"], &["x^2+y^2-1"], 1, VarietyKind::Affine);
        let data = EDData::generate(&WeightMode::Unit, 2, 1).unwrap();
        let sys = build_critical_system(&circle, &data).unwrap();
        assert_eq!(sys.equations.len(), 3);
        assert_eq!(sys.ring.nvars(), 3);

        let det = variety(&["x0", "x1", "x2", "x3"], &["x0*x3-x1*x2"], 1, VarietyKind::Projective);
        let data = EDData::generate(&WeightMode::Generic, 4, 1).unwrap();
        let sys = build_critical_system(&det, &data).unwrap();
        assert_eq!(sys.equations.len(), 5);
        assert_eq!(sys.ring.nvars(), 5);
        let degrees: Vec<u32> = sys.equations.iter().map(|e| e.total_degree().unwrap()).collect();
        assert_eq!(degrees, vec![2, 2, 2, 2, 2]);

        let x23 = variety(
            &["x11", "x12", "x13", "x21", "x22", "x23"],
            &["x11*x22-x12*x21", "x11*x23-x13*x21", "x12*x23-x13*x22"],
            2,
            VarietyKind::Projective,
        );
        let data = EDData::generate(&WeightMode::Unit, 6, 3).unwrap();
        let sys = build_critical_system(&x23, &data).unwrap();
        assert_eq!(sys.equations.len(), 8);
        assert_eq!(sys.ring.nvars(), 8);
        assert_eq!(sys.chosen_generators.len(), 2);
        assert_eq!(sys.combination.len(), 2);
        assert_eq!(sys.combination[0].len(), 3);
    }

    #[test]
    fn presentation_validation() {
        let ring = RingContext::new(&["x", "y"], Domain::GaussianRational).unwrap();
        let g: Polynomial<Gaussian> = parse_polynomial("x^2+y", &ring).unwrap();
        assert!(VarietyPresentation::new(vec![g.clone()], 1, VarietyKind::Projective).is_err());
        assert!(VarietyPresentation::new(vec![g.clone()], 3, VarietyKind::Affine).is_err());
        assert!(VarietyPresentation::new(vec![g], 1, VarietyKind::Affine).is_ok());
    }

    #[test]
    fn weights_are_checked() {
        let w = WeightMode::Weighted(vec![Gaussian::from_ints(1, 0), Gaussian::from_ints(0, 0)]);
        assert_eq!(EDData::generate(&w, 2, 0), Err(CriticalError::WeightZero(1)));
        let generic = EDData::generate(&WeightMode::Generic, 5, 9).unwrap();
        assert!(generic.weights.iter().all(|w| w.norm() >= 0.3));
        assert_eq!(generic, EDData::generate(&WeightMode::Generic, 5, 9).unwrap());
    }

    #[test]
    fn minors_route_for_determinant() {
        let det = variety(&["x0", "x1", "x2", "x3"], &["x0*x3-x1*x2"], 1, VarietyKind::Projective);
        let sys = singular_locus_system(&det, 0).unwrap();
        assert_eq!(sys.num_kernel_vars, 0);
        // generator, quadric, six 2x2 minors
        assert_eq!(sys.equations.len(), 8);
    }

    #[test]
    fn kernel_route_for_high_codimension() {
        let v = variety(
            &["x0", "x1", "x2", "x3", "a", "b"],
            &["x1-x2", "x2-x3", "x0*x3-a*b"],
            3,
            VarietyKind::Projective,
        );
        let sys = singular_locus_system(&v, 0).unwrap();
        assert_eq!(sys.num_kernel_vars, 4);
        assert_eq!(sys.ring.nvars(), 10);
    }

    #[test]
    fn slicing() {
        let det = variety(&["x0", "x1", "x2", "x3"], &["x0*x3-x1*x2"], 1, VarietyKind::Projective);
        let same = slice_with_generic_linear(&det, 0, 5).unwrap();
        assert_eq!(same.generators(), det.generators());
        let sliced = slice_with_generic_linear(&det, 1, 5).unwrap();
        assert_eq!(sliced.codim(), 2);
        assert_eq!(sliced.generators().len(), 2);
        assert!(sliced.generators()[1].is_homogeneous());
        assert!(slice_with_generic_linear(&det, 3, 5).is_err());
    }

    #[test]
    fn determinant_of_polynomial_matrix() {
        let ring = RingContext::new(&["a", "b", "c", "d"], Domain::Rational).unwrap();
        let v = |i| Polynomial::<BigRational>::variable(&ring, i).unwrap();
        let det = determinant(&[vec![v(0), v(1)], vec![v(2), v(3)]]).unwrap();
        assert_eq!(det.to_string(), "-b*c + a*d");
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
