//! Standard bases for the local anti-graded order via Mora's tangent-cone
//! normal form, and the Milnor number of an isolated singularity at the
//! origin as the dimension of the local algebra of its Jacobian ideal.

use crate::poly::{Field, Monomial, Polynomial};

use super::ordered::OrderedPoly;
use super::{standard_monomials, GroebnerError, MonomialOrder};

pub const DEFAULT_MILNOR_CAP: u32 = 50;

/// Total number of single reduction steps allowed across one standard
/// basis computation.
const STEP_BUDGET: usize = 5_000_000;

const ORDER: MonomialOrder = MonomialOrder::LocalAntiGradedLex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorResult {
    pub mu: u64,
    pub standard_monomials: Vec<Vec<u16>>,
}

/// Mora's weak normal form: returns 0, or a polynomial whose leading
/// monomial is not divisible by any leading monomial of `basis`.
fn mora_normal_form<F: Field>(
    f: OrderedPoly<F>,
    basis: &[OrderedPoly<F>],
    steps: &mut usize,
    cap: u32,
) -> Result<OrderedPoly<F>, GroebnerError> {
    let mut h = f;
    let mut extra: Vec<OrderedPoly<F>> = Vec::new();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        let lm = h.lm().clone();
        let pick = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm().divides(&lm))
            .min_by_key(|g| g.ecart());
        let Some(g) = pick else {
            return Ok(h);
        };
        let g = g.clone();
        *steps += 1;
        if *steps > STEP_BUDGET {
            return Err(GroebnerError::NonIsolatedOrCapExceeded(cap));
        }
        if g.ecart() > h.ecart() {
            extra.push(h.clone());
        }
        h = h.reduce_lead_by(&g, ORDER);
    }
}

/// Standard basis for the local order, minimalized.
fn local_standard_basis<F: Field>(
    gens: Vec<OrderedPoly<F>>,
    cap: u32,
) -> Result<Vec<OrderedPoly<F>>, GroebnerError> {
    let mut steps = 0usize;
    let mut basis: Vec<OrderedPoly<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for g in gens {
        let mut h = mora_normal_form(g, &basis, &mut steps, cap)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(h);
        let k = basis.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }
    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, j))| (basis[*i].lm().lcm(basis[*j].lm()).degree(), *i, *j))
            .map(|(k, _)| k)
            .expect("nonempty");
        let (i, j) = pairs.remove(best);
        let s = OrderedPoly::s_polynomial(&basis[i], &basis[j], ORDER);
        let mut h = mora_normal_form(s, &basis, &mut steps, cap)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().degree() > cap.saturating_mul(4) {
            return Err(GroebnerError::NonIsolatedOrCapExceeded(cap));
        }
        basis.push(h);
        let k = basis.len() - 1;
        pairs.extend((0..k).map(|i| (i, k)));
    }
    // drop elements whose leading monomial is divisible by another one
    let mut minimal: Vec<OrderedPoly<F>> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            l != k && q.lm().divides(p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    Ok(minimal)
}

/// Dimension of the local ring at the origin modulo the ideal generated by
/// `gens`, together with its standard monomials.
///
/// Fails with `NonIsolatedOrCapExceeded` when the quotient is infinite
/// dimensional or has a standard monomial of degree above `cap`.
pub fn local_dimension<F: Field>(
    gens: &[Polynomial<F>],
    cap: u32,
) -> Result<MilnorResult, GroebnerError> {
    let ring = gens.first().ok_or(GroebnerError::NoGenerators)?.ring().clone();
    let ordered: Vec<OrderedPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrderedPoly::from_polynomial(g, ORDER))
        .collect();
    let basis = local_standard_basis(ordered, cap)?;
    let lms: Vec<Monomial> = basis.iter().map(|p| p.lm().clone()).collect();
    let staircase = standard_monomials(&lms, ring.nvars(), Some(cap))
        .ok_or(GroebnerError::NonIsolatedOrCapExceeded(cap))?;
    Ok(MilnorResult {
        mu: staircase.len() as u64,
        standard_monomials: staircase.iter().map(|m| m.exponents().to_vec()).collect(),
    })
}

/// Milnor number of the hypersurface germ `g` at the origin.
pub fn milnor_number<F: Field>(g: &Polynomial<F>, cap: u32) -> Result<MilnorResult, GroebnerError> {
    let n = g.ring().nvars();
    let origin = Monomial::one(n);
    if g.coefficient(&origin).is_some() {
        return Err(GroebnerError::NotSingular);
    }
    let partials: Vec<Polynomial<F>> = (0..n)
        .map(|i| g.differentiate(i))
        .collect::<Result<_, _>>()?;
    if partials.iter().any(|p| p.coefficient(&origin).is_some()) {
        return Err(GroebnerError::NotSingular);
    }
    if partials.iter().all(Polynomial::is_zero) {
        return Err(GroebnerError::NonIsolatedOrCapExceeded(cap));
    }
    local_dimension(&partials, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Domain, Gaussian, RingContext};
    use num_rational::BigRational;

    fn mu(text: &str) -> Result<u64, GroebnerError> {
        let names: &[&str] = if text.contains('z') { &["x", "y", "z"] } else { &["x", "y"] };
        let r = RingContext::new(names, Domain::Rational).unwrap();
        let g: Polynomial<BigRational> = parse_polynomial(text, &r).unwrap();
        milnor_number(&g, DEFAULT_MILNOR_CAP).map(|m| m.mu)
    }

    #[test]
    fn node() {
        let r = RingContext::new(&["x", "y"], Domain::Rational).unwrap();
        let g: Polynomial<BigRational> = parse_polynomial("x^2+y^2", &r).unwrap();
        let res = milnor_number(&g, DEFAULT_MILNOR_CAP).unwrap();
        assert_eq!(res.mu, 1);
        assert_eq!(res.standard_monomials, vec![vec![0, 0]]);
    }

    #[test]
    fn a_k_series() {
        let r = RingContext::new(&["x", "y"], Domain::Rational).unwrap();
        for k in 1..=6u32 {
            let g: Polynomial<BigRational> =
                parse_polynomial(&format!("x^2+y^{}", k + 1), &r).unwrap();
            let res = milnor_number(&g, DEFAULT_MILNOR_CAP).unwrap();
            assert_eq!(res.mu, k as u64);
            let expected: Vec<Vec<u16>> = (0..k as u16).map(|e| vec![0, e]).collect();
            let mut got = res.standard_monomials.clone();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn e6_and_three_variables() {
        assert_eq!(mu("x^3+y^4").unwrap(), 6);
        assert_eq!(mu("x^2+y^2+z^2").unwrap(), 1);
        assert_eq!(mu("x^2+y^3+z^5").unwrap(), 8);
        // D4: x^2 y + y^3
        assert_eq!(mu("x^2*y+y^3").unwrap(), 4);
    }

    #[test]
    fn unit_multiple_keeps_mu() {
        assert_eq!(mu("(1+x)*(x^3+y^4)").unwrap(), 6);
        assert_eq!(mu("(1+x+y^2)*(x^2+y^5)").unwrap(), 4);
    }

    #[test]
    fn non_isolated_and_smooth() {
        assert_eq!(mu("x^2*y"), Err(GroebnerError::NonIsolatedOrCapExceeded(DEFAULT_MILNOR_CAP)));
        assert_eq!(mu("x+y^2"), Err(GroebnerError::NotSingular));
        assert_eq!(mu("1+x^2"), Err(GroebnerError::NotSingular));
    }

    #[test]
    fn gaussian_coefficients() {
        let r = RingContext::new(&["x", "y"], Domain::GaussianRational).unwrap();
        // (x + I y)(x - I y) is a node
        let g: Polynomial<Gaussian> = parse_polynomial("(x+I*y)*(x-I*y)", &r).unwrap();
        assert_eq!(milnor_number(&g, DEFAULT_MILNOR_CAP).unwrap().mu, 1);
    }
}
