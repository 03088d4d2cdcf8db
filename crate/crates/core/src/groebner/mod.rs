//! Gröbner bases over prime fields (Buchberger, global order) and standard
//! bases for a local order (Mora), plus the staircase counts built on them.

mod buchberger;
mod mora;
mod oracle;
mod ordered;

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{Field, Monomial, PolyError, Polynomial, RingContext};

pub use buchberger::{buchberger, buchberger_with_cap, DEFAULT_PAIR_CAP};
pub use mora::{local_dimension, milnor_number, MilnorResult, DEFAULT_MILNOR_CAP};
pub use oracle::{
    oracle_critical_ideal, symbolic_ed_degree, symbolic_ed_degree_single, OracleOptions,
    OracleReport, DEFAULT_PRIME,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroebnerError {
    #[error("pair budget of {0} exceeded")]
    CapExceeded(usize),
    #[error("Buchberger's algorithm needs a global monomial order")]
    LocalOrder,
    #[error("empty generator list")]
    NoGenerators,
    #[error("point is not a singular point of the hypersurface")]
    NotSingular,
    #[error("singularity is not isolated or its local algebra exceeds degree cap {0}")]
    NonIsolatedOrCapExceeded(u32),
    #[error("critical ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("counts disagree across primes/seeds: {0:?}")]
    UnluckyPrimeSuspected(Vec<u64>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Setup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; a global well-order.
    GrRevLex,
    /// Lower total degree is larger, ties broken lexicographically; the
    /// constant monomial is the largest.
    LocalAntiGradedLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrRevLex => a.grevlex_cmp(b),
            MonomialOrder::LocalAntiGradedLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| a.lex_cmp(b)),
        }
    }

    pub fn is_global(self) -> bool {
        matches!(self, MonomialOrder::GrRevLex)
    }
}

/// Reduced Gröbner basis (or standard basis, for the local order).
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    pub generators: Vec<Polynomial<F>>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> Option<&Arc<RingContext>> {
        self.generators.first().map(Polynomial::ring)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| leading_monomial(g, self.order))
            .collect()
    }

    /// Full normal form of `f` with respect to the basis (global orders).
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let order = self.order;
        let basis: Vec<ordered::OrderedPoly<F>> = self
            .generators
            .iter()
            .map(|g| ordered::OrderedPoly::from_polynomial(g, order))
            .collect();
        let nf = buchberger::full_reduce(ordered::OrderedPoly::from_polynomial(f, order), &basis, order);
        nf.to_polynomial(f.ring())
    }
}

pub fn leading_monomial<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Monomial {
    p.terms()
        .map(|(m, _)| m)
        .max_by(|a, b| order.cmp(a, b))
        .cloned()
        .expect("nonzero polynomial")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Staircase {
    Finite(u64),
    Infinite,
}

/// Number of monomials not divisible by any leading monomial of `gb`.
pub fn staircase_count<F: Field>(gb: &GroebnerBasis<F>) -> Staircase {
    let lms = gb.leading_monomials();
    let nvars = gb.ring().map_or(0, |r| r.nvars());
    match standard_monomials(&lms, nvars, None) {
        Some(list) => Staircase::Finite(list.len() as u64),
        None => Staircase::Infinite,
    }
}

/// Enumerates the monomials outside the monomial ideal generated by `lms`.
/// Returns `None` when there are infinitely many, or when one of them has
/// degree above `max_degree`.
pub fn standard_monomials(
    lms: &[Monomial],
    nvars: usize,
    max_degree: Option<u32>,
) -> Option<Vec<Monomial>> {
    if lms.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let mut has_pure_power = vec![false; nvars];
    for m in lms {
        if let Some(v) = m.pure_power_variable() {
            has_pure_power[v] = true;
        }
    }
    if has_pure_power.iter().any(|&b| !b) {
        return None;
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::new();
    let one = Monomial::one(nvars);
    seen.insert(one.clone());
    queue.push_back(one);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        if max_degree.is_some_and(|d| m.degree() > d) {
            return None;
        }
        for v in 0..nvars {
            let next = m.mul(&Monomial::variable(nvars, v));
            if seen.contains(&next) || lms.iter().any(|l| l.divides(&next)) {
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
        out.push(m);
    }
    out.sort();
    Some(out)
}
