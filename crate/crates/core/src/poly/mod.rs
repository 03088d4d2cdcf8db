//! Sparse multivariate polynomials over exact and floating coefficient
//! domains, with a small text parser.

mod coeff;
mod monomial;
mod parse;
mod polynomial;

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

pub use coeff::{Coefficient, Domain, Field, Fp, Gaussian};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolyError {
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0}")]
    DomainMismatch(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Ordered variable names plus the coefficient domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    variable_names: Vec<String>,
    domain: Domain,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(names: &[S], domain: Domain) -> Result<Arc<Self>, PolyError> {
        let variable_names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for name in &variable_names {
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::InvalidRing(format!("bad variable name `{name}`")));
            }
            if name == "I" {
                return Err(PolyError::InvalidRing(
                    "`I` is reserved for the imaginary unit".into(),
                ));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        if let Domain::PrimeField(p) = domain {
            if !is_prime(p) {
                return Err(PolyError::InvalidRing(format!("{p} is not prime")));
            }
        }
        Ok(Arc::new(RingContext {
            variable_names,
            domain,
        }))
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn nvars(&self) -> usize {
        self.variable_names.len()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variable_names.iter().position(|n| n == name)
    }

    /// Same variables, different coefficient domain.
    pub fn with_domain(&self, domain: Domain) -> Result<Arc<Self>, PolyError> {
        RingContext::new(&self.variable_names, domain)
    }

    /// This ring's variables followed by `extra`.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>, PolyError> {
        let mut names = self.variable_names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        RingContext::new(&names, self.domain.clone())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
