//! Polynomial systems compiled for repeated complex evaluation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::poly::{Coefficient, Polynomial};

type Term = (Complex64, Vec<(usize, u32)>);

/// One polynomial as a flat list of `(coefficient, [(variable, exponent)])`.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<Term>,
    degree: u32,
}

impl CompiledPoly {
    pub fn new<C: Coefficient>(p: &Polynomial<C>) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let factors = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as u32))
                    .collect();
                (c.to_complex(), factors)
            })
            .collect();
        CompiledPoly {
            terms,
            degree: p.total_degree().unwrap_or(0),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn value(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, f)| f.iter().fold(*c, |acc, &(i, e)| acc * x[i].powu(e)))
            .sum()
    }

    /// Σ |c|·|x^a| over the terms, the natural scale for the value at `x`.
    pub fn magnitude(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, f)| f.iter().fold(c.norm(), |acc, &(i, e)| acc * x[i].norm().powi(e as i32)))
            .sum()
    }

    /// Adds the gradient at `x`, scaled by `scale`, into `row`.
    fn add_gradient(&self, x: &[Complex64], scale: Complex64, row: &mut [Complex64]) {
        for (c, f) in &self.terms {
            for (k, &(i, e)) in f.iter().enumerate() {
                let mut d = *c * scale * (e as f64) * x[i].powu(e - 1);
                for (l, &(j, ej)) in f.iter().enumerate() {
                    if l != k {
                        d *= x[j].powu(ej);
                    }
                }
                row[i] += d;
            }
        }
    }
}

/// Square or rectangular system with its variable count.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    pub polys: Vec<CompiledPoly>,
    pub nvars: usize,
}

impl CompiledSystem {
    pub fn new<C: Coefficient>(polys: &[Polynomial<C>], nvars: usize) -> Self {
        CompiledSystem {
            polys: polys.iter().map(CompiledPoly::new).collect(),
            nvars,
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(CompiledPoly::degree).collect()
    }

    pub fn values(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.len(), self.polys.iter().map(|p| p.value(x)))
    }

    pub fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let mut jac = DMatrix::zeros(self.len(), self.nvars);
        let mut row = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (r, p) in self.polys.iter().enumerate() {
            row.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            p.add_gradient(x, Complex64::new(1.0, 0.0), &mut row);
            for (c, v) in row.iter().enumerate() {
                jac[(r, c)] = *v;
            }
        }
        jac
    }

    /// Largest relative backward error |f_i(x)| / (1 + Σ|c||x^a|).
    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.polys
            .iter()
            .map(|p| p.value(x).norm() / (1.0 + p.magnitude(x)))
            .fold(0.0, f64::max)
    }
}
