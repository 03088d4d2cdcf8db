use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{Coefficient, Monomial, PolyError, RingContext};

/// Sparse polynomial: a map from exponent vectors to nonzero coefficients.
///
/// Terms are kept in graded reverse lexicographic order, so iteration and
/// printing are deterministic. Polynomials are immutable values.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Coefficient> {
    ring: Arc<RingContext>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<RingContext>, c: C) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<RingContext>) -> Result<Self, PolyError> {
        Ok(Self::constant(ring, C::from_i64(1, ring.domain())?))
    }

    pub fn from_i64(ring: &Arc<RingContext>, n: i64) -> Result<Self, PolyError> {
        Ok(Self::constant(ring, C::from_i64(n, ring.domain())?))
    }

    pub fn monomial(ring: &Arc<RingContext>, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Arc<RingContext>, index: usize) -> Result<Self, PolyError> {
        if index >= ring.nvars() {
            return Err(PolyError::VariableIndex {
                index,
                nvars: ring.nvars(),
            });
        }
        Ok(Self::monomial(
            ring,
            Monomial::variable(ring.nvars(), index),
            C::from_i64(1, ring.domain())?,
        ))
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms(
        ring: &Arc<RingContext>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
            add_term(&mut map, m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var] as u32)
            .max()
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.negated());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca.times(cb));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.negated())
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let p = a.times(c);
                (!p.is_zero()).then(|| (m.clone(), p))
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one(&self.ring)?;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Re-expresses the polynomial over another ring with the same number
    /// of variables, converting each coefficient.
    pub fn convert<D: Coefficient>(
        &self,
        ring: &Arc<RingContext>,
        f: impl Fn(&C) -> Result<D, PolyError>,
    ) -> Result<Polynomial<D>, PolyError> {
        if ring.nvars() != self.ring.nvars() {
            return Err(PolyError::Dimension {
                expected: self.ring.nvars(),
                got: ring.nvars(),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    /// Embeds into a ring whose first variables are this ring's variables.
    pub fn embed(&self, ring: &Arc<RingContext>) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if ring.nvars() < n || ring.variable_names()[..n] != *self.ring.variable_names() {
            return Err(PolyError::RingMismatch);
        }
        let extra = ring.nvars() - n;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.extend(std::iter::repeat_n(0, extra));
            (Monomial::from_exponents(e), c.clone())
        });
        Ok(Polynomial::from_terms(ring, terms))
    }

    pub fn differentiate(&self, var: usize) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if var >= n {
            return Err(PolyError::VariableIndex {
                index: var,
                nvars: n,
            });
        }
        let domain = self.ring.domain();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let factor = C::from_i64(e as i64, domain)?;
            terms.push((Monomial::from_exponents(exps), c.times(&factor)));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Evaluates at a complex point. Powers of each coordinate are cached.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::Dimension {
                expected: n,
                got: point.len(),
            });
        }
        let max_deg: Vec<usize> = (0..n).map(|i| self.degree_in(i) as usize).collect();
        let powers: Vec<Vec<Complex64>> = point
            .iter()
            .zip(&max_deg)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=d {
                    p.push(acc);
                    acc *= x;
                }
                p
            })
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= powers[i][e as usize];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates in the coefficient domain itself.
    pub fn evaluate_exact(&self, point: &[C]) -> Result<C, PolyError> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(PolyError::Dimension {
                expected: n,
                got: point.len(),
            });
        }
        let one = C::from_i64(1, self.ring.domain())?;
        let mut total = C::from_i64(0, self.ring.domain())?;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                let mut p = one.clone();
                for _ in 0..e {
                    p = p.times(&point[i]);
                }
                t = t.times(&p);
            }
            total = total.plus(&t);
        }
        Ok(total)
    }

    /// Composes with a linear change of variables: old variable `i` becomes
    /// `sum_j matrix[i][j] * new_j`, where `new_j` are the variables of
    /// `new_ring`.
    pub fn substitute_linear(
        &self,
        matrix: &[Vec<C>],
        new_ring: &Arc<RingContext>,
    ) -> Result<Self, PolyError> {
        let images: Vec<Polynomial<C>> = matrix
            .iter()
            .map(|row| {
                if row.len() != new_ring.nvars() {
                    return Err(PolyError::Dimension {
                        expected: new_ring.nvars(),
                        got: row.len(),
                    });
                }
                Ok(Polynomial::from_terms(
                    new_ring,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::variable(new_ring.nvars(), j), c.clone())),
                ))
            })
            .collect::<Result<_, _>>()?;
        self.substitute(&images, new_ring)
    }

    /// Replaces variable `i` by the polynomial `images[i]`.
    pub fn substitute(
        &self,
        images: &[Polynomial<C>],
        new_ring: &Arc<RingContext>,
    ) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(PolyError::Dimension {
                expected: n,
                got: images.len(),
            });
        }
        let mut cache: Vec<Vec<Polynomial<C>>> = vec![Vec::new(); n];
        let one = Polynomial::one(new_ring)?;
        let mut result = Polynomial::zero(new_ring);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(new_ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(one.clone());
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&images[i])?;
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize])?;
            }
            result = result.add(&t)?;
        }
        Ok(result)
    }
}

fn add_term<C: Coefficient>(map: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().plus(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.variable_names();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_display();
            let shown = if negative { c.negated() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !shown.is_one() || m.is_one() {
                factors.push(shown.render().0);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Domain, Gaussian};
    use num_rational::BigRational;

    fn qring(names: &[&str]) -> Arc<RingContext> {
        RingContext::new(names, Domain::Rational).unwrap()
    }

    fn p(s: &str, r: &Arc<RingContext>) -> Polynomial<BigRational> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["x"]);
        let prod = p("x+1", &r).mul(&p("x-1", &r)).unwrap();
        assert_eq!(prod, p("x^2-1", &r));
        assert_eq!(p("x^2-1", &r).add(&Polynomial::zero(&r)).unwrap(), p("x^2-1", &r));
    }

    #[test]
    fn determinant_times_one() {
        let r = qring(&["x0", "x1", "x2", "x3"]);
        let f = p("x0*x3 - x1*x2", &r);
        assert_eq!(f.mul(&Polynomial::one(&r).unwrap()).unwrap(), f);
    }

    #[test]
    fn derivatives() {
        let r = qring(&["x0", "x1", "x2", "x3"]);
        assert_eq!(p("x0^2", &r).differentiate(0).unwrap(), p("2*x0", &r));
        assert_eq!(p("x0*x3 - x1*x2", &r).differentiate(1).unwrap(), p("-x2", &r));
        assert!(p("7", &r).differentiate(0).unwrap().is_zero());
        assert!(p("x0", &r).differentiate(4).is_err());
    }

    #[test]
    fn evaluation() {
        let r = qring(&["x0", "x1", "x2", "x3"]);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(p("x0*x3 - x1*x2", &r).evaluate(&[one; 4]).unwrap(), zero);
        let q = p("x0^2+x1^2+x2^2+x3^2", &r);
        let v = q.evaluate(&[one, Complex64::i(), zero, zero]).unwrap();
        assert!(v.norm() < 1e-15);
        let rx = qring(&["x"]);
        assert_eq!(p("x^2", &rx).evaluate(&[Complex64::new(3.0, 0.0)]).unwrap().re, 9.0);
    }

    #[test]
    fn homogeneity_and_degree() {
        let r = qring(&["x0", "x1", "x2", "x3"]);
        let f = p("x0*x3 - x1*x2", &r);
        assert!(f.is_homogeneous());
        assert_eq!(f.total_degree(), Some(2));
        let rx = qring(&["x"]);
        assert!(!p("x^2+x", &rx).is_homogeneous());
        assert_eq!(Polynomial::<BigRational>::zero(&rx).total_degree(), None);
    }

    #[test]
    fn linear_substitutions() {
        let r = qring(&["x", "y"]);
        let ru = qring(&["u"]);
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        let f = p("x^2+y^2", &r);
        let g = f
            .substitute_linear(&[vec![one.clone()], vec![zero.clone()]], &ru)
            .unwrap();
        assert_eq!(g, p("u^2", &ru));
        let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(f.substitute_linear(&id, &r).unwrap(), f);

        let r4 = qring(&["x0", "x1", "x2", "x3"]);
        let q = p("x0^2+x1^2+x2^2+x3^2", &r4);
        let z = || BigRational::from_integer(0.into());
        let mut signed_perm = vec![vec![z(), z(), z(), z()]; 4];
        signed_perm[0][2] = -one.clone();
        signed_perm[1][0] = one.clone();
        signed_perm[2][3] = -one.clone();
        signed_perm[3][1] = one.clone();
        assert_eq!(q.substitute_linear(&signed_perm, &r4).unwrap(), q);
    }

    #[test]
    fn gaussian_printing_round_trip() {
        let r = RingContext::new(&["x0", "x1"], Domain::GaussianRational).unwrap();
        let f: Polynomial<Gaussian> = parse_polynomial("(x1 - I*x0)^2 + 3/2*I*x1 - 2", &r).unwrap();
        let printed = f.to_string();
        let back: Polynomial<Gaussian> = parse_polynomial(&printed, &r).unwrap();
        assert_eq!(back, f, "{printed}");
    }

    #[test]
    fn ring_mismatch() {
        let a = qring(&["x"]);
        let b = qring(&["y"]);
        assert_eq!(p("x", &a).add(&p("y", &b)), Err(PolyError::RingMismatch));
    }
}
