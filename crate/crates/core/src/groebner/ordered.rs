use std::cmp::Ordering;
use std::sync::Arc;

use crate::poly::{Field, Monomial, Polynomial, RingContext};

use super::MonomialOrder;

/// Polynomial stored as a term list sorted in decreasing order for a fixed
/// monomial order; `terms[0]` is the leading term.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct OrderedPoly<F: Field> {
    pub terms: Vec<(Monomial, F)>,
}

impl<F: Field> OrderedPoly<F> {
    pub fn from_polynomial(p: &Polynomial<F>, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, F)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub fn to_polynomial(&self, ring: &Arc<RingContext>) -> Polynomial<F> {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// deg(f) - deg(LM(f)); only meaningful for local orders.
    pub fn ecart(&self) -> u32 {
        self.max_degree() - self.lm().degree()
    }

    pub fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        for (_, c) in &mut self.terms {
            *c = c.times(&inv);
        }
    }

    /// `self - coeff * mono * other`.
    pub fn sub_scaled(&self, coeff: &F, mono: &Monomial, other: &Self, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(mono), c.times(coeff)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, c.negated()));
                }
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m, c.negated()));
                    }
                    Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let d = ca.minus(&cb);
                        if !d.is_zero() {
                            out.push((ma.clone(), d));
                        }
                    }
                },
            }
        }
        OrderedPoly { terms: out }
    }

    /// Cancels the leading term of `self` against the leading term of `g`.
    pub fn reduce_lead_by(&self, g: &Self, order: MonomialOrder) -> Self {
        let mono = g.lm().quotient_of(self.lm());
        let coeff = self.lc().times(&g.lc().inv().expect("nonzero leading coefficient"));
        self.sub_scaled(&coeff, &mono, g, order)
    }

    pub fn s_polynomial(f: &Self, g: &Self, order: MonomialOrder) -> Self {
        let l = f.lm().lcm(g.lm());
        let mf = f.lm().quotient_of(&l);
        let mg = g.lm().quotient_of(&l);
        let cf = f.lc().inv().expect("nonzero leading coefficient");
        let cg = g.lc().inv().expect("nonzero leading coefficient");
        let scaled_f = OrderedPoly { terms: Vec::new() }.sub_scaled(&cf.negated(), &mf, f, order);
        scaled_f.sub_scaled(&cg, &mg, g, order)
    }
}
