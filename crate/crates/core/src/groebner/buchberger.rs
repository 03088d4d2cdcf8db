//! Buchberger's algorithm with the Gebauer–Möller pair update and the
//! normal selection strategy.

use crate::poly::{Field, Monomial, Polynomial};

use super::ordered::OrderedPoly;
use super::{GroebnerBasis, GroebnerError, MonomialOrder};

pub const DEFAULT_PAIR_CAP: usize = 2_000_000;

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    serial: usize,
}

/// Fully reduces `f` (leading and tail terms) modulo `basis`.
pub(crate) fn full_reduce<F: Field>(
    mut f: OrderedPoly<F>,
    basis: &[OrderedPoly<F>],
    order: MonomialOrder,
) -> OrderedPoly<F> {
    let mut done: Vec<(Monomial, F)> = Vec::new();
    while !f.is_zero() {
        let lm = f.lm();
        match basis.iter().find(|g| g.lm().divides(lm)) {
            Some(g) => f = f.reduce_lead_by(g, order),
            None => {
                let t = f.terms.remove(0);
                done.push(t);
            }
        }
    }
    OrderedPoly { terms: done }
}

pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    buchberger_with_cap(gens, order, DEFAULT_PAIR_CAP)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed by increasing lcm degree, ties by creation order, so
/// the output is deterministic for a given input order. Fails with
/// `CapExceeded` after `pair_cap` S-polynomial reductions.
pub fn buchberger_with_cap<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    pair_cap: usize,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    if !order.is_global() {
        return Err(GroebnerError::LocalOrder);
    }
    let ring = gens.first().ok_or(GroebnerError::NoGenerators)?.ring().clone();

    let mut polys: Vec<OrderedPoly<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut serial = 0usize;

    for g in gens {
        let mut p = OrderedPoly::from_polynomial(g, order);
        let basis: Vec<OrderedPoly<F>> = active.iter().map(|&k| polys[k].clone()).collect();
        p = full_reduce(p, &basis, order);
        if p.is_zero() {
            continue;
        }
        p.make_monic();
        polys.push(p);
        let h = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, h, &mut serial);
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.degree(), p.serial))
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        processed += 1;
        if processed > pair_cap {
            return Err(GroebnerError::CapExceeded(pair_cap));
        }
        let s = OrderedPoly::s_polynomial(&polys[pair.i], &polys[pair.j], order);
        let basis: Vec<OrderedPoly<F>> = active.iter().map(|&k| polys[k].clone()).collect();
        let mut h = full_reduce(s, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        polys.push(h);
        let idx = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, idx, &mut serial);
    }

    // interreduce the (already minimal) active set
    let mut basis: Vec<OrderedPoly<F>> = active.iter().map(|&k| polys[k].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<OrderedPoly<F>> = basis
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.clone())
            .collect();
        let lead = basis[k].terms[0].clone();
        let tail = OrderedPoly {
            terms: basis[k].terms[1..].to_vec(),
        };
        let mut tail = full_reduce(tail, &others, order);
        let mut terms = vec![lead];
        terms.append(&mut tail.terms);
        let mut p = OrderedPoly { terms };
        p.make_monic();
        reduced.push(p.to_polynomial(&ring));
    }
    Ok(GroebnerBasis {
        generators: reduced,
        order,
        reduced: true,
    })
}

/// Gebauer–Möller installation of the new basis element `h`.
fn update<F: Field>(
    polys: &[OrderedPoly<F>],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
    serial: &mut usize,
) {
    let lm_h = polys[h].lm().clone();
    let candidates: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let lm_g = polys[g].lm();
            (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (k, (g, lcm, coprime)) in candidates.iter().enumerate() {
        let dominated_later = candidates[k + 1..]
            .iter()
            .any(|(_, other, _)| other.divides(lcm));
        let dominated_kept = kept.iter().any(|(_, other, _)| other.divides(lcm));
        if *coprime || (!dominated_later && !dominated_kept) {
            kept.push((*g, lcm.clone(), *coprime));
        }
    }
    // product criterion
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|(_, _, coprime)| !coprime)
        .map(|(g, lcm, _)| {
            *serial += 1;
            Pair {
                i: g,
                j: h,
                lcm,
                serial: *serial,
            }
        })
        .collect();

    pairs.retain(|p| {
        !(lm_h.divides(&p.lcm)
            && polys[p.i].lm().lcm(&lm_h) != p.lcm
            && polys[p.j].lm().lcm(&lm_h) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !lm_h.divides(polys[g].lm()));
    active.push(h);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Domain, Fp, RingContext};

    fn fp_ring(names: &[&str]) -> std::sync::Arc<RingContext> {
        RingContext::new(names, Domain::PrimeField(32003)).unwrap()
    }

    fn gb(names: &[&str], gens: &[&str]) -> Vec<String> {
        let r = fp_ring(names);
        let g: Vec<Polynomial<Fp>> = gens.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        buchberger(&g, MonomialOrder::GrRevLex)
            .unwrap()
            .generators
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn principal_ideal() {
        assert_eq!(gb(&["x"], &["x^2-1"]), vec!["x^2 + 32002"]);
    }

    #[test]
    fn coordinate_ideal() {
        assert_eq!(gb(&["x", "y"], &["x", "y"]), vec!["y", "x"]);
    }

    #[test]
    fn sum_and_difference() {
        assert_eq!(gb(&["x", "y"], &["x+y", "x-y"]), vec!["y", "x"]);
    }

    #[test]
    fn unit_ideal() {
        assert_eq!(gb(&["x", "y"], &["x*y-1", "x"]), vec!["1"]);
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        let r = fp_ring(&["x", "y", "z"]);
        let gens: Vec<Polynomial<Fp>> = ["x^2+y*z-2", "y^2-x*z+1", "x*y*z-3"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap())
            .collect();
        let basis = buchberger(&gens, MonomialOrder::GrRevLex).unwrap();
        let ordered: Vec<OrderedPoly<Fp>> = basis
            .generators
            .iter()
            .map(|g| OrderedPoly::from_polynomial(g, MonomialOrder::GrRevLex))
            .collect();
        for a in 0..ordered.len() {
            for b in a + 1..ordered.len() {
                let s = OrderedPoly::s_polynomial(&ordered[a], &ordered[b], MonomialOrder::GrRevLex);
                assert!(full_reduce(s, &ordered, MonomialOrder::GrRevLex).is_zero());
            }
        }
        for g in &gens {
            assert!(basis.normal_form(g).is_zero());
        }
        assert!(basis.generators.iter().all(|g| g.leading_term().unwrap().1.value() == 1));
    }

    #[test]
    fn local_order_is_rejected() {
        let r = fp_ring(&["x"]);
        let g: Polynomial<Fp> = parse_polynomial("x", &r).unwrap();
        assert_eq!(
            buchberger(&[g], MonomialOrder::LocalAntiGradedLex).unwrap_err(),
            GroebnerError::LocalOrder
        );
    }
}
