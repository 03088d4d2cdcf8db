use std::sync::Arc;

use ed_defect::poly::{parse_polynomial, Domain, Fp, Gaussian, Monomial, Polynomial, RingContext};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn ring(domain: Domain) -> Arc<RingContext> {
    RingContext::new(&["x", "y", "z"], domain).unwrap()
}

type Terms = Vec<([u16; 3], i64, i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(([0u16..4, 0u16..4, 0u16..3], -9i64..10, 1i64..5), 0..6)
}

fn rational(ring: &Arc<RingContext>, t: &Terms) -> Polynomial<BigRational> {
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, n, d)| {
            (
                Monomial::from_exponents(e.to_vec()),
                BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            )
        }),
    )
}

fn gaussian(ring: &Arc<RingContext>, t: &Terms) -> Polynomial<Gaussian> {
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, a, b)| (Monomial::from_exponents(e.to_vec()), Gaussian::from_ints(*a, *b))),
    )
}

fn fp(ring: &Arc<RingContext>, t: &Terms) -> Polynomial<Fp> {
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, n, d)| (Monomial::from_exponents(e.to_vec()), Fp::new(n * 31 + d, 32003))),
    )
}

fn point() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_ring_axioms(a in terms(), b in terms(), c in terms()) {
        let r = ring(Domain::Rational);
        let (a, b, c) = (rational(&r, &a), rational(&r, &b), rational(&r, &c));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(&r).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn prime_field_ring_axioms(a in terms(), b in terms(), c in terms()) {
        let r = ring(Domain::PrimeField(32003));
        let (a, b, c) = (fp(&r, &a), fp(&r, &b), fp(&r, &c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().mul(&c).unwrap(),
            a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn display_parse_round_trip(t in terms()) {
        let r = ring(Domain::Rational);
        let p = rational(&r, &t);
        let back: Polynomial<BigRational> = parse_polynomial(&p.to_string(), &r).unwrap();
        prop_assert_eq!(back, p);

        let g = ring(Domain::GaussianRational);
        let q = gaussian(&g, &t);
        let back: Polynomial<Gaussian> = parse_polynomial(&q.to_string(), &g).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in terms(), b in terms(), x in point()) {
        let r = ring(Domain::GaussianRational);
        let (a, b) = (gaussian(&r, &a), gaussian(&r, &b));
        let (va, vb) = (a.evaluate(&x).unwrap(), b.evaluate(&x).unwrap());
        let prod = a.mul(&b).unwrap().evaluate(&x).unwrap();
        let sum = a.add(&b).unwrap().evaluate(&x).unwrap();
        let scale = 1.0 + va.norm() * vb.norm();
        prop_assert!((prod - va * vb).norm() <= 1e-9 * scale);
        prop_assert!((sum - va - vb).norm() <= 1e-9 * (1.0 + va.norm() + vb.norm()));
    }

    #[test]
    fn derivative_matches_finite_difference(t in terms(), x in point(), var in 0usize..3) {
        let r = ring(Domain::GaussianRational);
        let p = gaussian(&r, &t);
        let dp = p.differentiate(var).unwrap().evaluate(&x).unwrap();
        let h = 1e-6;
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[var] += h;
        minus[var] -= h;
        let fd = (p.evaluate(&plus).unwrap() - p.evaluate(&minus).unwrap()) / (2.0 * h);
        prop_assert!((fd - dp).norm() <= 1e-5 * (1.0 + dp.norm()), "fd {} vs {}", fd, dp);
    }

    #[test]
    fn leibniz_rule(a in terms(), b in terms(), var in 0usize..3) {
        let r = ring(Domain::Rational);
        let (a, b) = (rational(&r, &a), rational(&r, &b));
        let lhs = a.mul(&b).unwrap().differentiate(var).unwrap();
        let rhs = a
            .differentiate(var)
            .unwrap()
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.differentiate(var).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
