use equimilnor::localstd::{milnor_number, standard_basis};
use equimilnor::{ideal_membership, mora_normal_form, Coeff, ExponentVector, LocalOrder, Polynomial};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

const N: usize = 3;

fn poly_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, N), -5i64..=5), 0..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(N, terms.into_iter().map(|(e, c)| (e, Coeff::from_integer(c.into())))).unwrap()
    })
}

fn nonconstant_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly_strategy(max_exp, max_terms).prop_map(|p| p.without_constant())
}

fn pure_power(n: usize, i: usize, a: u32) -> Polynomial {
    let mut e = vec![0; n];
    e[i] = a;
    Polynomial::monomial(ExponentVector::new(e), Coeff::from_integer(1.into()))
}

/// Random generators together with a pure power of each variable, so the
/// ideal has finite colength.
fn zero_dim_strategy(
    n: usize,
    gens: impl Strategy<Value = Vec<Polynomial>>,
) -> impl Strategy<Value = Vec<Polynomial>> {
    (gens, prop::collection::vec(2u32..=5, n)).prop_map(move |(mut gens, a)| {
        gens.extend(a.iter().enumerate().map(|(i, &ai)| pure_power(n, i, ai)));
        gens
    })
}

fn config(cases: u32, seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64, 0x5eed_0001))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 5), b in poly_strategy(3, 5), c in poly_strategy(3, 5)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), Polynomial::zero(N));
        prop_assert_eq!(a.mul(&Polynomial::one(N)).unwrap(), a.clone());
    }

    #[test]
    fn leading_exponent_has_minimal_degree(a in poly_strategy(4, 8)) {
        if let Some(lead) = a.leading_exponent() {
            for e in a.exponents() {
                prop_assert!(e <= lead);
                prop_assert!(lead.degree() <= e.degree());
            }
            prop_assert_eq!(a.terms().next().map(|(e, _)| e), Some(lead));
        }
    }

    #[test]
    fn mixed_partials_commute(a in poly_strategy(4, 8), i in 0..N, j in 0..N) {
        let ij = a.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
        let ji = a.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn euler_identity(w in prop::collection::vec(1i64..=4, N), a in poly_strategy(4, 8)) {
        // keep the terms of one weighted degree
        let Some(first) = a.exponents().next() else { return Ok(()); };
        let wdeg = |e: &ExponentVector| -> i64 {
            e.as_slice().iter().zip(&w).map(|(&x, &wi)| x as i64 * wi).sum()
        };
        let d = wdeg(first);
        let f = Polynomial::from_terms(
            N,
            a.terms().filter(|(e, _)| wdeg(e) == d).map(|(e, c)| (e.as_slice().to_vec(), c.clone())),
        ).unwrap();
        prop_assert_eq!(f.weighted_degree(&w), Some(d));
        let mut lhs = Polynomial::zero(N);
        for (i, wi) in w.iter().enumerate() {
            let xi = Polynomial::variable(N, i).unwrap();
            let term = xi.mul(&f.partial_derivative(i).unwrap()).unwrap().scale(&Coeff::from_integer((*wi).into()));
            lhs = lhs.add(&term).unwrap();
        }
        prop_assert_eq!(lhs, f.scale(&Coeff::from_integer(d.into())));
    }

    #[test]
    fn normal_form_is_idempotent(
        p in poly_strategy(4, 6),
        gens in zero_dim_strategy(N, prop::collection::vec(nonconstant_strategy(3, 3), 1..=3)),
    ) {
        let ord = LocalOrder::new(N);
        let r = mora_normal_form(&p, &gens, &ord).unwrap();
        prop_assert_eq!(mora_normal_form(&r, &gens, &ord).unwrap(), r.clone());
        if let Some(lead) = r.leading_exponent() {
            for g in gens.iter().filter(|g| !g.is_zero()) {
                prop_assert!(!g.leading_exponent().unwrap().divides(lead));
            }
        }
    }
}

fn poly2_strategy(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 2), -3i64..=3), 1..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(2, terms.into_iter().map(|(e, c)| (e, Coeff::from_integer(c.into())))).unwrap()
    })
}

proptest! {
    #![proptest_config(config(48, 0x5eed_0002))]

    #[test]
    fn combinations_are_members(
        gens in zero_dim_strategy(2, prop::collection::vec(poly2_strategy(3, 3).prop_map(|p| p.without_constant()), 1..=3)),
        coeffs in prop::collection::vec(poly2_strategy(2, 3), 5),
    ) {
        let ord = LocalOrder::new(2);
        let basis = standard_basis(&gens, &ord).unwrap();
        let mut h = Polynomial::zero(2);
        for (g, a) in gens.iter().zip(&coeffs) {
            h = h.add(&g.mul(a).unwrap()).unwrap();
        }
        prop_assert!(ideal_membership(&h, &basis).unwrap());
        for g in &gens {
            prop_assert!(basis.normal_form(g).unwrap().is_zero());
        }
        let again = standard_basis(&gens, &ord).unwrap();
        prop_assert_eq!(basis.generators(), again.generators());
    }

    #[test]
    fn semi_quasihomogeneous_milnor_number(
        a in prop::collection::vec(2u32..=6, 1..=3),
        extra in prop::collection::vec((prop::collection::vec(0u32..=6, 3), -3i64..=3), 0..=3),
    ) {
        let n = a.len();
        let mut terms: Vec<(Vec<u32>, Coeff)> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = a[i];
                (e, Coeff::from_integer(1.into()))
            })
            .collect();
        // terms strictly above the Newton diagonal leave μ unchanged
        for (e, c) in extra {
            let e: Vec<u32> = e[..n].to_vec();
            let lcm: u32 = a.iter().product();
            let level: u32 = e.iter().zip(&a).map(|(&x, &ai)| x * (lcm / ai)).sum();
            if level > lcm {
                terms.push((e, Coeff::from_integer(c.into())));
            }
        }
        let f = Polynomial::from_terms(n, terms).unwrap();
        let expected: u64 = a.iter().map(|&x| (x - 1) as u64).product();
        prop_assert_eq!(milnor_number(&f).unwrap(), expected);
    }
}
