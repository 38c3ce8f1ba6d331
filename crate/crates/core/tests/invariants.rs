use equimilnor::action::{equivariant_milnor, nu};
use equimilnor::classify::{check_class4_exclusion, classify, expected_multiset, RepClass};
use equimilnor::localstd::milnor_number;
use equimilnor::{det_character, is_invariant, Coeff, DiagonalAction, Polynomial};
use proptest::prelude::*;

/// Sum of invariant pure powers plus those of the given monomials that are
/// invariant and lie above the Newton diagonal of the pure powers, so the
/// germ is isolated. Pure powers have exponent `m / gcd(m, w)` when the
/// weight is nonzero and `zero_exp` otherwise.
fn invariant_germ(a: &DiagonalAction, zero_exp: &[u32], extra: &[(Vec<u32>, i64)]) -> Polynomial {
    let n = a.nvars();
    let m = a.modulus();
    let mut terms = Vec::new();
    let mut powers = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = if a.weights()[i] == 0 { zero_exp[i] } else { (m / gcd(m, a.weights()[i])) as u32 };
        powers.push(e[i]);
        terms.push((e, Coeff::from_integer(1.into())));
    }
    let lcm: u32 = powers.iter().product();
    for (e, c) in extra {
        let e = e[..n].to_vec();
        let s: u64 = e.iter().zip(a.weights()).map(|(&x, &w)| x as u64 * w).sum();
        let level: u32 = e.iter().zip(&powers).map(|(&x, &p)| x * (lcm / p)).sum();
        if s.is_multiple_of(m) && level > lcm && e.iter().sum::<u32>() >= 3 {
            terms.push((e, Coeff::from_integer((*c).into())));
        }
    }
    Polynomial::from_terms(n, terms).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn action_strategy(max_n: usize) -> impl Strategy<Value = DiagonalAction> {
    (prop::sample::select(vec![3u64, 5, 7]), 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..m as i64, n).prop_map(move |w| DiagonalAction::new(m, &w).unwrap())
    })
}

fn extra_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..=4, 3), -3i64..=3), 0..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_dimension_is_milnor_number(
        a in action_strategy(3),
        zero_exp in prop::collection::vec(3u32..=5, 3),
        extra in extra_strategy(),
    ) {
        let f = invariant_germ(&a, &zero_exp, &extra);
        prop_assert!(is_invariant(&f, &a).unwrap());
        let ms = equivariant_milnor(&f, &a).unwrap();
        prop_assert_eq!(ms.dim(), milnor_number(&f).unwrap());
        prop_assert!(nu(&f, &a).unwrap() >= 1);
        prop_assert!(check_class4_exclusion(&ms, &a).unwrap() || ms.trivial_multiplicity() != 1);
    }

    #[test]
    fn splitting_off_a_quadratic_keeps_the_multiset(
        a in action_strategy(2),
        zero_exp in prop::collection::vec(3u32..=5, 3),
        extra in extra_strategy(),
        c in 0i64..7,
        squares in any::<bool>(),
    ) {
        let h = invariant_germ(&a, &zero_exp, &extra);
        let m = a.modulus();
        let k = h.nvars();
        let (qw, q): (Vec<i64>, Vec<(Vec<u32>, i64)>) = if squares {
            // weight 0 is self-paired for odd m
            (vec![0, 0], vec![(vec![2, 0], 1), (vec![0, 2], 1)])
        } else {
            let c = c % m as i64;
            (vec![c, m as i64 - c], vec![(vec![1, 1], 1)])
        };
        let mut weights = qw.clone();
        weights.extend(a.weights().iter().map(|&w| w as i64));
        let big = DiagonalAction::new(m, &weights).unwrap();
        let mut terms: Vec<(Vec<u32>, Coeff)> = q
            .into_iter()
            .map(|(e, c)| {
                let mut full = e;
                full.extend(std::iter::repeat_n(0, k));
                (full, Coeff::from_integer(c.into()))
            })
            .collect();
        for (e, c) in h.terms() {
            let mut full = vec![0, 0];
            full.extend_from_slice(e.as_slice());
            terms.push((full, c.clone()));
        }
        let f = Polynomial::from_terms(k + 2, terms).unwrap();
        let split = equivariant_milnor(&f, &big).unwrap();
        let reduced = equivariant_milnor(&h, &a).unwrap();
        prop_assert_eq!(split.multiplicities(), reduced.multiplicities());
    }

    #[test]
    fn classifier_recovers_each_admissible_class(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]),
        w in prop::collection::vec(0i64..31, 1..=4),
    ) {
        let a = DiagonalAction::new(p, &w).unwrap();
        let d = det_character(&a);
        for c in RepClass::ADMISSIBLE {
            let ms = expected_multiset(c, &a).unwrap();
            prop_assert_eq!(Some(ms.dim()), c.dimension(p));
            let gated_in =
                |c: RepClass| matches!(c, RepClass::TrivialOnly | RepClass::TrivialPlus2W) == (d == 0 || p == 2);
            // for p = 2 classes 2 and 3 have the multisets of classes 1 and 4
            let expected = if gated_in(c) {
                c
            } else {
                RepClass::ADMISSIBLE
                    .into_iter()
                    .find(|&o| gated_in(o) && expected_multiset(o, &a).unwrap() == ms)
                    .unwrap_or(RepClass::Other)
            };
            prop_assert_eq!(classify(&ms, &a).unwrap(), expected);
        }
    }
}
