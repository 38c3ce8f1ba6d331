use equimilnor::construct::LoopSpec;
use equimilnor::primes::{
    big_omega, erdos_statistic, factorize, group_factors, group_factors_to, hunt, is_prime, omega,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_factorization(n: u64) {
    let f = factorize(n);
    assert_eq!(f.primes.iter().product::<u64>(), n, "n = {n}");
    assert!(f.primes.iter().all(|&p| is_prime(p)), "n = {n}");
    assert!(f.primes.windows(2).all(|w| w[0] <= w[1]), "n = {n}");
}

#[test]
fn factorize_round_trip_up_to_a_million() {
    for n in 1..=1_000_000 {
        check_factorization(n);
    }
}

#[test]
fn factorize_round_trip_random_64_bit() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        check_factorization(rng.gen_range(1..=u64::MAX));
    }
    for n in [u64::MAX, u64::MAX - 58, (1 << 61) - 1, 4_294_967_291 * 4_294_967_279] {
        check_factorization(n);
    }
}

#[test]
fn hunt_is_monotone_in_factor_count() {
    let mut prev = hunt(2_000, 1);
    for k in 2..=7 {
        let cur = hunt(2_000, k);
        assert!(cur.iter().all(|h| prev.contains(h)));
        for h in &cur {
            let spec = LoopSpec::new(&h.d).unwrap();
            assert_eq!(spec.modulus(), h.p);
        }
        prev = cur;
    }
}

#[test]
fn erdos_fraction_is_monotone_in_epsilon() {
    let mut last = 0.0;
    for eps in [0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95] {
        let s = erdos_statistic(20_000, eps).unwrap();
        assert!(s.fraction >= last);
        assert!(s.fraction_big_omega >= s.fraction);
        last = s.fraction;
    }
}

proptest! {
    #[test]
    fn omega_bounds(n in 2u64..=u64::MAX) {
        let f = factorize(n);
        let (w, big) = (omega(n).unwrap(), big_omega(n).unwrap());
        prop_assert!(big >= w);
        let squarefree = f.primes.windows(2).all(|p| p[0] != p[1]);
        prop_assert_eq!(big == w, squarefree);
    }

    #[test]
    fn grouping_is_an_odd_factorization(n in 2u64..=1 << 40) {
        let f = factorize(n);
        let d = group_factors(&f).unwrap();
        prop_assert_eq!(d.len() % 2, 1);
        prop_assert!(d.len() <= f.big_omega());
        prop_assert!(d.len() + 1 >= f.big_omega());
        prop_assert!(d.iter().all(|&x| x >= 2));
        prop_assert_eq!(d.iter().product::<u64>(), n);
        let short = group_factors_to(&f, 3).unwrap();
        prop_assert!(short.len() <= 3 && short.len() % 2 == 1);
        prop_assert_eq!(short.iter().product::<u64>(), n);
    }
}
