//! 64-bit factorization, prime-divisor counts, and the searches behind the
//! high-corank construction.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

// Miller-Rabin with these bases is exact for all n < 3.3·10^24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 101 * 101 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial factor of the odd composite `n` (Brent's variant of rho).
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; step back one at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factors of `n` with multiplicity, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub primes: Vec<u64>,
}

impl Factorization {
    /// Number of distinct prime factors, `ω(n)`.
    pub fn omega(&self) -> usize {
        let mut v = self.primes.clone();
        v.dedup();
        v.len()
    }

    /// Number of prime factors with multiplicity, `Ω(n)`.
    pub fn big_omega(&self) -> usize {
        self.primes.len()
    }
}

/// Trial division by small primes, then Pollard rho on what remains.
///
/// # Panics
///
/// If `n == 0`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize(0)");
    let mut rest = n;
    let mut primes = Vec::new();
    for &p in &SMALL_PRIMES {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    factor_into(rest, &mut primes);
    primes.sort_unstable();
    Factorization { n, primes }
}

fn require_at_least_two(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("prime-divisor counts need n >= 2, got {n}")));
    }
    Ok(())
}

pub fn omega(n: u64) -> Result<usize> {
    require_at_least_two(n)?;
    Ok(factorize(n).omega())
}

pub fn big_omega(n: u64) -> Result<usize> {
    require_at_least_two(n)?;
    Ok(factorize(n).big_omega())
}

/// Splits `f.n` into an odd number of factors `≥ 2`, as many as possible.
pub fn group_factors(f: &Factorization) -> Result<Vec<u64>> {
    group_factors_to(f, usize::MAX)
}

/// Like [`group_factors`] but with at most `max_len` factors (rounded down
/// to an odd number, and at least 1).
///
/// While the list is too long or has even length, the smallest factor is
/// multiplied into the largest. Output is ascending.
pub fn group_factors_to(f: &Factorization, max_len: usize) -> Result<Vec<u64>> {
    if f.primes.is_empty() {
        return Err(Error::Domain(format!("{} has no prime factors to group", f.n)));
    }
    let mut target = f.primes.len().min(max_len.max(1));
    if target.is_multiple_of(2) {
        target -= 1;
    }
    let mut d = f.primes.clone();
    d.sort_unstable();
    while d.len() > target {
        let smallest = d.remove(0);
        *d.last_mut().expect("nonempty") *= smallest;
        d.sort_unstable();
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntHit {
    pub p: u64,
    pub d: Vec<u64>,
}

/// Every prime `p ≤ max` whose `p − 1` groups into at least `min_factors`
/// (odd in number) factors, with the grouping, ascending in `p`.
pub fn hunt(max: u64, min_factors: usize) -> Vec<HuntHit> {
    if max < 3 {
        return Vec::new();
    }
    let mut hits: Vec<HuntHit> = (3..=max)
        .into_par_iter()
        .filter(|&p| is_prime(p))
        .filter_map(|p| {
            let f = factorize(p - 1);
            let d = group_factors(&f).ok()?;
            (d.len() >= min_factors).then_some(HuntHit { p, d })
        })
        .collect();
    hits.sort_by_key(|h| h.p);
    hits
}

/// Smallest-prime-factor table for `0..=n`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let m = i * p as usize;
            if p > spf[i] || m > n {
                break;
            }
            spf[m] = p;
        }
    }
    spf
}

fn counts_from_spf(spf: &[u32], mut n: usize) -> (usize, usize) {
    let (mut distinct, mut total) = (0, 0);
    let mut last = 0;
    while n > 1 {
        let p = spf[n] as usize;
        if p != last {
            distinct += 1;
            last = p;
        }
        total += 1;
        n /= p;
    }
    (distinct, total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErdosStatistic {
    pub max: u64,
    pub epsilon: f64,
    /// `(1 − ε)·ln ln max`.
    pub threshold: f64,
    /// Number of primes `≤ max`.
    pub primes: u64,
    /// Fraction of primes `p ≤ max` with `ω(p − 1) > threshold`.
    pub fraction: f64,
    /// The same fraction using `Ω(p − 1)`.
    pub fraction_big_omega: f64,
}

/// Fraction of primes `p ≤ max` for which `p − 1` has more than
/// `(1 − ε) ln ln max` distinct prime divisors.
pub fn erdos_statistic(max: u64, epsilon: f64) -> Result<ErdosStatistic> {
    if max < 10 {
        return Err(Error::Domain(format!("max must be at least 10, got {max}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let n = usize::try_from(max)
        .ok()
        .filter(|&n| n <= 1 << 32)
        .ok_or_else(|| Error::ResourceLimit(format!("sieve bound {max} too large")))?;
    let threshold = (1.0 - epsilon) * (max as f64).ln().ln();
    let spf = spf_sieve(n);
    let (mut primes, mut hits, mut hits_big) = (0u64, 0u64, 0u64);
    for p in 2..=n {
        if spf[p] as usize != p {
            continue;
        }
        primes += 1;
        let (distinct, total) = counts_from_spf(&spf, p - 1);
        if distinct as f64 > threshold {
            hits += 1;
        }
        if total as f64 > threshold {
            hits_big += 1;
        }
    }
    Ok(ErdosStatistic {
        max,
        epsilon,
        threshold,
        primes,
        fraction: hits as f64 / primes as f64,
        fraction_big_omega: hits_big as f64 / primes as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).primes, vec![2, 2, 3]);
        assert_eq!(factorize(96).primes, vec![2, 2, 2, 2, 2, 3]);
        assert!(factorize(1).primes.is_empty());
    }

    #[test]
    fn factorize_large() {
        // product of two primes near 2^32
        let (a, b) = (4_294_967_291u64, 4_294_967_279u64);
        assert_eq!(factorize(a * b).primes, vec![b, a]);
        assert_eq!(factorize(u64::MAX).primes, vec![3, 5, 17, 257, 641, 65537, 6700417]);
        assert_eq!(factorize(18_446_744_073_709_551_557).primes, vec![18_446_744_073_709_551_557]);
    }

    #[test]
    fn primality_edge_cases() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        // strong pseudoprimes to the smaller witness sets
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn prime_divisor_counts() {
        assert_eq!((omega(96).unwrap(), big_omega(96).unwrap()), (2, 6));
        assert_eq!((omega(1024).unwrap(), big_omega(1024).unwrap()), (1, 10));
        assert_eq!((omega(30).unwrap(), big_omega(30).unwrap()), (3, 3));
        assert!(omega(1).is_err());
    }

    #[test]
    fn grouping() {
        assert_eq!(group_factors(&factorize(96)).unwrap(), vec![2, 2, 2, 2, 6]);
        assert_eq!(group_factors(&factorize(12)).unwrap(), vec![2, 2, 3]);
        assert_eq!(group_factors(&factorize(4)).unwrap(), vec![4]);
        assert!(group_factors(&factorize(1)).is_err());
        assert_eq!(group_factors_to(&factorize(96), 3).unwrap(), vec![2, 2, 24]);
        assert_eq!(group_factors_to(&factorize(96), 0).unwrap(), vec![96]);
    }

    #[test]
    fn hunt_examples() {
        let hits = hunt(100, 5);
        assert!(hits.contains(&HuntHit {
            p: 97,
            d: vec![2, 2, 2, 2, 6]
        }));
        assert!(hunt(20, 3).contains(&HuntHit { p: 13, d: vec![2, 2, 3] }));
        assert!(hunt(10, 5).is_empty());
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let spf = spf_sieve(2000);
        for n in 2..=2000usize {
            let f = factorize(n as u64);
            assert_eq!(spf[n] as u64, f.primes[0]);
            assert_eq!(counts_from_spf(&spf, n), (f.omega(), f.big_omega()));
        }
    }

    #[test]
    fn erdos_small() {
        let s = erdos_statistic(100, 0.9).unwrap();
        assert_eq!(s.primes, 25);
        // only p = 2 has ω(p − 1) = 0
        assert_eq!(s.fraction, 24.0 / 25.0);
        assert!(erdos_statistic(9, 0.5).is_err());
        assert!(erdos_statistic(100, 1.0).is_err());
        assert!(erdos_statistic(100, 0.0).is_err());
    }
}
