//! Brute-force reference computations used to cross-check the standard-basis
//! engine. Nothing here calls into the local standard basis code: polynomials
//! are read term by term and everything else is dense or sparse linear
//! algebra over the rationals or the integers.

use std::collections::{BTreeMap, HashMap};

use equimilnor::{Coeff, Polynomial};
use num_traits::Zero;
use rand::Rng;

type Term = (Vec<u32>, Coeff);

fn partial(terms: &[Term], i: usize) -> Vec<Term> {
    terms
        .iter()
        .filter(|(e, _)| e[i] > 0)
        .map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] -= 1;
            (e2, c * Coeff::from_integer(e[i].into()))
        })
        .collect()
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All exponent vectors in `n` variables of total degree `< k`, sorted by degree.
fn monomials_below(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a);
            rec(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(n, k - 1, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort_by_key(|e| degree(e));
    out
}

/// Incremental row echelon form over the rationals on sparse rows.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, BTreeMap<usize, Coeff>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Coeff>) {
        while let Some((&col, c)) = row.iter().next() {
            let Some(pivot) = self.pivots.get(&col) else {
                let inv = c.recip();
                row.values_mut().for_each(|v| *v *= &inv);
                self.pivots.insert(col, row);
                return;
            };
            let c = c.clone();
            for (&j, v) in pivot {
                let entry = row.entry(j).or_insert_with(Coeff::zero);
                *entry -= &c * v;
                if entry.is_zero() {
                    row.remove(&j);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Monomials of degree `< k` together with the echelon form of the span of
/// the truncated products `x^β · g`, which represents `J + m^k` modulo `m^k`.
fn truncated_ideal(gens: &[Vec<Term>], n: usize, k: u32) -> (Vec<Vec<u32>>, Echelon) {
    let monos = monomials_below(n, k);
    let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut ech = Echelon::default();
    for g in gens {
        let Some(ord) = g.iter().map(|(e, _)| degree(e)).min() else {
            continue;
        };
        for beta in monos.iter().filter(|b| degree(b) + ord < k) {
            let mut row = BTreeMap::new();
            for (e, c) in g {
                let prod: Vec<u32> = e.iter().zip(beta).map(|(a, b)| a + b).collect();
                if degree(&prod) < k {
                    let entry = row.entry(index[prod.as_slice()]).or_insert_with(Coeff::zero);
                    *entry += c;
                }
            }
            row.retain(|_, v: &mut Coeff| !v.is_zero());
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    (monos, ech)
}

fn jacobian_terms(f: &Polynomial) -> Vec<Vec<Term>> {
    let terms: Vec<Term> = f.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect();
    (0..f.nvars()).map(|i| partial(&terms, i)).collect()
}

/// Smallest `k ≤ max_order` with `dim O/(J + m^k) = dim O/(J + m^{k+1})`.
fn stable_order(gens: &[Vec<Term>], n: usize, max_order: u32) -> Option<(u32, usize)> {
    let mut prev = None;
    for k in 1..=max_order + 1 {
        let (monos, ech) = truncated_ideal(gens, n, k);
        let d = monos.len() - ech.rank();
        if let Some((k0, d0)) = prev {
            if d0 == d {
                return Some((k0, d));
            }
        }
        prev = Some((k, d));
    }
    None
}

/// Milnor number of `f` at the origin from truncated jet spaces: computes
/// `dim O/(J_f + m^k)` for increasing `k` and returns the first value that
/// repeats. Equality at `k` and `k+1` gives `m^k ⊆ J_f + m^{k+1}`, hence
/// `m^k ⊆ J_f`. Returns `None` if no repeat occurs up to `max_order`.
pub fn jet_milnor_number(f: &Polynomial, max_order: u32) -> Option<u64> {
    stable_order(&jacobian_terms(f), f.nvars(), max_order).map(|(_, d)| d as u64)
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut a: Vec<Vec<i128>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    rank
}

/// Largest rank found among random invariant quadratic forms for the
/// diagonal action with the given weights mod `m`. Each trial draws integer
/// coefficients for every invariant monomial `x_i x_j` (`w_i + w_j ≡ 0`) and
/// takes the rank of the Gram matrix.
pub fn brute_force_quadratic_rank<R: Rng>(weights: &[u64], m: u64, trials: usize, rng: &mut R) -> usize {
    let n = weights.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (weights[i] + weights[j]).is_multiple_of(m))
        .collect();
    let mut best = 0;
    for _ in 0..trials {
        let mut q = vec![vec![0i128; n]; n];
        for &(i, j) in &pairs {
            let c: i128 = rng.gen_range(-50..=50);
            if i == j {
                q[i][i] += 2 * c;
            } else {
                q[i][j] += c;
                q[j][i] += c;
            }
        }
        best = best.max(integer_rank(q));
        if best == n {
            break;
        }
    }
    best
}

/// Evaluates whether every monomial of `f` has character zero for the
/// weights mod `m`, independently of the library's character code.
pub fn invariant_by_weights(f: &Polynomial, weights: &[u64], m: u64) -> bool {
    f.terms().all(|(e, _)| {
        let s: u128 = e.as_slice().iter().zip(weights).map(|(&a, &w)| a as u128 * w as u128).sum();
        s.is_multiple_of(m as u128)
    })
}

/// Character decomposition of `O/J_f` for an invariant `f`, with the
/// character of `x^α` taken as `−⟨w,α⟩ mod m`. The truncated ideal is
/// spanned by eigenvectors, so its colength splits by residue. Returns
/// `None` if the dimension does not stabilize up to `max_order`.
pub fn jet_character_multiplicities(f: &Polynomial, weights: &[u64], m: u64, max_order: u32) -> Option<Vec<u64>> {
    let gens = jacobian_terms(f);
    let (k, _) = stable_order(&gens, f.nvars(), max_order)?;
    let (monos, ech) = truncated_ideal(&gens, f.nvars(), k);
    let char_of = |e: &[u32]| -> usize {
        let s: u128 = e.iter().zip(weights).map(|(&a, &w)| a as u128 * w as u128).sum();
        ((m as u128 - s % m as u128) % m as u128) as usize
    };
    let mut mult = vec![0u64; m as usize];
    for e in &monos {
        mult[char_of(e)] += 1;
    }
    for &col in ech.pivots.keys() {
        mult[char_of(&monos[col])] -= 1;
    }
    Some(mult)
}
