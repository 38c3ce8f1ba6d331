//! Standard bases in the localization of `Q[x]` at the origin.
//!
//! Reduction is Mora's tangent-cone normal form: among reducers whose leading
//! monomial divides the current one, the one of least écart is used, and the
//! current remainder is adjoined to the reducer set whenever the chosen
//! reducer has larger écart than it. Completion is Buchberger-style over all
//! pairs, taking the pair whose lcm has the lowest total degree first.
//!
//! Mora completion always terminates but can be very slow on ideals that are
//! not zero-dimensional. Past a step budget, exact bases are computed by
//! Lazard's method instead: a Gröbner basis of the homogenized generators in
//! `Q[t, x]` under a degree order refined by the local order, with `t = 1`
//! set afterwards.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Coeff, ExponentVector, LocalOrder, Polynomial};

/// A polynomial with its leading data and écart cached.
#[derive(Clone)]
struct Reducer {
    poly: Polynomial,
    lm: ExponentVector,
    lc: Coeff,
    ecart: u32,
}

impl Reducer {
    fn new(poly: Polynomial) -> Self {
        let (lm, lc) = poly.leading_term().expect("reducers are nonzero");
        let (lm, lc) = (lm.clone(), lc.clone());
        let ecart = poly.ecart();
        Self { poly, lm, lc, ecart }
    }
}

fn check_nvars<'a>(ord: &LocalOrder, polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<()> {
    for p in polys {
        if p.nvars() != ord.nvars() {
            return Err(Error::DimensionMismatch {
                left: ord.nvars(),
                right: p.nvars(),
            });
        }
    }
    Ok(())
}

/// Caps the number of reduction steps of a computation.
#[derive(Debug, Clone, Copy)]
struct Budget(Option<u64>);

impl Budget {
    fn spend(&mut self) -> Result<()> {
        match &mut self.0 {
            None => Ok(()),
            Some(0) => Err(Error::ResourceLimit("reduction step budget exhausted".into())),
            Some(n) => {
                *n -= 1;
                Ok(())
            }
        }
    }
}

/// Smallest `D` such that every monomial of degree `≥ D` is divisible by one
/// of `lms`, when such a `D` exists (a pure power of every variable occurs).
fn corner_degree<'a>(nvars: usize, lms: impl IntoIterator<Item = &'a ExponentVector>) -> Option<u32> {
    let mut least: Vec<Option<u32>> = vec![None; nvars];
    for lm in lms {
        if lm.is_constant() {
            return Some(0);
        }
        if let Some(i) = lm.pure_power_var() {
            let a = lm[i];
            least[i] = Some(least[i].map_or(a, |b| b.min(a)));
        }
    }
    least
        .into_iter()
        .try_fold(1u32, |acc, a| a.map(|a| acc + a - 1))
}

/// Mora reduction of `h` by `basis`. Returns a weak normal form.
///
/// With `bound = Some(D)`, all monomials of degree `≥ D` are known to lie in
/// the ideal, and terms above degree `D` are dropped as they appear. Only
/// finitely many monomials remain and each step lowers the leading one, so
/// no remainders are adjoined.
fn reduce(h: Polynomial, basis: &[Reducer], bound: Option<u32>, budget: &mut Budget) -> Result<Polynomial> {
    let truncate = |p: Polynomial| match bound {
        Some(d) if p.total_degree() > d => p.jet(d),
        _ => p,
    };
    let mut h = truncate(h);
    let mut extra: Vec<Reducer> = Vec::new();
    loop {
        let Some((lm, lc)) = h.leading_term() else {
            return Ok(h);
        };
        let mut best: Option<(u32, usize)> = None;
        for (k, r) in basis.iter().chain(extra.iter()).enumerate() {
            if r.lm.divides(lm) && best.is_none_or(|(e, _)| r.ecart < e) {
                best = Some((r.ecart, k));
            }
        }
        let Some((best_ecart, k)) = best else {
            return Ok(h);
        };
        budget.spend()?;
        let shift;
        let coeff;
        {
            let r = if k < basis.len() { &basis[k] } else { &extra[k - basis.len()] };
            shift = lm.checked_div(&r.lm).expect("divisor");
            coeff = lc / &r.lc;
        }
        if bound.is_none() && best_ecart > h.ecart() {
            extra.push(Reducer::new(h.clone()));
        }
        let r = if k < basis.len() { &basis[k] } else { &extra[k - basis.len()] };
        h.sub_mul_term(&coeff, &shift, &r.poly);
        h = truncate(h);
    }
}

/// Reduces tail terms of `h` by the homogeneous reducers (écart 0). Such a
/// step only introduces terms of the degree being reduced, so it terminates.
fn reduce_tail(mut h: Polynomial, basis: &[Reducer]) -> Polynomial {
    let homogeneous: Vec<&Reducer> = basis.iter().filter(|r| r.ecart == 0).collect();
    let Some(mut cursor) = h.leading_exponent().cloned() else {
        return h;
    };
    while let Some((e, c)) = h.next_term_below(&cursor) {
        let (e, c) = (e.clone(), c.clone());
        if let Some(r) = homogeneous.iter().find(|r| r.lm.divides(&e)) {
            let shift = e.checked_div(&r.lm).expect("divisor");
            h.sub_mul_term(&(c / &r.lc), &shift, &r.poly);
        }
        cursor = e;
    }
    h
}

/// Normal form of `p` with respect to `gens` in the local ring: either zero,
/// or a polynomial whose leading monomial is divisible by no leading
/// monomial of `gens`, such that `u·p − r ∈ ⟨gens⟩` for some unit `u`.
///
/// After Mora reduction of the leading term, tail terms are reduced by
/// those generators that are homogeneous. If the leading monomials of
/// `gens` include a pure power of every variable, terms above the corner
/// degree lie in the ideal and are dropped during reduction.
///
/// Mora reduction always terminates, but without such a corner it can take
/// very many steps when a generator is a monomial times a unit.
pub fn mora_normal_form(p: &Polynomial, gens: &[Polynomial], ord: &LocalOrder) -> Result<Polynomial> {
    check_nvars(ord, std::iter::once(p).chain(gens))?;
    let reducers: Vec<Reducer> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .map(Reducer::new)
        .collect();
    let corner = corner_degree(ord.nvars(), reducers.iter().map(|r| &r.lm));
    Ok(reduce_tail(reduce(p.clone(), &reducers, corner, &mut Budget(None))?, &reducers))
}

fn s_polynomial(f: &Reducer, g: &Reducer) -> Polynomial {
    let lcm = f.lm.lcm(&g.lm);
    let tf = lcm.checked_div(&f.lm).expect("lcm");
    let tg = lcm.checked_div(&g.lm).expect("lcm");
    let mut s = f.poly.mul_term(&tf, &f.lc.recip());
    s.sub_mul_term(&g.lc.recip(), &tg, &g.poly);
    s
}

#[derive(Debug, Clone)]
pub struct StandardBasis {
    generators: Vec<Polynomial>,
    order: LocalOrder,
    staircase: Vec<ExponentVector>,
    /// Every monomial of at least this degree lies in the ideal.
    corner: Option<u32>,
}

/// Computes a standard basis of `⟨gens⟩` in the local ring. The result is
/// minimal (no leading monomial divides another) with monic generators,
/// sorted by decreasing leading monomial.
pub fn standard_basis(gens: &[Polynomial], ord: &LocalOrder) -> Result<StandardBasis> {
    exact_basis(gens, ord, &EXACT_TRUNCATIONS, Budget(None))
}

/// Mora reduction steps allowed before other methods are tried.
const MORA_STEP_BUDGET: u64 = 100;

/// Reduction steps allowed to each truncated attempt of an exact computation.
const TRUNCATION_STEP_BUDGET: u64 = 100_000;

/// Standard monomials enumerated when checking whether a truncation is exact.
const TRUNCATION_MONOMIAL_LIMIT: usize = 100_000;

/// Truncation degrees tried by [`standard_basis`] after Mora completion.
const EXACT_TRUNCATIONS: [u32; 3] = [8, 16, 32];

/// A standard basis of `⟨gens⟩ + m^{d+1}` with its standard monomials,
/// provided none of them has degree `d`. Then `m^d ⊆ ⟨gens⟩ + m^{d+1}`,
/// hence `m^d ⊆ ⟨gens⟩` by Nakayama's lemma, and the basis is a standard
/// basis of `⟨gens⟩`. Returns `None` otherwise, and fails with a resource
/// limit past `limit` standard monomials.
fn exact_truncation(
    gens: &[Polynomial],
    ord: &LocalOrder,
    d: u32,
    limit: usize,
    budget: Budget,
) -> Result<Option<(StandardBasis, Vec<ExponentVector>)>> {
    let basis = complete(gens, ord, Some(d), budget)?;
    let Some(monomials) = monomials_below_degree(&basis, d, limit) else {
        return Err(Error::ResourceLimit(format!("more than {limit} standard monomials")));
    };
    Ok(monomials.iter().all(|e| e.degree() < d).then_some((basis, monomials)))
}

/// Mora completion with a small budget, then truncations of degrees
/// `truncations` that prove to be exact, then Lazard's method under
/// `budget`.
fn exact_basis(gens: &[Polynomial], ord: &LocalOrder, truncations: &[u32], mut budget: Budget) -> Result<StandardBasis> {
    match complete(gens, ord, None, Budget(Some(MORA_STEP_BUDGET))) {
        Err(Error::ResourceLimit(_)) => {}
        result => return result,
    }
    for &d in truncations {
        let attempt = Budget(Some(TRUNCATION_STEP_BUDGET));
        match exact_truncation(gens, ord, d, TRUNCATION_MONOMIAL_LIMIT, attempt) {
            Ok(Some((basis, _))) => return Ok(basis),
            Ok(None) => {}
            Err(Error::ResourceLimit(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(finish(lazard(gens, &mut budget)?, ord, None))
}

/// A standard basis of `⟨gens⟩ + m^{d+1}`. Terms of degree above `d` are
/// discarded throughout; the generators returned lead in degree `≤ d` and
/// the monomials of degree `d + 1` are implicit members of the ideal.
pub fn standard_basis_truncated(gens: &[Polynomial], ord: &LocalOrder, d: u32) -> Result<StandardBasis> {
    complete(gens, ord, Some(d), Budget(None))
}

fn complete(gens: &[Polynomial], ord: &LocalOrder, forced: Option<u32>, mut budget: Budget) -> Result<StandardBasis> {
    check_nvars(ord, gens)?;
    let mut basis: Vec<Reducer> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = match forced {
            Some(d) => g.jet(d),
            None => g.clone(),
        };
        if g.is_zero() {
            continue;
        }
        let g = g.monic();
        if !basis.iter().any(|r| r.poly == g) {
            basis.push(Reducer::new(g));
        }
    }
    if basis.is_empty() {
        return match forced {
            Some(d) => Ok(StandardBasis {
                generators: Vec::new(),
                order: *ord,
                staircase: Vec::new(),
                corner: Some(d + 1),
            }),
            None => Err(Error::AllGeneratorsZero),
        };
    }

    struct Pair {
        i: usize,
        j: usize,
        lcm: ExponentVector,
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: basis[i].lm.lcm(&basis[j].lm),
            });
        }
    }
    // Elements whose leading monomial lies above the corner are dead: they
    // are multiples of pure powers in the basis modulo the truncation.
    let mut alive = vec![true; basis.len()];
    let mut bound = forced;
    let retruncate = |basis: &mut Vec<Reducer>, alive: &mut Vec<bool>, bound: &mut Option<u32>| {
        let live = basis.iter().zip(alive.iter()).filter(|(_, &a)| a).map(|(r, _)| &r.lm);
        let corner = corner_degree(ord.nvars(), live);
        let d = match (corner, forced) {
            (Some(c), Some(f)) => Some(c.min(f)),
            (c, f) => c.or(f),
        };
        if d.is_none() || d == *bound {
            return;
        }
        *bound = d;
        let d = d.expect("checked");
        for (r, a) in basis.iter_mut().zip(alive.iter_mut()) {
            if *a && r.poly.total_degree() > d {
                let t = r.poly.jet(d);
                if t.is_zero() {
                    *a = false;
                } else {
                    *r = Reducer::new(t);
                }
            }
        }
    };
    retruncate(&mut basis, &mut alive, &mut bound);

    loop {
        pairs.retain(|p| alive[p.i] && alive[p.j]);
        let Some((k, _)) = pairs.iter().enumerate().min_by(|(_, a), (_, b)| {
            a.lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| b.lcm.cmp(&a.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
        }) else {
            break;
        };
        let pair = pairs.swap_remove(k);
        if bound.is_some_and(|d| pair.lcm.degree() > d) {
            // every term of the s-polynomial lies above the corner
            continue;
        }
        let pending = |a: usize, b: usize| pairs.iter().any(|p| (p.i, p.j) == (a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && alive[k]
                && basis[k].lm.divides(&pair.lcm)
                && !pending(pair.i, k)
                && !pending(pair.j, k)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        // dead elements lead above the corner, so they never divide a
        // truncated remainder and can stay in the reducer list
        let h = reduce(s, &basis, bound, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        let h = Reducer::new(h.monic());
        let new = basis.len();
        for (i, r) in basis.iter().enumerate() {
            if alive[i] {
                pairs.push(Pair {
                    i,
                    j: new,
                    lcm: r.lm.lcm(&h.lm),
                });
            }
        }
        basis.push(h);
        alive.push(true);
        retruncate(&mut basis, &mut alive, &mut bound);
    }

    let basis: Vec<Reducer> = basis
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(r, _)| r)
        .collect();
    Ok(finish(basis, ord, forced))
}

/// Keeps the elements with minimal leading monomials.
fn finish(basis: Vec<Reducer>, ord: &LocalOrder, forced: Option<u32>) -> StandardBasis {
    // a divisor has degree ≤ its multiple, so visiting by degree keeps
    // exactly the minimal leading monomials (first index among equals)
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by_key(|&i| (basis[i].lm.degree(), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in idx {
        if !kept.iter().any(|&k| basis[k].lm.divides(&basis[i].lm)) {
            kept.push(i);
        }
    }
    kept.sort_by(|&a, &b| basis[b].lm.cmp(&basis[a].lm));
    let generators: Vec<Polynomial> = kept.iter().map(|&i| basis[i].poly.clone()).collect();
    let staircase: Vec<ExponentVector> = kept.iter().map(|&i| basis[i].lm.clone()).collect();
    let corner = corner_degree(ord.nvars(), &staircase).or(forced.map(|d| d + 1));
    StandardBasis {
        generators,
        order: *ord,
        staircase,
        corner,
    }
}

/// An element of the ideal generated by the homogenized generators in
/// `Q[t, x]`, stored as its value at `t = 1` and its homogeneous degree.
/// Monomials of one degree are compared by the local order of their
/// `x`-parts.
struct Homogeneous {
    r: Reducer,
    degree: u32,
}

impl Homogeneous {
    fn new(poly: Polynomial, degree: u32) -> Self {
        Self {
            r: Reducer::new(poly),
            degree,
        }
    }

    /// Exponent of `t` in the leading monomial.
    fn t_lead(&self) -> u32 {
        self.degree - self.r.lm.degree()
    }
}

/// Top reduction of the homogeneous element `(h, degree)`. Each step lowers
/// the leading monomial among the finitely many of that degree.
fn homogeneous_reduce(mut h: Polynomial, degree: u32, basis: &[Homogeneous], budget: &mut Budget) -> Result<Polynomial> {
    loop {
        let Some((lm, lc)) = h.leading_term() else {
            return Ok(h);
        };
        let t = degree - lm.degree();
        let Some(g) = basis.iter().find(|g| g.t_lead() <= t && g.r.lm.divides(lm)) else {
            return Ok(h);
        };
        budget.spend()?;
        let shift = lm.checked_div(&g.r.lm).expect("divisor");
        let coeff = lc / &g.r.lc;
        h.sub_mul_term(&coeff, &shift, &g.r.poly);
    }
}

/// Lazard's method: Buchberger's algorithm on the homogenized generators,
/// processing pairs by degree. Setting `t = 1` in a Gröbner basis of the
/// homogenized ideal gives a standard basis in the local ring.
fn lazard(gens: &[Polynomial], budget: &mut Budget) -> Result<Vec<Reducer>> {
    struct Pair {
        i: usize,
        j: usize,
        degree: u32,
        lcm: ExponentVector,
    }
    let pair = |basis: &[Homogeneous], i: usize, j: usize| {
        let (a, b) = (&basis[i], &basis[j]);
        let lcm = a.r.lm.lcm(&b.r.lm);
        Pair {
            i,
            j,
            degree: a.t_lead().max(b.t_lead()) + lcm.degree(),
            lcm,
        }
    };
    let mut basis: Vec<Homogeneous> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = g.clone().monic();
        if !basis.iter().any(|h| h.r.poly == g) {
            let degree = g.total_degree();
            basis.push(Homogeneous::new(g, degree));
        }
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(pair(&basis, i, j));
        }
    }
    while let Some((k, _)) = pairs.iter().enumerate().min_by(|(_, a), (_, b)| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| b.lcm.cmp(&a.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }) {
        let p = pairs.swap_remove(k);
        let pending = |a: usize, b: usize| pairs.iter().any(|q| (q.i, q.j) == (a.min(b), a.max(b)));
        let chain = basis.iter().enumerate().any(|(k, g)| {
            k != p.i
                && k != p.j
                && g.r.lm.divides(&p.lcm)
                && g.t_lead() <= p.degree - p.lcm.degree()
                && !pending(p.i, k)
                && !pending(p.j, k)
        });
        if chain {
            continue;
        }
        let (a, b) = (&basis[p.i], &basis[p.j]);
        // coprime leading monomials in Q[t, x] reduce to zero
        if a.r.lm.lcm(&b.r.lm).degree() == a.r.lm.degree() + b.r.lm.degree() && a.t_lead().min(b.t_lead()) == 0 {
            continue;
        }
        let s = s_polynomial(&a.r, &b.r);
        let h = homogeneous_reduce(s, p.degree, &basis, budget)?;
        if h.is_zero() {
            continue;
        }
        basis.push(Homogeneous::new(h.monic(), p.degree));
        let new = basis.len() - 1;
        for i in 0..new {
            pairs.push(pair(&basis, i, new));
        }
    }
    Ok(basis.into_iter().map(|h| h.r).collect())
}

impl StandardBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    /// Minimal generators of the leading ideal.
    pub fn staircase(&self) -> &[ExponentVector] {
        &self.staircase
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    /// Normal form with respect to the basis. For zero-dimensional ideals
    /// terms above the corner degree, which lie in the ideal, are dropped.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        check_nvars(&self.order, [p])?;
        let reducers: Vec<Reducer> = self.generators.iter().cloned().map(Reducer::new).collect();
        Ok(reduce_tail(
            reduce(p.clone(), &reducers, self.corner, &mut Budget(None))?,
            &reducers,
        ))
    }

    /// The least `D` with every monomial of degree `≥ D` in the leading
    /// ideal, or `None` if the ideal is not zero-dimensional.
    pub fn corner_degree(&self) -> Option<u32> {
        self.corner
    }

    pub fn in_leading_ideal(&self, e: &ExponentVector) -> bool {
        self.staircase.iter().any(|s| s.divides(e))
    }

    /// Variables with no pure power among the leading monomials.
    pub fn missing_pure_powers(&self) -> Vec<usize> {
        let mut has = vec![false; self.nvars()];
        for s in &self.staircase {
            if s.is_constant() {
                return Vec::new();
            }
            if let Some(i) = s.pure_power_var() {
                has[i] = true;
            }
        }
        has.iter().enumerate().filter(|(_, h)| !**h).map(|(i, _)| i).collect()
    }
}

/// `true` iff `h` lies in the ideal generated by `basis`.
pub fn ideal_membership(h: &Polynomial, basis: &StandardBasis) -> Result<bool> {
    Ok(basis.normal_form(h)?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardMonomials {
    /// Exponents outside the leading ideal, in decreasing local order
    /// (so `1` comes first). Empty when `finite` is false.
    pub monomials: Vec<ExponentVector>,
    pub finite: bool,
    /// Variables lacking a pure power in the leading ideal; nonempty exactly
    /// when `finite` is false.
    pub missing_pure_powers: Vec<usize>,
}

impl StandardMonomials {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

pub fn standard_monomials(basis: &StandardBasis) -> StandardMonomials {
    standard_monomials_with_limit(basis, usize::MAX).expect("no limit")
}

/// Like [`standard_monomials`], failing with [`Error::ResourceLimit`] once
/// more than `limit` monomials have been found.
pub fn standard_monomials_with_limit(basis: &StandardBasis, limit: usize) -> Result<StandardMonomials> {
    let missing = basis.missing_pure_powers();
    if !missing.is_empty() {
        return Ok(StandardMonomials {
            monomials: Vec::new(),
            finite: false,
            missing_pure_powers: missing,
        });
    }
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    let mut frontier = vec![ExponentVector::zero(basis.nvars())];
    // the set of standard monomials is closed under division, so it can be
    // grown from 1 one degree at a time
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in frontier {
            if basis.in_leading_ideal(&e) || !seen.insert(e.clone()) {
                continue;
            }
            found.push(e.clone());
            if found.len() > limit {
                return Err(Error::ResourceLimit(format!(
                    "more than {limit} standard monomials"
                )));
            }
            next.extend(e.successors());
        }
        frontier = next;
    }
    found.sort_by(|a, b| b.cmp(a));
    Ok(StandardMonomials {
        monomials: found,
        finite: true,
        missing_pure_powers: Vec::new(),
    })
}

/// The Milnor algebra `Q_f` of a germ, presented by a standard basis of its
/// Jacobian ideal and the monomial basis it induces.
#[derive(Debug, Clone)]
pub struct MilnorAlgebra {
    basis: StandardBasis,
    monomials: Vec<ExponentVector>,
}

impl MilnorAlgebra {
    pub fn jacobian_basis(&self) -> &StandardBasis {
        &self.basis
    }

    /// Monomial basis of `Q_f`, `1` first.
    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn dimension(&self) -> u64 {
        self.monomials.len() as u64
    }
}

/// Rejects germs with a nonzero linear part.
pub fn check_critical_point(f: &Polynomial) -> Result<()> {
    if let Some((e, c)) = f.terms().find(|(e, _)| e.degree() == 1) {
        return Err(Error::NotACriticalPoint {
            term: Polynomial::monomial(e.clone(), c.clone()).to_string(),
        });
    }
    Ok(())
}

pub fn milnor_algebra(f: &Polynomial) -> Result<MilnorAlgebra> {
    milnor_algebra_with_limit(f, usize::MAX)
}

/// Truncation degrees tried before the untruncated computation.
const FIRST_TRUNCATIONS: [u32; 2] = [8, 16];

/// Truncation degree tried by the untruncated computation.
const LAST_TRUNCATION: u32 = 32;

/// Reduction steps allowed to each budgeted attempt when a cap is set.
const EXACT_STEP_BUDGET: u64 = 200_000;

/// Computes `Q_f`, refusing to enumerate more than `mu_cap` monomials.
///
/// The Jacobian ideal `J` is first computed modulo `m^{D+1}` for increasing
/// `D`. If no standard monomial has degree `D` then `m^D ⊆ J + m^{D+1}`,
/// hence `m^D ⊆ J` by Nakayama's lemma, and the truncated basis is a
/// standard basis of `J`. If that fails for small `D`, the untruncated
/// computation is tried, as it also detects non-isolated germs. With a cap
/// every attempt has a step budget; when the untruncated one runs out,
/// truncation continues up to `D = mu_cap`, which suffices for any
/// `μ ≤ mu_cap`. Without a cap (`usize::MAX`) the untruncated computation
/// runs to completion.
pub fn milnor_algebra_with_limit(f: &Polynomial, mu_cap: usize) -> Result<MilnorAlgebra> {
    check_critical_point(f)?;
    let ord = LocalOrder::new(f.nvars());
    let gens = f.jacobian_ideal();
    if gens.iter().all(Polynomial::is_zero) {
        return Err(Error::NonIsolated {
            missing: (0..f.nvars()).collect(),
        });
    }
    let budget = Budget((mu_cap != usize::MAX).then_some(EXACT_STEP_BUDGET));
    let try_truncated = |d: u32| -> Result<Option<MilnorAlgebra>> {
        Ok(exact_truncation(&gens, &ord, d, mu_cap, budget)?.map(|(basis, monomials)| MilnorAlgebra { basis, monomials }))
    };
    for d in FIRST_TRUNCATIONS {
        match try_truncated(d) {
            Ok(Some(algebra)) => return Ok(algebra),
            Ok(None) => {}
            Err(Error::ResourceLimit(_)) => break,
            Err(e) => return Err(e),
        }
    }
    match exact_basis(&gens, &ord, &[LAST_TRUNCATION], budget) {
        Ok(basis) => {
            let sm = standard_monomials_with_limit(&basis, mu_cap)?;
            if !sm.finite {
                return Err(Error::NonIsolated {
                    missing: sm.missing_pure_powers,
                });
            }
            return Ok(MilnorAlgebra {
                basis,
                monomials: sm.monomials,
            });
        }
        Err(Error::ResourceLimit(_)) => {}
        Err(e) => return Err(e),
    }
    // only reached with a cap: otherwise the exact computation completes
    let cap = u32::try_from(mu_cap).unwrap_or(u32::MAX);
    let mut d = LAST_TRUNCATION;
    while d < cap {
        d = d.saturating_mul(2).min(cap);
        if let Some(algebra) = try_truncated(d)? {
            return Ok(algebra);
        }
    }
    Err(Error::ResourceLimit(format!(
        "could not establish mu <= {mu_cap} or a non-isolated singularity"
    )))
}

/// Standard monomials of degree `≤ d`, or `None` if there are more than
/// `limit`.
fn monomials_below_degree(basis: &StandardBasis, d: u32, limit: usize) -> Option<Vec<ExponentVector>> {
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    let mut frontier = vec![ExponentVector::zero(basis.nvars())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in frontier {
            if e.degree() > d || basis.in_leading_ideal(&e) || !seen.insert(e.clone()) {
                continue;
            }
            found.push(e.clone());
            if found.len() > limit {
                return None;
            }
            next.extend(e.successors());
        }
        frontier = next;
    }
    found.sort_by(|a, b| b.cmp(a));
    Some(found)
}

/// `μ(f) = dim Q_f`. The constant term of `f` is ignored.
pub fn milnor_number(f: &Polynomial) -> Result<u64> {
    Ok(milnor_algebra(f)?.dimension())
}

/// True iff the coefficient of some term is nonzero in degree ≤ 2, other
/// than the constant term.
pub fn has_nonzero_two_jet(f: &Polynomial) -> bool {
    f.terms().any(|(e, c)| (1..=2).contains(&e.degree()) && !c.is_zero())
}
