//! Exact multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`ExponentVector`], whose `Ord`
//! is the local negative-degree reverse lexicographic order. The largest key
//! is therefore the leading term in the local ring, and the constant
//! monomial is the maximum of the order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

/// Default cap on the number of variables for [`Polynomial::hessian_det`].
pub const DEFAULT_HESSIAN_LIMIT: usize = 8;

/// Exponents `α` of a monomial `x^α`, with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Box<[u32]>,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exps: impl Into<Box<[u32]>>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    /// Exponent vector of the single variable `x_i` (0-based).
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Self {
            exps: exps.into(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Self {
            exps: exps.into(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Self::new(exps)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, `k ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    fn with_incremented(&self, i: usize) -> Self {
        let mut exps = self.exps.to_vec();
        exps[i] += 1;
        Self {
            exps: exps.into(),
            degree: self.degree + 1,
        }
    }

    /// All vectors obtained by raising one entry by one.
    pub fn successors(&self) -> impl Iterator<Item = Self> + '_ {
        (0..self.nvars()).map(move |i| self.with_incremented(i))
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.exps[i]
    }
}

/// Negative-degree reverse lexicographic order: lower total degree is
/// greater; within a degree, `α ≻ β` iff the last nonzero entry of `α − β`
/// is negative. So `1 ≻ x1 ≻ x2 ≻ … ≻ x1^2` and `x1^2*x2 ≻ x1*x2^2`.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.degree.cmp(&self.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // a smaller in the last differing slot means α − β < 0 there
                ord => return ord.reverse(),
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// The local monomial order used throughout. There is only one kind
/// (negative-degree reverse lexicographic); it is carried as a value so the
/// variable count travels with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalOrder {
    nvars: usize,
}

impl LocalOrder {
    pub fn new(nvars: usize) -> Self {
        Self { nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        a.cmp(b)
    }
}

/// Returns the order-maximal term of `p`.
pub fn leading_term<'a>(p: &'a Polynomial, ord: &LocalOrder) -> Result<(&'a ExponentVector, &'a Coeff)> {
    if p.nvars() != ord.nvars() {
        return Err(Error::DimensionMismatch {
            left: p.nvars(),
            right: ord.nvars(),
        });
    }
    p.leading_term().ok_or(Error::ZeroPolynomial)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zero(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    /// The variable `x_i`, 0-based.
    pub fn variable(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::VariableOutOfRange { index: i, nvars });
        }
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::unit(nvars, i), Coeff::one());
        Ok(p)
    }

    pub fn monomial(exps: ExponentVector, c: Coeff) -> Self {
        let mut p = Self::zero(exps.nvars());
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; like terms
    /// are merged and zero coefficients dropped.
    pub fn from_terms<I, E>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, Coeff)>,
        E: Into<Box<[u32]>>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            let e = ExponentVector::new(e);
            if e.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: e.nvars(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms<const N: usize>(terms: &[([u32; N], i64)]) -> Self {
        let mut p = Self::zero(N);
        for (e, c) in terms {
            p.add_term(ExponentVector::new(e.to_vec()), Coeff::from_integer(BigInt::from(*c)));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing local order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Coeff)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys().rev()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&Coeff> {
        self.terms.get(e)
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &Coeff)> {
        self.terms.last_key_value()
    }

    /// The largest term strictly below `e` in the local order.
    pub fn next_term_below(&self, e: &ExponentVector) -> Option<(&ExponentVector, &Coeff)> {
        self.terms.range(..e).next_back()
    }

    pub fn leading_exponent(&self) -> Option<&ExponentVector> {
        self.terms.last_key_value().map(|(e, _)| e)
    }

    /// Maximal total degree of a term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(ExponentVector::degree).max().unwrap_or(0)
    }

    /// `deg(p) − deg(LM(p))`.
    pub fn ecart(&self) -> u32 {
        match self.leading_exponent() {
            Some(lm) => self.total_degree() - lm.degree(),
            None => 0,
        }
    }

    /// Sum of the terms of total degree `≤ k`.
    pub fn jet(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&ExponentVector::zero(self.nvars));
        p
    }

    fn add_term(&mut self, e: ExponentVector, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// `c · x^shift · self`.
    pub fn mul_term(&self, shift: &ExponentVector, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.mul(shift), a * c)).collect(),
        }
    }

    /// `self -= c · x^shift · g`, in place.
    pub(crate) fn sub_mul_term(&mut self, c: &Coeff, shift: &ExponentVector, g: &Self) {
        for (e, a) in &g.terms {
            self.add_term(e.mul(shift), -(a * c));
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn make_monic(&mut self) {
        let Some((_, lc)) = self.leading_term() else {
            return;
        };
        if lc.is_one() {
            return;
        }
        let inv = lc.recip();
        for c in self.terms.values_mut() {
            *c *= &inv;
        }
    }

    pub fn monic(mut self) -> Self {
        self.make_monic();
        self
    }

    /// Formal partial derivative in the 0-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut exps = e.as_slice().to_vec();
            exps[i] -= 1;
            out.add_term(ExponentVector::new(exps), c * Coeff::from_integer(BigInt::from(k)));
        }
        Ok(out)
    }

    /// `[∂f/∂x_1, …, ∂f/∂x_n]`. Zero derivatives are kept.
    pub fn jacobian_ideal(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    pub fn hessian(&self) -> Vec<Vec<Self>> {
        let grad = self.jacobian_ideal();
        grad.iter()
            .map(|g| (0..self.nvars).map(|j| g.partial_derivative(j).expect("index in range")).collect())
            .collect()
    }

    /// Determinant of the Hessian matrix, by cofactor expansion along rows
    /// with minors memoized on their column set.
    pub fn hessian_det(&self) -> Result<Self> {
        self.hessian_det_with_limit(DEFAULT_HESSIAN_LIMIT)
    }

    pub fn hessian_det_with_limit(&self, limit: usize) -> Result<Self> {
        if self.nvars > limit || self.nvars >= 32 {
            return Err(Error::DimensionLimit {
                nvars: self.nvars,
                limit,
            });
        }
        Ok(determinant(&self.hessian(), self.nvars))
    }

    /// If every term satisfies `⟨weights, α⟩ = D` for one `D`, returns `D`.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut degrees = self
            .terms
            .keys()
            .map(|e| e.as_slice().iter().zip(weights).map(|(&a, &w)| a as i64 * w).sum::<i64>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

fn determinant(m: &[Vec<Polynomial>], n: usize) -> Polynomial {
    fn minor(
        m: &[Vec<Polynomial>],
        n: usize,
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, Polynomial>,
    ) -> Polynomial {
        if row == n {
            return Polynomial::one(n);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(n);
        let mut sign_neg = false;
        for j in 0..n {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero() {
                let sub = minor(m, n, row + 1, cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let prod = entry.mul(&sub).expect("same ring");
                    acc = if sign_neg { acc.sub(&prod) } else { acc.add(&prod) }.expect("same ring");
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    minor(m, n, 0, all, &mut memo)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

/// Writes terms in decreasing local order using the input grammar, e.g.
/// `x1^2*x2 + 1/2*x3^3 - x1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if e.is_constant() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{abs}*{e}")?;
            }
        }
        Ok(())
    }
}
