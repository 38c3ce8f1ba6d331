//! Diagonal actions of `Z/m` and the characters they induce on monomials
//! and on the Milnor algebra.
//!
//! A generator acts by `x_i ↦ ε^{w_i} x_i` for a primitive `m`-th root of
//! unity `ε`. Roots of unity never appear numerically: a character of `Z/m`
//! is the residue `c` such that the generator acts by `ε^c`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::localstd::{milnor_algebra_with_limit, MilnorAlgebra};
use crate::poly::{ExponentVector, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalAction {
    modulus: u64,
    weights: Vec<u64>,
}

impl DiagonalAction {
    /// Weights may be given as any integers; they are reduced into `[0, m)`.
    pub fn new(modulus: u64, weights: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidAction(format!("modulus must be at least 2, got {modulus}")));
        }
        if weights.is_empty() {
            return Err(Error::InvalidAction("at least one weight is required".into()));
        }
        let m = modulus as i128;
        let weights = weights.iter().map(|&w| (w as i128).rem_euclid(m) as u64).collect();
        Ok(Self { modulus, weights })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// `⟨w, α⟩ mod m`: the factor by which the generator scales `x^α`.
    pub fn weight_of(&self, alpha: &ExponentVector) -> u64 {
        let m = self.modulus as u128;
        let s: u128 = alpha
            .as_slice()
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| (a as u128 * w as u128) % m)
            .sum();
        (s % m) as u64
    }

    fn check_nvars(&self, n: usize) -> Result<()> {
        if n != self.nvars() {
            return Err(Error::DimensionMismatch {
                left: self.nvars(),
                right: n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for DiagonalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "Z/{} with weights ({})", self.modulus, w.join(","))
    }
}

/// How the group acts on functions.
///
/// The Milnor algebra carries the action `g∘h = h∘g⁻¹`, so `x^α` transforms
/// by the character `−⟨w,α⟩` ([`Convention::Contragredient`], the default).
/// [`Convention::Direct`] records `+⟨w,α⟩` instead; it exists so the
/// classification can be shown to depend on the sign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Contragredient,
    Direct,
}

/// Character of `Z/m` on the span of `x^α`, as a residue mod `m`.
pub fn monomial_character(alpha: &ExponentVector, a: &DiagonalAction) -> u64 {
    monomial_character_with(alpha, a, Convention::Contragredient)
}

pub fn monomial_character_with(alpha: &ExponentVector, a: &DiagonalAction, conv: Convention) -> u64 {
    let w = a.weight_of(alpha);
    match conv {
        Convention::Direct => w,
        Convention::Contragredient => (a.modulus - w) % a.modulus,
    }
}

/// First monomial of `f` not fixed by the action, with its weight.
pub fn non_invariant_term(f: &Polynomial, a: &DiagonalAction) -> Option<(ExponentVector, u64)> {
    f.exponents()
        .map(|e| (e, a.weight_of(e)))
        .find(|(_, w)| *w != 0)
        .map(|(e, w)| (e.clone(), w))
}

pub fn is_invariant(f: &Polynomial, a: &DiagonalAction) -> Result<bool> {
    a.check_nvars(f.nvars())?;
    Ok(non_invariant_term(f, a).is_none())
}

pub(crate) fn require_invariant(f: &Polynomial, a: &DiagonalAction) -> Result<()> {
    a.check_nvars(f.nvars())?;
    match non_invariant_term(f, a) {
        None => Ok(()),
        Some((e, weight)) => Err(Error::NotInvariant {
            monomial: e.to_string(),
            weight,
            modulus: a.modulus,
        }),
    }
}

/// Multiplicities of the characters `0, 1, …, m−1` in a representation of
/// `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CharacterMultiset {
    mult: Vec<u64>,
}

impl CharacterMultiset {
    pub fn empty(modulus: u64) -> Self {
        Self {
            mult: vec![0; modulus as usize],
        }
    }

    pub fn from_residues(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Self {
        let mut ms = Self::empty(modulus);
        for r in residues {
            ms.insert(r, 1);
        }
        ms
    }

    pub fn insert(&mut self, residue: u64, count: u64) {
        let m = self.modulus();
        self.mult[(residue % m) as usize] += count;
    }

    pub fn modulus(&self) -> u64 {
        self.mult.len() as u64
    }

    pub fn multiplicity(&self, residue: u64) -> u64 {
        self.mult[(residue % self.modulus()) as usize]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn dim(&self) -> u64 {
        self.mult.iter().sum()
    }

    /// Multiplicity of the trivial character.
    pub fn trivial_multiplicity(&self) -> u64 {
        self.mult[0]
    }
}

/// Written as `{c:k, …}` over the characters that occur.
impl fmt::Display for CharacterMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(c, k)| format!("{c}:{k}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Invariant germ together with its Milnor algebra and character data.
#[derive(Debug, Clone)]
pub struct EquivariantMilnor {
    pub algebra: MilnorAlgebra,
    pub characters: CharacterMultiset,
}

/// `μ_G(f)`: the characters of the standard monomials of `Q_f`.
pub fn equivariant_milnor(f: &Polynomial, a: &DiagonalAction) -> Result<CharacterMultiset> {
    Ok(equivariant_milnor_full(f, a, Convention::default(), usize::MAX)?.characters)
}

pub fn equivariant_milnor_with(f: &Polynomial, a: &DiagonalAction, conv: Convention) -> Result<CharacterMultiset> {
    Ok(equivariant_milnor_full(f, a, conv, usize::MAX)?.characters)
}

/// Computes `Q_f` and its character decomposition, enumerating at most
/// `mu_cap` standard monomials.
///
/// Each standard monomial spans an eigenline of `Q_f` only because every
/// element of the standard basis of the invariant ideal `J_f` is itself an
/// eigenvector of the action. That is checked here rather than assumed.
pub fn equivariant_milnor_full(
    f: &Polynomial,
    a: &DiagonalAction,
    conv: Convention,
    mu_cap: usize,
) -> Result<EquivariantMilnor> {
    require_invariant(f, a)?;
    let algebra = milnor_algebra_with_limit(f, mu_cap)?;
    check_grading(&algebra, a)?;
    let characters = CharacterMultiset::from_residues(
        a.modulus,
        algebra
            .monomials()
            .iter()
            .map(|e| monomial_character_with(e, a, conv)),
    );
    Ok(EquivariantMilnor { algebra, characters })
}

fn check_grading(algebra: &MilnorAlgebra, a: &DiagonalAction) -> Result<()> {
    for g in algebra.jacobian_basis().generators() {
        let mut weights = g.exponents().map(|e| a.weight_of(e));
        let first = weights.next();
        if weights.any(|w| Some(w) != first) {
            return Err(Error::ClaimViolated {
                claim: "standard basis of an invariant ideal is graded",
                detail: format!("generator {g} mixes characters"),
            });
        }
    }
    Ok(())
}

/// `ν(f)`, the dimension of the invariant part of `Q_f`.
pub fn nu(f: &Polynomial, a: &DiagonalAction) -> Result<u64> {
    Ok(equivariant_milnor(f, a)?.trivial_multiplicity())
}

/// `det(τ)` as the residue `Σ w_i mod m`; `det(τ) = 1` is residue 0.
pub fn det_character(a: &DiagonalAction) -> u64 {
    let m = a.modulus as u128;
    (a.weights.iter().map(|&w| w as u128).sum::<u128>() % m) as u64
}

/// Maximal rank of an invariant quadratic form.
///
/// Invariant quadratics are spanned by `x_i x_j` with `w_i + w_j ≡ 0`. With
/// `n_c` variables of weight `c`, each self-paired class (`2c ≡ 0`) carries a
/// full-rank sum of squares and each opposite pair `{c, −c}` carries
/// `min(n_c, n_{−c})` hyperbolic planes.
pub fn max_invariant_quadratic_rank(a: &DiagonalAction) -> usize {
    let m = a.modulus;
    let mut count = std::collections::BTreeMap::<u64, usize>::new();
    for &w in &a.weights {
        *count.entry(w).or_default() += 1;
    }
    let mut rank = 0;
    for (&c, &n) in &count {
        let opposite = (m - c) % m;
        if opposite == c {
            rank += n;
        } else if c < opposite {
            rank += 2 * n.min(count.get(&opposite).copied().unwrap_or(0));
        }
    }
    rank
}

pub fn is_real_action(a: &DiagonalAction) -> bool {
    max_invariant_quadratic_rank(a) == a.nvars()
}
