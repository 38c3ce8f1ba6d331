//! Stability of invariant germs and the isomorphism class of `μ_G(f)` for
//! actions of a cyclic group of prime order.
//!
//! A germ is equivariantly stable iff `ν(f) = 1`. For stable germs under
//! `Z/p` the representation on `Q_f` is one of
//!
//! | class | representation        | dimension | `det(τ)` |
//! |-------|-----------------------|-----------|----------|
//! | 1     | trivial               | 1         | `= 1`    |
//! | 2     | `det ⊗ W`             | `p − 1`   | `≠ 1`    |
//! | 3     | `2 det ⊕ (det ⊗ W)`   | `p + 1`   | `≠ 1`    |
//! | 4     | `trivial ⊕ 2W`        | `2p − 1`  | `= 1`    |
//!
//! where `W` is the regular representation minus its trivial summand.
//! Class 4 never occurs; [`check_class4_exclusion`] flags it if it does.

use serde::Serialize;

use crate::action::{
    det_character, equivariant_milnor, equivariant_milnor_full, max_invariant_quadratic_rank, CharacterMultiset,
    Convention, DiagonalAction, EquivariantMilnor,
};
use crate::error::{Error, Result};
use crate::localstd::{has_nonzero_two_jet, ideal_membership};
use crate::poly::{Polynomial, DEFAULT_HESSIAN_LIMIT};
use crate::primes::is_prime;

/// Default cap on the Milnor number of analyzed germs.
pub const DEFAULT_MU_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RepClass {
    /// The trivial one-dimensional representation.
    TrivialOnly,
    /// `det(τ) ⊗ W`.
    DetTensorW,
    /// `2 det(τ) ⊕ (det(τ) ⊗ W)`.
    TwoDetPlusDetW,
    /// `trivial ⊕ 2W`.
    TrivialPlus2W,
    Other,
}

impl RepClass {
    pub const ADMISSIBLE: [RepClass; 4] = [
        RepClass::TrivialOnly,
        RepClass::DetTensorW,
        RepClass::TwoDetPlusDetW,
        RepClass::TrivialPlus2W,
    ];

    /// Dimension of the class for `Z/p`, `None` for [`RepClass::Other`].
    pub fn dimension(self, p: u64) -> Option<u64> {
        match self {
            RepClass::TrivialOnly => Some(1),
            RepClass::DetTensorW => Some(p - 1),
            RepClass::TwoDetPlusDetW => Some(p + 1),
            RepClass::TrivialPlus2W => Some(2 * p - 1),
            RepClass::Other => None,
        }
    }
}

impl std::fmt::Display for RepClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

fn require_prime(a: &DiagonalAction) -> Result<u64> {
    let p = a.modulus();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

/// The character multiset of class `c` for the action `a`.
pub fn expected_multiset(c: RepClass, a: &DiagonalAction) -> Result<CharacterMultiset> {
    let p = require_prime(a)?;
    let d = det_character(a);
    let mut ms = CharacterMultiset::empty(p);
    match c {
        RepClass::TrivialOnly => ms.insert(0, 1),
        RepClass::DetTensorW => (1..p).for_each(|c| ms.insert(d + c, 1)),
        RepClass::TwoDetPlusDetW => {
            (1..p).for_each(|c| ms.insert(d + c, 1));
            ms.insert(d, 2);
        }
        RepClass::TrivialPlus2W => {
            ms.insert(0, 1);
            (1..p).for_each(|c| ms.insert(c, 2));
        }
        RepClass::Other => return Err(Error::NoExpectedMultiset),
    }
    Ok(ms)
}

/// Matches `ms` against the admissible classes. Classes 1 and 4 are only
/// considered when `det(τ)` is trivial, classes 2 and 3 only when it is not.
/// For `p = 2`, `det ⊗ W` is trivial, so classes 2 and 3 coincide with
/// classes 1 and 4 and are reported under the latter names.
pub fn classify(ms: &CharacterMultiset, a: &DiagonalAction) -> Result<RepClass> {
    let p = require_prime(a)?;
    if ms.modulus() != p {
        return Err(Error::DimensionMismatch {
            left: p as usize,
            right: ms.modulus() as usize,
        });
    }
    let candidates: &[RepClass] = if det_character(a) == 0 || p == 2 {
        &[RepClass::TrivialOnly, RepClass::TrivialPlus2W]
    } else {
        &[RepClass::DetTensorW, RepClass::TwoDetPlusDetW]
    };
    for &c in candidates {
        if expected_multiset(c, a)? == *ms {
            return Ok(c);
        }
    }
    Ok(RepClass::Other)
}

pub fn is_stable(f: &Polynomial, a: &DiagonalAction) -> Result<bool> {
    Ok(equivariant_milnor(f, a)?.trivial_multiplicity() == 1)
}

/// `det(τ) ≠ 1 and n − rk ≤ log₂(p + 1)`, or the action is real (`rk = n`).
/// The logarithm is compared exactly as `2^{n−rk} ≤ p + 1`.
pub fn check_corank_bound(n: usize, rk: usize, p: u64, det_char: u64) -> bool {
    if rk >= n {
        return true;
    }
    if det_char == 0 {
        return false;
    }
    let corank = (n - rk) as u32;
    match 2u128.checked_pow(corank) {
        Some(v) => v <= p as u128 + 1,
        None => false,
    }
}

/// Returns `false` when `ms` is a stable germ's multiset equal to
/// `trivial ⊕ 2W`, a configuration that cannot occur.
pub fn check_class4_exclusion(ms: &CharacterMultiset, a: &DiagonalAction) -> Result<bool> {
    if ms.trivial_multiplicity() != 1 {
        return Ok(true);
    }
    Ok(*ms != expected_multiset(RepClass::TrivialPlus2W, a)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Milnor number that will be enumerated.
    pub mu_cap: usize,
    /// Largest variable count for which the Hessian check runs.
    pub hessian_vars: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            mu_cap: DEFAULT_MU_CAP,
            hessian_vars: DEFAULT_HESSIAN_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub mu: u64,
    pub nu: u64,
    pub stable: bool,
    /// `None` when the modulus is composite.
    pub repclass: Option<RepClass>,
    pub det_char: u64,
    pub rk: usize,
    /// `None` when the modulus is composite.
    pub corank_bound_ok: Option<bool>,
    pub real_action: bool,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: StabilityReport,
    pub milnor: EquivariantMilnor,
}

pub fn analyze(f: &Polynomial, a: &DiagonalAction) -> Result<StabilityReport> {
    Ok(analyze_with(f, a, &Limits::default())?.report)
}

/// Full analysis of an invariant germ. Besides computing the report this
/// checks, and fails with [`Error::ClaimViolated`] otherwise, that
///
/// - the Hessian determinant is not in `J_f`;
/// - `μ ≥ 2^n` when the 2-jet vanishes;
/// - a stable germ under `Z/p` does not realize `trivial ⊕ 2W`.
pub fn analyze_with(f: &Polynomial, a: &DiagonalAction, limits: &Limits) -> Result<Analysis> {
    analyze_with_convention(f, a, limits, Convention::default())
}

pub fn analyze_with_convention(
    f: &Polynomial,
    a: &DiagonalAction,
    limits: &Limits,
    conv: Convention,
) -> Result<Analysis> {
    let milnor = equivariant_milnor_full(f, a, conv, limits.mu_cap)?;
    let ms = &milnor.characters;
    let n = a.nvars();
    let mu = ms.dim();
    let nu = ms.trivial_multiplicity();
    let stable = nu == 1;
    let det_char = det_character(a);
    let rk = max_invariant_quadratic_rank(a);
    let prime = is_prime(a.modulus());

    if n <= limits.hessian_vars {
        let hess = f.hessian_det_with_limit(limits.hessian_vars)?;
        if ideal_membership(&hess, milnor.algebra.jacobian_basis())? {
            return Err(Error::ClaimViolated {
                claim: "hessian determinant lies outside the jacobian ideal",
                detail: format!("hessian {hess} reduces to 0"),
            });
        }
    }
    if !has_nonzero_two_jet(f) && n < 64 && mu < (1u64 << n) {
        return Err(Error::ClaimViolated {
            claim: "zero 2-jet forces mu >= 2^n",
            detail: format!("mu = {mu}, n = {n}"),
        });
    }

    let (repclass, corank_bound_ok) = if prime {
        if stable && !check_class4_exclusion(ms, a)? {
            return Err(Error::ClaimViolated {
                claim: "no stable germ realizes trivial + 2W",
                detail: format!("multiset {ms}"),
            });
        }
        (
            Some(classify(ms, a)?),
            Some(check_corank_bound(n, rk, a.modulus(), det_char)),
        )
    } else {
        (None, None)
    };

    Ok(Analysis {
        report: StabilityReport {
            mu,
            nu,
            stable,
            repclass,
            det_char,
            rk,
            corank_bound_ok,
            real_action: rk == n,
        },
        milnor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, None).unwrap()
    }

    fn act(m: u64, w: &[i64]) -> DiagonalAction {
        DiagonalAction::new(m, w).unwrap()
    }

    #[test]
    fn expected_multisets() {
        let a = act(5, &[1]);
        assert_eq!(
            expected_multiset(RepClass::TrivialOnly, &a).unwrap(),
            CharacterMultiset::from_residues(5, [0])
        );
        assert_eq!(
            expected_multiset(RepClass::DetTensorW, &a).unwrap(),
            CharacterMultiset::from_residues(5, [2, 3, 4, 0])
        );
        let b = act(3, &[1, 2]);
        let ms = expected_multiset(RepClass::TrivialPlus2W, &b).unwrap();
        assert_eq!(ms, CharacterMultiset::from_residues(3, [0, 1, 1, 2, 2]));
        assert_eq!(ms.dim(), 5);
        let c3 = expected_multiset(RepClass::TwoDetPlusDetW, &a).unwrap();
        assert_eq!(c3, CharacterMultiset::from_residues(5, [2, 3, 4, 0, 1, 1]));
    }

    #[test]
    fn expected_multiset_errors() {
        assert_eq!(
            expected_multiset(RepClass::DetTensorW, &act(9, &[1])),
            Err(Error::NotPrime(9))
        );
        assert_eq!(
            expected_multiset(RepClass::Other, &act(5, &[1])),
            Err(Error::NoExpectedMultiset)
        );
    }

    #[test]
    fn classify_examples() {
        let a = act(5, &[1]);
        let ms = equivariant_milnor(&poly("x1^5"), &a).unwrap();
        assert_eq!(classify(&ms, &a).unwrap(), RepClass::DetTensorW);
        let b = act(5, &[1, 2]);
        let ms = equivariant_milnor(&poly("x1^5 + x1*x2^2"), &b).unwrap();
        assert_eq!(classify(&ms, &b).unwrap(), RepClass::TwoDetPlusDetW);
        let c = act(5, &[1, 4]);
        let ms = equivariant_milnor(&poly("x1*x2"), &c).unwrap();
        assert_eq!(classify(&ms, &c).unwrap(), RepClass::TrivialOnly);
        assert_eq!(classify(&ms, &act(4, &[1, 3])), Err(Error::NotPrime(4)));
        let d = act(2, &[1]);
        let ms = equivariant_milnor(&poly("x1^2"), &d).unwrap();
        assert_eq!(classify(&ms, &d).unwrap(), RepClass::TrivialOnly);
    }

    #[test]
    fn classify_gates_on_det() {
        // a class-2 shape under an action with trivial determinant is Other
        let a = act(5, &[1, 4]);
        let ms = CharacterMultiset::from_residues(5, [1, 2, 3, 4]);
        assert_eq!(classify(&ms, &a).unwrap(), RepClass::Other);
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(&poly("x1^5"), &act(5, &[1])).unwrap());
        assert!(!is_stable(&poly("x1^3 + x2^3"), &act(3, &[1, 2])).unwrap());
        assert!(is_stable(&poly("x1^2*x2 + x2^2*x3 + x3^3*x1"), &act(13, &[1, 11, 4])).unwrap());
    }

    #[test]
    fn corank_bounds() {
        assert!(check_corank_bound(3, 0, 13, 3));
        assert!(!check_corank_bound(5, 0, 7, 1));
        assert!(check_corank_bound(4, 4, 3, 0));
        assert!(!check_corank_bound(1, 0, 5, 0));
        assert!(!check_corank_bound(200, 0, 5, 1));
    }

    #[test]
    fn class4_detector() {
        let a = act(3, &[1, 2]);
        let bad = expected_multiset(RepClass::TrivialPlus2W, &a).unwrap();
        assert!(!check_class4_exclusion(&bad, &a).unwrap());
        let x5 = equivariant_milnor(&poly("x1^5"), &act(5, &[1])).unwrap();
        assert!(check_class4_exclusion(&x5, &act(5, &[1])).unwrap());
        let morse = CharacterMultiset::from_residues(3, [0]);
        assert!(check_class4_exclusion(&morse, &a).unwrap());
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&poly("x1^5"), &act(5, &[1])).unwrap();
        assert_eq!(
            r,
            StabilityReport {
                mu: 4,
                nu: 1,
                stable: true,
                repclass: Some(RepClass::DetTensorW),
                det_char: 1,
                rk: 0,
                corank_bound_ok: Some(true),
                real_action: false,
            }
        );
        let r = analyze(&poly("x1*x2"), &act(5, &[1, 4])).unwrap();
        assert_eq!((r.mu, r.nu, r.stable), (1, 1, true));
        assert_eq!(r.repclass, Some(RepClass::TrivialOnly));
        assert!(r.real_action);
        let r = analyze(&poly("x1^2*x2 + x2^2*x3 + x3^3*x1"), &act(13, &[1, 11, 4])).unwrap();
        assert_eq!((r.mu, r.nu, r.stable, r.rk), (12, 1, true, 0));
        assert_eq!(r.repclass, Some(RepClass::DetTensorW));
        assert_eq!(r.corank_bound_ok, Some(true));
    }

    #[test]
    fn analyze_composite_modulus_skips_classification() {
        let r = analyze(&poly("x1^2*x2 + x2^2*x3 + x3^2*x1"), &act(9, &[1, 7, 4])).unwrap();
        assert_eq!((r.mu, r.nu), (8, 1));
        assert_eq!(r.repclass, None);
        assert_eq!(r.corank_bound_ok, None);
    }

    #[test]
    fn analyze_respects_mu_cap() {
        let limits = Limits {
            mu_cap: 3,
            ..Limits::default()
        };
        assert!(matches!(
            analyze_with(&poly("x1^5"), &act(5, &[1]), &limits),
            Err(Error::ResourceLimit(_))
        ));
    }
}
