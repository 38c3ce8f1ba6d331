//! Loop polynomials `x1^{d1}*x2 + x2^{d2}*x3 + … + xn^{dn}*x1` with their
//! cyclic symmetry of order `d1⋯dn + 1`.
//!
//! For odd `n` the germ is invariant under `x_k ↦ ε^{w_k} x_k` with
//! `w_k = (−1)^{k−1} d1⋯d_{k−1}`; each term `x_k^{d_k} x_{k+1}` has weight
//! `d_k w_k + w_{k+1} = 0`, and the wrap-around term has weight
//! `d_n w_n + w_1 = d1⋯dn + 1 ≡ 0`. The germ has zero 2-jet, Milnor number
//! `d1⋯dn` and is equivariantly stable.

use serde::Serialize;

use crate::action::{det_character, is_invariant, DiagonalAction};
use crate::classify::{analyze_with, Limits, RepClass};
use crate::error::{Error, Result};
use crate::localstd::has_nonzero_two_jet;
use crate::poly::{Coeff, ExponentVector, Polynomial};
use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LoopSpec {
    d: Vec<u64>,
}

impl LoopSpec {
    pub fn new(d: &[u64]) -> Result<Self> {
        if d.is_empty() || d.len().is_multiple_of(2) {
            return Err(Error::InvalidLoopSpec(format!(
                "the number of exponents must be odd, got {}",
                d.len()
            )));
        }
        if let Some(bad) = d.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidLoopSpec(format!("exponents must be >= 2, got {bad}")));
        }
        if d.iter().any(|&x| x > u32::MAX as u64 - 1) {
            return Err(Error::InvalidLoopSpec("exponent too large".into()));
        }
        d.iter()
            .try_fold(1u64, |acc, &x| acc.checked_mul(x))
            .and_then(|prod| prod.checked_add(1))
            .ok_or_else(|| Error::InvalidLoopSpec("d1*...*dn + 1 overflows 64 bits".into()))?;
        Ok(Self { d: d.to_vec() })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.d
    }

    pub fn nvars(&self) -> usize {
        self.d.len()
    }

    /// `d1⋯dn`, the Milnor number.
    pub fn product(&self) -> u64 {
        self.d.iter().product()
    }

    /// `d1⋯dn + 1`, the order of the acting group.
    pub fn modulus(&self) -> u64 {
        self.product() + 1
    }

    pub fn weights(&self) -> Vec<u64> {
        let m = self.modulus() as u128;
        let mut w = Vec::with_capacity(self.d.len());
        let mut prefix: u128 = 1;
        for (k, &dk) in self.d.iter().enumerate() {
            let wk = if k % 2 == 0 { prefix % m } else { (m - prefix % m) % m };
            w.push(wk as u64);
            prefix = prefix * dk as u128 % m;
        }
        w
    }
}

/// The loop germ and its action. For `n = 1` this is `x1^{d1+1}` under
/// `Z/(d1+1)` with weight 1.
pub fn loop_polynomial(spec: &LoopSpec) -> Result<(Polynomial, DiagonalAction)> {
    let n = spec.nvars();
    let mut f = Polynomial::zero(n);
    for (k, &dk) in spec.d.iter().enumerate() {
        let mut e = vec![0u32; n];
        e[k] += dk as u32;
        e[(k + 1) % n] += 1;
        f = f.add(&Polynomial::monomial(ExponentVector::new(e), Coeff::from_integer(1.into())))?;
    }
    let weights: Vec<i64> = spec
        .weights()
        .into_iter()
        .map(|w| i64::try_from(w).map_err(|_| Error::InvalidLoopSpec("modulus exceeds i64".into())))
        .collect::<Result<_>>()?;
    let action = DiagonalAction::new(spec.modulus(), &weights)?;
    if !is_invariant(&f, &action)? {
        return Err(Error::ClaimViolated {
            claim: "loop polynomial is invariant",
            detail: format!("{f} under {action}"),
        });
    }
    Ok((f, action))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    pub d: Vec<u64>,
    pub m: u64,
    pub m_prime: bool,
    pub mu: u64,
    pub nu: u64,
    /// `None` (classification skipped) when `m` is composite.
    pub repclass: Option<RepClass>,
    pub corank: usize,
    pub rk: usize,
    pub det_char: u64,
    /// `None` when `m` is composite.
    pub bound_ok: Option<bool>,
}

pub fn verify_loop(spec: &LoopSpec) -> Result<LoopReport> {
    verify_loop_with(spec, &Limits::default())
}

/// Builds and analyzes the loop germ, failing with
/// [`Error::ClaimViolated`] unless `μ = d1⋯dn`, `ν = 1` and the 2-jet is
/// zero. Refuses specs whose Milnor number exceeds `limits.mu_cap`.
pub fn verify_loop_with(spec: &LoopSpec, limits: &Limits) -> Result<LoopReport> {
    let expected_mu = spec.product();
    if expected_mu > limits.mu_cap as u64 {
        return Err(Error::ResourceLimit(format!(
            "expected Milnor number {expected_mu} exceeds cap {}",
            limits.mu_cap
        )));
    }
    let (f, action) = loop_polynomial(spec)?;
    if has_nonzero_two_jet(&f) {
        return Err(Error::ClaimViolated {
            claim: "loop polynomial has zero 2-jet",
            detail: f.to_string(),
        });
    }
    let report = analyze_with(&f, &action, limits)?.report;
    if report.mu != expected_mu {
        return Err(Error::ClaimViolated {
            claim: "loop Milnor number equals d1*...*dn",
            detail: format!("computed {}, expected {expected_mu}", report.mu),
        });
    }
    if report.nu != 1 {
        return Err(Error::ClaimViolated {
            claim: "loop polynomial is equivariantly stable",
            detail: format!("nu = {}", report.nu),
        });
    }
    let m = action.modulus();
    Ok(LoopReport {
        d: spec.d.clone(),
        m,
        m_prime: is_prime(m),
        mu: report.mu,
        nu: report.nu,
        repclass: report.repclass,
        corank: spec.nvars(),
        rk: report.rk,
        det_char: det_character(&action),
        bound_ok: report.corank_bound_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn spec_validation() {
        assert!(LoopSpec::new(&[2, 2]).is_err());
        assert!(LoopSpec::new(&[]).is_err());
        assert!(LoopSpec::new(&[2, 1, 3]).is_err());
        assert!(LoopSpec::new(&[2]).is_ok());
        assert!(LoopSpec::new(&[u64::MAX / 2, 3, 2]).is_err());
    }

    #[test]
    fn loop_223() {
        let (f, a) = loop_polynomial(&LoopSpec::new(&[2, 2, 3]).unwrap()).unwrap();
        assert_eq!(f, parse_polynomial("x1^2*x2 + x2^2*x3 + x3^3*x1", None).unwrap());
        assert_eq!(a.modulus(), 13);
        assert_eq!(a.weights(), &[1, 11, 4]);
    }

    #[test]
    fn loop_degenerate_and_composite() {
        let (f, a) = loop_polynomial(&LoopSpec::new(&[2]).unwrap()).unwrap();
        assert_eq!(f, parse_polynomial("x1^3", None).unwrap());
        assert_eq!((a.modulus(), a.weights()), (3, &[1u64][..]));
        let (f, a) = loop_polynomial(&LoopSpec::new(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!(f, parse_polynomial("x1^2*x2 + x2^2*x3 + x3^2*x1", None).unwrap());
        assert_eq!(a.modulus(), 9);
        assert!(is_invariant(&f, &a).unwrap());
    }

    #[test]
    fn verify_small_loops() {
        let r = verify_loop(&LoopSpec::new(&[2, 2, 3]).unwrap()).unwrap();
        assert_eq!((r.m, r.m_prime, r.mu, r.nu, r.corank), (13, true, 12, 1, 3));
        assert_eq!(r.repclass, Some(RepClass::DetTensorW));
        assert_eq!(r.bound_ok, Some(true));

        let r = verify_loop(&LoopSpec::new(&[2, 2, 2]).unwrap()).unwrap();
        assert_eq!((r.m, r.m_prime, r.mu, r.nu), (9, false, 8, 1));
        assert_eq!(r.repclass, None);

        let r = verify_loop(&LoopSpec::new(&[2]).unwrap()).unwrap();
        assert_eq!((r.m, r.mu, r.nu), (3, 2, 1));
        assert_eq!(r.repclass, Some(RepClass::DetTensorW));
    }

    #[test]
    fn verify_respects_cap() {
        let limits = Limits {
            mu_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            verify_loop_with(&LoopSpec::new(&[2, 2, 3]).unwrap(), &limits),
            Err(Error::ResourceLimit(_))
        ));
    }
}
