//! Milnor algebras of polynomial germs, their character decomposition under
//! diagonal cyclic actions, equivariant stability, and the loop-polynomial
//! construction of stable germs of large corank.
//!
//! ```
//! use equimilnor::{analyze, parse_polynomial, DiagonalAction, RepClass};
//!
//! let f = parse_polynomial("x1^5 + x1*x2^2", None).unwrap();
//! let a = DiagonalAction::new(5, &[1, 2]).unwrap();
//! let report = analyze(&f, &a).unwrap();
//! assert_eq!(report.mu, 6);
//! assert!(report.stable);
//! assert_eq!(report.repclass, Some(RepClass::TwoDetPlusDetW));
//! ```

pub mod action;
pub mod classify;
pub mod construct;
pub mod error;
pub mod localstd;
pub mod parse;
pub mod poly;
pub mod primes;

pub use action::{
    det_character, equivariant_milnor, is_invariant, is_real_action, max_invariant_quadratic_rank,
    monomial_character, nu, CharacterMultiset, Convention, DiagonalAction,
};
pub use classify::{analyze, classify, expected_multiset, is_stable, Limits, RepClass, StabilityReport};
pub use construct::{loop_polynomial, verify_loop, LoopReport, LoopSpec};
pub use error::{Error, Result};
pub use localstd::{ideal_membership, milnor_number, mora_normal_form, standard_basis, StandardBasis};
pub use parse::parse_polynomial;
pub use poly::{Coeff, ExponentVector, LocalOrder, Polynomial};
