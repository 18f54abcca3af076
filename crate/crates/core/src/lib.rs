//! Arbitrary-precision evaluation and verification of five classical
//! continued fractions — Rogers-Ramanujan R(q), Ramanujan-Göllnitz-Gordon
//! H(q), Ramanujan's cubic fraction V(q), and the S(q)/Q(q) fractions —
//! together with the singular-modulus machinery (complete elliptic
//! integrals via AGM, theta functions, q-products) that yields their
//! closed-form values.
//!
//! Every fraction can be computed by three independent routes:
//!
//! 1. **direct** — the continued-fraction recurrence itself,
//! 2. **oracle** — an equivalent q-product / theta-quotient,
//! 3. **closed** — an elliptic closed form in the singular modulus `k_r`,
//!
//! and the [`verifier`] module cross-checks a catalog of identities,
//! modular equations, and printed evaluations relating them, reporting a
//! tolerance-tracked pass/fail status for each.
//!
//! Numerical backbone: [`rug`] (MPFR) supplies ring arithmetic, `exp`,
//! `ln`, `sqrt`, powers and π; everything above that — AGM, K(k), theta
//! series, q-Pochhammer products, continued-fraction recurrences, Spouge's
//! gamma, polynomial root isolation — is implemented here.

pub mod cfrac;
pub mod closed_forms;
pub mod elliptic;
pub mod error;
pub mod nome;
pub mod numerics;
pub mod precision;
pub mod qseries;
pub mod verifier;

pub use cfrac::{CFSpec, ConvergenceReport, FractionKind};
pub use elliptic::{Modulus, SingularPoint};
pub use error::{Error, Result};
pub use nome::Nome;
pub use precision::PrecisionContext;
pub use verifier::{CheckResult, CheckStatus, Expected, IdentityCheck, SuiteReport};
