//! Dickson polynomials over finite fields: construction, explicit
//! factorization into irreducibles, and an independent verification oracle.
//!
//! The crate is organized in layers:
//!
//! * [`field`] — arithmetic for `F_q = F_{p^k}` and its quadratic extension,
//!   including orders, square roots and Frobenius;
//! * [`poly`] — dense univariate polynomials over a field context;
//! * [`dickson`] — the Dickson polynomials `D_n(x, a)` and `E_n(x, a)`;
//! * [`transforms`] — the `phi`/`psi` correspondence between degree-`m`
//!   polynomials and degree-`2m` self-reciprocal polynomials;
//! * [`engine`] — constructive factorization of Dickson polynomials with
//!   per-factor provenance;
//! * [`oracle`] — generic factorization machinery, independent of the
//!   engine's constructions, used to
//!   cross-check the engine.

pub mod dickson;
pub mod engine;
pub mod error;
pub mod field;
pub mod intnum;
pub mod oracle;
pub mod poly;
pub mod transforms;

pub use dickson::{dickson_first, dickson_second, is_permutation, waring_check, DicksonKind, DicksonSpec};
pub use engine::{
    b_independence_check, classify, factor_dickson, factor_first_kind, factor_second_kind,
    CaseTag, FactorEntry, FactorReport, SpecialFactor,
};
pub use error::{Error, Result};
pub use field::{ExtensionView, FieldCtx, FieldElement};
pub use poly::{Factorization, Polynomial};
