//! Wedderburn decomposition of finite-dimensional associative algebras over
//! Q, in exact rational arithmetic.
//!
//! The pipeline runs: Jacobson radical (trace-form nullspace), semisimple
//! quotient, center, primitive central idempotents (recursive ideal
//! splitting), simple components with explicit matrix units, the induced
//! irreducible representations, and a Wedderburn-Malcev lift of the quotient
//! back into the original algebra. Inputs come either from structure
//! constants or from multiplication tables of Boolean matrix semigroups.

pub mod algebra;
pub mod center;
pub mod boolsemi;
pub mod exactla;
pub mod malcev;
pub mod pipeline;
pub mod report;
pub mod poly;
pub mod radical;
pub mod rng;
pub mod split;
pub(crate) mod timing;
pub mod wedderburn;
