//! Exact-arithmetic valuation theory on Q[x].
//!
//! The crate constructs p-adic monomial valuations with rational or small
//! number-field centers (infinitesimal and infinite values included),
//! truncates them along q-expansions, computes key-polynomial invariants
//! (epsilon, optimizing-root values, minimal pairs) and graded-algebra data,
//! and verifies the classical theorems relating all of these on concrete
//! instances through a scenario-driven lab.
//!
//! Everything is exact: rationals with `i128` components, lexicographic
//! rank-2 values, and number fields of degree at most 3 where the naive
//! minimum rule is provably the unique extension of v_p.

pub mod corpus;
pub mod error;
pub mod graded;
pub mod keypoly;
pub mod lab;
pub mod newton;
pub mod numfield;
pub mod ordgroup;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod valuation;
pub mod verdict;

pub use error::{Error, Result};
pub use ordgroup::{EpsilonValue, GroupValue};
pub use poly::{Poly, QExpansion};
pub use rat::Rat;
pub use valuation::{BaseVal, MonomialNf, MonomialQ, Truncation, Valuation};
pub use verdict::{Verdict, VerdictStatus, Witness};
