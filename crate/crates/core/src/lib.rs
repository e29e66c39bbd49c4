//! Exact invariants of irreducible plane curve singularities computed from
//! their semigroups.
//!
//! The monodromy zeta function, the Poincaré series, the orbit invariant and
//! the Saito duals of the relative zeta functions of the monomial curve are
//! all finite products of binomials `(1 - T^l)^a` ([`CycloProduct`]), so the
//! identities relating them are checked as exact equalities of exponent maps
//! and cross-validated against truncated power series.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod invariants;
pub mod json;
pub mod lefschetz;
pub mod polycurve;
pub mod semigroup;
pub mod series;
pub mod sweep;

pub use cyclo::CycloProduct;
pub use error::{Error, Result};
pub use invariants::{Check, Report};
pub use lefschetz::{GradedMaps, LefschetzSequence, ZetaForm};
pub use polycurve::{Expr, MultiPoly};
pub use semigroup::{analyze, BranchData};
pub use series::TruncSeries;
pub use sweep::SweepSpec;
