//! Exact-arithmetic toolkit for square homogeneous polynomial systems.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! boolean / number-theoretic instance
//!     --(reductions)--> square homogeneous PolySystem
//!     --(macaulay)----> Macaulay matrices (dense or entry oracle)
//!     --(resultant)---> certified ZERO / NONZERO / UNDECIDED verdict
//! ```
//!
//! plus a [`succinct`] module for entry-oracle matrices and implicit graphs
//! (forest gadgets, cycle-cover determinants, toy configuration graphs).
//!
//! All arithmetic is exact: rationals with big integers, prime fields, and
//! extension fields `F_p[X]/(P)`. No floating point anywhere.
//!
//! With the default `parallel` feature the hot loops (dense Macaulay rows,
//! per-ordering determinants, projective searches) run on rayon; without it
//! every entry point falls back to an equivalent sequential path with
//! identical results.

pub mod error;
pub mod field;
pub mod macaulay;
pub mod ordering;
pub(crate) mod par;
pub mod polysys;
pub mod reductions;
pub mod resultant;
pub mod succinct;
pub mod textfmt;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement};
pub use polysys::{Homogeneity, Monomial, MultiPoly, PolySystem};
pub use resultant::Verdict;
