//! Exact-arithmetic toolkit for degeneration orders of quiver representations.
//!
//! The crate provides four layers:
//!
//! * [`scalar`] and [`matrix`]: exact scalars over ℚ, F_p, `k[t]` and `k(t)`,
//!   with rank-revealing elimination, Smith normal forms over `k[t]` and
//!   characteristic-polynomial factorisation.
//! * [`quiver`] and [`rep`]: finite acyclic quivers with optional
//!   admissible relations, finite-dimensional representations, and the
//!   Hom/Ext linear algebra between them. [`decompose`] splits
//!   representations into indecomposable summands.
//! * [`degeneration`], [`family`] and [`derived`]: the degeneration
//!   orders themselves: hom-order necessary conditions and exact-sequence
//!   witness search at module level, one-parameter flat families over
//!   `k[t]` with fiber checks, and triangle degeneration for bounded
//!   complexes over hereditary algebras.
//! * [`poset`]: exhaustive enumeration of indecomposables and modules at
//!   a dimension vector, degeneration Hasse diagrams and partial-order
//!   verification, with DOT emission.
//!
//! Every positive answer carries a certificate that [`verify`] re-checks
//! from scratch; negative answers carry a re-checkable obstruction, and
//! exhausted searches are reported as `Unknown` rather than `No`.

pub mod decompose;
pub mod degeneration;
pub mod derived;
pub mod error;
pub mod family;
pub mod json;
pub mod matrix;
pub mod polyfactor;
pub mod poset;
pub mod quiver;
pub mod rep;
pub mod rng;
pub mod roots;
pub mod scalar;
pub mod snf;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
