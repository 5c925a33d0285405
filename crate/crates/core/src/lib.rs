//! Exact computations for the integral cohomology ring of `B𝒢(P)`, the classifying
//! space of the gauge group of a principal `U(n)`-bundle of degree `k` over `S²`.
//!
//! The ring is presented as
//!
//! ```text
//! Z[c_1, ..., c_n, x_1, x_2, ...] / (h_n, h_{n+1}, ...),
//! h_i = k c_i + Σ_{1 ≤ j ≤ i} (-1)^j s_j(x_1, ..., x_j) c_{i-j},
//! ```
//!
//! where `s_j` is the j-th power sum written in elementary symmetric functions. All
//! classes sit in even degree, so the crate works with *weights* (half the cohomological
//! degree) throughout.
//!
//! Module map:
//!
//! - [`symfunc`]: Newton identities and Chern-character components.
//! - [`polyring`]: weighted polynomials over `Z` or `F_p`, monomial enumeration, and the
//!   text expression language.
//! - [`zlinalg`]: Hermite/Smith normal forms, modular rank, integer row-space solving.
//! - [`presentations`]: the gauge and Bott relation families, per-weight quotient
//!   components, Poincaré series, normal forms and torsion reports.
//! - [`suspension`]: the free double suspension as a symbolic derivation.
//! - [`verify`]: bundles the checkable identities into one seeded report.

pub mod error;
pub mod polyring;
pub mod presentations;
pub mod suspension;
pub mod symfunc;
pub mod verify;
pub mod zlinalg;

pub use error::{Error, Result};
pub use polyring::{Family, Generator, GeneratorContext, GradedPoly, Monomial};
pub use presentations::{
    DegreeComponent, Engine, NormalForm, PresentationKind, PresentationSpec, TruncatedSeries,
};
pub use suspension::SuspensionOperator;
pub use symfunc::{SymBasis, SymPoly};
pub use verify::{CheckStatus, VerificationReport, VerifyParams};
pub use zlinalg::{IntMatrix, Modulus, SnfResult};
