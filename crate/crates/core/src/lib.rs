//! Exact computation with ℝᵐ-valued k-plectic forms.
//!
//! The crate is organised bottom-up:
//!
//! * [`exterior`]: multi-indices and constant-coefficient alternating forms on ℝⁿ.
//! * [`plectic`]: vector-valued forms and the exact nondegeneracy test.
//! * [`operad`]: partial compositions, the symmetric-group action and the
//!   entropy functional on evaluated components.
//! * [`deform`]: polynomial differential forms on a coordinate chart: exterior
//!   derivative, pullback, the radial homotopy operator, the canonical forms
//!   Θ and Ω, and verification of local presentations ω = f*Ω.
//! * [`sample`] and [`checks`]: seeded random corpora and the property suites
//!   run over them.
//!
//! All coefficient arithmetic is exact over [`Rational`]. Floating point only
//! appears where logarithms are taken.

pub mod checks;
pub mod deform;
pub mod exterior;
pub mod linalg;
pub mod operad;
pub mod plectic;
pub mod rational;
pub mod sample;

pub use exterior::{ConstForm, MultiIndex};
pub use plectic::VectorValuedForm;
pub use rational::Rational;
