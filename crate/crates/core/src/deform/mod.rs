//! Polynomial differential forms on a coordinate chart.
//!
//! Every computation here is exact. A closed ℝᵐ-valued (k+1)-form `ω` on ℝⁿ is
//! written as `dα` with the radial homotopy operator, `α` defines the section
//! `f(x) = (x, α(x))` of `X = ⋀ᵏT*ℝⁿ ⊗ ℝᵐ`, and `f*Ω − ω` is computed term by term.

mod canonical;
pub mod examples;
mod form;
mod map;
mod poincare;
mod poly;
mod presentation;

use thiserror::Error;

pub use canonical::{canonical_omega, canonical_omega_closed_form, canonical_theta, omega_nondegenerate_at, CanonicalChart};
pub use form::{PolyForm, PolyFormRecord, PolyTermRecord, VectorPolyForm};
pub use map::{PolyMap, PolyMapRecord};
pub use poincare::poincare_potential;
pub use poly::{MonomialRecord, Polynomial};
pub use presentation::{build_embedding, verify_local_presentation, LocalPresentation, PresentationRecord};

use crate::exterior::ExteriorError;
use crate::plectic::FormError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("form is not closed; d(w) = {residue}")]
    NotClosed { component: usize, residue: PolyForm },
    #[error("a closed 0-form has no potential")]
    DegreeZero,
    #[error("invalid chart parameters n={n}, k={k}, m={m}")]
    BadChart { n: usize, k: usize, m: usize },
    #[error("coefficient of {0} is not constant")]
    NonConstantCoefficient(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Form(#[from] FormError),
}
