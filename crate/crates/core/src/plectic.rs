//! ℝᵐ-valued (k+1)-forms on a vector space and the exact nondegeneracy test.
//!
//! A form `ω = (ω₁, …, ω_m)` is nondegenerate when the only vector `v` with
//! `ω(v, u₁, …, u_k) = 0` for all `u`'s is zero. Equivalently the kernels of the
//! induced maps `ω̄ᵢ : V → (⋀ᵏV)*` intersect trivially, which is a rank
//! condition on the stacked matrix of contractions `ωᵢ(e_a, e_I)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{unit_vector, ConstForm, ConstFormRecord, ExteriorError, MultiIndex};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("a vector-valued form needs at least one component")]
    NoComponents,
    #[error("component {index} has shape (dim {dim}, degree {degree}), expected (dim {expected_dim}, degree {expected_degree})")]
    ShapeMismatch {
        index: usize,
        dim: usize,
        degree: usize,
        expected_dim: usize,
        expected_degree: usize,
    },
    #[error("k = {k} outside 1..={max} for forms on R^{dim}")]
    BadDegree { k: usize, max: usize, dim: usize },
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `ω : ⋀^{k+1} V → ℝᵐ`, stored as its m scalar components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorValuedForm {
    dim: usize,
    k: usize,
    components: Vec<ConstForm>,
}

impl VectorValuedForm {
    /// Requires `m ≥ 1`, a common shape, and `1 ≤ k ≤ n − 1` where `k + 1` is the degree.
    pub fn new(components: Vec<ConstForm>) -> Result<Self, FormError> {
        let first = components.first().ok_or(FormError::NoComponents)?;
        let (dim, degree) = (first.dim(), first.degree());
        for (index, c) in components.iter().enumerate() {
            if c.dim() != dim || c.degree() != degree {
                return Err(FormError::ShapeMismatch {
                    index,
                    dim: c.dim(),
                    degree: c.degree(),
                    expected_dim: dim,
                    expected_degree: degree,
                });
            }
        }
        let max = dim.saturating_sub(1);
        if degree < 2 || degree - 1 > max {
            return Err(FormError::BadDegree {
                k: degree.saturating_sub(1),
                max,
                dim,
            });
        }
        Ok(VectorValuedForm {
            dim,
            k: degree - 1,
            components,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.k + 1
    }

    /// Number of components m.
    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ConstForm] {
        &self.components
    }

    pub fn into_components(self) -> Vec<ConstForm> {
        self.components
    }

    /// Componentwise value `(ω₁(v₁,…,v_{k+1}), …, ω_m(v₁,…,v_{k+1}))`.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Vec<Rational>, FormError> {
        self.components
            .iter()
            .map(|c| c.evaluate(vectors).map_err(FormError::from))
            .collect()
    }

    /// Rows: for each component i (outer) and each degree-k multi-index I
    /// (inner, lexicographic), the row `a ↦ ωᵢ(e_a, e_I)`.
    pub fn contraction_matrix(&self) -> Matrix {
        let per = crate::exterior::binomial(self.dim, self.k);
        let mut m = Matrix::zeros(self.components.len() * per, self.dim);
        for (i, comp) in self.components.iter().enumerate() {
            for a in 1..=self.dim {
                let contracted = comp
                    .contract(&unit_vector(self.dim, a))
                    .expect("components have degree ≥ 2");
                for (r, c) in contracted.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        m.set(i * per + r, a - 1, c.clone());
                    }
                }
            }
        }
        m
    }

    /// True iff the contraction matrix has full column rank n.
    pub fn is_nondegenerate(&self) -> bool {
        self.contraction_matrix().rank() == self.dim
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        VectorValuedForm {
            dim: self.dim,
            k: self.k,
            components: self.components.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// `(u₁,…,u_{k+1}) ↦ ω(A u₁, …, A u_{k+1})`.
    pub fn pullback_linear(&self, a: &Matrix) -> Result<Self, FormError> {
        let components = self
            .components
            .iter()
            .map(|c| c.pullback_linear(a))
            .collect::<Result<Vec<_>, _>>()?;
        VectorValuedForm::new(components)
    }

    pub fn to_record(&self) -> VectorValuedFormRecord {
        VectorValuedFormRecord {
            dim: self.dim,
            k: self.k,
            components: self.components.iter().map(ConstForm::to_record).collect(),
        }
    }

    pub fn from_record(record: &VectorValuedFormRecord) -> Result<Self, FormError> {
        let components = record
            .components
            .iter()
            .map(ConstForm::from_record)
            .collect::<Result<Vec<_>, _>>()?;
        let form = VectorValuedForm::new(components)?;
        if form.dim != record.dim || form.k != record.k {
            return Err(FormError::ShapeMismatch {
                index: 0,
                dim: form.dim,
                degree: form.degree(),
                expected_dim: record.dim,
                expected_degree: record.k + 1,
            });
        }
        Ok(form)
    }
}

impl fmt::Display for VectorValuedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            writeln!(f, "ω{} = {}", i + 1, c)?;
        }
        Ok(())
    }
}

/// `{dim, k, components: [ConstForm, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorValuedFormRecord {
    pub dim: usize,
    pub k: usize,
    pub components: Vec<ConstFormRecord>,
}

impl Serialize for VectorValuedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VectorValuedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let record = VectorValuedFormRecord::deserialize(d)?;
        VectorValuedForm::from_record(&record).map_err(serde::de::Error::custom)
    }
}

/// The ℝ³-valued 2-form `ω(u, v) = u × v` on ℝ³:
/// `ω₁ = dq₂∧dq₃`, `ω₂ = dq₃∧dq₁`, `ω₃ = dq₁∧dq₂`.
pub fn cross_product_form() -> VectorValuedForm {
    let basis = |i, j| ConstForm::basis(3, &[i, j]).expect("valid indices");
    VectorValuedForm::new(vec![basis(2, 3), basis(3, 1), basis(1, 2)]).expect("valid shape")
}

/// Stacks 2-forms on a common ℝⁿ as the components of a polysymplectic form.
pub fn direct_sum_form(forms: Vec<ConstForm>) -> Result<VectorValuedForm, FormError> {
    if let Some(f) = forms.iter().find(|f| f.degree() != 2) {
        return Err(FormError::Exterior(ExteriorError::DegreeMismatch {
            expected: 2,
            found: f.degree(),
        }));
    }
    VectorValuedForm::new(forms)
}

/// `dq₁∧dq₂ + dq₃∧dq₄ + …` on ℝⁿ for even n.
pub fn standard_symplectic(dim: usize) -> ConstForm {
    assert!(dim.is_multiple_of(2) && dim >= 2, "standard symplectic form needs even dimension");
    let mut form = ConstForm::zero(dim, 2);
    for p in 0..dim / 2 {
        form = form + ConstForm::basis(dim, &[2 * p + 1, 2 * p + 2]).expect("valid indices");
    }
    form
}

/// All degree-(k+1) basis forms `dq_I` on ℝⁿ, one per component: the
/// "canonical" ℝ^{C(n,k+1)}-valued k-plectic form. Used as a nondegenerate seed.
pub fn all_basis_form(dim: usize, k: usize) -> Result<VectorValuedForm, FormError> {
    let components = MultiIndex::all(dim, k + 1)
        .map(|mi| ConstForm::basis(dim, mi.indices()))
        .collect::<Result<Vec<_>, _>>()?;
    VectorValuedForm::new(components)
}

/// Parses a vector of rationals from comma-separated text.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, rational::ParseRationalError> {
    text.split(',').map(rational::parse).collect()
}
