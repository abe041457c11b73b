use std::fmt;

use super::form::{PolyForm, VectorPolyForm};
use super::poly::Polynomial;
use super::DeformError;
use crate::exterior::{binomial, sort_with_sign, MultiIndex};
use crate::plectic::VectorValuedForm;
use crate::rational::{self, Rational};

/// Coordinates on `X = ⋀ᵏT*ℝⁿ ⊗ ℝᵐ`: `q₁, …, q_n`, then the fiber coordinates
/// `p_{I,i}` ordered by component `i` first and multi-index `I`
/// lexicographically second. Coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalChart {
    n: usize,
    k: usize,
    m: usize,
}

impl CanonicalChart {
    pub fn new(n: usize, k: usize, m: usize) -> Result<Self, DeformError> {
        if n < 2 || k < 1 || k >= n || m < 1 {
            return Err(DeformError::BadChart { n, k, m });
        }
        Ok(CanonicalChart { n, k, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Fiber dimension per component, `C(n, k)`.
    pub fn fiber_block(&self) -> usize {
        binomial(self.n, self.k)
    }

    /// `N = n + m · C(n, k)`.
    pub fn nvars(&self) -> usize {
        self.n + self.m * self.fiber_block()
    }

    /// Chart coordinate of `p_{I,i}` (component `i` is 1-based).
    pub fn p_index(&self, mi: &MultiIndex, i: usize) -> usize {
        debug_assert!(mi.dim() == self.n && mi.degree() == self.k && (1..=self.m).contains(&i));
        self.n + (i - 1) * self.fiber_block() + mi.rank() + 1
    }

    /// `(I, i)` for a fiber coordinate, `None` for a base coordinate.
    pub fn fiber_label(&self, coord: usize) -> Option<(MultiIndex, usize)> {
        if coord <= self.n || coord > self.nvars() {
            return None;
        }
        let offset = coord - self.n - 1;
        let block = self.fiber_block();
        let mi = MultiIndex::at(self.n, self.k, offset % block).ok()?;
        Some((mi, offset / block + 1))
    }

    pub fn coordinate_name(&self, coord: usize) -> String {
        match self.fiber_label(coord) {
            None => format!("q{coord}"),
            Some((mi, i)) => {
                let idx: Vec<String> = mi.indices().iter().map(ToString::to_string).collect();
                format!("p[{};{}]", idx.join(","), i)
            }
        }
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        (1..=self.nvars()).map(|c| self.coordinate_name(c)).collect()
    }
}

impl fmt::Display for CanonicalChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X(n={}, k={}, m={}) with {} coordinates", self.n, self.k, self.m, self.nvars())
    }
}

/// `Θ = Σᵢ Σ_I p_{I,i} dq_I ⊗ eᵢ`.
pub fn canonical_theta(chart: &CanonicalChart) -> VectorPolyForm {
    let nv = chart.nvars();
    let components = (1..=chart.m)
        .map(|i| {
            MultiIndex::all(chart.n, chart.k).fold(PolyForm::zero(nv, chart.k), |acc, mi| {
                let p = Polynomial::var(nv, chart.p_index(&mi, i));
                let term = PolyForm::term(p, mi.indices()).expect("indices within chart");
                &acc + &term
            })
        })
        .collect();
    VectorPolyForm::new(components).expect("common shape")
}

/// `Ω = dΘ`, computed by differentiating [`canonical_theta`].
pub fn canonical_omega(chart: &CanonicalChart) -> VectorPolyForm {
    canonical_theta(chart).exterior_derivative()
}

/// `Ω = Σᵢ Σ_I dp_{I,i} ∧ dq_I ⊗ eᵢ`, assembled term by term without `d`.
pub fn canonical_omega_closed_form(chart: &CanonicalChart) -> VectorPolyForm {
    let nv = chart.nvars();
    let components = (1..=chart.m)
        .map(|i| {
            let mut form = PolyForm::zero(nv, chart.k + 1);
            for mi in MultiIndex::all(chart.n, chart.k) {
                let mut indices = vec![chart.p_index(&mi, i)];
                indices.extend_from_slice(mi.indices());
                let sign = sort_with_sign(&mut indices).expect("p and q coordinates differ");
                let coeff = Polynomial::constant(nv, rational::int(sign as i64));
                form = &form + &PolyForm::from_terms(nv, chart.k + 1, [(coeff, indices)]).expect("valid term");
            }
            form
        })
        .collect();
    VectorPolyForm::new(components).expect("common shape")
}

/// Evaluates Ω at `point` and decides nondegeneracy of the resulting
/// ℝᵐ-valued k-plectic form on ℝᴺ. Ω has constant coefficients, which is
/// checked before the single evaluation.
pub fn omega_nondegenerate_at(chart: &CanonicalChart, point: &[Rational]) -> Result<bool, DeformError> {
    if point.len() != chart.nvars() {
        return Err(DeformError::DimensionMismatch {
            expected: chart.nvars(),
            found: point.len(),
        });
    }
    let omega = canonical_omega(chart);
    if let Some(c) = omega.components().iter().find(|c| !c.is_constant()) {
        return Err(DeformError::NonConstantCoefficient(c.to_string()));
    }
    let form = VectorValuedForm::new(omega.evaluate_at(point)?)?;
    Ok(form.is_nondegenerate())
}
