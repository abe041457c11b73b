use serde::Serialize;

use super::canonical::{canonical_omega, CanonicalChart};
use super::form::{PolyForm, VectorPolyForm};
use super::map::PolyMap;
use super::poincare::poincare_potential;
use super::poly::Polynomial;
use super::DeformError;
use crate::exterior::MultiIndex;
use crate::plectic::VectorValuedForm;
use crate::rational::{self, Rational};

/// `f(x) = (x, α(x))`: base coordinates map to themselves and `p_{I,i}` maps
/// to the `dq_I` coefficient of `αᵢ`.
pub fn build_embedding(potential: &VectorPolyForm, chart: &CanonicalChart) -> Result<PolyMap, DeformError> {
    if potential.nvars() != chart.n() || potential.degree() != chart.k() || potential.arity() != chart.m() {
        return Err(DeformError::ShapeMismatch(format!(
            "potential of shape (n={}, k={}, m={}) for {chart}",
            potential.nvars(),
            potential.degree(),
            potential.arity()
        )));
    }
    let n = chart.n();
    let mut components: Vec<Polynomial> = (1..=n).map(|a| Polynomial::var(n, a)).collect();
    for alpha in potential.components() {
        components.extend(MultiIndex::all(n, chart.k()).map(|mi| alpha.coefficient(&mi)));
    }
    PolyMap::new(n, components)
}

/// Outcome of checking `ω = f*Ω` for a closed ℝᵐ-valued form.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPresentation {
    pub chart: CanonicalChart,
    pub center: Vec<Rational>,
    pub potential: VectorPolyForm,
    pub potential_supplied: bool,
    pub embedding: PolyMap,
    pub pulled_back: VectorPolyForm,
    /// `f*Ω − ω`; the presentation holds iff this is zero.
    pub residual: VectorPolyForm,
    /// Nondegeneracy of ω at the center; `false` is reported as a warning only.
    pub nondegenerate_at_center: bool,
}

impl LocalPresentation {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.nondegenerate_at_center {
            out.push("form is degenerate at the center".to_string());
        }
        out
    }

    pub fn to_record(&self) -> PresentationRecord {
        PresentationRecord {
            n: self.chart.n(),
            k: self.chart.k(),
            m: self.chart.m(),
            chart_dimension: self.chart.nvars(),
            coordinates: self.chart.coordinate_names(),
            center: self.center.iter().map(rational::format).collect(),
            potential_supplied: self.potential_supplied,
            nondegenerate_at_center: self.nondegenerate_at_center,
            potential: self.potential.clone(),
            embedding: self.embedding.clone(),
            residual: self.residual.clone(),
            holds: self.holds(),
        }
    }
}

/// Structured record of a verification, including the (expected empty) residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresentationRecord {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub chart_dimension: usize,
    pub coordinates: Vec<String>,
    pub center: Vec<String>,
    pub potential_supplied: bool,
    pub nondegenerate_at_center: bool,
    pub potential: VectorPolyForm,
    pub embedding: PolyMap,
    pub residual: VectorPolyForm,
    pub holds: bool,
}

/// Computes `f*Ω − ω` for a closed ℝᵐ-valued (k+1)-form `ω` on ℝⁿ.
///
/// The potential is either supplied or computed componentwise with
/// [`poincare_potential`] about `center`. A supplied potential is not checked
/// against `ω`; a wrong one shows up as a nonzero residual.
pub fn verify_local_presentation(
    omega: &VectorPolyForm,
    center: &[Rational],
    potential: Option<&VectorPolyForm>,
) -> Result<LocalPresentation, DeformError> {
    let n = omega.nvars();
    if center.len() != n {
        return Err(DeformError::DimensionMismatch {
            expected: n,
            found: center.len(),
        });
    }
    if omega.degree() < 2 {
        return Err(DeformError::ShapeMismatch(format!(
            "expected a form of degree k + 1 ≥ 2, found degree {}",
            omega.degree()
        )));
    }
    let chart = CanonicalChart::new(n, omega.degree() - 1, omega.arity())?;
    for (i, c) in omega.components().iter().enumerate() {
        let residue = c.exterior_derivative();
        if !residue.is_zero() {
            return Err(DeformError::NotClosed { component: i + 1, residue });
        }
    }
    let nondegenerate_at_center = VectorValuedForm::new(omega.evaluate_at(center)?)?.is_nondegenerate();

    let potential_supplied = potential.is_some();
    let potential = match potential {
        Some(p) => p.clone(),
        None => VectorPolyForm::new(
            omega
                .components()
                .iter()
                .map(|c| poincare_potential(c, center))
                .collect::<Result<Vec<PolyForm>, _>>()?,
        )?,
    };
    let embedding = build_embedding(&potential, &chart)?;
    let pulled_back = embedding.pullback_vector(&canonical_omega(&chart))?;
    let residual = pulled_back.sub(omega)?;
    Ok(LocalPresentation {
        chart,
        center: center.to_vec(),
        potential,
        potential_supplied,
        embedding,
        pulled_back,
        residual,
        nondegenerate_at_center,
    })
}
