use super::form::PolyForm;
use super::map::PolyMap;
use super::poly::Polynomial;
use super::DeformError;
use crate::exterior::MultiIndex;
use crate::rational::{self, Rational};

/// Potential `K(w)` with `d K(w) = w` for a closed polynomial form of degree ≥ 1.
///
/// Uses the radial homotopy operator about `center`. With `y = q − center`, a
/// term `y^e dy_{j₀} ∧ … ∧ dy_{j_k}` of total degree `D` maps to
///
/// `Σ_a (−1)^a / (k + D + 1) · y^e y_{j_a} dy_{j₀} ∧ … ∧ dy_{j_a}^ ∧ … ∧ dy_{j_k}`,
///
/// the factor being `∫₀¹ t^{k+D} dt`.
pub fn poincare_potential(w: &PolyForm, center: &[Rational]) -> Result<PolyForm, DeformError> {
    let n = w.nvars();
    if center.len() != n {
        return Err(DeformError::DimensionMismatch {
            expected: n,
            found: center.len(),
        });
    }
    if w.degree() == 0 {
        return Err(DeformError::DegreeZero);
    }
    let residue = w.exterior_derivative();
    if !residue.is_zero() {
        return Err(DeformError::NotClosed { component: 1, residue });
    }
    let to_center = PolyMap::translation(center);
    let negated: Vec<Rational> = center.iter().map(|c| -c.clone()).collect();
    let from_center = PolyMap::translation(&negated);

    let shifted = to_center.pullback(w)?;
    let potential = radial_homotopy(&shifted);
    from_center.pullback(&potential)
}

/// The homotopy operator about the origin.
fn radial_homotopy(w: &PolyForm) -> PolyForm {
    let n = w.nvars();
    let d = w.degree();
    let mut out = PolyForm::zero(n, d - 1);
    for (mi, coeff) in w.terms() {
        for (exps, c) in coeff.terms() {
            let total: u32 = exps.iter().sum();
            let weight = c / rational::int(i64::from(total) + d as i64);
            let mono = Polynomial::monomial(n, exps.clone(), weight);
            for (pos, &j) in mi.indices().iter().enumerate() {
                let mut lifted = mono.mul_var(j);
                if pos % 2 == 1 {
                    lifted = -&lifted;
                }
                let rest: MultiIndex = mi.without_position(pos);
                let term = PolyForm::term(lifted, rest.indices()).expect("indices from a valid form");
                out = &out + &term;
            }
        }
    }
    out
}
