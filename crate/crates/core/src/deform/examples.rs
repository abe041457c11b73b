//! The two worked local-presentation examples, with their displayed potentials.

use super::form::{PolyForm, VectorPolyForm};
use super::poly::Polynomial;
use crate::rational::{frac, int, Rational};

fn constant_term(n: usize, c: Rational, indices: &[usize]) -> (Polynomial, Vec<usize>) {
    (Polynomial::constant(n, c), indices.to_vec())
}

/// Cross-product form on ℝ³ as constant differential forms:
/// `ω₁ = dq₂∧dq₃`, `ω₂ = dq₃∧dq₁`, `ω₃ = dq₁∧dq₂`.
pub fn cross3_omega() -> VectorPolyForm {
    let parts = [[2, 3], [3, 1], [1, 2]];
    VectorPolyForm::new(
        parts
            .iter()
            .map(|idx| PolyForm::from_terms(3, 2, [constant_term(3, int(1), idx)]).expect("valid term"))
            .collect(),
    )
    .expect("common shape")
}

/// `α₁ = q₂ dq₃`, `α₂ = q₃ dq₁`, `α₃ = q₁ dq₂`.
pub fn cross3_potential() -> VectorPolyForm {
    let parts = [(2, 3), (3, 1), (1, 2)];
    VectorPolyForm::new(
        parts
            .iter()
            .map(|&(var, d)| PolyForm::term(Polynomial::var(3, var), &[d]).expect("valid term"))
            .collect(),
    )
    .expect("common shape")
}

/// Potential with `α₁` replaced by `2 q₂ dq₃`, for which `f*Ω ≠ ω`.
pub fn perturbed_cross3_potential() -> VectorPolyForm {
    let good = cross3_potential();
    let mut components = good.components().to_vec();
    components[0] = components[0].scale(&int(2));
    VectorPolyForm::new(components).expect("common shape")
}

/// The 2-plectic form on ℝ⁶:
/// `dx₁∧dx₃∧dx₅ − dx₁∧dx₄∧dx₆ − dx₂∧dx₃∧dx₆ + x₂ dx₂∧dx₄∧dx₅`.
pub fn plectic6_omega() -> VectorPolyForm {
    let w = PolyForm::from_terms(
        6,
        3,
        [
            constant_term(6, int(1), &[1, 3, 5]),
            constant_term(6, int(-1), &[1, 4, 6]),
            constant_term(6, int(-1), &[2, 3, 6]),
            (Polynomial::var(6, 2), vec![2, 4, 5]),
        ],
    )
    .expect("valid terms");
    VectorPolyForm::new(vec![w]).expect("single component")
}

/// `x₁ dx₃∧dx₅ − x₁ dx₄∧dx₆ − x₂ dx₃∧dx₆ + ½ x₂² dx₄∧dx₅`.
pub fn plectic6_potential() -> VectorPolyForm {
    let x1 = Polynomial::var(6, 1);
    let x2 = Polynomial::var(6, 2);
    let half_x2_sq = Polynomial::monomial(6, vec![0, 2, 0, 0, 0, 0], frac(1, 2));
    let a = PolyForm::from_terms(
        6,
        2,
        [
            (x1.clone(), vec![3, 5]),
            (-&x1, vec![4, 6]),
            (-&x2, vec![3, 6]),
            (half_x2_sq, vec![4, 5]),
        ],
    )
    .expect("valid terms");
    VectorPolyForm::new(vec![a]).expect("single component")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_potentials_are_potentials() {
        assert_eq!(cross3_potential().exterior_derivative(), cross3_omega());
        assert_eq!(plectic6_potential().exterior_derivative(), plectic6_omega());
        assert_ne!(perturbed_cross3_potential().exterior_derivative(), cross3_omega());
    }
}
