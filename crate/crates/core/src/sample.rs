//! Seeded random generators for property checks.
//!
//! Every generator draws from a caller-owned [`ChaCha8Rng`], so a fixed seed
//! reproduces the same corpus on every platform.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::deform::{PolyForm, PolyMap, Polynomial};
use crate::exterior::{binomial, ConstForm, MultiIndex};
use crate::operad::{OperadElement, Permutation};
use crate::plectic::VectorValuedForm;
use crate::rational::{frac, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    frac(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rational(rng, 5, 3)).collect()
}

pub fn vectors(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count).map(|_| vector(rng, dim)).collect()
}

/// Dense form with roughly half of its coefficients nonzero.
pub fn const_form(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> ConstForm {
    let coeffs = (0..binomial(dim, degree))
        .map(|_| {
            if rng.gen_bool(0.5) {
                rational(rng, 4, 3)
            } else {
                Rational::zero()
            }
        })
        .collect();
    ConstForm::from_coeffs(dim, degree, coeffs).expect("length matches binomial")
}

pub fn vector_form(rng: &mut ChaCha8Rng, dim: usize, k: usize, m: usize) -> VectorValuedForm {
    VectorValuedForm::new((0..m).map(|_| const_form(rng, dim, k + 1)).collect()).expect("valid shape")
}

/// Random element of `P(m)` with no zero component, redrawing until the
/// form is nondegenerate.
pub fn operad_element(rng: &mut ChaCha8Rng, dim: usize, k: usize, m: usize) -> OperadElement {
    loop {
        let w = vector_form(rng, dim, k, m);
        if w.components().iter().any(ConstForm::is_zero) {
            continue;
        }
        if let Ok(e) = OperadElement::new(w) {
            return e;
        }
    }
}

/// Vectors on which every component of `w` is nonzero.
///
/// Panics if some component is the zero form.
pub fn generic_vectors(rng: &mut ChaCha8Rng, w: &OperadElement) -> Vec<Vec<Rational>> {
    assert!(
        !w.components().iter().any(ConstForm::is_zero),
        "a zero component vanishes on every tuple"
    );
    let (dim, count) = (w.form().dim(), w.form().degree());
    loop {
        let vs = vectors(rng, dim, count);
        let values = w.form().evaluate(&vs).expect("shapes match");
        if values.iter().all(|v| !v.is_zero()) {
            return vs;
        }
    }
}

pub fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffle of 1..=n")
}

/// Random invertible matrix with small rational entries.
pub fn invertible_matrix(rng: &mut ChaCha8Rng, n: usize) -> crate::linalg::Matrix {
    loop {
        let m = crate::linalg::Matrix::from_rows((0..n).map(|_| vector(rng, n)).collect());
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Polynomial with up to `max_terms` monomials of total degree ≤ `max_degree`.
pub fn polynomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let count = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        nvars,
        (0..count).map(|_| {
            let mut exps = vec![0u32; nvars];
            let degree = rng.gen_range(0..=max_degree);
            for _ in 0..degree {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            (exps, rational(rng, 5, 4))
        }),
    )
}

pub fn poly_form(rng: &mut ChaCha8Rng, nvars: usize, degree: usize, max_poly_degree: u32) -> PolyForm {
    let mut form = PolyForm::zero(nvars, degree);
    for mi in MultiIndex::all(nvars, degree) {
        if rng.gen_bool(0.4) {
            let coeff = polynomial(rng, nvars, max_poly_degree, 3);
            form = &form + &PolyForm::term(coeff, mi.indices()).expect("valid multi-index");
        }
    }
    form
}

pub fn poly_map(rng: &mut ChaCha8Rng, source: usize, target: usize, max_degree: u32) -> PolyMap {
    PolyMap::new(source, (0..target).map(|_| polynomial(rng, source, max_degree, 3)).collect())
        .expect("polynomials share the source ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_reproduce() {
        let a = operad_element(&mut rng(7), 3, 1, 3);
        let b = operad_element(&mut rng(7), 3, 1, 3);
        assert_eq!(a, b);
        let p = poly_form(&mut rng(11), 4, 2, 3);
        let q = poly_form(&mut rng(11), 4, 2, 3);
        assert_eq!(p, q);
    }

    #[test]
    fn generic_vectors_avoid_zero_components() {
        let mut r = rng(3);
        let w = operad_element(&mut r, 4, 2, 3);
        let vs = generic_vectors(&mut r, &w);
        assert!(w.form().evaluate(&vs).unwrap().iter().all(|v| !v.is_zero()));
    }
}
