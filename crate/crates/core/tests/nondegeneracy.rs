use num_traits::Zero;
use plectic_core::exterior::{unit_vector, ConstForm, MultiIndex};
use plectic_core::plectic::{
    all_basis_form, cross_product_form, direct_sum_form, standard_symplectic, VectorValuedForm,
};
use plectic_core::rational::{frac, int, Rational};
use plectic_core::sample;
use rand::Rng;

/// Rank by plain Gaussian elimination over the rationals.
fn naive_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            let f = &rows[r][c] / &rows[rank][c];
            let pivot = rows[rank].clone();
            for (x, p) in rows[r].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `v ↦ (v⌟ω_j)` as a matrix built from evaluations on basis vectors.
fn oracle_nondegenerate(w: &VectorValuedForm) -> bool {
    let n = w.dim();
    let mut rows = Vec::new();
    for c in w.components() {
        for mi in MultiIndex::all(n, w.k()) {
            let row = (1..=n)
                .map(|a| {
                    let mut vs = vec![unit_vector(n, a)];
                    vs.extend(mi.indices().iter().map(|&i| unit_vector(n, i)));
                    c.evaluate(&vs).unwrap()
                })
                .collect();
            rows.push(row);
        }
    }
    naive_rank(rows) == n
}

#[test]
fn agrees_with_evaluation_oracle_on_random_forms() {
    let mut rng = sample::rng(2024);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..400 {
        let dim = rng.gen_range(2..=5);
        let k = rng.gen_range(1..dim);
        let m = rng.gen_range(1..=3);
        let w = sample::vector_form(&mut rng, dim, k, m);
        let expected = oracle_nondegenerate(&w);
        assert_eq!(w.is_nondegenerate(), expected, "{w:?}");
        if expected {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 50 && no > 50, "corpus too lopsided: {yes} vs {no}");
}

#[test]
fn kernel_vectors_are_annihilated_by_every_component() {
    let mut rng = sample::rng(99);
    for _ in 0..100 {
        let dim = rng.gen_range(3..=5);
        let w = sample::vector_form(&mut rng, dim, 1, 1);
        let kernel = w.contraction_matrix().kernel();
        assert_eq!(kernel.is_empty(), w.is_nondegenerate());
        for v in kernel {
            assert!(v.iter().any(|x| !x.is_zero()));
            assert!(w.components()[0].contract(&v).unwrap().is_zero());
        }
    }
}

#[test]
fn cross_product_form_is_nondegenerate_but_its_components_are_not() {
    let w = cross_product_form();
    assert!(w.is_nondegenerate());
    assert_eq!(w.contraction_matrix().rows(), 9);
    for c in w.components() {
        assert!(!VectorValuedForm::new(vec![c.clone()]).unwrap().is_nondegenerate());
    }
    for drop in 0..3 {
        let mut pair = w.components().to_vec();
        pair.remove(drop);
        assert!(VectorValuedForm::new(pair).unwrap().is_nondegenerate());
    }
}

#[test]
fn symplectic_and_volume_forms() {
    for half in 1..=3 {
        let f = VectorValuedForm::new(vec![standard_symplectic(2 * half)]).unwrap();
        assert!(f.is_nondegenerate());
    }
    for n in 2..=5 {
        let vol = ConstForm::basis(n, &(1..=n).collect::<Vec<_>>()).unwrap();
        assert!(VectorValuedForm::new(vec![vol]).unwrap().is_nondegenerate());
    }
    // rank-2 form on ℝ³ has a kernel line
    let degenerate = VectorValuedForm::new(vec![ConstForm::basis(3, &[1, 2]).unwrap()]).unwrap();
    assert!(!degenerate.is_nondegenerate());
    assert_eq!(degenerate.contraction_matrix().kernel(), vec![vec![int(0), int(0), int(1)]]);
}

#[test]
fn all_basis_forms_are_nondegenerate() {
    for n in 2..=6 {
        for k in 1..n {
            assert!(all_basis_form(n, k).unwrap().is_nondegenerate(), "n={n} k={k}");
        }
    }
}

#[test]
fn direct_sums_of_two_forms() {
    let pieces = vec![ConstForm::basis(4, &[1, 2]).unwrap(), ConstForm::basis(4, &[3, 4]).unwrap()];
    for p in &pieces {
        assert!(!VectorValuedForm::new(vec![p.clone()]).unwrap().is_nondegenerate());
    }
    let w = direct_sum_form(pieces).unwrap();
    assert_eq!((w.dim(), w.arity()), (4, 2));
    assert_eq!(w.contraction_matrix().rows(), 8);
    assert_eq!(w.contraction_matrix().rank(), 4);
    assert!(w.is_nondegenerate());

    let copies = vec![standard_symplectic(4).scale(&frac(3, 2)); 3];
    assert!(direct_sum_form(copies).unwrap().is_nondegenerate());
    assert!(direct_sum_form(vec![ConstForm::basis(3, &[1, 2, 3]).unwrap()]).is_err());
}

#[test]
fn invariant_under_change_of_basis() {
    let mut rng = sample::rng(5);
    for _ in 0..100 {
        let dim = rng.gen_range(2..=4);
        let k = rng.gen_range(1..dim);
        let m = rng.gen_range(1..=3);
        let w = sample::vector_form(&mut rng, dim, k, m);
        let a = sample::invertible_matrix(&mut rng, dim);
        assert_eq!(w.pullback_linear(&a).unwrap().is_nondegenerate(), w.is_nondegenerate());
    }
}

#[test]
fn adding_components_preserves_nondegeneracy() {
    let mut rng = sample::rng(6);
    for _ in 0..100 {
        let dim = rng.gen_range(3..=4);
        let k = rng.gen_range(1..dim);
        let base = sample::operad_element(&mut rng, dim, k, 2);
        let mut comps = base.components().to_vec();
        comps.push(sample::const_form(&mut rng, dim, k + 1));
        assert!(VectorValuedForm::new(comps).unwrap().is_nondegenerate());
    }
}

#[test]
fn shape_errors() {
    assert!(VectorValuedForm::new(vec![]).is_err());
    assert!(VectorValuedForm::new(vec![ConstForm::basis(3, &[1]).unwrap()]).is_err());
    assert!(VectorValuedForm::new(vec![
        ConstForm::basis(3, &[1, 2]).unwrap(),
        ConstForm::basis(4, &[1, 2]).unwrap(),
    ])
    .is_err());
}
