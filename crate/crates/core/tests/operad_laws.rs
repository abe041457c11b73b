use plectic_core::checks::{self, Suite};
use plectic_core::operad::{
    act, block_promote, check_entropy_chain, check_entropy_doubling, compose_at, curve_disorder,
    curve_entropy, embed_promote, entropy, iterated_cross_entropy, iterated_cross_entropy_from_vectors,
    iterated_cross_stack, normalize_for_chain, OperadElement, OperadError, Permutation,
};
use plectic_core::plectic::{cross_product_form, standard_symplectic, VectorValuedForm};
use plectic_core::rational::{frac, int, parse, Rational};
use plectic_core::sample;
use rand::Rng;

fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn property_suites_hold_for_several_seeds() {
    for seed in [1, 2, 3] {
        for suite in [Suite::Operad, Suite::Entropy] {
            let report = checks::run(suite, seed);
            for p in &report.properties {
                assert!(p.passed(), "seed {seed} {}: {}/{} failed", p.name, p.failures, p.trials);
            }
        }
    }
}

#[test]
fn block_promotion_examples() {
    assert_eq!(block_promote(&perm(&[2, 1]), &[2, 3]).unwrap(), perm(&[4, 5, 1, 2, 3]));
    assert_eq!(block_promote(&perm(&[1, 2, 3]), &[2, 1, 2]).unwrap(), Permutation::identity(5));
    assert_eq!(block_promote(&perm(&[2, 3, 1]), &[1, 1, 1]).unwrap(), perm(&[2, 3, 1]));
    assert!(block_promote(&perm(&[2, 1]), &[1]).is_err());
    assert_eq!(embed_promote(&perm(&[2, 1]), 2, 4).unwrap(), perm(&[1, 3, 2, 4]));
    assert!(embed_promote(&perm(&[2, 1]), 4, 4).is_err());
}

#[test]
fn block_promotion_moves_blocks_intact() {
    let mut rng = sample::rng(17);
    for _ in 0..50 {
        let p = rng.gen_range(1..=5);
        let sigma = sample::permutation(&mut rng, p);
        let blocks: Vec<usize> = (0..p).map(|_| rng.gen_range(1..=3)).collect();
        let big = block_promote(&sigma, &blocks).unwrap();
        // codomain block c has the size of domain block σ⁻¹(c)
        let inv = sigma.inverse();
        let start = |c: usize| -> usize { (1..c).map(|d| blocks[inv.apply(d) - 1]).sum() };
        let mut offset = 0;
        for b in 1..=p {
            for t in 1..=blocks[b - 1] {
                assert_eq!(big.apply(offset + t), start(sigma.apply(b)) + t);
            }
            offset += blocks[b - 1];
        }
    }
}

#[test]
fn composition_stacks_components() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let c = compose_at(&w, 2, &w).unwrap();
    assert_eq!(c.arity(), 5);
    let comps = cross_product_form().into_components();
    let expected = [&comps[0], &comps[0], &comps[1], &comps[2], &comps[2]];
    for (got, want) in c.components().iter().zip(expected) {
        assert_eq!(got, want);
    }
    assert!(matches!(compose_at(&w, 4, &w), Err(OperadError::IndexOutOfRange { index: 4, arity: 3 })));
}

#[test]
fn composition_rejects_mismatched_shapes() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let s = OperadElement::constant_stack(standard_symplectic(4), 2).unwrap();
    assert!(compose_at(&w, 1, &s).is_err());
}

#[test]
fn arity_one_is_rejected() {
    let single = VectorValuedForm::new(vec![standard_symplectic(2)]).unwrap();
    assert!(matches!(OperadElement::new(single), Err(OperadError::ArityTooSmall(_))));
}

#[test]
fn right_action_permutes_components() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let s = perm(&[3, 1, 2]);
    let moved = act(&s, &w).unwrap();
    for j in 1..=3 {
        assert_eq!(moved.components()[j - 1], w.components()[s.apply(j) - 1]);
    }
    assert!(act(&perm(&[2, 1]), &w).is_err());
}

#[test]
fn outer_equivariance_on_the_cross_product() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let sigma = perm(&[2, 3, 1]);
    let lhs = compose_at(&act(&sigma, &w).unwrap(), 1, &w).unwrap();
    let blocks = [3, 1, 1];
    let rhs = act(&block_promote(&sigma, &blocks).unwrap(), &compose_at(&w, sigma.apply(1), &w).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn entropy_of_the_cross_product_form() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    assert!(matches!(
        entropy(&w, &[ints(&[1, 0, 0]), ints(&[0, 1, 0])]),
        Err(OperadError::ZeroComponent(1))
    ));
    let r = entropy(&w, &[ints(&[1, 2, 0]), ints(&[0, 1, 3])]).unwrap();
    assert_eq!(r.values, ints(&[6, -3, 1]));
    assert_eq!(r.squares, ints(&[36, 9, 1]));
    let r = entropy(&w, &[ints(&[1, 1, 0]), ints(&[0, 1, 1])]).unwrap();
    assert!(close(r.entropy_nats, 3f64.ln(), 1e-15));
    assert!(close(r.disorder, 1.0, 1e-15));
}

#[test]
fn entropy_rejects_vanishing_values() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let zero = vec![int(0); 3];
    assert!(entropy(&w, &[zero.clone(), ints(&[1, 2, 3])]).is_err());
}

#[test]
fn doubling_and_chain_on_cross_product() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let vs = [ints(&[1, 2, 0]), ints(&[0, 1, 3])];
    for i in 1..=3 {
        let c = check_entropy_doubling(&w, i, &vs).unwrap();
        assert!(c.holds && c.slack >= 0.0, "slot {i}: {c:?}");
        let scaled = normalize_for_chain(&w, &w, i, &vs).unwrap();
        let c = check_entropy_chain(&w, i, &scaled, &vs).unwrap();
        assert!(c.holds, "slot {i}: {c:?}");
    }
}

#[test]
fn chain_refuses_unnormalised_input() {
    let w = OperadElement::new(cross_product_form()).unwrap();
    let vs = [ints(&[1, 2, 0]), ints(&[0, 1, 3])];
    assert!(matches!(
        check_entropy_chain(&w, 1, &w, &vs),
        Err(OperadError::HypothesisViolated { .. })
    ));
}

#[test]
fn iterated_stack_matches_vector_evaluation() {
    for j in 0..=4 {
        assert_eq!(iterated_cross_stack(j).unwrap().arity(), 3 + 2 * j);
    }
    let u = ints(&[1, 2, 0]);
    let v = ints(&[0, 1, 3]);
    // u × v = (6, -3, 1)
    for j in 0..=3 {
        let r = iterated_cross_entropy_from_vectors(j, &u, &v).unwrap();
        let closed = iterated_cross_entropy(j, &[int(36), int(9), int(1)]).unwrap();
        assert!(close(r.entropy_nats, closed.entropy, 1e-12), "j={j}");
        assert!(close(r.disorder, closed.disorder, 1e-12), "j={j}");
    }
}

#[test]
fn iterated_entropy_table_matches_high_precision_values() {
    let c2 = [int(10), frac(1, 2), frac(1, 2)];
    let expected = [
        (0.36764947740014222308, 0.33464897597846638961),
        (0.68161026905295312512, 0.42350827191717602936),
        (0.95368709682610435821, 0.490098218198354957),
        (1.1923957433509246429, 0.54268268963043926663),
        (1.4040425326261613798, 0.58553121504244348211),
        (1.5934032318284821762, 0.62122210218038443509),
    ];
    for (j, (e, d)) in expected.into_iter().enumerate() {
        let r = iterated_cross_entropy(j, &c2).unwrap();
        assert!(close(r.entropy, e, 1e-12), "j={j}: {} vs {e}", r.entropy);
        assert!(close(r.disorder, d, 1e-12), "j={j}: {} vs {d}", r.disorder);
        assert!(close(curve_entropy(j as f64).unwrap(), e, 1e-12), "curve j={j}");
    }
    let other = [int(9), int(36), int(9)];
    assert!(close(iterated_cross_entropy(0, &other).unwrap().entropy, 0.86756322848146125492, 1e-12));
    assert!(close(iterated_cross_entropy(2, &other).unwrap().entropy, 1.7328679513998632735, 1e-12));
    assert!(iterated_cross_entropy(1, &[int(0), int(1), int(1)]).is_err());
}

#[test]
fn curves_off_the_integer_grid() {
    assert!(close(curve_entropy(2.5).unwrap(), 1.0767759226310024124, 1e-12));
    assert!(close(curve_disorder(2.5).unwrap(), 0.51781976124279510791, 1e-12));
    assert!(curve_entropy(-1.2).is_err());
    assert!(curve_disorder(-1.0).is_err());
}

#[test]
fn decimal_coefficients_parse_exactly() {
    let c2 = [parse("10").unwrap(), parse("0.5").unwrap(), parse("0.5").unwrap()];
    assert_eq!(c2[1], frac(1, 2));
    let r = iterated_cross_entropy(1, &c2).unwrap();
    assert!(close(r.entropy, 0.68161026905295312512, 1e-12));
}

#[test]
fn entropy_is_invariant_under_the_action() {
    let mut rng = sample::rng(8);
    for _ in 0..50 {
        let m = rng.gen_range(2..=5);
        let w = sample::operad_element(&mut rng, 3, 1, m);
        let vs = sample::generic_vectors(&mut rng, &w);
        let sigma = sample::permutation(&mut rng, m);
        let a = entropy(&w, &vs).unwrap();
        let b = entropy(&act(&sigma, &w).unwrap(), &vs).unwrap();
        assert!(close(a.entropy_nats, b.entropy_nats, 1e-12));
        assert_eq!(a.total(), b.total());
    }
}

#[test]
fn zero_component_is_reported() {
    let comps = vec![
        cross_product_form().components()[0].clone(),
        cross_product_form().components()[1].clone(),
        plectic_core::exterior::ConstForm::zero(3, 2),
    ];
    let w = OperadElement::new(VectorValuedForm::new(comps).unwrap()).unwrap();
    let vs = [ints(&[1, 2, 0]), ints(&[0, 1, 3])];
    assert!(matches!(entropy(&w, &vs), Err(OperadError::ZeroComponent(3))));
}
