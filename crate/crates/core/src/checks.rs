//! Seeded property suites over random corpora.
//!
//! Each suite draws every trial from a [`ChaCha8Rng`] derived from the suite
//! seed and the property's position, so reports are reproducible byte for byte.

use num_traits::Zero;
use rand::Rng;

use crate::deform::{
    canonical_omega, canonical_omega_closed_form, omega_nondegenerate_at, poincare_potential,
    verify_local_presentation, CanonicalChart, PolyForm, VectorPolyForm,
};
use crate::operad::{
    act, block_promote, check_entropy_chain, check_entropy_doubling, compose_at, embed_promote, entropy,
    normalize_for_chain, OperadElement, OperadError,
};
use crate::plectic::{cross_product_form, VectorValuedForm};
use crate::rational::Rational;
use crate::sample::{self, ChaCha8Rng};

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Worst observed slack or residual, for numeric properties.
    pub worst: Option<f64>,
    pub note: String,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Nondeg,
    Operad,
    Entropy,
    Poincare,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Nondeg, Suite::Operad, Suite::Entropy, Suite::Poincare];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Nondeg => "nondeg",
            Suite::Operad => "operad",
            Suite::Entropy => "entropy",
            Suite::Poincare => "poincare",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn run(suite: Suite, seed: u64) -> SuiteReport {
    let properties = match suite {
        Suite::Nondeg => nondeg_suite(seed),
        Suite::Operad => operad_suite(seed),
        Suite::Entropy => entropy_suite(seed),
        Suite::Poincare => poincare_suite(seed),
    };
    SuiteReport { suite, seed, properties }
}

fn property_rng(seed: u64, index: u64) -> ChaCha8Rng {
    sample::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index))
}

struct Tally {
    name: &'static str,
    trials: usize,
    failures: usize,
    worst: Option<f64>,
    note: String,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            trials: 0,
            failures: 0,
            worst: None,
            note: String::new(),
        }
    }

    fn record(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn track_min(&mut self, v: f64) {
        self.worst = Some(self.worst.map_or(v, |w| w.min(v)));
    }

    fn track_max(&mut self, v: f64) {
        self.worst = Some(self.worst.map_or(v, |w| w.max(v)));
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    fn finish(self) -> PropertyOutcome {
        PropertyOutcome {
            name: self.name,
            trials: self.trials,
            failures: self.failures,
            worst: self.worst,
            note: self.note,
        }
    }
}

/// Small random shape `(dim, k)` with `dim ∈ {3, 4}`.
fn shape(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let dim = rng.gen_range(3..=4);
    (dim, rng.gen_range(1..dim))
}

fn nondeg_suite(seed: u64) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();

    let mut fixed = Tally::new("cross_product_decisions");
    fixed.record(cross_product_form().is_nondegenerate());
    for c in cross_product_form().into_components() {
        fixed.record(!VectorValuedForm::new(vec![c]).expect("valid shape").is_nondegenerate());
    }
    out.push(fixed.finish());

    // kernel vectors contract every component to zero, and exist iff degenerate
    let mut rng = property_rng(seed, 1);
    let mut t = Tally::new("kernel_oracle");
    let mut degenerate = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(2..=5);
        let k = rng.gen_range(1..dim);
        let m = rng.gen_range(1..=3);
        let w = sample::vector_form(&mut rng, dim, k, m);
        let kernel = w.contraction_matrix().kernel();
        let kills = kernel.iter().all(|v| {
            w.components()
                .iter()
                .all(|c| c.contract(v).expect("degree ≥ 2").is_zero())
        });
        if !kernel.is_empty() {
            degenerate += 1;
        }
        t.record(kills && (kernel.is_empty() == w.is_nondegenerate()));
    }
    out.push(t.note(format!("{degenerate} degenerate forms in corpus")).finish());

    let mut rng = property_rng(seed, 2);
    let mut t = Tally::new("basis_change_invariance");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let m = rng.gen_range(1..=3);
        let w = sample::vector_form(&mut rng, dim, k, m);
        let a = sample::invertible_matrix(&mut rng, dim);
        let moved = w.pullback_linear(&a).expect("square matrix");
        t.record(moved.is_nondegenerate() == w.is_nondegenerate());
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 3);
    let mut t = Tally::new("superset_stays_nondegenerate");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let base = sample::operad_element(&mut rng, dim, k, 2);
        let count = rng.gen_range(1..=2);
        let extra = sample::vector_form(&mut rng, dim, k, count);
        let mut comps = base.components().to_vec();
        comps.extend(extra.into_components());
        let pos = rng.gen_range(0..comps.len());
        comps.rotate_left(pos);
        t.record(VectorValuedForm::new(comps).expect("valid shape").is_nondegenerate());
    }
    out.push(t.finish());
    out
}

fn operad_suite(seed: u64) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();
    let mut membership = Tally::new("composition_membership");

    let check_member = |e: &OperadElement, tally: &mut Tally| tally.record(e.form().is_nondegenerate());

    let mut rng = property_rng(seed, 1);
    let mut t = Tally::new("sequential_composition");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let (l, m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5), rng.gen_range(2..=5));
        let f = sample::operad_element(&mut rng, dim, k, l);
        let g = sample::operad_element(&mut rng, dim, k, m);
        let h = sample::operad_element(&mut rng, dim, k, n);
        let i = rng.gen_range(1..l);
        let kk = rng.gen_range(i + 1..=l);
        let lhs = compose_at(&f, kk, &h).and_then(|fh| {
            check_member(&fh, &mut membership);
            compose_at(&fh, i, &g)
        });
        let rhs = compose_at(&f, i, &g).and_then(|fg| {
            check_member(&fg, &mut membership);
            compose_at(&fg, kk - 1 + m, &h)
        });
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                check_member(&a, &mut membership);
                check_member(&b, &mut membership);
                t.record(a == b);
            }
            _ => t.record(false),
        }
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 2);
    let mut t = Tally::new("nested_composition");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let (l, m, n) = (rng.gen_range(2..=5), rng.gen_range(2..=5), rng.gen_range(2..=5));
        let f = sample::operad_element(&mut rng, dim, k, l);
        let g = sample::operad_element(&mut rng, dim, k, m);
        let h = sample::operad_element(&mut rng, dim, k, n);
        let i = rng.gen_range(1..=l);
        let j = rng.gen_range(1..=m);
        let lhs = compose_at(&g, j, &h).and_then(|gh| {
            check_member(&gh, &mut membership);
            compose_at(&f, i, &gh)
        });
        let rhs = compose_at(&f, i, &g).and_then(|fg| {
            check_member(&fg, &mut membership);
            compose_at(&fg, i - 1 + j, &h)
        });
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                check_member(&a, &mut membership);
                check_member(&b, &mut membership);
                t.record(a == b);
            }
            _ => t.record(false),
        }
    }
    out.push(t.finish());

    // β ∘ᵢ (α σ) = (β ∘ᵢ α) σ′
    let mut rng = property_rng(seed, 3);
    let mut t = Tally::new("equivariance_inner");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let (p, q) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let beta = sample::operad_element(&mut rng, dim, k, p);
        let alpha = sample::operad_element(&mut rng, dim, k, q);
        let i = rng.gen_range(1..=p);
        let sigma = sample::permutation(&mut rng, q);
        let ok = (|| -> Result<bool, OperadError> {
            let lhs = compose_at(&beta, i, &act(&sigma, &alpha)?)?;
            let plain = compose_at(&beta, i, &alpha)?;
            check_member(&lhs, &mut membership);
            check_member(&plain, &mut membership);
            let promoted = embed_promote(&sigma, i, p + q - 1)?;
            Ok(lhs == act(&promoted, &plain)?)
        })();
        t.record(ok.unwrap_or(false));
    }
    out.push(t.finish());

    // (β σ) ∘ᵢ α = (β ∘_{σ(i)} α) σ″ for the right action (β σ)_j = β_{σ(j)}
    let mut rng = property_rng(seed, 4);
    let mut t = Tally::new("equivariance_outer");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let (p, q) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let beta = sample::operad_element(&mut rng, dim, k, p);
        let alpha = sample::operad_element(&mut rng, dim, k, q);
        let i = rng.gen_range(1..=p);
        let sigma = sample::permutation(&mut rng, p);
        let ok = (|| -> Result<bool, OperadError> {
            let lhs = compose_at(&act(&sigma, &beta)?, i, &alpha)?;
            let plain = compose_at(&beta, sigma.apply(i), &alpha)?;
            check_member(&lhs, &mut membership);
            check_member(&plain, &mut membership);
            let blocks: Vec<usize> = (1..=p).map(|b| if b == i { q } else { 1 }).collect();
            let promoted = block_promote(&sigma, &blocks)?;
            Ok(lhs == act(&promoted, &plain)?)
        })();
        t.record(ok.unwrap_or(false));
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 5);
    let mut t = Tally::new("right_action");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let m = rng.gen_range(2..=5);
        let w = sample::operad_element(&mut rng, dim, k, m);
        let s = sample::permutation(&mut rng, m);
        let u = sample::permutation(&mut rng, m);
        let lhs = act(&s.compose(&u), &w);
        let rhs = act(&s, &w).and_then(|sw| act(&u, &sw));
        t.record(matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b));
    }
    out.push(t.finish());

    out.push(membership.note("every composed element re-checked with is_nondegenerate").finish());
    out
}

fn entropy_suite(seed: u64) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();

    let mut rng = property_rng(seed, 1);
    let mut t = Tally::new("doubling_bound");
    for _ in 0..1000 {
        let (dim, k) = shape(&mut rng);
        let q = rng.gen_range(2..=5);
        let alpha = sample::operad_element(&mut rng, dim, k, q);
        let vectors = sample::generic_vectors(&mut rng, &alpha);
        let i = rng.gen_range(1..=q);
        match check_entropy_doubling(&alpha, i, &vectors) {
            Ok(c) => {
                t.track_min(c.slack);
                t.record(c.holds);
            }
            Err(_) => t.record(false),
        }
    }
    out.push(t.note("worst = minimum slack").finish());

    let mut rng = property_rng(seed, 2);
    let mut t = Tally::new("chain_rule");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let (p, q) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        let beta = sample::operad_element(&mut rng, dim, k, p);
        let alpha = sample::operad_element(&mut rng, dim, k, q);
        let joint = OperadElement::new(
            VectorValuedForm::new(beta.components().iter().chain(alpha.components()).cloned().collect())
                .expect("same shape"),
        )
        .expect("superset of a nondegenerate form");
        let vectors = sample::generic_vectors(&mut rng, &joint);
        let i = rng.gen_range(1..=p);
        let result = normalize_for_chain(&alpha, &beta, i, &vectors)
            .and_then(|scaled| check_entropy_chain(&beta, i, &scaled, &vectors));
        match result {
            Ok(c) => {
                t.track_max(c.residual);
                t.record(c.holds);
            }
            Err(_) => t.record(false),
        }
    }
    out.push(t.note("worst = maximum residual").finish());

    let mut rng = property_rng(seed, 3);
    let mut t = Tally::new("max_entropy");
    for q in 2..=10 {
        let single = crate::plectic::standard_symplectic(4);
        let stack = OperadElement::constant_stack(single, q).expect("nondegenerate seed");
        let vectors = sample::generic_vectors(&mut rng, &stack);
        match entropy(&stack, &vectors) {
            Ok(r) => {
                let err = (r.entropy_nats - (q as f64).ln()).abs();
                t.track_max(err);
                t.record(err <= 1e-12);
            }
            Err(_) => t.record(false),
        }
    }
    out.push(t.note("worst = max |E - ln q|").finish());

    let mut rng = property_rng(seed, 4);
    let mut t = Tally::new("entropy_range");
    for _ in 0..200 {
        let (dim, k) = shape(&mut rng);
        let m = rng.gen_range(2..=6);
        let w = sample::operad_element(&mut rng, dim, k, m);
        let vectors = sample::generic_vectors(&mut rng, &w);
        let ok = entropy(&w, &vectors).is_ok_and(|r| {
            let sum: f64 = r.weights.iter().sum();
            (sum - 1.0).abs() <= 1e-12
                && r.entropy_nats >= -1e-15
                && r.entropy_nats <= (m as f64).ln() + 1e-12
                && (r.disorder - r.entropy_nats / (m as f64).ln()).abs() <= 1e-15
        });
        t.record(ok);
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 5);
    let mut t = Tally::new("scale_invariance");
    for _ in 0..100 {
        let (dim, k) = shape(&mut rng);
        let m = rng.gen_range(2..=5);
        let w = sample::operad_element(&mut rng, dim, k, m);
        let vectors = sample::generic_vectors(&mut rng, &w);
        let lambda = sample::nonzero_rational(&mut rng, 7, 5);
        let scaled = OperadElement::new(w.form().scale(&lambda)).expect("scaling keeps nondegeneracy");
        let ok = match (entropy(&w, &vectors), entropy(&scaled, &vectors)) {
            (Ok(a), Ok(b)) => {
                let exact_weights = a
                    .squares
                    .iter()
                    .zip(&b.squares)
                    .all(|(x, y)| x / a.total() == y / b.total());
                let diff = (a.entropy_nats - b.entropy_nats).abs();
                t.track_max(diff);
                exact_weights && diff <= 1e-12
            }
            _ => false,
        };
        t.record(ok);
    }
    out.push(t.finish());
    out
}

fn random_closed_form(rng: &mut ChaCha8Rng, nvars: usize) -> PolyForm {
    let degree = rng.gen_range(0..=nvars.saturating_sub(2));
    sample::poly_form(rng, nvars, degree, 3).exterior_derivative()
}

fn poincare_suite(seed: u64) -> Vec<PropertyOutcome> {
    let mut out = Vec::new();

    let mut rng = property_rng(seed, 1);
    let mut t = Tally::new("d_squared_zero");
    for _ in 0..100 {
        let nvars = rng.gen_range(2..=6);
        let degree = rng.gen_range(0..=nvars - 2);
        let w = sample::poly_form(&mut rng, nvars, degree, 3);
        t.record(w.exterior_derivative().exterior_derivative().is_zero());
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 2);
    let mut t = Tally::new("pullback_commutes_with_d");
    for _ in 0..50 {
        let target = rng.gen_range(2..=4);
        let source = rng.gen_range(2..=4);
        let degree = rng.gen_range(0..target);
        let w = sample::poly_form(&mut rng, target, degree, 2);
        let f = sample::poly_map(&mut rng, source, target, 2);
        let ok = match (f.pullback(&w.exterior_derivative()), f.pullback(&w)) {
            (Ok(a), Ok(b)) => a == b.exterior_derivative(),
            _ => false,
        };
        t.record(ok);
    }
    out.push(t.finish());

    let mut rng = property_rng(seed, 3);
    let mut t = Tally::new("potential_exactness");
    for _ in 0..50 {
        let nvars = rng.gen_range(2..=6);
        let w = random_closed_form(&mut rng, nvars);
        let center = sample::vector(&mut rng, nvars);
        let ok = poincare_potential(&w, &center).is_ok_and(|k| k.exterior_derivative() == w);
        t.record(ok);
    }
    out.push(t.finish());

    let mut t = Tally::new("canonical_omega");
    for n in 2..=5 {
        for k in 1..n {
            for m in 1..=3 {
                let chart = CanonicalChart::new(n, k, m).expect("valid chart");
                let origin = vec![Rational::zero(); chart.nvars()];
                let ok = canonical_omega(&chart) == canonical_omega_closed_form(&chart)
                    && omega_nondegenerate_at(&chart, &origin).unwrap_or(false);
                t.record(ok);
            }
        }
    }
    out.push(t.note("Ω = dΘ matches the closed form and is nondegenerate").finish());

    let mut rng = property_rng(seed, 5);
    let mut t = Tally::new("local_presentation_random");
    let shapes = [(3, 1, 2), (3, 1, 3), (4, 1, 1), (4, 1, 2), (4, 2, 2)];
    let mut attempts = 0;
    while t.trials < 20 && attempts < 1000 {
        attempts += 1;
        let (n, k, m) = shapes[t.trials % shapes.len()];
        let alpha = VectorPolyForm::new((0..m).map(|_| sample::poly_form(&mut rng, n, k, 2)).collect())
            .expect("common shape");
        let omega = alpha.exterior_derivative();
        let center = sample::vector(&mut rng, n);
        let Ok(at_center) = omega.evaluate_at(&center) else { continue };
        if !VectorValuedForm::new(at_center).is_ok_and(|f| f.is_nondegenerate()) {
            continue;
        }
        let ok = verify_local_presentation(&omega, &center, None).is_ok_and(|r| r.holds() && r.nondegenerate_at_center);
        t.record(ok);
    }
    out.push(t.note(format!("{attempts} candidates drawn")).finish());
    out
}
