//! The non-unital operad of ℝᵐ-valued k-plectic forms on a fixed ℝⁿ.
//!
//! `P(m)` is the set of nondegenerate ℝᵐ-valued forms of a fixed degree, for
//! `m ≥ 2`. The partial composition `β ∘ᵢ α` splices the components of `α` into
//! slot `i` of `β`. `Σ_m` acts on the right by reindexing components:
//! `(w·σ)_j = w_{σ(j)}`.
//!
//! Entropy is the Shannon entropy (in nats) of the squared component values
//! `A_j = α_j(v₁,…,v_{k+1})²` normalised by their sum. Values and squares are
//! exact; only the weights are rounded to `f64` before taking logarithms.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exterior::ConstForm;
use crate::plectic::{cross_product_form, FormError, VectorValuedForm};
use crate::rational::{self, Rational};

/// Slack allowed when testing the doubling inequality numerically.
pub const INEQUALITY_EPSILON: f64 = 1e-9;
/// Tolerance for the chain-rule residual.
pub const CHAIN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperadError {
    #[error("operad elements need arity at least 2, found {0}")]
    ArityTooSmall(usize),
    #[error("form is degenerate and therefore not an element of P({0})")]
    Degenerate(usize),
    #[error("composition produced a degenerate form of arity {0}")]
    CompositionDegenerate(usize),
    #[error("slot {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("operands live on different spaces: (n={left_dim}, k={left_k}) vs (n={right_dim}, k={right_k})")]
    ShapeMismatch {
        left_dim: usize,
        left_k: usize,
        right_dim: usize,
        right_k: usize,
    },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("permutation of {found} letters cannot act on arity {expected}")]
    PermutationSize { expected: usize, found: usize },
    #[error("inconsistent block data: {0}")]
    BlockMismatch(String),
    #[error("component {0} evaluates to zero")]
    ZeroComponent(usize),
    #[error("chain hypothesis violated: B_i = {b_i} but A = {a}")]
    HypothesisViolated { b_i: String, a: String },
    #[error("squared component values must be positive")]
    NonPositive,
    #[error("x = {0} is outside the curve domain")]
    CurveDomain(f64),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A permutation of `{1, …, n}`, stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[j-1] = σ(j)`, 1-based.
    pub fn new(images: Vec<usize>) -> Result<Self, OperadError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(OperadError::InvalidPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, OperadError> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(OperadError::InvalidPermutation(vec![a, b]));
        }
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// σ(j), 1-based.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (j, &x) in self.images.iter().enumerate() {
            images[x - 1] = j + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| x == j + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Promotes `σ ∈ Σ_k` to a permutation of `n₁ + … + n_k` letters that moves
/// whole blocks and preserves the order inside each block.
///
/// `blocks[b]` is the size of block `b+1` in the domain layout. The letter at
/// offset `t` of domain block `b` is sent to offset `t` of block `σ(b)` in the
/// codomain layout, whose block `c` has size `blocks[σ⁻¹(c)]`.
pub fn block_promote(sigma: &Permutation, blocks: &[usize]) -> Result<Permutation, OperadError> {
    if sigma.len() != blocks.len() {
        return Err(OperadError::BlockMismatch(format!(
            "{} blocks for a permutation of {} letters",
            blocks.len(),
            sigma.len()
        )));
    }
    if blocks.contains(&0) {
        return Err(OperadError::BlockMismatch("empty block".into()));
    }
    let inv = sigma.inverse();
    // start offsets of the codomain blocks
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for c in 1..=blocks.len() {
        starts.push(acc);
        acc += blocks[inv.apply(c) - 1];
    }
    let mut images = Vec::with_capacity(acc);
    for (b, &size) in blocks.iter().enumerate() {
        let start = starts[sigma.apply(b + 1) - 1];
        images.extend((1..=size).map(|t| start + t));
    }
    Permutation::new(images)
}

/// Promotes `σ ∈ Σ_q` to `Σ_total`, acting as σ on the letters
/// `position, …, position + q − 1` and fixing the rest.
pub fn embed_promote(sigma: &Permutation, position: usize, total: usize) -> Result<Permutation, OperadError> {
    let q = sigma.len();
    if position == 0 || position + q - 1 > total {
        return Err(OperadError::BlockMismatch(format!(
            "a block of {q} letters at position {position} does not fit in {total}"
        )));
    }
    let mut images: Vec<usize> = (1..=total).collect();
    for j in 1..=q {
        images[position + j - 2] = position - 1 + sigma.apply(j);
    }
    Permutation::new(images)
}

/// Element of `P(m)`: a nondegenerate ℝᵐ-valued form with `m ≥ 2`.
///
/// Each component carries a positive radicand `r_j`; the element represents
/// the form whose j-th component is `√r_j · ω_j`. Radicands are 1 except after
/// [`normalize_for_chain`] rescales by a non-square ratio, which keeps squared
/// evaluations exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperadElement {
    form: VectorValuedForm,
    radicands: Vec<Rational>,
}

impl OperadElement {
    pub fn new(form: VectorValuedForm) -> Result<Self, OperadError> {
        if form.arity() < 2 {
            return Err(OperadError::ArityTooSmall(form.arity()));
        }
        if !form.is_nondegenerate() {
            return Err(OperadError::Degenerate(form.arity()));
        }
        let radicands = vec![Rational::one(); form.arity()];
        Ok(OperadElement { form, radicands })
    }

    /// `γ^(q) = (γ, …, γ)`.
    pub fn constant_stack(gamma: ConstForm, q: usize) -> Result<Self, OperadError> {
        OperadElement::new(VectorValuedForm::new(vec![gamma; q])?)
    }

    pub fn arity(&self) -> usize {
        self.form.arity()
    }

    pub fn form(&self) -> &VectorValuedForm {
        &self.form
    }

    pub fn components(&self) -> &[ConstForm] {
        self.form.components()
    }

    pub fn radicands(&self) -> &[Rational] {
        &self.radicands
    }

    pub fn is_rational(&self) -> bool {
        self.radicands.iter().all(One::is_one)
    }

    /// Exact squares `r_j · ω_j(v…)²` of the evaluated components.
    pub fn squared_values(&self, vectors: &[Vec<Rational>]) -> Result<Vec<Rational>, OperadError> {
        let values = self.form.evaluate(vectors)?;
        Ok(values
            .iter()
            .zip(&self.radicands)
            .map(|(c, r)| r * c * c)
            .collect())
    }

    /// `self ∘ᵢ alpha`.
    pub fn compose(&self, i: usize, alpha: &OperadElement) -> Result<OperadElement, OperadError> {
        compose_at(self, i, alpha)
    }

    /// `self · σ`.
    pub fn act(&self, sigma: &Permutation) -> Result<OperadElement, OperadError> {
        act(sigma, self)
    }

    fn shape(&self) -> (usize, usize) {
        (self.form.dim(), self.form.k())
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, r)) in self.components().iter().zip(&self.radicands).enumerate() {
            if r.is_one() {
                writeln!(f, "ω{} = {}", i + 1, c)?;
            } else {
                writeln!(f, "ω{} = √({}) · [{}]", i + 1, rational::format(r), c)?;
            }
        }
        Ok(())
    }
}

/// `β ∘ᵢ α = (β₁, …, β_{i−1}, α₁, …, α_q, β_{i+1}, …, β_p)`.
///
/// The result is re-checked for nondegeneracy rather than trusted.
pub fn compose_at(beta: &OperadElement, i: usize, alpha: &OperadElement) -> Result<OperadElement, OperadError> {
    let p = beta.arity();
    if i == 0 || i > p {
        return Err(OperadError::IndexOutOfRange { index: i, arity: p });
    }
    if beta.shape() != alpha.shape() {
        return Err(OperadError::ShapeMismatch {
            left_dim: beta.form.dim(),
            left_k: beta.form.k(),
            right_dim: alpha.form.dim(),
            right_k: alpha.form.k(),
        });
    }
    let b = beta.components();
    let mut components = Vec::with_capacity(p + alpha.arity() - 1);
    components.extend_from_slice(&b[..i - 1]);
    components.extend_from_slice(alpha.components());
    components.extend_from_slice(&b[i..]);
    let mut radicands = Vec::with_capacity(components.len());
    radicands.extend_from_slice(&beta.radicands[..i - 1]);
    radicands.extend_from_slice(&alpha.radicands);
    radicands.extend_from_slice(&beta.radicands[i..]);
    let form = VectorValuedForm::new(components)?;
    if !form.is_nondegenerate() {
        return Err(OperadError::CompositionDegenerate(form.arity()));
    }
    Ok(OperadElement { form, radicands })
}

/// Right action: component j of the result is component σ(j) of `w`.
pub fn act(sigma: &Permutation, w: &OperadElement) -> Result<OperadElement, OperadError> {
    if sigma.len() != w.arity() {
        return Err(OperadError::PermutationSize {
            expected: w.arity(),
            found: sigma.len(),
        });
    }
    let components = sigma
        .images()
        .iter()
        .map(|&s| w.components()[s - 1].clone())
        .collect();
    let radicands = sigma.images().iter().map(|&s| w.radicands[s - 1].clone()).collect();
    Ok(OperadElement {
        form: VectorValuedForm::new(components)?,
        radicands,
    })
}

/// Entropy of an element evaluated on fixed vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub arity: usize,
    /// Rational component values `ω_j(v₁,…,v_{k+1})` before any radical scale.
    #[serde(with = "crate::rational::serde_text_vec")]
    pub values: Vec<Rational>,
    /// Exact squared values `A_j`.
    #[serde(with = "crate::rational::serde_text_vec")]
    pub squares: Vec<Rational>,
    pub weights: Vec<f64>,
    pub entropy_nats: f64,
    pub disorder: f64,
}

impl EntropyReport {
    pub fn total(&self) -> Rational {
        self.squares.iter().fold(Rational::zero(), |acc, a| acc + a)
    }
}

/// Weights `A_j / A` and `−Σ w ln w` for positive squares.
pub fn shannon_from_squares(squares: &[Rational]) -> Result<(Vec<f64>, f64), OperadError> {
    if let Some(j) = squares.iter().position(|a| a <= &Rational::zero()) {
        return Err(OperadError::ZeroComponent(j + 1));
    }
    let total = squares.iter().fold(Rational::zero(), |acc, a| acc + a);
    let weights: Vec<f64> = squares.iter().map(|a| rational::to_f64(&(a / &total))).collect();
    let entropy = -weights.iter().map(|&w| w * w.ln()).sum::<f64>();
    Ok((weights, entropy))
}

/// `E(w) = −Σ_j (A_j/A) ln(A_j/A)`. Fails with the 1-based index of the first
/// component that vanishes on `vectors`.
pub fn entropy(w: &OperadElement, vectors: &[Vec<Rational>]) -> Result<EntropyReport, OperadError> {
    let values = w.form.evaluate(vectors)?;
    if let Some(j) = values.iter().position(Zero::is_zero) {
        return Err(OperadError::ZeroComponent(j + 1));
    }
    let squares: Vec<Rational> = values
        .iter()
        .zip(&w.radicands)
        .map(|(c, r)| r * c * c)
        .collect();
    let (weights, entropy) = shannon_from_squares(&squares)?;
    let arity = w.arity();
    Ok(EntropyReport {
        arity,
        values,
        squares,
        weights,
        entropy_nats: entropy,
        disorder: entropy / (arity as f64).ln(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoublingCheck {
    /// `E(α ∘ᵢ α)`
    pub composed: f64,
    /// `2E(α) + ln 2`
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
}

/// Tests `E(α ∘ᵢ α) ≤ 2E(α) + ln 2` up to [`INEQUALITY_EPSILON`].
pub fn check_entropy_doubling(
    alpha: &OperadElement,
    i: usize,
    vectors: &[Vec<Rational>],
) -> Result<DoublingCheck, OperadError> {
    let single = entropy(alpha, vectors)?.entropy_nats;
    let composed = entropy(&compose_at(alpha, i, alpha)?, vectors)?.entropy_nats;
    let bound = 2.0 * single + std::f64::consts::LN_2;
    let slack = bound - composed;
    Ok(DoublingCheck {
        composed,
        bound,
        slack,
        holds: slack >= -INEQUALITY_EPSILON,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainCheck {
    /// `E(β ∘ᵢ α)`
    pub composed: f64,
    /// `E(β) + (A/B) E(α)`
    pub predicted: f64,
    pub residual: f64,
    pub holds: bool,
}

/// Tests `E(β ∘ᵢ α) = E(β) + (A/B) E(α)` under the exact hypothesis `B_i = A`.
pub fn check_entropy_chain(
    beta: &OperadElement,
    i: usize,
    alpha: &OperadElement,
    vectors: &[Vec<Rational>],
) -> Result<ChainCheck, OperadError> {
    if i == 0 || i > beta.arity() {
        return Err(OperadError::IndexOutOfRange {
            index: i,
            arity: beta.arity(),
        });
    }
    let rb = entropy(beta, vectors)?;
    let ra = entropy(alpha, vectors)?;
    let a = ra.total();
    let b = rb.total();
    let b_i = &rb.squares[i - 1];
    if b_i != &a {
        return Err(OperadError::HypothesisViolated {
            b_i: rational::format(b_i),
            a: rational::format(&a),
        });
    }
    let composed = entropy(&compose_at(beta, i, alpha)?, vectors)?.entropy_nats;
    let predicted = rb.entropy_nats + rational::to_f64(&(&a / &b)) * ra.entropy_nats;
    let residual = (composed - predicted).abs();
    Ok(ChainCheck {
        composed,
        predicted,
        residual,
        holds: residual <= CHAIN_TOLERANCE,
    })
}

/// `α̃ = √(B_i / A) · α`, so that `Σ_j α̃_j(v…)² = B_i` exactly.
///
/// When `B_i / A` is the square of a rational the components are scaled
/// directly; otherwise the ratio is folded into the radicands.
pub fn normalize_for_chain(
    alpha: &OperadElement,
    beta: &OperadElement,
    i: usize,
    vectors: &[Vec<Rational>],
) -> Result<OperadElement, OperadError> {
    if i == 0 || i > beta.arity() {
        return Err(OperadError::IndexOutOfRange {
            index: i,
            arity: beta.arity(),
        });
    }
    let ra = entropy(alpha, vectors)?;
    let rb = entropy(beta, vectors)?;
    let ratio = &rb.squares[i - 1] / ra.total();
    if ratio.is_one() {
        return Ok(alpha.clone());
    }
    Ok(match rational::exact_sqrt(&ratio) {
        Some(root) => OperadElement {
            form: alpha.form.scale(&root),
            radicands: alpha.radicands.clone(),
        },
        None => OperadElement {
            form: alpha.form.clone(),
            radicands: alpha.radicands.iter().map(|r| r * &ratio).collect(),
        },
    })
}

/// `((ω ∘₁ ω) ∘₁ ω) …`, with `ω` the cross-product form, applied `j` times.
pub fn iterated_cross_stack(j: usize) -> Result<OperadElement, OperadError> {
    let omega = OperadElement::new(cross_product_form())?;
    let mut acc = omega.clone();
    for _ in 0..j {
        acc = compose_at(&acc, 1, &omega)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IteratedEntropy {
    pub j: usize,
    pub entropy: f64,
    pub disorder: f64,
}

/// Closed-form entropy of the j-fold iterated cross-product stack with
/// squared component values `(c₁², c₂², c₃²)`:
///
/// `E = −(1/S)[c₁² ln(c₁²/S) + (j+1)c₂² ln(c₂²/S) + (j+1)c₃² ln(c₃²/S)]`,
/// `S = c₁² + (j+1)(c₂² + c₃²)`, and `D = E / ln(3 + 2j)`.
pub fn iterated_cross_entropy(j: usize, c_squared: &[Rational; 3]) -> Result<IteratedEntropy, OperadError> {
    if c_squared.iter().any(|c| c <= &Rational::zero()) {
        return Err(OperadError::NonPositive);
    }
    let reps = rational::int(j as i64 + 1);
    let [c1, c2, c3] = c_squared;
    let s = c1 + &reps * (c2 + c3);
    let term = |c: &Rational, mult: &Rational| -> f64 {
        rational::to_f64(&(mult * c / &s)) * rational::to_f64(&(c / &s)).ln()
    };
    let one = Rational::one();
    let entropy = -(term(c1, &one) + term(c2, &reps) + term(c3, &reps));
    let disorder = entropy / ((3 + 2 * j) as f64).ln();
    Ok(IteratedEntropy { j, entropy, disorder })
}

/// Entropy of the explicitly stacked element on the vectors `u, v`.
pub fn iterated_cross_entropy_from_vectors(
    j: usize,
    u: &[Rational],
    v: &[Rational],
) -> Result<EntropyReport, OperadError> {
    entropy(&iterated_cross_stack(j)?, &[u.to_vec(), v.to_vec()])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub x: f64,
    pub entropy: f64,
    pub disorder: f64,
}

/// `y(x) = (10 ln(0.1x + 1.1) + (x + 1) ln(2x + 22)) / (x + 11)`.
pub fn curve_entropy(x: f64) -> Result<f64, OperadError> {
    if x.is_nan() || x <= -1.1 {
        return Err(OperadError::CurveDomain(x));
    }
    Ok((10.0 * (0.1 * x + 1.1).ln() + (x + 1.0) * (2.0 * x + 22.0).ln()) / (x + 11.0))
}

/// `curve_entropy(x) / ln(2x + 3)`, defined for `x > −1`.
pub fn curve_disorder(x: f64) -> Result<f64, OperadError> {
    if x.is_nan() || 2.0 * x + 3.0 <= 1.0 {
        return Err(OperadError::CurveDomain(x));
    }
    Ok(curve_entropy(x)? / (2.0 * x + 3.0).ln())
}

pub fn curve_samples(xs: &[f64]) -> Result<Vec<CurveSample>, OperadError> {
    xs.iter()
        .map(|&x| {
            Ok(CurveSample {
                x,
                entropy: curve_entropy(x)?,
                disorder: curve_disorder(x)?,
            })
        })
        .collect()
}
