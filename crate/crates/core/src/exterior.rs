//! Multi-index combinatorics and constant-coefficient alternating forms on ℝⁿ.
//!
//! A degree-d form is stored densely: one coefficient per strictly increasing
//! multi-index `I = (i₁ < … < i_d)` with entries in `1..=n`, ordered
//! lexicographically. The coefficient at rank `r` multiplies
//! `dq_{i₁} ∧ … ∧ dq_{i_d}` where `I = multiindex_at(n, d, r)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("multi-index {indices:?} is not strictly increasing within 1..={dim}")]
    MalformedIndex { indices: Vec<usize>, dim: usize },
    #[error("rank {rank} out of range for degree {degree} on R^{dim} ({count} multi-indices)")]
    RankOutOfRange {
        rank: usize,
        dim: usize,
        degree: usize,
        count: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} argument vectors, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cannot contract a degree-0 form")]
    ContractScalar,
    #[error("degree {degree} exceeds dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientCount { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] rational::ParseRationalError),
}

/// `binomial(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `indices` in place and returns the sign of the sorting permutation,
/// or `None` if an index repeats.
pub fn sort_with_sign(indices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort: each adjacent swap is one transposition
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Strictly increasing tuple of coordinate indices in `1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    dim: usize,
    indices: Vec<usize>,
}

impl MultiIndex {
    pub fn new(dim: usize, indices: Vec<usize>) -> Result<Self, ExteriorError> {
        let valid = indices.iter().all(|&i| (1..=dim).contains(&i))
            && indices.windows(2).all(|w| w[0] < w[1]);
        if !valid {
            return Err(ExteriorError::MalformedIndex { indices, dim });
        }
        Ok(MultiIndex { dim, indices })
    }

    pub fn empty(dim: usize) -> Self {
        MultiIndex {
            dim,
            indices: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Lexicographic rank among all degree-d multi-indices on ℝⁿ.
    pub fn rank(&self) -> usize {
        let n = self.dim;
        let d = self.indices.len();
        let mut rank = 0;
        let mut prev = 0;
        for (pos, &idx) in self.indices.iter().enumerate() {
            let remaining = d - pos - 1;
            for skipped in prev + 1..idx {
                rank += binomial(n - skipped, remaining);
            }
            prev = idx;
        }
        rank
    }

    /// Inverse of [`MultiIndex::rank`].
    pub fn at(dim: usize, degree: usize, rank: usize) -> Result<Self, ExteriorError> {
        let count = binomial(dim, degree);
        if rank >= count {
            return Err(ExteriorError::RankOutOfRange {
                rank,
                dim,
                degree,
                count,
            });
        }
        let mut indices = Vec::with_capacity(degree);
        let mut r = rank;
        let mut next = 1;
        for pos in 0..degree {
            let remaining = degree - pos - 1;
            loop {
                let block = binomial(dim - next, remaining);
                if r < block {
                    break;
                }
                r -= block;
                next += 1;
            }
            indices.push(next);
            next += 1;
        }
        Ok(MultiIndex { dim, indices })
    }

    /// All degree-d multi-indices on ℝⁿ in lexicographic order.
    pub fn all(dim: usize, degree: usize) -> impl Iterator<Item = MultiIndex> {
        let count = binomial(dim, degree);
        let mut current: Option<Vec<usize>> = if count > 0 {
            Some((1..=degree).collect())
        } else {
            None
        };
        std::iter::from_fn(move || {
            let out = current.clone()?;
            // advance to the lexicographic successor
            let mut next = out.clone();
            let mut pos = degree;
            let mut advanced = false;
            while pos > 0 {
                pos -= 1;
                if next[pos] < dim - (degree - 1 - pos) {
                    next[pos] += 1;
                    for p in pos + 1..degree {
                        next[p] = next[p - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            current = if advanced { Some(next) } else { None };
            Some(MultiIndex { dim, indices: out })
        })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Removes position `pos` (0-based) from the tuple.
    pub fn without_position(&self, pos: usize) -> MultiIndex {
        let mut indices = self.indices.clone();
        indices.remove(pos);
        MultiIndex {
            dim: self.dim,
            indices,
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, idx) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, ")")
    }
}

/// Constant-coefficient alternating d-form on ℝⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl ConstForm {
    /// The zero form. Degrees above `dim` are allowed and have no coefficients.
    pub fn zero(dim: usize, degree: usize) -> Self {
        ConstForm {
            dim,
            degree,
            coeffs: vec![Rational::zero(); binomial(dim, degree)],
        }
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        ConstForm {
            dim,
            degree: 0,
            coeffs: vec![value],
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<Rational>) -> Result<Self, ExteriorError> {
        let expected = binomial(dim, degree);
        if coeffs.len() != expected {
            return Err(ExteriorError::CoefficientCount {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(ConstForm { dim, degree, coeffs })
    }

    /// `dq_{i₁} ∧ … ∧ dq_{i_d}` for an arbitrary (possibly unsorted) index list.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        let mut sorted = indices.to_vec();
        let mut form = ConstForm::zero(dim, indices.len());
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > dim) {
            return Err(ExteriorError::MalformedIndex {
                indices: vec![bad],
                dim,
            });
        }
        if let Some(sign) = sort_with_sign(&mut sorted) {
            let mi = MultiIndex { dim, indices: sorted };
            form.coeffs[mi.rank()] = rational::int(sign as i64);
        }
        Ok(form)
    }

    /// Sum of `coeff · dq_I` terms; repeated or unsorted indices are normalised.
    pub fn from_terms<'a, I>(dim: usize, degree: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (&'a [usize], Rational)>,
    {
        let mut form = ConstForm::zero(dim, degree);
        for (indices, coeff) in terms {
            if indices.len() != degree {
                return Err(ExteriorError::DegreeMismatch {
                    expected: degree,
                    found: indices.len(),
                });
            }
            form = form + ConstForm::basis(dim, indices)?.scale(&coeff);
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, mi: &MultiIndex) -> &Rational {
        &self.coeffs[mi.rank()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Rational)> + '_ {
        MultiIndex::all(self.dim, self.degree)
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ConstForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Value on `vectors`: Σ_I c_I · det(columns I of the argument matrix).
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Rational, ExteriorError> {
        if vectors.len() != self.degree {
            return Err(ExteriorError::ArityMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(ExteriorError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if self.degree == 0 {
            return Ok(self.coeffs[0].clone());
        }
        let mut total = Rational::zero();
        for (mi, c) in self.terms() {
            let minor = Matrix::from_rows(
                vectors
                    .iter()
                    .map(|v| mi.indices().iter().map(|&i| v[i - 1].clone()).collect())
                    .collect(),
            );
            total += c * minor.det();
        }
        Ok(total)
    }

    pub fn wedge(&self, other: &ConstForm) -> Result<ConstForm, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        let mut out = ConstForm::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut merged: Vec<usize> = a.indices().iter().chain(b.indices()).copied().collect();
                if let Some(sign) = sort_with_sign(&mut merged) {
                    let rank = MultiIndex { dim: self.dim, indices: merged }.rank();
                    let term = ca * cb;
                    if sign > 0 {
                        out.coeffs[rank] += term;
                    } else {
                        out.coeffs[rank] -= term;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Interior product `v ⌟ f`, inserting `v` into the first slot.
    pub fn contract(&self, v: &[Rational]) -> Result<ConstForm, ExteriorError> {
        if self.degree == 0 {
            return Err(ExteriorError::ContractScalar);
        }
        if v.len() != self.dim {
            return Err(ExteriorError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = ConstForm::zero(self.dim, self.degree - 1);
        for (mi, c) in self.terms() {
            // e_a ⌟ dq_I = (-1)^pos dq_{I \ a} where a sits at position pos of I
            for (pos, &a) in mi.indices().iter().enumerate() {
                let va = &v[a - 1];
                if va.is_zero() {
                    continue;
                }
                let rank = mi.without_position(pos).rank();
                let term = c * va;
                if pos % 2 == 0 {
                    out.coeffs[rank] += term;
                } else {
                    out.coeffs[rank] -= term;
                }
            }
        }
        Ok(out)
    }

    /// The form `(u₁,…,u_d) ↦ f(A u₁, …, A u_d)` for a square matrix `A`.
    pub fn pullback_linear(&self, a: &Matrix) -> Result<ConstForm, ExteriorError> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(ExteriorError::DimensionMismatch {
                expected: self.dim,
                found: a.rows(),
            });
        }
        let coeffs = MultiIndex::all(self.dim, self.degree)
            .map(|mi| {
                let cols: Vec<Vec<Rational>> = mi.indices().iter().map(|&i| a.column(i - 1)).collect();
                self.evaluate(&cols)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConstForm {
            dim: self.dim,
            degree: self.degree,
            coeffs,
        })
    }

    pub fn to_record(&self) -> ConstFormRecord {
        ConstFormRecord {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms()
                .map(|(mi, c)| TermRecord {
                    indices: mi.indices,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &ConstFormRecord) -> Result<Self, ExteriorError> {
        let mut form = ConstForm::zero(record.dim, record.degree);
        for term in &record.terms {
            if term.indices.len() != record.degree {
                return Err(ExteriorError::DegreeMismatch {
                    expected: record.degree,
                    found: term.indices.len(),
                });
            }
            let mi = MultiIndex::new(record.dim, term.indices.clone())?;
            form.coeffs[mi.rank()] += &term.coeff;
        }
        Ok(form)
    }

    fn check_shape(&self, other: &ConstForm) {
        assert!(
            self.dim == other.dim && self.degree == other.degree,
            "shape mismatch: ({}, {}) vs ({}, {})",
            self.dim,
            self.degree,
            other.dim,
            other.degree
        );
    }
}

impl Add for ConstForm {
    type Output = ConstForm;

    fn add(mut self, rhs: ConstForm) -> ConstForm {
        self.check_shape(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for ConstForm {
    type Output = ConstForm;

    fn sub(self, rhs: ConstForm) -> ConstForm {
        self + (-rhs)
    }
}

impl Neg for ConstForm {
    type Output = ConstForm;

    fn neg(mut self) -> ConstForm {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Mul<&Rational> for &ConstForm {
    type Output = ConstForm;

    fn mul(self, rhs: &Rational) -> ConstForm {
        self.scale(rhs)
    }
}

impl fmt::Display for ConstForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mi, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if self.degree == 0 {
                write!(f, "{}", rational::format(c))?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({}) ", rational::format(c))?;
            }
            let wedge: Vec<String> = mi.indices().iter().map(|i| format!("dq{i}")).collect();
            write!(f, "{}", wedge.join("∧"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Structured-text record: `{dim, degree, terms: [{indices, coeff: "p/q"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstFormRecord {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub indices: Vec<usize>,
    #[serde(with = "crate::rational::serde_text")]
    pub coeff: Rational,
}

impl Serialize for ConstForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let record = ConstFormRecord::deserialize(d)?;
        ConstForm::from_record(&record).map_err(serde::de::Error::custom)
    }
}

/// The standard basis vector `e_a` (1-based) of ℝⁿ.
pub fn unit_vector(dim: usize, a: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[a - 1] = Rational::one();
    v
}
