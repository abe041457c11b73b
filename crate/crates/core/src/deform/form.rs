//! Differential forms with polynomial coefficients on a single chart.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::poly::{MonomialRecord, Polynomial};
use super::DeformError;
use crate::exterior::{binomial, sort_with_sign, ConstForm, MultiIndex};
use crate::rational::Rational;

/// `Σ_I c_I(q) dq_I` on a chart with coordinates `q₁, …, q_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl PolyForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        PolyForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form given by a function.
    pub fn function(f: Polynomial) -> Self {
        let nvars = f.nvars();
        let mut form = PolyForm::zero(nvars, 0);
        form.add_term(MultiIndex::empty(nvars), f);
        form
    }

    /// `c · dq_{i₁} ∧ … ∧ dq_{i_d}` for any index order; repeated indices give zero.
    pub fn term(coeff: Polynomial, indices: &[usize]) -> Result<Self, DeformError> {
        let nvars = coeff.nvars();
        let mut form = PolyForm::zero(nvars, indices.len());
        if indices.iter().any(|&i| i == 0 || i > nvars) {
            return Err(DeformError::DimensionMismatch {
                expected: nvars,
                found: indices.iter().copied().max().unwrap_or(0),
            });
        }
        let mut sorted = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut sorted) {
            let mi = MultiIndex::new(nvars, sorted)?;
            form.add_term(mi, if sign > 0 { coeff } else { -&coeff });
        }
        Ok(form)
    }

    /// Sum of `(coefficient, indices)` terms of a common degree.
    pub fn from_terms<I>(nvars: usize, degree: usize, terms: I) -> Result<Self, DeformError>
    where
        I: IntoIterator<Item = (Polynomial, Vec<usize>)>,
    {
        let mut form = PolyForm::zero(nvars, degree);
        for (coeff, indices) in terms {
            if indices.len() != degree {
                return Err(DeformError::ShapeMismatch(format!(
                    "term of degree {} in a {degree}-form",
                    indices.len()
                )));
            }
            if coeff.nvars() != nvars {
                return Err(DeformError::DimensionMismatch {
                    expected: nvars,
                    found: coeff.nvars(),
                });
            }
            form = &form + &PolyForm::term(coeff, &indices)?;
        }
        Ok(form)
    }

    /// Lifts a constant form to a chart of the same dimension.
    pub fn from_const(f: &ConstForm) -> Self {
        let mut form = PolyForm::zero(f.dim(), f.degree());
        for (mi, c) in f.terms() {
            form.add_term(mi, Polynomial::constant(f.dim(), c.clone()));
        }
        form
    }

    fn add_term(&mut self, mi: MultiIndex, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mi) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mi: &MultiIndex) -> Polynomial {
        self.terms
            .get(mi)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    pub fn mul_function(&self, f: &Polynomial) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (mi, c) in &self.terms {
            out.add_term(mi.clone(), c * f);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (mi, p) in &self.terms {
            out.add_term(mi.clone(), p.scale(c));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, DeformError> {
        if self.nvars != other.nvars {
            return Err(DeformError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = PolyForm::zero(self.nvars, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut merged: Vec<usize> = a.indices().iter().chain(b.indices()).copied().collect();
                if let Some(sign) = sort_with_sign(&mut merged) {
                    let coeff = ca * cb;
                    let mi = MultiIndex::new(self.nvars, merged)?;
                    out.add_term(mi, if sign > 0 { coeff } else { -&coeff });
                }
            }
        }
        Ok(out)
    }

    /// `d(c dq_I) = Σ_a ∂c/∂q_a dq_a ∧ dq_I`. Top-degree forms map to the zero
    /// form of degree N + 1.
    pub fn exterior_derivative(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.nvars, self.degree + 1);
        for (mi, c) in &self.terms {
            for a in 1..=self.nvars {
                if mi.contains(a) {
                    continue;
                }
                let da = c.derivative(a);
                if da.is_zero() {
                    continue;
                }
                // moving dq_a past the indices of I smaller than a
                let before = mi.indices().iter().filter(|&&i| i < a).count();
                let mut merged = mi.indices().to_vec();
                merged.insert(before, a);
                let target = MultiIndex::new(self.nvars, merged).expect("sorted insertion");
                out.add_term(target, if before % 2 == 0 { da } else { -&da });
            }
        }
        out
    }

    /// Evaluates every coefficient at `point`, giving a constant form on ℝᴺ.
    pub fn evaluate_at(&self, point: &[Rational]) -> Result<ConstForm, DeformError> {
        if point.len() != self.nvars {
            return Err(DeformError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut coeffs = vec![Rational::default(); binomial(self.nvars, self.degree)];
        for (mi, c) in &self.terms {
            coeffs[mi.rank()] = c.eval(point);
        }
        Ok(ConstForm::from_coeffs(self.nvars, self.degree, coeffs)?)
    }

    pub fn to_record(&self) -> PolyFormRecord {
        PolyFormRecord {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(mi, p)| PolyTermRecord {
                    indices: mi.indices().to_vec(),
                    poly: p.to_record(),
                })
                .collect(),
        }
    }

    pub fn from_record(record: &PolyFormRecord) -> Result<Self, DeformError> {
        let mut form = PolyForm::zero(record.nvars, record.degree);
        for t in &record.terms {
            if t.indices.len() != record.degree {
                return Err(DeformError::ShapeMismatch(format!(
                    "term {:?} in a {}-form",
                    t.indices, record.degree
                )));
            }
            let mi = MultiIndex::new(record.nvars, t.indices.clone())?;
            let poly = Polynomial::from_record(record.nvars, &t.poly).map_err(DeformError::ShapeMismatch)?;
            form.add_term(mi, poly);
        }
        Ok(form)
    }

    fn check_shape(&self, other: &PolyForm) {
        assert!(
            self.nvars == other.nvars && self.degree == other.degree,
            "form shape mismatch: ({}, {}) vs ({}, {})",
            self.nvars,
            self.degree,
            other.nvars,
            other.degree
        );
    }
}

impl Add for &PolyForm {
    type Output = PolyForm;

    fn add(self, rhs: &PolyForm) -> PolyForm {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (mi, c) in &rhs.terms {
            out.add_term(mi.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyForm {
    type Output = PolyForm;

    fn sub(self, rhs: &PolyForm) -> PolyForm {
        self + &(-rhs)
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;

    fn neg(self) -> PolyForm {
        PolyForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(mi, c)| (mi.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (mi, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let wedge: Vec<String> = mi.indices().iter().map(|i| format!("dx{i}")).collect();
            match (wedge.is_empty(), c.len()) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) if c.is_constant() && c.constant_term().is_one() => write!(f, "{}", wedge.join("∧"))?,
                (false, 1) => write!(f, "{c} {}", wedge.join("∧"))?,
                (false, _) => write!(f, "({c}) {}", wedge.join("∧"))?,
            }
        }
        Ok(())
    }
}

/// `{nvars, degree, terms: [{indices, poly: [{exps, coeff}]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFormRecord {
    pub nvars: usize,
    pub degree: usize,
    pub terms: Vec<PolyTermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermRecord {
    pub indices: Vec<usize>,
    pub poly: Vec<MonomialRecord>,
}

impl Serialize for PolyForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let record = PolyFormRecord::deserialize(d)?;
        PolyForm::from_record(&record).map_err(serde::de::Error::custom)
    }
}

/// An ℝᵐ-valued differential form: m polynomial forms of common shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VectorPolyForm {
    components: Vec<PolyForm>,
}

impl VectorPolyForm {
    pub fn new(components: Vec<PolyForm>) -> Result<Self, DeformError> {
        let first = components
            .first()
            .ok_or_else(|| DeformError::ShapeMismatch("no components".into()))?;
        let shape = (first.nvars, first.degree);
        if let Some(c) = components.iter().find(|c| (c.nvars, c.degree) != shape) {
            return Err(DeformError::ShapeMismatch(format!(
                "component of shape ({}, {}) among ({}, {})",
                c.nvars, c.degree, shape.0, shape.1
            )));
        }
        Ok(VectorPolyForm { components })
    }

    pub fn components(&self) -> &[PolyForm] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyForm::is_zero)
    }

    pub fn exterior_derivative(&self) -> VectorPolyForm {
        VectorPolyForm {
            components: self.components.iter().map(PolyForm::exterior_derivative).collect(),
        }
    }

    pub fn sub(&self, other: &VectorPolyForm) -> Result<VectorPolyForm, DeformError> {
        if self.arity() != other.arity() || self.nvars() != other.nvars() || self.degree() != other.degree() {
            return Err(DeformError::ShapeMismatch("vector forms of different shapes".into()));
        }
        Ok(VectorPolyForm {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn evaluate_at(&self, point: &[Rational]) -> Result<Vec<ConstForm>, DeformError> {
        self.components.iter().map(|c| c.evaluate_at(point)).collect()
    }
}

impl fmt::Display for VectorPolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            writeln!(f, "[{}] {}", i + 1, c)?;
        }
        Ok(())
    }
}
