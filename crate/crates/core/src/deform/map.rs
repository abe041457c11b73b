//! Polynomial maps between charts and pullback of forms along them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::form::{PolyForm, VectorPolyForm};
use super::poly::{MonomialRecord, Polynomial};
use super::DeformError;
use crate::rational::Rational;

/// `F : ℝˢ → ℝᴺ`, one polynomial in s variables per target coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    source: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(source: usize, components: Vec<Polynomial>) -> Result<Self, DeformError> {
        if let Some(p) = components.iter().find(|p| p.nvars() != source) {
            return Err(DeformError::DimensionMismatch {
                expected: source,
                found: p.nvars(),
            });
        }
        Ok(PolyMap { source, components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            source: n,
            components: (1..=n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    /// `x ↦ x + offset`.
    pub fn translation(offset: &[Rational]) -> Self {
        let n = offset.len();
        PolyMap {
            source: n,
            components: offset
                .iter()
                .enumerate()
                .map(|(i, c)| &Polynomial::var(n, i + 1) + &Polynomial::constant(n, c.clone()))
                .collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, DeformError> {
        if inner.target() != self.source {
            return Err(DeformError::DimensionMismatch {
                expected: self.source,
                found: inner.target(),
            });
        }
        Ok(PolyMap {
            source: inner.source,
            components: self.components.iter().map(|p| p.compose(&inner.components)).collect(),
        })
    }

    pub fn apply(&self, point: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    /// `F*w`: substitute F into the coefficients and `dq_j ↦ Σ_a ∂F_j/∂x_a dx_a`.
    pub fn pullback(&self, w: &PolyForm) -> Result<PolyForm, DeformError> {
        if w.nvars() != self.target() {
            return Err(DeformError::DimensionMismatch {
                expected: self.target(),
                found: w.nvars(),
            });
        }
        let mut differentials: HashMap<usize, PolyForm> = HashMap::new();
        let mut out = PolyForm::zero(self.source, w.degree());
        for (mi, c) in w.terms() {
            let mut acc = PolyForm::function(c.compose(&self.components));
            for &j in mi.indices() {
                if acc.is_zero() {
                    break;
                }
                let dfj = differentials
                    .entry(j)
                    .or_insert_with(|| PolyForm::function(self.components[j - 1].clone()).exterior_derivative());
                acc = acc.wedge(dfj)?;
            }
            if !acc.is_zero() {
                out = &out + &acc;
            }
        }
        Ok(out)
    }

    pub fn pullback_vector(&self, w: &VectorPolyForm) -> Result<VectorPolyForm, DeformError> {
        let components = w
            .components()
            .iter()
            .map(|c| self.pullback(c))
            .collect::<Result<Vec<_>, _>>()?;
        VectorPolyForm::new(components)
    }

    pub fn to_record(&self) -> PolyMapRecord {
        PolyMapRecord {
            source: self.source,
            target: self.target(),
            components: self.components.iter().map(Polynomial::to_record).collect(),
        }
    }

    pub fn from_record(record: &PolyMapRecord) -> Result<Self, DeformError> {
        if record.components.len() != record.target {
            return Err(DeformError::ShapeMismatch(format!(
                "{} components for target dimension {}",
                record.components.len(),
                record.target
            )));
        }
        let components = record
            .components
            .iter()
            .map(|c| Polynomial::from_record(record.source, c).map_err(DeformError::ShapeMismatch))
            .collect::<Result<Vec<_>, _>>()?;
        PolyMap::new(record.source, components)
    }
}

/// `{source, target, components: [poly, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMapRecord {
    pub source: usize,
    pub target: usize,
    pub components: Vec<Vec<MonomialRecord>>,
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let record = PolyMapRecord::deserialize(d)?;
        PolyMap::from_record(&record).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn identity_pullback_is_trivial() {
        let w = PolyForm::term(Polynomial::var(3, 2), &[1, 3]).unwrap();
        assert_eq!(PolyMap::identity(3).pullback(&w).unwrap(), w);
    }

    #[test]
    fn pullback_of_polar_like_map() {
        // F(s, t) = (s t, s), dq₁ ∧ dq₂ ↦ d(st) ∧ ds = (t ds + s dt) ∧ ds = −s ds∧dt
        let s = Polynomial::var(2, 1);
        let t = Polynomial::var(2, 2);
        let f = PolyMap::new(2, vec![&s * &t, s.clone()]).unwrap();
        let w = PolyForm::term(Polynomial::one(2), &[1, 2]).unwrap();
        let expected = PolyForm::term(-&s, &[1, 2]).unwrap();
        assert_eq!(f.pullback(&w).unwrap(), expected);
    }

    #[test]
    fn translation_round_trip() {
        let c = [int(1), frac(-1, 2)];
        let back = [int(-1), frac(1, 2)];
        let id = PolyMap::translation(&back).compose(&PolyMap::translation(&c)).unwrap();
        assert_eq!(id, PolyMap::identity(2));
        assert_eq!(PolyMap::translation(&c).apply(&[int(0), int(0)]), c.to_vec());
    }

    #[test]
    fn dimension_checks() {
        let f = PolyMap::identity(2);
        let w = PolyForm::term(Polynomial::one(3), &[1]).unwrap();
        assert!(f.pullback(&w).is_err());
        assert!(PolyMap::new(2, vec![Polynomial::var(3, 1)]).is_err());
        assert!(f.compose(&PolyMap::identity(3)).is_err());
    }

    #[test]
    fn record_shape() {
        let f = PolyMap::new(1, vec![Polynomial::var(1, 1), Polynomial::zero(1)]).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"source":1,"target":2,"components":[[{"exps":[1],"coeff":"1"}],[]]}"#);
        assert_eq!(serde_json::from_str::<PolyMap>(&json).unwrap(), f);
    }
}
