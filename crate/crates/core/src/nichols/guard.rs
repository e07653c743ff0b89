//! Rebuilding a quotient at a second prime to catch rank collapse modulo `p`.

use std::fmt::Debug;
use std::sync::Arc;

use serde_json::Value;

use super::quotient::{GradedQuotient, QuotientKind};
use super::symmetrizer::DEFAULT_MAX_MATRIX;
use crate::error::{Error, Result};
use crate::freealg::{FreeAlgebra, SpaceSource, TensorElement};
use crate::scalars::FieldSpec;

/// A quotient kind whose relations are kept in their JSON form, so that they can
/// be read over any field.
#[derive(Clone, Debug, PartialEq)]
pub enum KindSpec {
    Nichols,
    Free,
    Presented(Vec<Value>),
}

impl KindSpec {
    /// Relations as `{"relations": [element, ...]}` or a bare array of elements.
    pub fn presented_from_json(v: &Value) -> Result<KindSpec> {
        let list = v
            .get("relations")
            .unwrap_or(v)
            .as_array()
            .ok_or_else(|| Error::Parse("expected a list of relations".into()))?;
        Ok(KindSpec::Presented(list.clone()))
    }
}

/// Everything needed to build a [`GradedQuotient`] over a chosen field.
#[derive(Clone, Debug)]
pub struct QuotientSpec {
    pub source: SpaceSource,
    pub kind: KindSpec,
    pub trunc: usize,
    pub limit: usize,
}

impl QuotientSpec {
    pub fn new(source: SpaceSource, kind: KindSpec, trunc: usize) -> Self {
        QuotientSpec {
            source,
            kind,
            trunc,
            limit: DEFAULT_MAX_MATRIX,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn build(&self, field: FieldSpec) -> Result<GradedQuotient> {
        let alg = Arc::new(FreeAlgebra::new(self.source.instantiate(field)?));
        let kind = match &self.kind {
            KindSpec::Nichols => QuotientKind::Nichols,
            KindSpec::Free => QuotientKind::Free,
            KindSpec::Presented(rels) => QuotientKind::Presented(
                rels.iter()
                    .map(|r| TensorElement::from_json(alg.space(), r))
                    .collect::<Result<_>>()?,
            ),
        };
        GradedQuotient::with_limit(alg, kind, self.trunc, self.limit)
    }

    /// Runs `f` over `field`; when `check` is set and `field` is a prime field the
    /// computation is repeated over a larger admissible prime and both results must
    /// agree.
    pub fn run<T, F>(&self, field: FieldSpec, check: bool, f: F) -> Result<T>
    where
        T: PartialEq + Debug,
        F: Fn(&GradedQuotient) -> Result<T>,
    {
        let first = f(&self.build(field)?)?;
        let Some(p) = field.modulus().filter(|_| check) else {
            return Ok(first);
        };
        let second_field = self.source.second_prime(p, self.trunc);
        let second = f(&self.build(second_field)?)?;
        if first != second {
            return Err(Error::BadPrime(format!(
                "results over F_{p} and {second_field} differ; the first prime collapses a rank"
            )));
        }
        Ok(first)
    }
}
