//! Elements of `T(V)` and of `T(V) ⊗ T(V)` as sparse word expansions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::space::BraidedSpace;
use crate::error::{invalid, Error, Result};
use crate::scalars::{FieldSpec, Scalar};
use crate::words::{DegLex, Word};

fn add_term<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// A finite linear combination of words; terms are ordered by length, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    space: u64,
    dim: usize,
    field: FieldSpec,
    terms: BTreeMap<DegLex, Scalar>,
}

impl TensorElement {
    pub fn zero(space: &BraidedSpace) -> Self {
        TensorElement {
            space: space.id(),
            dim: space.dim(),
            field: space.field(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &BraidedSpace) -> Self {
        Self::word(space, Word::empty())
    }

    pub fn word(space: &BraidedSpace, w: Word) -> Self {
        let mut e = Self::zero(space);
        e.terms.insert(DegLex(w), Scalar::one(space.field()));
        e
    }

    pub fn letter(space: &BraidedSpace, a: u8) -> Self {
        Self::word(space, Word::letter(a))
    }

    /// Builds an element from `(word, coefficient)` pairs, summing repeated words.
    pub fn from_terms(
        space: &BraidedSpace,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Self> {
        let mut e = Self::zero(space);
        for (w, c) in terms {
            w.check_alphabet(space.dim())?;
            if c.field() != space.field() {
                return invalid("coefficient over a different field");
            }
            add_term(&mut e.terms, DegLex(w), c);
        }
        Ok(e)
    }

    pub(crate) fn empty_like(&self) -> Self {
        TensorElement {
            space: self.space,
            dim: self.dim,
            field: self.field,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add_word(&mut self, w: Word, c: Scalar) {
        add_term(&mut self.terms, DegLex(w), c);
    }

    pub fn space_id(&self) -> u64 {
        self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter().map(|(k, v)| (&k.0, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms
            .get(&DegLex(w.clone()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// Top degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|k| k.0.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(a), Some(b)) => a.0.len() == b.0.len(),
            _ => true,
        }
    }

    /// Degree of a nonzero homogeneous element; `None` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        if !self.is_homogeneous() {
            return invalid("element is not homogeneous");
        }
        Ok(self.degree())
    }

    /// The homogeneous component of degree `n`.
    pub fn component(&self, n: usize) -> TensorElement {
        let mut e = self.empty_like();
        let lo = DegLex(Word::from_letters(&vec![1; n]));
        for (k, v) in self.terms.range(lo..) {
            if k.0.len() != n {
                break;
            }
            e.terms.insert(k.clone(), v.clone());
        }
        e
    }

    /// The lexicographically least word of top degree with its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        let n = self.degree()?;
        let lo = DegLex(Word::from_letters(&vec![1; n]));
        self.terms.range(lo..).next().map(|(k, v)| (&k.0, v))
    }

    fn check_same(&self, other: &TensorElement) -> Result<()> {
        if self.space != other.space {
            return invalid("elements belong to different braided spaces");
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_same(other)?;
        let mut e = self.clone();
        for (k, v) in &other.terms {
            add_term(&mut e.terms, k.clone(), v.clone());
        }
        Ok(e)
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.checked_add(&other.scale(&-Scalar::one(self.field)))
    }

    /// Concatenation product.
    pub fn checked_mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_same(other)?;
        let mut e = self.empty_like();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_term(&mut e.terms, DegLex(a.0.concat(&b.0)), x * y);
            }
        }
        Ok(e)
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut e = self.empty_like();
        if c.is_zero() {
            return e;
        }
        for (k, v) in &self.terms {
            e.terms.insert(k.clone(), v * c);
        }
        e
    }

    /// `{"terms": [{"word": "12", "coeff": "3"}, ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(w, c)| json!({"word": w.to_string(), "coeff": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(space: &BraidedSpace, v: &Value) -> Result<TensorElement> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected an object with a \"terms\" array".into()))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let w = t
                .get("word")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without a \"word\" string".into()))?;
            let w = if w.is_empty() {
                Word::empty()
            } else {
                Word::parse_for(w, space.dim())?
            };
            let c = match t.get("coeff") {
                None => Scalar::one(space.field()),
                Some(c) => scalar_from_json(space.field(), c)?,
            };
            out.push((w, c));
        }
        TensorElement::from_terms(space, out)
    }
}

pub(crate) fn scalar_from_json(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_i64(field, i)),
            None => Scalar::parse(field, &n.to_string()),
        },
        _ => Err(Error::Parse(format!("expected a scalar, got {v}"))),
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let w = if w.is_empty() {
                "1".to_string()
            } else {
                format!("x[{w}]")
            };
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.checked_add(rhs).expect("mixed braided spaces")
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.checked_sub(rhs).expect("mixed braided spaces")
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.checked_mul(rhs).expect("mixed braided spaces")
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-Scalar::one(self.field))
    }
}

/// An element of `T(V) ⊗ T(V)`, stored on pairs of words.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPair {
    space: u64,
    field: FieldSpec,
    terms: BTreeMap<(DegLex, DegLex), Scalar>,
}

impl TensorPair {
    pub fn zero(space: &BraidedSpace) -> Self {
        TensorPair {
            space: space.id(),
            field: space.field(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn zero_like(e: &TensorElement) -> Self {
        TensorPair {
            space: e.space,
            field: e.field,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn empty_like(&self) -> Self {
        TensorPair {
            space: self.space,
            field: self.field,
            terms: BTreeMap::new(),
        }
    }

    /// `x ⊗ y`.
    pub fn tensor(x: &TensorElement, y: &TensorElement) -> Result<Self> {
        x.check_same(y)?;
        let mut p = Self::zero_like(x);
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                p.add_pair(a.clone(), b.clone(), s * t);
            }
        }
        Ok(p)
    }

    pub(crate) fn add_pair(&mut self, a: Word, b: Word, c: Scalar) {
        add_term(&mut self.terms, (DegLex(a), DegLex(b)), c);
    }

    pub fn space_id(&self) -> u64 {
        self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.terms.iter().map(|((a, b), c)| (&a.0, &b.0, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &Word, b: &Word) -> Scalar {
        self.terms
            .get(&(DegLex(a.clone()), DegLex(b.clone())))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn checked_add(&self, other: &TensorPair) -> Result<TensorPair> {
        if self.space != other.space {
            return invalid("elements belong to different braided spaces");
        }
        let mut p = self.clone();
        for (k, v) in &other.terms {
            add_term(&mut p.terms, k.clone(), v.clone());
        }
        Ok(p)
    }

    pub fn scale(&self, c: &Scalar) -> TensorPair {
        let mut p = self.empty_like();
        if c.is_zero() {
            return p;
        }
        for (k, v) in &self.terms {
            p.terms.insert(k.clone(), v * c);
        }
        p
    }

    /// The part with left factor of degree `i` and right factor of degree `j`.
    pub fn bidegree_component(&self, i: usize, j: usize) -> TensorPair {
        let mut p = self.empty_like();
        for (k, v) in &self.terms {
            if k.0 .0.len() == i && k.1 .0.len() == j {
                p.terms.insert(k.clone(), v.clone());
            }
        }
        p
    }

    /// `{"terms": [{"left": "1", "right": "2", "coeff": "1"}, ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(a, b, c)| json!({"left": a.to_string(), "right": b.to_string(), "coeff": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for TensorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                format!("x[{w}]")
            }
        };
        for (i, (a, b, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write!(f, "{}⊗{}", show(a), show(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorPair({self})")
    }
}

impl Add for &TensorPair {
    type Output = TensorPair;
    fn add(self, rhs: &TensorPair) -> TensorPair {
        self.checked_add(rhs).expect("mixed braided spaces")
    }
}
