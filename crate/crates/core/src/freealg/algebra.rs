//! The free braided algebra `T(V)`: brackets, the monotonic bracket-word basis,
//! coproduct and antipode.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::element::{TensorElement, TensorPair};
use super::space::{BraidedSpace, Direction};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Scalar;
use crate::words::{cfl_factorize, is_lyndon, shirshov, MonotonicSuperWord, Word};

/// Which binary bracket builds the bracket letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    /// `[x, y] = xy - m c^{-1}(x ⊗ y)`
    Left,
    /// `⟦x, y⟧ = xy - m c(x ⊗ y)`
    Double,
}

impl BracketKind {
    fn direction(self) -> Direction {
        match self {
            BracketKind::Left => Direction::Inverse,
            BracketKind::Double => Direction::Forward,
        }
    }
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn cached<K, V>(cache: &Cache<K, V>, key: &K, compute: impl FnOnce() -> Result<V>) -> Result<Arc<V>>
where
    K: std::hash::Hash + Eq + Clone,
{
    if let Some(v) = cache.read().expect("cache lock").get(key) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(compute()?);
    let mut w = cache.write().expect("cache lock");
    Ok(Arc::clone(w.entry(key.clone()).or_insert(v)))
}

/// `T(V)` over a fixed braided space, with memoized bracket letters, coproducts,
/// antipodes and monotonic basis elements.
///
/// All operations act as pure functions; the caches are shared behind locks.
#[derive(Debug)]
pub struct FreeAlgebra {
    space: Arc<BraidedSpace>,
    letters: Cache<(Word, BracketKind), TensorElement>,
    basis: Cache<Word, TensorElement>,
    coproducts: Cache<Word, TensorPair>,
    antipodes: Cache<Word, TensorElement>,
}

impl FreeAlgebra {
    pub fn new(space: BraidedSpace) -> Self {
        Self::from_arc(Arc::new(space))
    }

    pub fn from_arc(space: Arc<BraidedSpace>) -> Self {
        FreeAlgebra {
            space,
            letters: RwLock::default(),
            basis: RwLock::default(),
            coproducts: RwLock::default(),
            antipodes: RwLock::default(),
        }
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    pub fn space_arc(&self) -> Arc<BraidedSpace> {
        Arc::clone(&self.space)
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement::zero(&self.space)
    }

    pub fn one(&self) -> TensorElement {
        TensorElement::one(&self.space)
    }

    pub fn word(&self, w: &Word) -> Result<TensorElement> {
        w.check_alphabet(self.space.dim())?;
        Ok(TensorElement::word(&self.space, w.clone()))
    }

    /// Parses a word (digit string or comma list) into the basis element `x_w`.
    pub fn parse_word(&self, s: &str) -> Result<TensorElement> {
        let w = Word::parse_for(s, self.space.dim())?;
        self.word(&w)
    }

    pub fn element(
        &self,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<TensorElement> {
        TensorElement::from_terms(&self.space, terms)
    }

    pub fn scalar(&self, s: &str) -> Result<Scalar> {
        Scalar::parse(self.space.field(), s)
    }

    fn check(&self, x: &TensorElement) -> Result<()> {
        if x.space_id() != self.space.id() {
            return invalid("element belongs to a different braided space");
        }
        Ok(())
    }

    fn check_pair(&self, x: &TensorPair) -> Result<()> {
        if x.space_id() != self.space.id() {
            return invalid("element belongs to a different braided space");
        }
        Ok(())
    }

    /// `c(x ⊗ y)` or `c^{-1}(x ⊗ y)` for homogeneous `x`, `y`.
    pub fn braid_apply(
        &self,
        x: &TensorElement,
        y: &TensorElement,
        dir: Direction,
    ) -> Result<TensorPair> {
        self.check(x)?;
        self.check(y)?;
        x.homogeneous_degree()?;
        y.homogeneous_degree()?;
        let mut out = TensorPair::zero(&self.space);
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                let st = s * t;
                let ab = a.concat(b);
                for (w, c) in self.space.braid_blocks(&ab, a.len(), dir) {
                    out.add_pair(w.slice(0, b.len()), w.slice(b.len(), w.len()), &st * &c);
                }
            }
        }
        Ok(out)
    }

    /// Extends `c^{±1}` to a whole element of `T(V) ⊗ T(V)`, block by block.
    pub fn braid_pair(&self, p: &TensorPair, dir: Direction) -> Result<TensorPair> {
        self.check_pair(p)?;
        let mut out = p.empty_like();
        for (a, b, s) in p.terms() {
            let ab = a.concat(b);
            for (w, c) in self.space.braid_blocks(&ab, a.len(), dir) {
                out.add_pair(w.slice(0, b.len()), w.slice(b.len(), w.len()), s * &c);
            }
        }
        Ok(out)
    }

    /// Concatenation product.
    pub fn multiply(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        self.check(x)?;
        self.check(y)?;
        x.checked_mul(y)
    }

    /// `m` applied to an element of `T(V) ⊗ T(V)`.
    pub fn multiply_pair(&self, p: &TensorPair) -> Result<TensorElement> {
        self.check_pair(p)?;
        let mut out = self.zero();
        for (a, b, c) in p.terms() {
            out.add_word(a.concat(b), c.clone());
        }
        Ok(out)
    }

    /// The binary bracket of two arbitrary elements, extended bilinearly.
    pub fn binary_bracket(
        &self,
        x: &TensorElement,
        y: &TensorElement,
        kind: BracketKind,
    ) -> Result<TensorElement> {
        self.check(x)?;
        self.check(y)?;
        let dir = kind.direction();
        let mut out = self.zero();
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                let st = s * t;
                let ab = a.concat(b);
                for (w, c) in self.space.braid_blocks(&ab, a.len(), dir) {
                    out.add_word(w, -(&st * &c));
                }
                out.add_word(ab, st);
            }
        }
        Ok(out)
    }

    /// The bracket letter `[x_u]` (or `⟦x_u⟧`) of a Lyndon word.
    pub fn bracket(&self, u: &Word, kind: BracketKind) -> Result<Arc<TensorElement>> {
        u.check_alphabet(self.space.dim())?;
        if !is_lyndon(u)? {
            return invalid(format!("{u} is not a Lyndon word"));
        }
        self.bracket_letter(u, kind)
    }

    fn bracket_letter(&self, u: &Word, kind: BracketKind) -> Result<Arc<TensorElement>> {
        if u.len() <= 1 {
            return Ok(Arc::new(TensorElement::word(&self.space, u.clone())));
        }
        cached(&self.letters, &(u.clone(), kind), || {
            let sd = shirshov(u)?;
            let l = self.bracket_letter(&sd.left, kind)?;
            let r = self.bracket_letter(&sd.right, kind)?;
            self.binary_bracket(&l, &r, kind)
        })
    }

    /// The product of the bracket letters of the factors of `w`.
    pub fn bracket_word(&self, w: &MonotonicSuperWord, kind: BracketKind) -> Result<TensorElement> {
        let mut acc = self.one();
        for u in w.factors() {
            u.check_alphabet(self.space.dim())?;
            let l = self.bracket_letter(u, kind)?;
            acc = acc.checked_mul(&l)?;
        }
        Ok(acc)
    }

    /// The bracket word of the Chen–Fox–Lyndon factorization of `w`.
    pub fn bracket_of(&self, w: &Word, kind: BracketKind) -> Result<TensorElement> {
        w.check_alphabet(self.space.dim())?;
        self.bracket_word(&cfl_factorize(w), kind)
    }

    fn basis_element(&self, w: &Word) -> Result<Arc<TensorElement>> {
        cached(&self.basis, w, || self.bracket_of(w, BracketKind::Left))
    }

    /// Among the top-degree terms, the lexicographically least word and its
    /// coefficient.
    pub fn leading_vector(&self, x: &TensorElement) -> Result<(Word, Scalar)> {
        self.check(x)?;
        x.leading_term()
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or_else(|| Error::Domain("the zero element has no leading vector".into()))
    }

    /// Coordinates of a homogeneous element in the basis of monotonic bracket
    /// words, in increasing order of super-words.
    pub fn expand_monotonic_basis(
        &self,
        x: &TensorElement,
    ) -> Result<Vec<(MonotonicSuperWord, Scalar)>> {
        self.check(x)?;
        let n = match x.homogeneous_degree()? {
            None => return Ok(Vec::new()),
            Some(n) => n,
        };
        match self.expand_triangular(x)? {
            Some(v) => Ok(v),
            None => self.expand_dense(x, n),
        }
    }

    /// Back-substitution against unitriangular bracket words; `None` if some basis
    /// element is not unitriangular.
    fn expand_triangular(
        &self,
        x: &TensorElement,
    ) -> Result<Option<Vec<(MonotonicSuperWord, Scalar)>>> {
        let mut residual = x.clone();
        let mut out = Vec::new();
        loop {
            let (w, c) = match residual.terms().next() {
                Some((w, c)) => (w.clone(), c.clone()),
                None => break,
            };
            let b = self.basis_element(&w)?;
            match b.terms().next() {
                Some((lw, lc)) if *lw == w && lc.is_one() => {}
                _ => return Ok(None),
            }
            residual = residual.checked_sub(&b.scale(&c))?;
            out.push((cfl_factorize(&w), c));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Some(out))
    }

    fn expand_dense(
        &self,
        x: &TensorElement,
        n: usize,
    ) -> Result<Vec<(MonotonicSuperWord, Scalar)>> {
        let d = self.space.dim();
        let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
        if size > DENSE_LIMIT {
            return Err(Error::Resource {
                size,
                limit: DENSE_LIMIT,
            });
        }
        let field = self.space.field();
        let mut m = Matrix::zeros(field, size, size);
        let words: Vec<Word> = Word::all_of_length(d, n).collect();
        for (col, w) in words.iter().enumerate() {
            let b = self.basis_element(w)?;
            for (v, c) in b.terms() {
                m.set(v.index(d), col, c);
            }
        }
        let inv = m.inverse().ok_or_else(|| {
            Error::Domain("monotonic bracket words are linearly dependent".into())
        })?;
        let rhs: Vec<(usize, Scalar)> = x.terms().map(|(w, c)| (w.index(d), c.clone())).collect();
        let coords = inv.mul_sparse(&rhs);
        let mut out: Vec<(MonotonicSuperWord, Scalar)> = coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (cfl_factorize(&words[i]), c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// The braided coproduct, the algebra map into `T(V) ⊗_c T(V)` with
    /// primitive letters.
    pub fn coproduct(&self, x: &TensorElement) -> Result<TensorPair> {
        self.check(x)?;
        let mut out = TensorPair::zero(&self.space);
        for (w, c) in x.terms() {
            let d = self.coproduct_word(w)?;
            out = out.checked_add(&d.scale(c))?;
        }
        Ok(out)
    }

    fn coproduct_word(&self, w: &Word) -> Result<Arc<TensorPair>> {
        if w.is_empty() {
            let mut p = TensorPair::zero(&self.space);
            p.add_pair(
                Word::empty(),
                Word::empty(),
                Scalar::one(self.space.field()),
            );
            return Ok(Arc::new(p));
        }
        cached(&self.coproducts, w, || {
            let head = w.letters()[0];
            let tail = self.coproduct_word(&w.slice(1, w.len()))?;
            let mut out = TensorPair::zero(&self.space);
            for (a, b, s) in tail.terms() {
                // (x_i ⊗ 1)(a ⊗ b)
                let mut left = Word::letter(head);
                left.extend_from(a);
                out.add_pair(left, b.clone(), s.clone());
                // (1 ⊗ x_i)(a ⊗ b) = c(x_i ⊗ a) b
                let mut ia = Word::letter(head);
                ia.extend_from(a);
                for (v, c) in self.space.braid_blocks(&ia, 1, Direction::Forward) {
                    let mut right = v.slice(a.len(), v.len());
                    right.extend_from(b);
                    out.add_pair(v.slice(0, a.len()), right, s * &c);
                }
            }
            Ok(out)
        })
    }

    /// Multiplication in the braided tensor product:
    /// `(a ⊗ b)(a' ⊗ b') = a c(b ⊗ a') b'`.
    pub fn braided_tensor_mul(&self, p: &TensorPair, q: &TensorPair) -> Result<TensorPair> {
        self.check_pair(p)?;
        self.check_pair(q)?;
        let mut out = p.empty_like();
        for (a, b, s) in p.terms() {
            for (a2, b2, t) in q.terms() {
                let st = s * t;
                let ba = b.concat(a2);
                for (v, c) in self.space.braid_blocks(&ba, b.len(), Direction::Forward) {
                    let mut left = a.clone();
                    left.extend_from(&v.slice(0, a2.len()));
                    let mut right = v.slice(a2.len(), v.len());
                    right.extend_from(b2);
                    out.add_pair(left, right, &st * &c);
                }
            }
        }
        Ok(out)
    }

    /// `S(1) = 1`, `S(x_i) = -x_i`, `S(xy) = m c(S(x) ⊗ S(y))`.
    pub fn antipode(&self, x: &TensorElement) -> Result<TensorElement> {
        self.check(x)?;
        let mut out = self.zero();
        for (w, c) in x.terms() {
            out = out.checked_add(&self.antipode_word(w)?.scale(c))?;
        }
        Ok(out)
    }

    fn antipode_word(&self, w: &Word) -> Result<Arc<TensorElement>> {
        if w.is_empty() {
            return Ok(Arc::new(self.one()));
        }
        cached(&self.antipodes, w, || {
            let head = w.letters()[0];
            let tail = self.antipode_word(&w.slice(1, w.len()))?;
            let mut out = self.zero();
            for (v, s) in tail.terms() {
                let mut iv = Word::letter(head);
                iv.extend_from(v);
                for (u, c) in self.space.braid_blocks(&iv, 1, Direction::Forward) {
                    out.add_word(u, -(s * &c));
                }
            }
            Ok(out)
        })
    }

    /// The coefficient of the empty word.
    pub fn counit(&self, x: &TensorElement) -> Result<Scalar> {
        self.check(x)?;
        Ok(x.coeff(&Word::empty()))
    }

    pub fn counit_pair_left(&self, p: &TensorPair) -> Result<TensorElement> {
        self.check_pair(p)?;
        let mut out = self.zero();
        for (a, b, c) in p.terms() {
            if a.is_empty() {
                out.add_word(b.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn counit_pair_right(&self, p: &TensorPair) -> Result<TensorElement> {
        self.check_pair(p)?;
        let mut out = self.zero();
        for (a, b, c) in p.terms() {
            if b.is_empty() {
                out.add_word(a.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

const DENSE_LIMIT: usize = 4096;
