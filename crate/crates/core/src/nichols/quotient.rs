//! Graded quotients `R = T(V)/I` computed degree by degree.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::symmetrizer::{check_size, symmetrizer, DEFAULT_MAX_MATRIX};
use crate::error::{invalid, Error, Result};
use crate::freealg::{FreeAlgebra, TensorElement, TensorPair};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::scalars::Scalar;
use crate::series::PowerSeries;
use crate::words::Word;

/// Which ideal of `T(V)` is divided out.
#[derive(Clone, Debug)]
pub enum QuotientKind {
    /// The Nichols algebra: the kernel of the quantum symmetrizer in each degree.
    Nichols,
    /// No relations.
    Free,
    /// The two-sided ideal generated by homogeneous relations of degree at least 2.
    Presented(Vec<TensorElement>),
}

impl QuotientKind {
    pub fn name(&self) -> &'static str {
        match self {
            QuotientKind::Nichols => "nichols",
            QuotientKind::Free => "free",
            QuotientKind::Presented(_) => "presented",
        }
    }
}

/// The ideal in one degree, kept in semi-echelon form on word indices.
#[derive(Clone, Debug)]
pub(crate) struct Degree {
    pub(crate) kernel: SparseEchelon,
    pub(crate) size: usize,
}

impl Degree {
    pub(crate) fn dim(&self) -> usize {
        self.size - self.kernel.rank()
    }
}

/// Dimension and canonical basis of `R_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedData {
    pub degree: usize,
    pub dim: usize,
    /// Words whose images form a basis of `R_n`; every element of `T_n` is
    /// congruent to a unique combination of them.
    pub basis: Vec<Word>,
}

/// A graded quotient of `T(V)` known up to degree `trunc`.
#[derive(Debug)]
pub struct GradedQuotient {
    alg: Arc<FreeAlgebra>,
    kind: QuotientKind,
    trunc: usize,
    degrees: Vec<Degree>,
    pub(crate) profiles: RwLock<HashMap<usize, Arc<super::analysis::Profile>>>,
}

fn to_sparse(x: &TensorElement, d: usize) -> SparseVec {
    SparseVec::from_pairs(x.terms().map(|(w, c)| (w.index(d), c.clone())))
}

impl GradedQuotient {
    pub fn new(alg: Arc<FreeAlgebra>, kind: QuotientKind, trunc: usize) -> Result<Self> {
        Self::with_limit(alg, kind, trunc, DEFAULT_MAX_MATRIX)
    }

    /// Like [`GradedQuotient::new`] with an explicit cap on `d^n` for the degrees
    /// that need a materialized matrix.
    pub fn with_limit(
        alg: Arc<FreeAlgebra>,
        kind: QuotientKind,
        trunc: usize,
        limit: usize,
    ) -> Result<Self> {
        let space = alg.space().clone();
        let d = space.dim();
        let field = space.field();
        let mut degrees = Vec::with_capacity(trunc + 1);
        match &kind {
            QuotientKind::Free => {
                for n in 0..=trunc {
                    let size = d.checked_pow(n as u32).ok_or(Error::Resource {
                        size: usize::MAX,
                        limit,
                    })?;
                    degrees.push(Degree {
                        kernel: SparseEchelon::new(field),
                        size,
                    });
                }
            }
            QuotientKind::Nichols => {
                for n in 0..=trunc {
                    let size = check_size(d, n, limit)?;
                    let s = symmetrizer(&space, n, limit)?;
                    let r = s.rref();
                    let mut kernel = SparseEchelon::new(field);
                    let mut is_pivot = vec![false; size];
                    for &p in &r.pivots {
                        is_pivot[p] = true;
                    }
                    // kernel vectors e_j - sum_i R[i][j] e_{p_i} for free columns j
                    for j in (0..size).filter(|&j| !is_pivot[j]) {
                        let mut pairs = vec![(j, Scalar::one(field))];
                        for (i, &p) in r.pivots.iter().enumerate() {
                            if !r.matrix.is_zero_entry(i, j) {
                                pairs.push((p, -r.matrix.get(i, j)));
                            }
                        }
                        kernel.insert(&SparseVec::from_pairs(pairs));
                    }
                    degrees.push(Degree { kernel, size });
                }
            }
            QuotientKind::Presented(rels) => {
                for r in rels {
                    if r.space_id() != space.id() {
                        return invalid("relation belongs to a different braided space");
                    }
                    match r.homogeneous_degree()? {
                        None => return invalid("zero relation"),
                        Some(k) if k < 2 => {
                            return invalid("relations must have degree at least 2")
                        }
                        Some(_) => {}
                    }
                }
                for n in 0..=trunc {
                    let size = check_size(d, n, limit)?;
                    let mut kernel = SparseEchelon::new(field);
                    if n >= 2 {
                        let prev: &Degree = &degrees[n - 1];
                        let tail = size / d;
                        for row in prev.kernel.rows() {
                            for a in 0..d {
                                // x_a v and v x_a
                                let left =
                                    row.entries().iter().map(|(i, c)| (a * tail + i, c.clone()));
                                kernel.insert(&SparseVec::from_pairs(left));
                                let right =
                                    row.entries().iter().map(|(i, c)| (i * d + a, c.clone()));
                                kernel.insert(&SparseVec::from_pairs(right));
                            }
                        }
                        for r in rels.iter().filter(|r| r.degree() == Some(n)) {
                            kernel.insert(&to_sparse(r, d));
                        }
                    }
                    degrees.push(Degree { kernel, size });
                }
            }
        }
        let q = GradedQuotient {
            alg,
            kind,
            trunc,
            degrees,
            profiles: RwLock::default(),
        };
        if matches!(q.kind, QuotientKind::Presented(_)) {
            q.check_coideal()?;
        }
        Ok(q)
    }

    /// `Δ(I_n) ⊆ Σ I_i ⊗ T_j + T_i ⊗ I_j` for all `n <= trunc`.
    fn check_coideal(&self) -> Result<()> {
        let d = self.alg.space().dim();
        for n in 2..=self.trunc {
            for row in self.degrees[n].kernel.rows() {
                let x = self.alg.element(
                    row.entries()
                        .iter()
                        .map(|(i, c)| (Word::from_index(*i, n, d), c.clone())),
                )?;
                let delta = self.alg.coproduct(&x)?;
                if !self.pair_vanishes(&delta)? {
                    return Err(Error::NotCoideal { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Whether an element of `T ⊗ T` maps to zero in `R ⊗ R`.
    fn pair_vanishes(&self, p: &TensorPair) -> Result<bool> {
        let d = self.alg.space().dim();
        let mut acc: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
        let mut left_cache: HashMap<Word, SparseVec> = HashMap::new();
        let mut right_cache: HashMap<Word, SparseVec> = HashMap::new();
        for (a, b, c) in p.terms() {
            let na = left_cache
                .entry(a.clone())
                .or_insert_with(|| {
                    self.normal_vec(
                        a.len(),
                        &SparseVec::from_pairs([(a.index(d), Scalar::one(c.field()))]),
                    )
                })
                .clone();
            let nb = right_cache
                .entry(b.clone())
                .or_insert_with(|| {
                    self.normal_vec(
                        b.len(),
                        &SparseVec::from_pairs([(b.index(d), Scalar::one(c.field()))]),
                    )
                })
                .clone();
            for (i, s) in na.entries() {
                for (j, t) in nb.entries() {
                    let key = (a.len(), *i, *j);
                    let v = &(c * s) * t;
                    match acc.get_mut(&key) {
                        Some(cur) => *cur = &*cur + &v,
                        None => {
                            acc.insert(key, v);
                        }
                    }
                }
            }
        }
        Ok(acc.values().all(Scalar::is_zero))
    }

    pub(crate) fn normal_vec(&self, n: usize, v: &SparseVec) -> SparseVec {
        self.degrees[n].kernel.reduce_full(v)
    }

    pub(crate) fn degree_data(&self, n: usize) -> &Degree {
        &self.degrees[n]
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<FreeAlgebra> {
        Arc::clone(&self.alg)
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.trunc {
            return invalid(format!("degree {n} exceeds the truncation {}", self.trunc));
        }
        Ok(())
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        self.check_degree(n)?;
        Ok(self.degrees[n].dim())
    }

    pub fn graded_data(&self, n: usize) -> Result<GradedData> {
        self.check_degree(n)?;
        let deg = &self.degrees[n];
        let d = self.alg.space().dim();
        let basis = (0..deg.size)
            .filter(|&i| !deg.kernel.is_lead(i))
            .map(|i| Word::from_index(i, n, d))
            .collect();
        Ok(GradedData {
            degree: n,
            dim: deg.dim(),
            basis,
        })
    }

    /// Normal form of a homogeneous element: the unique combination of basis
    /// words congruent to it.
    pub fn project(&self, x: &TensorElement) -> Result<TensorElement> {
        let n = match x.homogeneous_degree()? {
            None => return Ok(self.alg.zero()),
            Some(n) => n,
        };
        self.check_degree(n)?;
        let d = self.alg.space().dim();
        let v = self.normal_vec(n, &to_sparse(x, d));
        self.alg.element(
            v.entries()
                .iter()
                .map(|(i, c)| (Word::from_index(*i, n, d), c.clone())),
        )
    }

    /// `π(x)` as coordinates on word indices of degree `n`.
    pub(crate) fn project_sparse(&self, x: &TensorElement, n: usize) -> SparseVec {
        let d = self.alg.space().dim();
        self.normal_vec(n, &to_sparse(x, d))
    }

    pub fn hilbert_series(&self, n: usize) -> Result<PowerSeries> {
        self.check_degree(n)?;
        let dims: Vec<i64> = (0..=n).map(|k| self.degrees[k].dim() as i64).collect();
        Ok(PowerSeries::from_i64s(&dims, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Preset;
    use crate::scalars::FieldSpec;

    fn quotient(preset: &str, kind: QuotientKind, n: usize) -> GradedQuotient {
        let p = Preset::parse(preset).unwrap();
        let f = p.default_field(n);
        let alg = Arc::new(FreeAlgebra::new(p.instantiate(f).unwrap()));
        GradedQuotient::new(alg, kind, n).unwrap()
    }

    fn dims(q: &GradedQuotient) -> Vec<i64> {
        q.hilbert_series(q.trunc()).unwrap().coeffs_i64().unwrap()
    }

    #[test]
    fn desk_dimensions() {
        assert_eq!(
            dims(&quotient("quantum-plane", QuotientKind::Nichols, 4)),
            [1, 2, 1, 0, 0]
        );
        assert_eq!(
            dims(&quotient("cartan-A2", QuotientKind::Nichols, 4)),
            [1, 2, 4, 6, 9]
        );
        assert_eq!(
            dims(&quotient("s3-rack", QuotientKind::Nichols, 6)),
            [1, 3, 4, 3, 1, 0, 0]
        );
        assert_eq!(
            dims(&quotient("quantum-plane", QuotientKind::Free, 6)),
            [1, 2, 4, 8, 16, 32, 64]
        );
    }

    #[test]
    fn presented_plane() {
        let p = Preset::parse("quantum-plane").unwrap();
        let f = FieldSpec::default_prime();
        let alg = Arc::new(FreeAlgebra::new(p.instantiate(f).unwrap()));
        let one = Scalar::one(f);
        let rels = vec![
            alg.element([(Word::parse("11").unwrap(), one.clone())])
                .unwrap(),
            alg.element([(Word::parse("22").unwrap(), one.clone())])
                .unwrap(),
            alg.element([
                (Word::parse("12").unwrap(), one.clone()),
                (Word::parse("21").unwrap(), -one.clone()),
            ])
            .unwrap(),
        ];
        let q = GradedQuotient::new(Arc::clone(&alg), QuotientKind::Presented(rels), 4).unwrap();
        assert_eq!(dims(&q), [1, 2, 1, 0, 0]);
        let x = alg.parse_word("12").unwrap();
        assert_eq!(q.project(&x).unwrap(), alg.parse_word("21").unwrap());
        assert_eq!(
            q.graded_data(2).unwrap().basis,
            vec![Word::parse("21").unwrap()]
        );
    }

    #[test]
    fn non_coideal_rejected() {
        let p = Preset::parse("quantum-plane").unwrap();
        let f = FieldSpec::default_prime();
        let alg = Arc::new(FreeAlgebra::new(p.instantiate(f).unwrap()));
        // x_1 x_2 alone: Δ has the term x_1 ⊗ x_2 which survives in R ⊗ R
        let rels = vec![alg.parse_word("12").unwrap()];
        assert!(matches!(
            GradedQuotient::new(alg, QuotientKind::Presented(rels), 3),
            Err(Error::NotCoideal { degree: 2 })
        ));
    }
}
