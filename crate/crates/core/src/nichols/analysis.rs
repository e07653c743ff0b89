//! Subquotients `A^<u>/I^<u>`, the Hilbert-series factorization, PBW data and
//! the nonnegativity check.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::quotient::GradedQuotient;
use crate::error::{invalid, Error, Result};
use crate::freealg::BracketKind;
use crate::linalg::SparseEchelon;
use crate::scalars::{multiplicative_order, Order, Scalar};
use crate::series::PowerSeries;
use crate::words::{
    enumerate_lyndon, is_lyndon, monotonic_words_of_degree, MonotonicSuperWord, Word,
};

/// For one degree `n`: whether `π([u]^m)`, `n = m|u|`, is independent of the images
/// of the other monotonic bracket words all of whose super-letters are `>= u`.
#[derive(Debug)]
pub(crate) struct Profile {
    hard: BTreeMap<Word, bool>,
}

/// `η(A^<u>/I^<u>, t)` truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubquotientSeries {
    pub u: Word,
    pub series: PowerSeries,
}

impl SubquotientSeries {
    pub fn to_json(&self) -> Value {
        json!({ "u": self.u.to_string(), "series": self.series })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub ok: bool,
    pub trunc: usize,
    /// The Hilbert series of `R`.
    pub lhs: PowerSeries,
    /// The product of all factors.
    pub rhs: PowerSeries,
    /// One factor per Lyndon word of length at most `trunc`, in lexicographic order.
    pub factors: Vec<SubquotientSeries>,
}

impl FactorizationReport {
    /// The report object; factors equal to `1` are listed only when `full` is set.
    pub fn to_json(&self, full: bool) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .filter(|f| full || f.series != PowerSeries::one(self.trunc))
            .map(SubquotientSeries::to_json)
            .collect();
        json!({
            "ok": self.ok,
            "trunc": self.trunc,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "factors": factors,
        })
    }
}

/// A PBW height; `Infinite` means no power relation up to the truncation degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => write!(f, "infinite"),
        }
    }
}

impl Height {
    fn to_json(self) -> Value {
        match self {
            Height::Finite(h) => json!(h),
            Height::Infinite => json!("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwGenerator {
    pub u: Word,
    pub height: Height,
}

/// Hard Lyndon words with their heights, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PBWDatum {
    pub trunc: usize,
    pub generators: Vec<PbwGenerator>,
}

impl PBWDatum {
    /// `prod_u (1 + t^{|u|} + ... + t^{(h_u - 1)|u|})`, with the full geometric
    /// series for infinite heights.
    pub fn series(&self) -> PowerSeries {
        let mut acc = PowerSeries::one(self.trunc);
        for g in &self.generators {
            let h = match g.height {
                Height::Finite(h) => Some(h),
                Height::Infinite => None,
            };
            let f = PowerSeries::truncated_geometric(g.u.len(), h, self.trunc);
            acc = acc.mul(&f).expect("same truncation");
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| json!({ "u": g.u.to_string(), "height": g.height.to_json() }))
            .collect();
        json!({ "trunc": self.trunc, "generators": gens })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegReport {
    pub ok: bool,
    pub u: Word,
    pub trunc: usize,
    /// Self-braiding scalar of `[x_u]`.
    pub q: Scalar,
    /// `None` when `u` contributes nothing to `R`.
    pub height: Option<Height>,
    pub factor: PowerSeries,
    pub nichols: PowerSeries,
    pub quotient: PowerSeries,
}

impl NonnegReport {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "u": self.u.to_string(),
            "trunc": self.trunc,
            "q": self.q.to_string(),
            "height": self.height.map_or(Value::Null, Height::to_json),
            "factor": self.factor,
            "nichols": self.nichols,
            "quotient": self.quotient,
        })
    }
}

impl GradedQuotient {
    fn check_lyndon(&self, u: &Word) -> Result<()> {
        u.check_alphabet(self.algebra().space().dim())?;
        if !is_lyndon(u)? {
            return invalid(format!("{u} is not a Lyndon word"));
        }
        Ok(())
    }

    fn require_diagonal(&self, what: &str) -> Result<()> {
        if !self.algebra().space().is_diagonal() {
            return Err(Error::Unsupported(format!(
                "{what} requires a diagonal braiding"
            )));
        }
        Ok(())
    }

    fn bracket_image(&self, w: &MonotonicSuperWord, n: usize) -> Result<crate::linalg::SparseVec> {
        let x = self.algebra().bracket_word(w, BracketKind::Left)?;
        Ok(self.project_sparse(&x, n))
    }

    pub(crate) fn profile(&self, n: usize) -> Result<Arc<Profile>> {
        if let Some(p) = self.profiles.read().expect("profile lock").get(&n) {
            return Ok(Arc::clone(p));
        }
        let p = Arc::new(self.compute_profile(n)?);
        let mut w = self.profiles.write().expect("profile lock");
        Ok(Arc::clone(w.entry(n).or_insert(p)))
    }

    fn compute_profile(&self, n: usize) -> Result<Profile> {
        let space = self.algebra().space();
        let mut letters = enumerate_lyndon(space.dim(), n)?;
        letters.reverse();
        let mut groups: BTreeMap<Word, Vec<MonotonicSuperWord>> = BTreeMap::new();
        for w in monotonic_words_of_degree(&letters, n) {
            let last = w.last().expect("nonempty").clone();
            groups.entry(last).or_default().push(w);
        }
        let mut ech = SparseEchelon::new(space.field());
        let mut hard = BTreeMap::new();
        for (v, group) in groups.iter().rev() {
            let power = n
                .is_multiple_of(v.len())
                .then(|| MonotonicSuperWord::power(v, n / v.len()).expect("Lyndon"));
            for w in group.iter().filter(|w| Some(*w) != power.as_ref()) {
                ech.insert(&self.bracket_image(w, n)?);
            }
            if let Some(p) = &power {
                hard.insert(v.clone(), ech.insert(&self.bracket_image(p, n)?));
            }
        }
        debug_assert_eq!(ech.rank(), self.degree_data(n).dim());
        Ok(Profile { hard })
    }

    fn factor_series(&self, u: &Word, trunc: usize) -> Result<PowerSeries> {
        let mut coeffs = vec![0i64; trunc + 1];
        coeffs[0] = 1;
        let mut m = 1;
        while m * u.len() <= trunc {
            if self.profile(m * u.len())?.hard[u] {
                coeffs[m * u.len()] = 1;
            }
            m += 1;
        }
        Ok(PowerSeries::from_i64s(&coeffs, trunc))
    }

    /// `η(A^<u>/I^<u>, t)` modulo `t^{N+1}`.
    pub fn subquotient_series(&self, u: &Word, trunc: usize) -> Result<SubquotientSeries> {
        self.check_lyndon(u)?;
        self.check_degree(trunc)?;
        Ok(SubquotientSeries {
            u: u.clone(),
            series: self.factor_series(u, trunc)?,
        })
    }

    /// Compares `η(R, t)` with the product of the subquotient series over all
    /// Lyndon words of length at most `N`.
    pub fn verify_factorization(&self, trunc: usize) -> Result<FactorizationReport> {
        self.check_degree(trunc)?;
        let lhs = self.hilbert_series(trunc)?;
        let mut rhs = PowerSeries::one(trunc);
        let mut factors = Vec::new();
        if trunc > 0 {
            for u in enumerate_lyndon(self.algebra().space().dim(), trunc)? {
                let series = self.factor_series(&u, trunc)?;
                rhs = rhs.mul(&series)?;
                factors.push(SubquotientSeries { u, series });
            }
        }
        Ok(FactorizationReport {
            ok: lhs == rhs,
            trunc,
            lhs,
            rhs,
            factors,
        })
    }

    /// Hard Lyndon words and their heights up to degree `N`.
    ///
    /// Degrees are processed in increasing order. In degree `n` the restricted
    /// monotonic words in the generators found so far are inserted in decreasing
    /// order; a pure power `u^m` dependent on the words before it fixes the height
    /// of `u` at `m`. Lyndon words of length `n` are then accepted in increasing
    /// order when their bracket is independent of everything inserted.
    pub fn pbw_data(&self, trunc: usize) -> Result<PBWDatum> {
        self.require_diagonal("pbw_data")?;
        self.check_degree(trunc)?;
        let space = self.algebra().space();
        let mut gens: Vec<(Word, Option<usize>)> = Vec::new();
        for n in 1..=trunc {
            let mut ech = SparseEchelon::new(space.field());
            let mut letters: Vec<Word> = gens.iter().map(|(u, _)| u.clone()).collect();
            letters.sort_unstable_by(|a, b| b.cmp(a));
            let heights: BTreeMap<Word, Option<usize>> = gens.iter().cloned().collect();
            for w in monotonic_words_of_degree(&letters, n) {
                if !restricted(&w, &heights) {
                    continue;
                }
                let x = self.bracket_image(&w, n)?;
                let independent = ech.insert(&x);
                if let Some((u, m)) = pure_power(&w) {
                    if !independent && heights[u].is_none() {
                        let u = u.clone();
                        gens.iter_mut().find(|(g, _)| *g == u).expect("generator").1 = Some(m);
                    }
                }
            }
            for u in enumerate_lyndon(space.dim(), n)?
                .into_iter()
                .filter(|u| u.len() == n)
            {
                let x = self.bracket_image(&MonotonicSuperWord::single(u.clone())?, n)?;
                if ech.insert(&x) {
                    gens.push((u, None));
                }
            }
        }
        gens.sort();
        Ok(PBWDatum {
            trunc,
            generators: gens
                .into_iter()
                .map(|(u, h)| PbwGenerator {
                    u,
                    height: h.map_or(Height::Infinite, Height::Finite),
                })
                .collect(),
        })
    }

    /// Divides the subquotient series of `u` by the Hilbert series, in `t^{|u|}`,
    /// of the rank-one Nichols algebra with the self-braiding of `[x_u]`.
    pub fn nonneg_quotient_check(&self, u: &Word, trunc: usize) -> Result<NonnegReport> {
        self.require_diagonal("nonneg_quotient_check")?;
        self.check_lyndon(u)?;
        self.check_degree(trunc)?;
        if u.len() > trunc {
            return invalid(format!("|{u}| exceeds the truncation {trunc}"));
        }
        let space = self.algebra().space();
        let q = space.block_q(u).expect("diagonal");
        let factor = self.factor_series(u, trunc)?;
        let dead = factor.coeff(u.len()).sign() == num_bigint::Sign::NoSign;
        let (height, nichols) = if dead {
            (None, PowerSeries::one(trunc))
        } else {
            let h = rank_one_height(&q)?;
            let bound = match h {
                Height::Finite(h) => Some(h),
                Height::Infinite => None,
            };
            (
                Some(h),
                PowerSeries::truncated_geometric(u.len(), bound, trunc),
            )
        };
        let quotient = factor.div(&nichols)?;
        Ok(NonnegReport {
            ok: quotient.all_coeffs_nonneg(),
            u: u.clone(),
            trunc,
            q,
            height,
            factor,
            nichols,
            quotient,
        })
    }
}

/// Least `h >= 2` with `(h)_q = 1 + q + ... + q^{h-1} = 0`.
fn rank_one_height(q: &Scalar) -> Result<Height> {
    if q.is_one() {
        return Ok(match q.field().characteristic() {
            0 => Height::Infinite,
            p => Height::Finite(p as usize),
        });
    }
    Ok(match multiplicative_order(q)? {
        Order::Finite(m) => Height::Finite(m as usize),
        Order::Infinite => Height::Infinite,
    })
}

fn pure_power(w: &MonotonicSuperWord) -> Option<(&Word, usize)> {
    let f = w.factors();
    let u = f.first()?;
    (f.len() >= 2 && f.iter().all(|x| x == u)).then_some((u, f.len()))
}

/// No run of a generator reaches its height.
fn restricted(w: &MonotonicSuperWord, heights: &BTreeMap<Word, Option<usize>>) -> bool {
    let f = w.factors();
    let mut i = 0;
    while i < f.len() {
        let mut j = i;
        while j < f.len() && f[j] == f[i] {
            j += 1;
        }
        if let Some(Some(h)) = heights.get(&f[i]) {
            if j - i >= *h {
                return false;
            }
        }
        i = j;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{FreeAlgebra, Preset};
    use crate::nichols::QuotientKind;

    fn quotient(preset: &str, kind: QuotientKind, n: usize) -> GradedQuotient {
        let p = Preset::parse(preset).unwrap();
        let f = p.default_field(n);
        let alg = Arc::new(FreeAlgebra::new(p.instantiate(f).unwrap()));
        GradedQuotient::new(alg, kind, n).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn series(c: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_i64s(c, n)
    }

    #[test]
    fn subquotients() {
        let q = quotient("generic-diagonal(2)", QuotientKind::Free, 6);
        assert_eq!(
            q.subquotient_series(&w("12"), 6).unwrap().series,
            series(&[1, 0, 1, 0, 1, 0, 1], 6)
        );
        let q = quotient("quantum-plane", QuotientKind::Nichols, 6);
        assert_eq!(
            q.subquotient_series(&w("1"), 6).unwrap().series,
            series(&[1, 1], 6)
        );
        assert_eq!(
            q.subquotient_series(&w("1112"), 3).unwrap().series,
            PowerSeries::one(3)
        );
        assert!(q.subquotient_series(&w("21"), 6).is_err());
    }

    #[test]
    fn factorizations() {
        let q = quotient("quantum-plane", QuotientKind::Nichols, 6);
        let r = q.verify_factorization(6).unwrap();
        assert!(r.ok);
        let nontrivial: Vec<String> = r
            .factors
            .iter()
            .filter(|f| f.series != PowerSeries::one(6))
            .map(|f| f.u.to_string())
            .collect();
        assert_eq!(nontrivial, ["1", "2"]);
        let q = quotient("cartan-A2", QuotientKind::Nichols, 6);
        assert!(q.verify_factorization(6).unwrap().ok);
    }

    #[test]
    fn pbw() {
        let q = quotient("quantum-plane", QuotientKind::Nichols, 6);
        let p = q.pbw_data(6).unwrap();
        assert_eq!(
            p.generators,
            vec![
                PbwGenerator {
                    u: w("1"),
                    height: Height::Finite(2)
                },
                PbwGenerator {
                    u: w("2"),
                    height: Height::Finite(2)
                },
            ]
        );
        let q = quotient("cartan-A2", QuotientKind::Nichols, 6);
        let p = q.pbw_data(6).unwrap();
        let us: Vec<String> = p.generators.iter().map(|g| g.u.to_string()).collect();
        assert_eq!(us, ["1", "12", "2"]);
        assert!(p.generators.iter().all(|g| g.height == Height::Infinite));
        assert_eq!(p.series(), q.hilbert_series(6).unwrap());
        let q = quotient("s3-rack", QuotientKind::Nichols, 3);
        assert!(matches!(q.pbw_data(3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn nonneg() {
        let q = quotient("quantum-plane", QuotientKind::Nichols, 6);
        for u in ["1", "12"] {
            let r = q.nonneg_quotient_check(&w(u), 6).unwrap();
            assert!(r.ok);
            assert_eq!(r.quotient, PowerSeries::one(6));
        }
    }
}
