#![allow(dead_code)]

use lyndon_hilbert::{BraidedSpace, FieldSpec, Scalar, Word};
use rand::Rng;

pub const P: u64 = 10007;

pub fn fp() -> FieldSpec {
    FieldSpec::prime(P).unwrap()
}

/// Diagonal space with `q_ij = entries[(i-1) d + (j-1)]`, entries taken mod p.
pub fn diag_space(field: FieldSpec, d: usize, entries: &[u64]) -> BraidedSpace {
    let q = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| Scalar::from_i64(field, entries[i * d + j] as i64))
                .collect()
        })
        .collect();
    BraidedSpace::diagonal(field, q).unwrap()
}

pub fn random_diag(rng: &mut impl Rng, d: usize) -> BraidedSpace {
    let entries: Vec<u64> = (0..d * d).map(|_| rng.gen_range(1..P)).collect();
    diag_space(fp(), d, &entries)
}

/// Definition check: strictly smaller than every proper rotation.
pub fn lyndon_by_rotation(w: &[u8]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|k| {
            let rot: Vec<u8> = w[k..].iter().chain(&w[..k]).copied().collect();
            w < rot.as_slice()
        })
}

/// Every way to write `w` as a non-increasing product of Lyndon words.
pub fn all_monotonic_lyndon_factorizations(w: &[u8]) -> Vec<Vec<Vec<u8>>> {
    fn go(w: &[u8], bound: Option<&[u8]>, acc: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if w.is_empty() {
            out.push(acc.clone());
            return;
        }
        for k in 1..=w.len() {
            let head = &w[..k];
            if !lyndon_by_rotation(head) || bound.is_some_and(|b| head > b) {
                continue;
            }
            acc.push(head.to_vec());
            go(&w[k..], Some(head), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, None, &mut Vec::new(), &mut out);
    out
}

pub fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

/// Number of Lyndon words of length `n` over `d` letters by exhaustive search.
pub fn count_lyndon_exhaustive(d: usize, n: usize) -> usize {
    Word::all_of_length(d, n)
        .filter(|w| lyndon_by_rotation(w.letters()))
        .count()
}

pub mod checks {
    //! Invariant checks shared by the property tests and the acceptance run.
    //! Each returns a description of the first violation.

    use std::collections::BTreeMap;

    use lyndon_hilbert::freealg::{BracketKind, Direction};
    use lyndon_hilbert::words::{compare_superwords, monotonic_words_of_degree};
    use lyndon_hilbert::{
        cfl_factorize, enumerate_lyndon, FreeAlgebra, MonotonicSuperWord, Scalar, TensorElement,
        TensorPair, Word,
    };

    pub type Check = Result<(), String>;

    fn letters_desc(d: usize, n: usize) -> Vec<Word> {
        let mut l = enumerate_lyndon(d, n).unwrap();
        l.reverse();
        l
    }

    pub fn triangularity(alg: &FreeAlgebra, max_deg: usize) -> Check {
        let d = alg.space().dim();
        let letters = letters_desc(d, max_deg);
        for n in 1..=max_deg {
            for w in monotonic_words_of_degree(&letters, n) {
                let x = alg
                    .bracket_word(&w, BracketKind::Left)
                    .map_err(|e| e.to_string())?;
                let (lead, c) = alg.leading_vector(&x).map_err(|e| e.to_string())?;
                if lead != w.concat() || !c.is_one() {
                    return Err(format!("leading vector of [{w}] is {c}*x{lead}"));
                }
            }
        }
        Ok(())
    }

    /// Every word is recovered from its coordinates in the bracket-word basis, and
    /// the basis has `d^n` elements in degree `n`.
    pub fn direct_sum(alg: &FreeAlgebra, max_deg: usize) -> Check {
        let d = alg.space().dim();
        let letters = letters_desc(d, max_deg);
        for n in 1..=max_deg {
            let count = monotonic_words_of_degree(&letters, n).len();
            if count != d.pow(n as u32) {
                return Err(format!("{count} monotonic super-words in degree {n}"));
            }
            for w in Word::all_of_length(d, n) {
                let x = alg.word(&w).unwrap();
                let coords = alg.expand_monotonic_basis(&x).map_err(|e| e.to_string())?;
                let mut back = alg.zero();
                for (sw, c) in &coords {
                    back = back
                        .checked_add(&alg.bracket_word(sw, BracketKind::Left).unwrap().scale(c))
                        .unwrap();
                }
                if back != x {
                    return Err(format!("expansion of x{w} does not reconstruct it"));
                }
            }
        }
        Ok(())
    }

    pub fn khal6_support(alg: &FreeAlgebra, max_deg: usize) -> Check {
        let ls = enumerate_lyndon(alg.space().dim(), max_deg).unwrap();
        for u in &ls {
            for v in ls.iter().filter(|v| *v > u && u.len() + v.len() <= max_deg) {
                let x = alg
                    .binary_bracket(
                        &alg.bracket(u, BracketKind::Left).unwrap(),
                        &alg.bracket(v, BracketKind::Left).unwrap(),
                        BracketKind::Left,
                    )
                    .unwrap();
                let uv = u.concat(v);
                for (sw, _) in alg.expand_monotonic_basis(&x).map_err(|e| e.to_string())? {
                    if !sw.letters_at_least(&uv) {
                        return Err(format!("[[{u}],[{v}]] involves {sw}, below {uv}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Left legs of the reduced coproduct of `[u]`, grouped by right leg, expand
    /// over super-words with all super-letters `> u`.
    pub fn coproduct_support(alg: &FreeAlgebra, max_deg: usize) -> Check {
        for u in enumerate_lyndon(alg.space().dim(), max_deg).unwrap() {
            let x = alg.bracket(&u, BracketKind::Left).unwrap();
            let delta = alg.coproduct(&x).unwrap();
            let mut by_right: BTreeMap<Word, TensorElement> = BTreeMap::new();
            for (a, b, c) in delta.terms() {
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let e = by_right.entry(b.clone()).or_insert_with(|| alg.zero());
                *e = e.checked_add(&alg.word(a).unwrap().scale(c)).unwrap();
            }
            // the primitive part must be exactly [u] ⊗ 1 + 1 ⊗ [u]
            let prim = TensorPair::tensor(&x, &alg.one())
                .unwrap()
                .checked_add(&TensorPair::tensor(&alg.one(), &x).unwrap())
                .unwrap();
            for (a, b, c) in delta
                .terms()
                .filter(|(a, b, _)| a.is_empty() || b.is_empty())
            {
                if prim.coeff(a, b) != *c {
                    return Err(format!(
                        "outer part of the coproduct of [{u}] is wrong at {a}|{b}"
                    ));
                }
            }
            for (b, left) in by_right {
                for (sw, _) in alg
                    .expand_monotonic_basis(&left)
                    .map_err(|e| e.to_string())?
                {
                    if sw.is_empty() || !sw.letters_greater(&u) {
                        return Err(format!("coproduct of [{u}] has left leg {sw} against x{b}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `S([u]) = sign * [[u]]` with `sign` computed from `|u|`.
    pub fn antipode_of_brackets(
        alg: &FreeAlgebra,
        max_deg: usize,
        sign: impl Fn(usize) -> i64,
    ) -> Check {
        let f = alg.space().field();
        for u in enumerate_lyndon(alg.space().dim(), max_deg).unwrap() {
            let s = alg
                .antipode(&alg.bracket(&u, BracketKind::Left).unwrap())
                .unwrap();
            let dbl = alg.bracket(&u, BracketKind::Double).unwrap();
            if s != dbl.scale(&Scalar::from_i64(f, sign(u.len()))) {
                return Err(format!("S([{u}]) = {s}, double bracket {dbl}"));
            }
        }
        Ok(())
    }

    pub fn etim2(alg: &FreeAlgebra, max_deg: usize) -> Check {
        let ls = enumerate_lyndon(alg.space().dim(), max_deg).unwrap();
        let mut seqs: Vec<Vec<Word>> = ls.iter().map(|u| vec![u.clone()]).collect();
        let mut frontier = seqs.clone();
        for _ in 1..3 {
            let mut next = Vec::new();
            for s in &frontier {
                let deg: usize = s.iter().map(Word::len).sum();
                for v in ls.iter().filter(|v| deg + v.len() <= max_deg) {
                    let mut t = s.clone();
                    t.push(v.clone());
                    next.push(t);
                }
            }
            seqs.extend(next.iter().cloned());
            frontier = next;
        }
        for s in seqs {
            let mut x = alg.one();
            let mut w = Word::empty();
            for v in &s {
                x = alg
                    .multiply(&x, &alg.bracket(v, BracketKind::Left).unwrap())
                    .unwrap();
                w = w.concat(v);
            }
            let bound = cfl_factorize(&w);
            for (sw, _) in alg.expand_monotonic_basis(&x).map_err(|e| e.to_string())? {
                if compare_superwords(&sw, &bound) == std::cmp::Ordering::Less {
                    let names: Vec<String> = s.iter().map(Word::to_string).collect();
                    return Err(format!(
                        "product of [{}] involves {sw} < {bound}",
                        names.join("],[")
                    ));
                }
            }
        }
        Ok(())
    }

    pub type Triple = BTreeMap<(Word, Word, Word), Scalar>;

    fn add_triple(t: &mut Triple, k: (Word, Word, Word), c: Scalar) {
        let e = t.entry(k).or_insert_with(|| Scalar::zero(c.field()));
        *e = e.checked_add(&c).unwrap();
    }

    fn nonzero(t: Triple) -> Triple {
        t.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn coassociativity(alg: &FreeAlgebra, x: &TensorElement) -> Check {
        let d = alg.coproduct(x).unwrap();
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for (a, b, c) in d.terms() {
            for (a1, a2, c1) in alg.coproduct(&alg.word(a).unwrap()).unwrap().terms() {
                add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
            }
            for (b1, b2, c2) in alg.coproduct(&alg.word(b).unwrap()).unwrap().terms() {
                add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
            }
        }
        if nonzero(left) != nonzero(right) {
            return Err(format!("coassociativity fails on {x}"));
        }
        if alg.counit_pair_left(&d).unwrap() != *x || alg.counit_pair_right(&d).unwrap() != *x {
            return Err(format!("counit law fails on {x}"));
        }
        Ok(())
    }

    pub fn coproduct_multiplicative(
        alg: &FreeAlgebra,
        x: &TensorElement,
        y: &TensorElement,
    ) -> Check {
        let lhs = alg.coproduct(&alg.multiply(x, y).unwrap()).unwrap();
        let rhs = alg
            .braided_tensor_mul(&alg.coproduct(x).unwrap(), &alg.coproduct(y).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!("coproduct is not multiplicative on {x}, {y}"));
        }
        Ok(())
    }

    pub fn antipode_axiom(alg: &FreeAlgebra, x: &TensorElement) -> Check {
        let mut acc = alg.zero();
        for (a, b, c) in alg.coproduct(x).unwrap().terms() {
            let sa = alg.antipode(&alg.word(a).unwrap()).unwrap();
            acc = acc
                .checked_add(&alg.multiply(&sa, &alg.word(b).unwrap()).unwrap().scale(c))
                .unwrap();
        }
        let eps = alg.one().scale(&alg.counit(x).unwrap());
        if acc != eps {
            return Err(format!("m(S ⊗ id)Δ({x}) = {acc}"));
        }
        Ok(())
    }

    /// `[x, yz] = [x, y] z + Σ ^x y [x^y, z]` with `c^{-1}(x ⊗ y) = Σ ^x y ⊗ x^y`.
    pub fn subskew(
        alg: &FreeAlgebra,
        x: &TensorElement,
        y: &TensorElement,
        z: &TensorElement,
    ) -> Check {
        let br = |a: &TensorElement, b: &TensorElement| {
            alg.binary_bracket(a, b, BracketKind::Left).unwrap()
        };
        let lhs = br(x, &alg.multiply(y, z).unwrap());
        let mut rhs = alg.multiply(&br(x, y), z).unwrap();
        for (a, b, c) in alg.braid_apply(x, y, Direction::Inverse).unwrap().terms() {
            let t = alg
                .multiply(&alg.word(a).unwrap(), &br(&alg.word(b).unwrap(), z))
                .unwrap();
            rhs = rhs.checked_add(&t.scale(c)).unwrap();
        }
        if lhs != rhs {
            return Err(format!("subskew identity fails for {x}, {y}, {z}"));
        }
        Ok(())
    }

    /// Unused by some targets.
    pub fn superword(factors: &[&str]) -> MonotonicSuperWord {
        MonotonicSuperWord::new(factors.iter().map(|s| Word::parse(s).unwrap()).collect()).unwrap()
    }
}
