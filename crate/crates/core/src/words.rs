//! Words over a finite ordered alphabet `1 < 2 < ... < d`, Lyndon words, the
//! Chen–Fox–Lyndon factorization and Shirshov decompositions.
//!
//! Letters are small integers `1..=64`. The order on [`Word`] is the plain
//! lexicographic order in which a proper prefix is smaller than the word, so the
//! empty word is the smallest word of all.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 64;

pub type Letter = u8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(smallvec::smallvec![a])
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    /// Builds a word and checks that every letter lies in `1..=d`.
    pub fn over(letters: &[Letter], d: usize) -> Result<Self> {
        let w = Word::from_letters(letters);
        w.check_alphabet(d)?;
        Ok(w)
    }

    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        if d == 0 || d > MAX_ALPHABET {
            return invalid(format!("alphabet size {d} outside 1..={MAX_ALPHABET}"));
        }
        match self.0.iter().find(|&&a| a == 0 || a as usize > d) {
            Some(a) => invalid(format!("letter {a} outside alphabet 1..={d}")),
            None => Ok(()),
        }
    }

    /// Parses a digit string (`"1231"`) or a comma separated index list (`"10,3,11"`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = SmallVec::new();
        if s.contains(',') {
            for part in s.split(',') {
                let a: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter {part:?} in word {s:?}")))?;
                if a == 0 || a > MAX_ALPHABET {
                    return Err(Error::Parse(format!(
                        "letter {a} outside 1..={MAX_ALPHABET}"
                    )));
                }
                letters.push(a as Letter);
            }
        } else {
            for ch in s.chars() {
                match ch.to_digit(10) {
                    Some(a) if a > 0 => letters.push(a as Letter),
                    _ => return Err(Error::Parse(format!("bad letter {ch:?} in word {s:?}"))),
                }
            }
        }
        Ok(Word(letters))
    }

    /// Parses a word for an alphabet of size `d`: digit strings for `d <= 9`,
    /// comma separated indices otherwise.
    pub fn parse_for(s: &str, d: usize) -> Result<Self> {
        let s = s.trim();
        let w = if d > 9 && !s.is_empty() && !s.contains(',') {
            // a single letter index
            let a: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
            if a == 0 || a > MAX_ALPHABET {
                return Err(Error::Parse(format!(
                    "letter {a} outside 1..={MAX_ALPHABET}"
                )));
            }
            Word::letter(a as Letter)
        } else {
            Word::parse(s)?
        };
        w.check_alphabet(d)?;
        Ok(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.0[start..end])
    }

    pub fn pow(&self, m: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.len() * m);
        for _ in 0..m {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [Letter] {
        &mut self.0
    }

    /// Index of the word among all words of the same length, in lexicographic order.
    pub fn index(&self, d: usize) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &a| acc * d + (a as usize - 1))
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(mut idx: usize, len: usize, d: usize) -> Word {
        let mut v: SmallVec<[Letter; 16]> = smallvec::smallvec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % d) as Letter + 1;
            idx /= d;
        }
        Word(v)
    }

    /// All words of length `n` over `1..=d` in lexicographic order.
    pub fn all_of_length(d: usize, n: usize) -> impl Iterator<Item = Word> {
        let count = d.checked_pow(n as u32).unwrap_or(usize::MAX);
        (0..count).map(move |i| Word::from_index(i, n, d))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&a| a <= 9) {
            for a in &self.0 {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Orders words first by length, then lexicographically. This is the canonical
/// storage order for elements of the tensor algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DegLex(pub Word);

impl Ord for DegLex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DegLex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `true` iff `w` is strictly smaller than each of its proper right factors.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return invalid("the empty word is not a Lyndon word");
    }
    Ok(lyndon_prefix_len(w.letters(), 0) == w.len())
}

/// Length of the longest Lyndon prefix of `s[start..]` that is also the first
/// factor in Duval's algorithm, i.e. the first CFL factor.
fn lyndon_prefix_len(s: &[Letter], start: usize) -> usize {
    let n = s.len();
    let (mut j, mut k) = (start + 1, start);
    while j < n && s[k] <= s[j] {
        if s[k] < s[j] {
            k = start;
        } else {
            k += 1;
        }
        j += 1;
    }
    j - k
}

/// A non-increasing sequence of Lyndon words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MonotonicSuperWord {
    factors: Vec<Word>,
}

impl MonotonicSuperWord {
    pub fn empty() -> Self {
        MonotonicSuperWord {
            factors: Vec::new(),
        }
    }

    pub fn new(factors: Vec<Word>) -> Result<Self> {
        for f in &factors {
            if !is_lyndon(f)? {
                return invalid(format!("super-letter {f} is not a Lyndon word"));
            }
        }
        if let Some(pair) = factors.windows(2).find(|p| p[0] < p[1]) {
            return invalid(format!(
                "super-word is not monotonic: {} < {}",
                pair[0], pair[1]
            ));
        }
        Ok(MonotonicSuperWord { factors })
    }

    pub(crate) fn from_factors_unchecked(factors: Vec<Word>) -> Self {
        debug_assert!(factors.windows(2).all(|p| p[0] >= p[1]));
        MonotonicSuperWord { factors }
    }

    pub fn single(u: Word) -> Result<Self> {
        Self::new(vec![u])
    }

    /// `u^m`, which is monotonic whenever `u` is Lyndon.
    pub fn power(u: &Word, m: usize) -> Result<Self> {
        Self::new(vec![u.clone(); m])
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Word> {
        self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of super-letters.
    pub fn num_letters(&self) -> usize {
        self.factors.len()
    }

    /// Total length over the original alphabet.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Word::len).sum()
    }

    pub fn concat(&self) -> Word {
        let mut w = Word::empty();
        for f in &self.factors {
            w.extend_from(f);
        }
        w
    }

    /// Smallest super-letter, which is the last one.
    pub fn last(&self) -> Option<&Word> {
        self.factors.last()
    }

    /// `true` iff every super-letter is `>= u` (membership in `M_{\ge u}` when nonempty).
    pub fn letters_at_least(&self, u: &Word) -> bool {
        self.factors.last().is_none_or(|v| v >= u)
    }

    /// `true` iff every super-letter is `> u`.
    pub fn letters_greater(&self, u: &Word) -> bool {
        self.factors.last().is_none_or(|v| v > u)
    }
}

impl fmt::Display for MonotonicSuperWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "()");
        }
        for v in &self.factors {
            write!(f, "({v})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonotonicSuperWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Chen–Fox–Lyndon factorization by Duval's algorithm.
pub fn cfl_factorize(w: &Word) -> MonotonicSuperWord {
    let s = w.letters();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let (mut j, mut k) = (i + 1, i);
        while j < s.len() && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let period = j - k;
        while i <= k {
            factors.push(Word::from_letters(&s[i..i + period]));
            i += period;
        }
    }
    MonotonicSuperWord::from_factors_unchecked(factors)
}

/// A Lyndon word split as `left · right` with `right` the longest proper Lyndon
/// right factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShirshovPair {
    pub left: Word,
    pub right: Word,
}

pub fn shirshov(u: &Word) -> Result<ShirshovPair> {
    if u.len() < 2 {
        return invalid(format!(
            "Shirshov decomposition needs length >= 2, got {u:?}"
        ));
    }
    if !is_lyndon(u)? {
        return invalid(format!("{u} is not a Lyndon word"));
    }
    for cut in 1..u.len() {
        let right = u.slice(cut, u.len());
        if is_lyndon(&right)? {
            return Ok(ShirshovPair {
                left: u.slice(0, cut),
                right,
            });
        }
    }
    unreachable!("the last letter of a word is always a Lyndon right factor")
}

/// All Lyndon words of length `1..=max_len` over `1..=d`, in lexicographic order.
pub fn enumerate_lyndon(d: usize, max_len: usize) -> Result<Vec<Word>> {
    if d == 0 || d > MAX_ALPHABET {
        return invalid(format!("alphabet size {d} outside 1..={MAX_ALPHABET}"));
    }
    if max_len == 0 {
        return invalid("maximal length must be at least 1");
    }
    // Duval's generation algorithm visits Lyndon words in lexicographic order.
    let d = d as Letter;
    let mut out = Vec::new();
    let mut w: Vec<Letter> = vec![1];
    loop {
        out.push(Word::from_letters(&w));
        let m = w.len();
        while w.len() < max_len {
            let a = w[w.len() - m];
            w.push(a);
        }
        while w.last() == Some(&d) {
            w.pop();
        }
        match w.last_mut() {
            Some(a) => *a += 1,
            None => break,
        }
    }
    Ok(out)
}

/// Lexicographic comparison of monotonic super-words on the alphabet of
/// super-letters.
pub fn compare_superwords(a: &MonotonicSuperWord, b: &MonotonicSuperWord) -> Ordering {
    a.factors.cmp(&b.factors)
}

/// All monotonic super-words of total degree `n` whose super-letters come from
/// `letters`. `letters` must be sorted in decreasing order; the output lists
/// super-words in decreasing order.
pub fn monotonic_words_of_degree(letters: &[Word], n: usize) -> Vec<MonotonicSuperWord> {
    fn go(
        letters: &[Word],
        start: usize,
        remaining: usize,
        stack: &mut Vec<Word>,
        out: &mut Vec<MonotonicSuperWord>,
    ) {
        if remaining == 0 {
            out.push(MonotonicSuperWord::from_factors_unchecked(stack.clone()));
            return;
        }
        for (i, v) in letters.iter().enumerate().skip(start) {
            if v.len() <= remaining {
                stack.push(v.clone());
                go(letters, i, remaining - v.len(), stack, out);
                stack.pop();
            }
        }
    }
    debug_assert!(letters.windows(2).all(|p| p[0] > p[1]));
    let mut out = Vec::new();
    go(letters, 0, n, &mut Vec::new(), &mut out);
    out
}
