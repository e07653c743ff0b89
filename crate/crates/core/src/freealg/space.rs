//! Braided vector spaces with an explicit braiding on the basis `x_1, ..., x_d`.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{FieldSpec, Scalar};
use crate::words::{Letter, Word, MAX_ALPHABET};

static NEXT_SPACE_ID: AtomicU64 = AtomicU64::new(1);

/// A braiding given either by scalars `c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i` or by a full
/// `d^2 x d^2` matrix.
///
/// For the general form the column indexed by the pair `(i, j)` holds the coordinates
/// of `c(x_i ⊗ x_j)`; pairs are numbered `(i - 1) d + (j - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Braiding {
    Diagonal(Vec<Vec<Scalar>>),
    General(Matrix),
}

/// Direction of a braid crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

type PairImage = Vec<(Letter, Letter, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub invertible: bool,
    pub braid_equation: bool,
    /// First basis triple (lexicographic, 1-based letters) on which the braid
    /// equation fails.
    pub failing_triple: Option<[usize; 3]>,
}

#[derive(Clone, Debug)]
pub struct BraidedSpace {
    id: u64,
    field: FieldSpec,
    dim: usize,
    braiding: Braiding,
    forward: Vec<PairImage>,
    inverse: Vec<PairImage>,
}

fn braiding_matrix(field: FieldSpec, dim: usize, braiding: &Braiding) -> Result<Matrix> {
    let n = dim * dim;
    match braiding {
        Braiding::General(m) => {
            if m.rows() != n || m.cols() != n {
                return invalid(format!(
                    "general braiding must be {n}x{n}, got {}x{}",
                    m.rows(),
                    m.cols()
                ));
            }
            if m.field() != field {
                return invalid("braiding matrix over a different field");
            }
            Ok(m.clone())
        }
        Braiding::Diagonal(q) => {
            if q.len() != dim || q.iter().any(|row| row.len() != dim) {
                return invalid(format!("diagonal braiding must be {dim}x{dim}"));
            }
            let mut m = Matrix::zeros(field, n, n);
            for (i, row) in q.iter().enumerate() {
                for (j, qij) in row.iter().enumerate() {
                    if qij.field() != field {
                        return invalid("braiding entry over a different field");
                    }
                    // c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i
                    m.set(j * dim + i, i * dim + j, qij);
                }
            }
            Ok(m)
        }
    }
}

fn pair_images(m: &Matrix, dim: usize) -> Vec<PairImage> {
    let n = dim * dim;
    (0..n)
        .map(|col| {
            (0..n)
                .filter(|&row| !m.is_zero_entry(row, col))
                .map(|row| {
                    (
                        (row / dim + 1) as Letter,
                        (row % dim + 1) as Letter,
                        m.get(row, col),
                    )
                })
                .collect()
        })
        .collect()
}

/// Applies `c` (as a linear map given by its pair images) at position `pos` of
/// each word of a sparse vector.
fn apply_at(
    images: &[PairImage],
    dim: usize,
    terms: &[(Word, Scalar)],
    pos: usize,
) -> Vec<(Word, Scalar)> {
    let mut out: Vec<(Word, Scalar)> = Vec::with_capacity(terms.len());
    for (w, coeff) in terms {
        let l = w.letters();
        let idx = (l[pos] as usize - 1) * dim + (l[pos + 1] as usize - 1);
        for (a, b, s) in &images[idx] {
            let mut w2 = w.clone();
            let letters = w2.letters_mut();
            letters[pos] = *a;
            letters[pos + 1] = *b;
            out.push((w2, coeff * s));
        }
    }
    consolidate(out)
}

pub(crate) fn consolidate(mut terms: Vec<(Word, Scalar)>) -> Vec<(Word, Scalar)> {
    if terms.len() <= 1 {
        terms.retain(|(_, c)| !c.is_zero());
        return terms;
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Word, Scalar)> = Vec::with_capacity(terms.len());
    for (w, c) in terms {
        match out.last_mut() {
            Some((lw, lc)) if *lw == w => *lc = &*lc + &c,
            _ => out.push((w, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Checks invertibility and the braid equation `(c⊗1)(1⊗c)(c⊗1) = (1⊗c)(c⊗1)(1⊗c)`
/// on every basis triple.
pub fn validate_braiding(
    field: FieldSpec,
    dim: usize,
    braiding: &Braiding,
) -> Result<ValidationReport> {
    if dim == 0 || dim > MAX_ALPHABET {
        return invalid(format!("dimension {dim} outside 1..={MAX_ALPHABET}"));
    }
    let m = braiding_matrix(field, dim, braiding)?;
    let invertible = m.inverse().is_some();
    let images = pair_images(&m, dim);
    let mut failing = None;
    'triples: for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                let start = vec![(
                    Word::from_letters(&[i as u8, j as u8, k as u8]),
                    Scalar::one(field),
                )];
                let mut lhs = start.clone();
                for pos in [0, 1, 0] {
                    lhs = apply_at(&images, dim, &lhs, pos);
                }
                let mut rhs = start;
                for pos in [1, 0, 1] {
                    rhs = apply_at(&images, dim, &rhs, pos);
                }
                if lhs != rhs {
                    failing = Some([i, j, k]);
                    break 'triples;
                }
            }
        }
    }
    Ok(ValidationReport {
        ok: invertible && failing.is_none(),
        invertible,
        braid_equation: failing.is_none(),
        failing_triple: failing,
    })
}

impl BraidedSpace {
    /// Validates the braiding and precomputes the basis images of `c` and `c^{-1}`.
    pub fn new(field: FieldSpec, dim: usize, braiding: Braiding) -> Result<Self> {
        let report = validate_braiding(field, dim, &braiding)?;
        if !report.invertible {
            return Err(Error::SingularBraiding);
        }
        if let Some(triple) = report.failing_triple {
            return Err(Error::BraidEquation { triple });
        }
        let m = braiding_matrix(field, dim, &braiding)?;
        let inv = m.inverse().ok_or(Error::SingularBraiding)?;
        Ok(BraidedSpace {
            id: NEXT_SPACE_ID.fetch_add(1, AtomicOrdering::Relaxed),
            field,
            dim,
            forward: pair_images(&m, dim),
            inverse: pair_images(&inv, dim),
            braiding,
        })
    }

    pub fn diagonal(field: FieldSpec, q: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = q.len();
        Self::new(field, dim, Braiding::Diagonal(q))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.braiding, Braiding::Diagonal(_))
    }

    /// `q_ij` of a diagonal braiding (1-based letters).
    pub fn q(&self, i: Letter, j: Letter) -> Option<&Scalar> {
        match &self.braiding {
            Braiding::Diagonal(q) => Some(&q[i as usize - 1][j as usize - 1]),
            Braiding::General(_) => None,
        }
    }

    /// The full `d^2 x d^2` matrix of `c`.
    pub fn matrix(&self) -> Matrix {
        braiding_matrix(self.field, self.dim, &self.braiding).expect("validated at construction")
    }

    /// Applies `c` or `c^{-1}` to positions `pos, pos + 1` of every word.
    pub fn apply_crossing(
        &self,
        terms: &[(Word, Scalar)],
        pos: usize,
        dir: Direction,
    ) -> Vec<(Word, Scalar)> {
        let images = match dir {
            Direction::Forward => &self.forward,
            Direction::Inverse => &self.inverse,
        };
        apply_at(images, self.dim, terms, pos)
    }

    /// Braids the block of the first `m` letters past the remaining ones:
    /// `c` or `c^{-1}` on `T_m ⊗ T_k`, returned as words of the concatenated shape
    /// `T_k ⊗ T_m`.
    pub fn braid_blocks(&self, word: &Word, m: usize, dir: Direction) -> Vec<(Word, Scalar)> {
        let n = word.len();
        let k = n - m;
        let mut terms = vec![(word.clone(), Scalar::one(self.field))];
        if m == 0 || k == 0 {
            return terms;
        }
        match dir {
            Direction::Forward => {
                for i in (0..m).rev() {
                    for pos in i..i + k {
                        terms = self.apply_crossing(&terms, pos, dir);
                    }
                }
            }
            Direction::Inverse => {
                for j in 0..k {
                    for pos in (j..m + j).rev() {
                        terms = self.apply_crossing(&terms, pos, dir);
                    }
                }
            }
        }
        terms
    }

    /// Self-braiding scalar of the letter block `u` in a diagonal braiding:
    /// the product of `q_{ab}` over all ordered pairs of letters of `u`.
    pub fn block_q(&self, u: &Word) -> Option<Scalar> {
        let mut acc = Scalar::one(self.field);
        for &a in u.letters() {
            for &b in u.letters() {
                acc = &acc * self.q(a, b)?;
            }
        }
        Some(acc)
    }
}
