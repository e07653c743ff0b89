//! The quantum symmetrizer on `V^{⊗n}`.

use crate::error::{Error, Result};
use crate::freealg::{BraidedSpace, Direction};
use crate::linalg::Matrix;
use crate::scalars::Scalar;
use crate::words::Word;

/// Default cap on `d^n` for materialized degree-`n` matrices.
pub const DEFAULT_MAX_MATRIX: usize = 20000;

pub(crate) fn check_size(d: usize, n: usize, limit: usize) -> Result<usize> {
    match d.checked_pow(n as u32) {
        Some(size) if size <= limit => Ok(size),
        Some(size) => Err(Error::Resource { size, limit }),
        None => Err(Error::Resource {
            size: usize::MAX,
            limit,
        }),
    }
}

/// `S_n = sum over S_n of the braided lifts`, as a `d^n x d^n` matrix whose column
/// `w` holds the coordinates of `S_n(x_w)`.
///
/// Built from `S_n = (id ⊗ S_{n-1}) (1 + c_1 + c_1 c_2 + ... + c_1 ⋯ c_{n-1})`.
pub fn symmetrizer(space: &BraidedSpace, n: usize, limit: usize) -> Result<Matrix> {
    let d = space.dim();
    check_size(d, n, limit)?;
    let field = space.field();
    let mut m = Matrix::identity(field, 1);
    for k in 1..=n {
        m = step(space, &m, k);
    }
    Ok(m)
}

/// Degree-`k` symmetrizer from the degree-`k - 1` one.
fn step(space: &BraidedSpace, prev: &Matrix, k: usize) -> Matrix {
    let d = space.dim();
    let field = space.field();
    let tail = d.pow(k as u32 - 1);
    let size = tail * d;
    let mut m = Matrix::zeros(field, size, size);
    for (col, w) in Word::all_of_length(d, k).enumerate() {
        for (v, t) in coset_sum(space, &w) {
            let head = v.letters()[0] as usize - 1;
            let rest = v.slice(1, k).index(d);
            for row in 0..tail {
                if !prev.is_zero_entry(row, rest) {
                    m.add_to(head * tail + row, col, &(&t * &prev.get(row, rest)));
                }
            }
        }
    }
    m
}

/// `(1 + c_1 + c_1 c_2 + ... + c_1 ⋯ c_{k-1}) x_w`.
fn coset_sum(space: &BraidedSpace, w: &Word) -> Vec<(Word, Scalar)> {
    let k = w.len();
    let mut out = Vec::new();
    for j in 0..k {
        let prefix = w.slice(0, j + 1);
        for (v, c) in space.braid_blocks(&prefix, j, Direction::Forward) {
            let mut full = v;
            full.extend_from(&w.slice(j + 1, k));
            out.push((full, c));
        }
    }
    crate::freealg::consolidate(out)
}
