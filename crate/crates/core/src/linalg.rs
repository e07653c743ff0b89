//! Exact linear algebra over [`FieldSpec`] fields.
//!
//! [`Matrix`] is dense and row-major; prime-field matrices are stored as raw
//! residues so that elimination runs on machine words. [`SparseEchelon`] keeps an
//! incrementally built semi-echelon basis of sparse vectors and is used for the
//! span computations inside graded quotients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalars::{inv_mod, mul_mod, FieldSpec, Scalar};

trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - c * b`
    fn sub_mul(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
}

struct ModP(u64);

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let cb = mul_mod(*c, *b, self.0);
        if *a >= cb {
            a - cb
        } else {
            a + self.0 - cb
        }
    }
}

struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        a - c * b
    }
}

#[derive(Clone, PartialEq)]
enum Data {
    Prime(Vec<u64>),
    Rational(Vec<BigRational>),
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Data,
}

/// Reduced row-echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

fn rref_in_place<A: Arith>(ar: &A, data: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                data.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for k in c..cols {
            data[r * cols + k] = ar.mul(&data[r * cols + k], &inv);
        }
        let (head, tail) = data.split_at_mut(r * cols);
        let (pivot_row, rest) = tail.split_at_mut(cols);
        let eliminate = |row: &mut [A::E]| {
            let f = row[c].clone();
            if ar.is_zero(&f) {
                return;
            }
            for k in c..cols {
                if !ar.is_zero(&pivot_row[k]) {
                    row[k] = ar.sub_mul(&row[k], &f, &pivot_row[k]);
                }
            }
        };
        head.chunks_mut(cols).for_each(eliminate);
        rest.chunks_mut(cols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn matmul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, m: usize, k: usize) -> Vec<A::E> {
    // (n x m) * (m x k)
    let mut out = vec![ar.zero(); n * k];
    for i in 0..n {
        for j in 0..m {
            let x = &a[i * m + j];
            if ar.is_zero(x) {
                continue;
            }
            for l in 0..k {
                let y = &b[j * k + l];
                if !ar.is_zero(y) {
                    let t = ar.mul(x, y);
                    out[i * k + l] = ar.add(&out[i * k + l], &t);
                }
            }
        }
    }
    out
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field.modulus() {
            Some(_) => Data::Prime(vec![0; rows * cols]),
            None => Data::Rational(vec![BigRational::zero(); rows * cols]),
        };
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let idx = i * self.cols + j;
        match &self.data {
            Data::Prime(v) => Scalar::from_residue(self.field, v[idx]),
            Data::Rational(v) => Scalar::from_rational(self.field, &v[idx]).unwrap(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: &Scalar) {
        assert_eq!(x.field(), self.field, "scalar from another field");
        let idx = i * self.cols + j;
        match &mut self.data {
            Data::Prime(v) => v[idx] = x.residue().unwrap(),
            Data::Rational(v) => v[idx] = x.as_rational().unwrap().clone(),
        }
    }

    /// `self[i][j] += x`
    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, &(&cur + x));
    }

    pub fn is_zero_entry(&self, i: usize, j: usize) -> bool {
        let idx = i * self.cols + j;
        match &self.data {
            Data::Prime(v) => v[idx] == 0,
            Data::Rational(v) => v[idx].is_zero(),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Prime(v) => v.iter().all(|&x| x == 0),
            Data::Rational(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let (n, m, k) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Data::Prime(a), Data::Prime(b)) => {
                Data::Prime(matmul(&ModP(self.field.modulus().unwrap()), a, b, n, m, k))
            }
            (Data::Rational(a), Data::Rational(b)) => Data::Rational(matmul(&Rat, a, b, n, m, k)),
            _ => unreachable!(),
        };
        Matrix {
            field: self.field,
            rows: n,
            cols: k,
            data,
        }
    }

    /// `self * v` for a sparse column vector given as `(index, value)` pairs.
    pub fn mul_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.field); self.rows];
        match &self.data {
            Data::Prime(a) => {
                let ar = ModP(self.field.modulus().unwrap());
                let mut acc = vec![0u64; self.rows];
                for (j, x) in v {
                    let x = x.residue().unwrap();
                    for (i, slot) in acc.iter_mut().enumerate() {
                        let e = a[i * self.cols + j];
                        if e != 0 {
                            *slot = ar.add(slot, &ar.mul(&e, &x));
                        }
                    }
                }
                for (o, r) in out.iter_mut().zip(acc) {
                    *o = Scalar::from_residue(self.field, r);
                }
            }
            Data::Rational(_) => {
                for (j, x) in v {
                    for (i, o) in out.iter_mut().enumerate() {
                        if !self.is_zero_entry(i, *j) {
                            *o = &*o + &(&self.get(i, *j) * x);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_zero_entry(i, j) {
                    t.set(j, i, &self.get(i, j));
                }
            }
        }
        t
    }

    /// Reduced row-echelon form with zero rows dropped.
    pub fn rref(&self) -> Rref {
        let mut work = self.clone();
        let pivots = match &mut work.data {
            Data::Prime(v) => rref_in_place(
                &ModP(self.field.modulus().unwrap()),
                v,
                self.rows,
                self.cols,
            ),
            Data::Rational(v) => rref_in_place(&Rat, v, self.rows, self.cols),
        };
        let r = pivots.len();
        match &mut work.data {
            Data::Prime(v) => v.truncate(r * self.cols),
            Data::Rational(v) => v.truncate(r * self.cols),
        }
        work.rows = r;
        Rref {
            matrix: work,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if !self.is_zero_entry(i, j) {
                    aug.set(i, j, &self.get(i, j));
                }
            }
            aug.set(i, n + i, &Scalar::one(self.field));
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                if !red.matrix.is_zero_entry(i, n + j) {
                    inv.set(i, j, &red.matrix.get(i, n + j));
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse vector with sorted, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { entries }
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in pairs {
            match map.get_mut(&i) {
                Some(cur) => *cur = &*cur + &x,
                None => {
                    map.insert(i, x);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    /// `self - c * other`
    fn sub_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, -(c * &b[j].1)));
                j += 1;
            } else {
                let x = &a[i].1 - &(c * &b[j].1);
                if !x.is_zero() {
                    out.push((a[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    fn scaled(&self, c: &Scalar) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, c * x)).collect(),
        }
    }
}

/// Incrementally built basis in semi-echelon form: every stored row has a distinct
/// leading index with coefficient one.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    field: FieldSpec,
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec) -> Self {
        SparseEchelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Residual of `v` after cancelling leading terms against stored rows. The
    /// residual is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let Some((lead, c)) = v.lead().cloned() else {
                return v;
            };
            match self.rows.get(&lead) {
                Some(row) => v = v.sub_scaled(&c, row),
                None => return v,
            }
        }
    }

    /// Canonical representative of `v` modulo the span: no entry sits on a
    /// leading index.
    pub fn reduce_full(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0;
        loop {
            let hit = v
                .entries
                .iter()
                .find(|(i, _)| *i >= from && self.rows.contains_key(i))
                .cloned();
            match hit {
                None => return v,
                Some((i, c)) => {
                    v = v.sub_scaled(&c, &self.rows[&i]);
                    from = i + 1;
                }
            }
        }
    }

    pub fn is_lead(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis; returns `false` when `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.lead() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.rows.insert(lead, r.scaled(&inv));
                true
            }
        }
    }
}
