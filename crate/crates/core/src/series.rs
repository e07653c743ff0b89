//! Truncated power series in one variable with integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::words::enumerate_lyndon;

/// `c_0 + c_1 t + ... + c_N t^N` modulo `t^{N+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl PowerSeries {
    /// Series with the given coefficients; the truncation degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a truncated series needs at least the constant coefficient");
        }
        Ok(PowerSeries { coeffs })
    }

    /// Pads or truncates `coeffs` to degree `trunc`.
    pub fn from_i64s(coeffs: &[i64], trunc: usize) -> Self {
        let mut c: Vec<BigInt> = coeffs
            .iter()
            .take(trunc + 1)
            .map(|&x| BigInt::from(x))
            .collect();
        c.resize(trunc + 1, BigInt::zero());
        PowerSeries { coeffs: c }
    }

    pub fn zero(trunc: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `1 + t^k + ... + t^{(h-1)k}`; `height = None` gives `1/(1 - t^k)`.
    pub fn truncated_geometric(step: usize, height: Option<usize>, trunc: usize) -> Self {
        assert!(step > 0);
        let mut s = Self::zero(trunc);
        let mut m = 0;
        while m * step <= trunc && height.is_none_or(|h| m < h) {
            s.coeffs[m * step] = BigInt::one();
            m += 1;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn retruncate(&self, trunc: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(trunc + 1, BigInt::zero());
        PowerSeries { coeffs: c }
    }

    /// Substitutes `t -> t^k`, keeping the truncation degree.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut out = Self::zero(self.trunc());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > self.trunc() {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    pub fn all_coeffs_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Sum of all coefficients (the total dimension when the series is a polynomial).
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn same_trunc(&self, other: &Self) -> Result<()> {
        if self.trunc() != other.trunc() {
            return invalid(format!(
                "truncation mismatch: {} vs {}",
                self.trunc(),
                other.trunc()
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(PowerSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(PowerSeries { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        let n = self.trunc();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// The unique `c` with `other * c = self` modulo `t^{N+1}`; every step of the
    /// long division must be exact over the integers.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::Domain(
                "division by a series with zero constant term".into(),
            ));
        }
        let n = self.trunc();
        let mut out = Self::zero(n);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    acc -= b * &out.coeffs[k - j];
                }
            }
            let (q, r) = acc.div_rem(b0);
            if !r.is_zero() {
                return Err(Error::Domain(format!(
                    "quotient has a non-integral coefficient in degree {k}"
                )));
            }
            out.coeffs[k] = q;
        }
        Ok(out)
    }

    /// Multiplies in place by `1/(1 - t^k)`.
    /// Multiplies by `1/(1 - m t^k)`.
    fn mul_geometric_in_place(&mut self, k: usize, m: usize) {
        for i in k..self.coeffs.len() {
            let prev = &self.coeffs[i - k] * m;
            self.coeffs[i] += prev;
        }
    }

    pub fn arith(&self, other: &Self, op: SeriesOp) -> Result<Self> {
        match op {
            SeriesOp::Add => self.add(other),
            SeriesOp::Sub => self.sub(other),
            SeriesOp::Mul => self.mul(other),
            SeriesOp::Div => self.div(other),
        }
    }

    /// Coefficientwise lexicographic comparison starting from the constant term.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.same_trunc(other)?;
        Ok(self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc() + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(bigint_to_json).collect();
        let mut st = serializer.serialize_struct("PowerSeries", 2)?;
        st.serialize_field("trunc", &self.trunc())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            trunc: Option<usize>,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for v in raw.coeffs {
            let c = match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| de::Error::custom(format!("bad coefficient {n}")))?,
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?,
                other => return Err(de::Error::custom(format!("bad coefficient {other}"))),
            };
            coeffs.push(c);
        }
        if coeffs.is_empty() {
            return Err(de::Error::custom("empty coefficient list"));
        }
        if let Some(t) = raw.trunc {
            if t + 1 != coeffs.len() {
                return Err(de::Error::custom(format!(
                    "trunc {t} does not match {} coefficients",
                    coeffs.len()
                )));
            }
        }
        Ok(PowerSeries { coeffs })
    }
}

/// Outcome of comparing the Hilbert series of the tensor algebra with the product
/// over Lyndon words.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub ok: bool,
    pub trunc: usize,
    pub lhs: PowerSeries,
    pub rhs: PowerSeries,
}

/// Checks `1/(1 - d t) = prod_{u Lyndon} 1/(1 - t^{|u|})` modulo `t^{N+1}`.
pub fn lyndon_identity_check(d: usize, trunc: usize) -> Result<IdentityReport> {
    lyndon_identity_check_dims(&vec![1; d], trunc)
}

/// Same identity with letters of arbitrary dimension: the Lyndon word `u` contributes
/// the Hilbert series `1/(1 - dim V^u t^{|u|})` of the tensor algebra on `V^u`, with
/// `dim V^u` the product of its letter dimensions.
pub fn lyndon_identity_check_dims(letter_dims: &[usize], trunc: usize) -> Result<IdentityReport> {
    if letter_dims.is_empty() {
        return invalid("alphabet must be nonempty");
    }
    if trunc == 0 {
        return invalid("truncation degree must be at least 1");
    }
    let total: usize = letter_dims.iter().sum();
    let mut lhs = PowerSeries::one(trunc);
    for u in enumerate_lyndon(letter_dims.len(), trunc)? {
        let mult: usize = u
            .letters()
            .iter()
            .map(|&a| letter_dims[a as usize - 1])
            .product();
        lhs.mul_geometric_in_place(u.len(), mult);
    }
    let mut rhs = PowerSeries::one(trunc);
    let mut power = BigInt::one();
    for n in 1..=trunc {
        power *= total;
        rhs.coeffs[n] = power.clone();
    }
    Ok(IdentityReport {
        ok: lhs == rhs,
        trunc,
        lhs,
        rhs,
    })
}
