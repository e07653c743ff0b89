//! Named braided spaces and the sources a space can be loaded from.

use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::space::{BraidedSpace, Braiding};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{
    element_of_order, next_prime_where, parse_rational, primitive_root, FieldSpec, Scalar,
    DEFAULT_PRIME,
};

/// The parameter `q` of a one-parameter preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QParam {
    Value(BigRational),
    /// An element of exactly this multiplicative order.
    Order(u64),
    /// A generator of `F_p^*`, or `2` over the rationals.
    Generic,
}

impl QParam {
    fn instantiate(&self, field: FieldSpec) -> Result<Scalar> {
        match self {
            QParam::Value(r) => Scalar::from_rational(field, r),
            QParam::Order(m) => match field.modulus() {
                Some(_) => element_of_order(field, *m),
                None => match m {
                    1 => Ok(Scalar::one(field)),
                    2 => Ok(Scalar::from_i64(field, -1)),
                    _ => Err(Error::Domain(format!("no root of unity of order {m} in Q"))),
                },
            },
            QParam::Generic => match field.modulus() {
                Some(p) => Ok(Scalar::from_i64(field, primitive_root(p) as i64)),
                None => Ok(Scalar::from_i64(field, 2)),
            },
        }
    }

    /// Whether the prime `p` gives the parameter its intended meaning.
    fn admits(&self, p: u64, trunc: usize) -> bool {
        match self {
            QParam::Value(r) => {
                let pb = num_bigint::BigInt::from(p);
                !(r.denom() % &pb).is_zero() && !(r.numer() % &pb).is_zero()
            }
            QParam::Order(m) => (p - 1).is_multiple_of(*m),
            QParam::Generic => p - 1 > 2 * trunc as u64,
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Value(r) => write!(f, "q={r}"),
            QParam::Order(m) => write!(f, "order={m}"),
            QParam::Generic => write!(f, "generic"),
        }
    }
}

/// Compiled-in braided spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `q_11 = q_22 = q`, `q_12 = q_21 = 1`.
    QuantumPlane(QParam),
    /// `q_11 = q_22 = q`, `q_12 = 1`, `q_21 = q^{-1}`.
    CartanA2(QParam),
    /// `c(x_σ ⊗ x_τ) = -x_{στσ^{-1}} ⊗ x_σ` on the transpositions `(12), (13), (23)`.
    S3Rack,
    /// A diagonal braiding of dimension `d` with pairwise distinct generic entries.
    GenericDiagonal(usize),
}

fn parse_q(args: &[(Option<String>, String)], default: QParam) -> Result<QParam> {
    match args {
        [] => Ok(default),
        [(key, v)] => match key.as_deref() {
            None | Some("q") if v == "generic" => Ok(QParam::Generic),
            None | Some("q") => Ok(QParam::Value(parse_rational(v)?)),
            Some("order") => v
                .parse::<u64>()
                .ok()
                .filter(|&m| m > 0)
                .map(QParam::Order)
                .ok_or_else(|| Error::Parse(format!("bad order {v:?}"))),
            Some(k) => Err(Error::Parse(format!("unknown preset parameter {k:?}"))),
        },
        _ => Err(Error::Parse("too many preset parameters".into())),
    }
}

impl Preset {
    /// Parses `quantum-plane`, `quantum-plane(-1)`, `cartan-A2(order=3)`,
    /// `cartan-A2(q=5)`, `s3-rack`, `generic-diagonal(3)`.
    pub fn parse(s: &str) -> Result<Preset> {
        let s = s.trim();
        let (name, args) = match s.split_once('(') {
            Some((n, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
                let args: Vec<(Option<String>, String)> = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|a| !a.is_empty())
                    .map(|a| match a.split_once('=') {
                        Some((k, v)) => (Some(k.trim().to_string()), v.trim().to_string()),
                        None => (None, a.to_string()),
                    })
                    .collect();
                (n.trim(), args)
            }
            None => (s, Vec::new()),
        };
        match name {
            "quantum-plane" => Ok(Preset::QuantumPlane(parse_q(
                &args,
                QParam::Value(-BigRational::one()),
            )?)),
            "cartan-A2" => Ok(Preset::CartanA2(parse_q(&args, QParam::Generic)?)),
            "s3-rack" if args.is_empty() => Ok(Preset::S3Rack),
            "s3-rack" => Err(Error::Parse("s3-rack takes no parameters".into())),
            "generic-diagonal" => match args.as_slice() {
                [(key, v)] if key.as_deref().is_none_or(|k| k == "d") => v
                    .parse::<usize>()
                    .ok()
                    .filter(|d| (1..=9).contains(d))
                    .map(Preset::GenericDiagonal)
                    .ok_or_else(|| Error::Parse(format!("bad dimension {v:?}"))),
                _ => Err(Error::Parse("generic-diagonal takes one dimension".into())),
            },
            _ => Err(Error::Parse(format!("unknown preset {name:?}"))),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Preset::QuantumPlane(_) | Preset::CartanA2(_) => 2,
            Preset::S3Rack => 3,
            Preset::GenericDiagonal(d) => *d,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Preset::S3Rack)
    }

    /// Whether the prime `p` is suitable for computations up to degree `trunc`.
    pub fn admits(&self, p: u64, trunc: usize) -> bool {
        if p <= 2 * trunc as u64 + 1 || p == 2 {
            return false;
        }
        match self {
            Preset::QuantumPlane(q) | Preset::CartanA2(q) => q.admits(p, trunc),
            Preset::S3Rack => true,
            Preset::GenericDiagonal(d) => p - 1 > (2 * trunc * d * d) as u64,
        }
    }

    /// The smallest admissible prime `>= 10007`.
    pub fn default_field(&self, trunc: usize) -> FieldSpec {
        let p = next_prime_where(DEFAULT_PRIME - 1, |p| self.admits(p, trunc));
        FieldSpec::prime(p).expect("prime")
    }

    pub fn instantiate(&self, field: FieldSpec) -> Result<BraidedSpace> {
        let one = Scalar::one(field);
        match self {
            Preset::QuantumPlane(q) => {
                let q = q.instantiate(field)?;
                BraidedSpace::diagonal(field, vec![vec![q.clone(), one.clone()], vec![one, q]])
            }
            Preset::CartanA2(q) => {
                let q = q.instantiate(field)?;
                let qi = q.inv()?;
                BraidedSpace::diagonal(field, vec![vec![q.clone(), one], vec![qi, q]])
            }
            Preset::S3Rack => {
                let mut m = Matrix::zeros(field, 9, 9);
                let minus = Scalar::from_i64(field, -1);
                for i in 1..=3usize {
                    for j in 1..=3usize {
                        let conj = if i == j { i } else { 6 - i - j };
                        m.set((conj - 1) * 3 + (i - 1), (i - 1) * 3 + (j - 1), &minus);
                    }
                }
                BraidedSpace::new(field, 3, Braiding::General(m))
            }
            Preset::GenericDiagonal(d) => {
                let g = QParam::Generic.instantiate(field)?;
                let q = (0..*d)
                    .map(|i| (0..*d).map(|j| g.pow((i * d + j + 1) as i64)).collect())
                    .collect::<Result<Vec<Vec<Scalar>>>>()?;
                BraidedSpace::diagonal(field, q)
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::QuantumPlane(q) => write!(f, "quantum-plane({q})"),
            Preset::CartanA2(q) => write!(f, "cartan-A2({q})"),
            Preset::S3Rack => write!(f, "s3-rack"),
            Preset::GenericDiagonal(d) => write!(f, "generic-diagonal({d})"),
        }
    }
}

/// Where a braided space comes from: a preset or a JSON description.
///
/// Both forms can be instantiated over any field, so that results can be
/// recomputed at a second prime.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceSource {
    Preset(Preset),
    Json(SpaceDescription),
}

/// A parsed JSON space with rational entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceDescription {
    pub field: Option<FieldSpec>,
    pub dim: usize,
    pub diagonal: bool,
    pub entries: Vec<Vec<BigRational>>,
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a scalar, got {v}"))),
    }
}

pub(crate) fn field_from_json(v: &Value) -> Result<FieldSpec> {
    if let Some(p) = v.get("prime") {
        let p = p
            .as_u64()
            .or_else(|| p.as_str().and_then(|s| s.parse().ok()))
            .ok_or_else(|| Error::Parse("\"prime\" must be an integer".into()))?;
        return FieldSpec::prime(p);
    }
    if v.get("rationals").and_then(Value::as_bool) == Some(true) {
        return Ok(FieldSpec::rationals());
    }
    Err(Error::Parse(
        "field must be {\"prime\": p} or {\"rationals\": true}".into(),
    ))
}

pub(crate) fn field_to_json(f: FieldSpec) -> Value {
    match f.modulus() {
        Some(p) => json!({ "prime": p }),
        None => json!({ "rationals": true }),
    }
}

impl SpaceDescription {
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = v.get("field").map(field_from_json).transpose()?;
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer \"dim\"".into()))?
            as usize;
        let braiding = v
            .get("braiding")
            .ok_or_else(|| Error::Parse("missing \"braiding\"".into()))?;
        let (diagonal, rows) = if let Some(r) = braiding.get("diagonal") {
            (true, r)
        } else if let Some(r) = braiding.get("general") {
            (false, r)
        } else {
            return Err(Error::Parse(
                "braiding must be {\"diagonal\": ...} or {\"general\": ...}".into(),
            ));
        };
        let rows = rows
            .as_array()
            .ok_or_else(|| Error::Parse("braiding rows must be an array".into()))?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("braiding row must be an array".into()))?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = if diagonal { dim } else { dim * dim };
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return invalid(format!("braiding must be a {n}x{n} array"));
        }
        Ok(SpaceDescription {
            field,
            dim,
            diagonal,
            entries,
        })
    }

    /// The braiding read over `field`, without validation.
    pub fn braiding(&self, field: FieldSpec) -> Result<Braiding> {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Scalar::from_rational(field, x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(if self.diagonal {
            Braiding::Diagonal(rows)
        } else {
            Braiding::General(Matrix::from_rows(field, &rows))
        })
    }

    pub fn instantiate(&self, field: FieldSpec) -> Result<BraidedSpace> {
        BraidedSpace::new(field, self.dim, self.braiding(field)?)
    }

    /// Primes that divide no nonzero numerator or denominator of an entry.
    pub fn admits(&self, p: u64) -> bool {
        let pb = num_bigint::BigInt::from(p);
        self.entries
            .iter()
            .flatten()
            .all(|x| !(x.denom() % &pb).is_zero() && (x.is_zero() || !(x.numer() % &pb).is_zero()))
    }
}

impl SpaceSource {
    /// `preset:<name>` for a preset, anything else is a JSON file path.
    pub fn parse(arg: &str) -> Result<Self> {
        if let Some(name) = arg.strip_prefix("preset:") {
            return Ok(SpaceSource::Preset(Preset::parse(name)?));
        }
        let text = std::fs::read_to_string(Path::new(arg))
            .map_err(|e| Error::Parse(format!("cannot read space file {arg:?}: {e}")))?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))?;
        Ok(SpaceSource::Json(SpaceDescription::from_json(&v)?))
    }

    pub fn field_hint(&self) -> Option<FieldSpec> {
        match self {
            SpaceSource::Preset(_) => None,
            SpaceSource::Json(d) => d.field,
        }
    }

    pub fn default_field(&self, trunc: usize) -> FieldSpec {
        match self {
            SpaceSource::Preset(p) => p.default_field(trunc),
            SpaceSource::Json(d) => d.field.unwrap_or_else(FieldSpec::default_prime),
        }
    }

    pub fn instantiate(&self, field: FieldSpec) -> Result<BraidedSpace> {
        match self {
            SpaceSource::Preset(p) => p.instantiate(field),
            SpaceSource::Json(d) => d.instantiate(field),
        }
    }

    pub fn admits(&self, p: u64, trunc: usize) -> bool {
        match self {
            SpaceSource::Preset(pr) => pr.admits(p, trunc),
            SpaceSource::Json(d) => p > 2 && d.admits(p),
        }
    }

    /// A prime different from `p`, larger than it, suitable up to degree `trunc`.
    pub fn second_prime(&self, p: u64, trunc: usize) -> FieldSpec {
        let q = next_prime_where(p.max(2 * trunc as u64 + 1), |q| self.admits(q, trunc));
        FieldSpec::prime(q).expect("prime")
    }
}

impl fmt::Display for SpaceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSource::Preset(p) => write!(f, "preset:{p}"),
            SpaceSource::Json(d) => write!(f, "space of dimension {}", d.dim),
        }
    }
}

/// The JSON form of a space; rational entries are written as reduced fractions
/// when the field is `Q` and as residues otherwise.
pub fn space_to_json(space: &BraidedSpace) -> Value {
    let rows: Vec<Value> = match space.braiding() {
        Braiding::Diagonal(q) => q
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
        Braiding::General(m) => (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    };
    let key = if space.is_diagonal() {
        "diagonal"
    } else {
        "general"
    };
    json!({
        "field": field_to_json(space.field()),
        "dim": space.dim(),
        "braiding": { key: rows },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_presets() {
        assert_eq!(
            Preset::parse("quantum-plane").unwrap(),
            Preset::QuantumPlane(QParam::Value(-BigRational::one()))
        );
        assert_eq!(
            Preset::parse("cartan-A2(order=3)").unwrap(),
            Preset::CartanA2(QParam::Order(3))
        );
        assert_eq!(
            Preset::parse("cartan-A2").unwrap(),
            Preset::CartanA2(QParam::Generic)
        );
        assert_eq!(
            Preset::parse("generic-diagonal(3)").unwrap(),
            Preset::GenericDiagonal(3)
        );
        assert!(Preset::parse("s3-rack(2)").is_err());
        assert!(Preset::parse("e8").is_err());
    }

    #[test]
    fn default_fields() {
        assert_eq!(
            Preset::CartanA2(QParam::Order(3))
                .default_field(8)
                .modulus(),
            Some(10009)
        );
        assert_eq!(Preset::S3Rack.default_field(8).modulus(), Some(10007));
    }

    #[test]
    fn cartan_entries() {
        let p = Preset::CartanA2(QParam::Order(3));
        let f = p.default_field(8);
        let s = p.instantiate(f).unwrap();
        let q = s.q(1, 1).unwrap().clone();
        assert_eq!(q.pow(3).unwrap(), Scalar::one(f));
        assert!(!q.is_one());
        assert_eq!(
            &(s.q(1, 2).unwrap() * s.q(2, 1).unwrap()) * &q,
            Scalar::one(f)
        );
    }

    #[test]
    fn json_round_trip() {
        let f = FieldSpec::prime(10007).unwrap();
        let s = Preset::S3Rack.instantiate(f).unwrap();
        let v = space_to_json(&s);
        let src = SpaceSource::from_json_str(&v.to_string()).unwrap();
        let s2 = src.instantiate(f).unwrap();
        assert_eq!(s2.braiding(), s.braiding());
    }

    #[test]
    fn zero_diagonal_entry_rejected() {
        let src = SpaceSource::from_json_str(
            r#"{"field":{"prime":10007},"dim":2,"braiding":{"diagonal":[["0","1"],["1","1"]]}}"#,
        )
        .unwrap();
        assert!(matches!(
            src.instantiate(FieldSpec::default_prime()),
            Err(Error::SingularBraiding)
        ));
    }
}
