//! Exact scalars: residues modulo a prime `p < 2^62`, or arbitrary-precision
//! rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Default prime used by the command-line tool and the presets.
pub const DEFAULT_PRIME: u64 = 10007;

const PRIME_LIMIT: u64 = 1 << 62;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Kind {
    Prime(u64),
    Rationals,
}

/// The base field: a prime field `F_p` or `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT {
            return invalid(format!("prime {p} exceeds 2^62"));
        }
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(FieldSpec(Kind::Prime(p)))
    }

    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    pub fn default_prime() -> Self {
        FieldSpec(Kind::Prime(DEFAULT_PRIME))
    }

    /// `Some(p)` for `F_p`, `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "F_{p}"),
            Kind::Rationals => write!(f, "Q"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Value {
    Residue(u64),
    Rational(BigRational),
}

/// A field element in canonical form (residue in `0..p`, or a reduced fraction with
/// positive denominator).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary field operation.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field.0 {
            Kind::Prime(_) => Scalar {
                field,
                value: Value::Residue(0),
            },
            Kind::Rationals => Scalar {
                field,
                value: Value::Rational(BigRational::zero()),
            },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        match field.0 {
            Kind::Prime(p) => Scalar {
                field,
                value: Value::Residue(n.rem_euclid(p as i64) as u64),
            },
            Kind::Rationals => Scalar {
                field,
                value: Value::Rational(BigRational::from_integer(BigInt::from(n))),
            },
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(field: FieldSpec, r: &BigRational) -> Result<Self> {
        match field.0 {
            Kind::Prime(p) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::Domain(format!(
                        "denominator of {r} vanishes modulo {p}"
                    )));
                }
                Ok(Scalar {
                    field,
                    value: Value::Residue(mul_mod(num, inv_mod(den, p), p)),
                })
            }
            Kind::Rationals => Ok(Scalar {
                field,
                value: Value::Rational(r.clone()),
            }),
        }
    }

    pub(crate) fn from_residue(field: FieldSpec, r: u64) -> Self {
        debug_assert!(field.modulus().is_some_and(|p| r < p));
        Scalar {
            field,
            value: Value::Residue(r),
        }
    }

    /// Parses `"3"`, `"-1"` or `"2/5"`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        Scalar::from_rational(field, &r)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Residue(r) => *r == 0,
            Value::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Residue(r) => *r == 1,
            Value::Rational(q) => q.is_one(),
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            Value::Residue(_) => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            return invalid(format!("mixed fields {} and {}", self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg_()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let value = match (&self.value, self.field.0) {
            (Value::Residue(r), Kind::Prime(p)) => Value::Residue(inv_mod(*r, p)),
            (Value::Rational(q), _) => Value::Rational(q.recip()),
            _ => unreachable!(),
        };
        Ok(Scalar {
            field: self.field,
            value,
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        match base.value {
            Value::Residue(r) => {
                let p = self.field.modulus().unwrap();
                Ok(Scalar {
                    field: self.field,
                    value: Value::Residue(pow_mod(r, e, p)),
                })
            }
            Value::Rational(_) => {
                let mut acc = Scalar::one(self.field);
                let mut b = base;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = &acc * &b;
                    }
                    b = &b * &b;
                    e >>= 1;
                }
                Ok(acc)
            }
        }
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.field.modulus().unwrap();
                let s = a + b;
                Value::Residue(if s >= p { s - p } else { s })
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            _ => unreachable!("field tags checked"),
        };
        Scalar {
            field: self.field,
            value,
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value) {
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(mul_mod(*a, *b, self.field.modulus().unwrap()))
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            _ => unreachable!("field tags checked"),
        };
        Scalar {
            field: self.field,
            value,
        }
    }

    fn neg_(&self) -> Scalar {
        let value = match &self.value {
            Value::Residue(0) => Value::Residue(0),
            Value::Residue(a) => Value::Residue(self.field.modulus().unwrap() - a),
            Value::Rational(q) => Value::Rational(-q),
        };
        Scalar {
            field: self.field,
            value,
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad scalar {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn assert_same(a: &Scalar, b: &Scalar) {
    assert_eq!(a.field, b.field, "arithmetic across different fields");
}

// Operator forms panic on mixed fields; the checked methods report an error instead.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.add_unchecked(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.add_unchecked(&rhs.neg_())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Residue(r) => write!(f, "{r}"),
            Value::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Value::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A multiplicative order, possibly infinite (only in characteristic zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn exceeds(&self, bound: u64) -> bool {
        match self {
            Order::Finite(m) => *m > bound,
            Order::Infinite => true,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

/// Least `m >= 1` with `q^m = 1`.
pub fn multiplicative_order(q: &Scalar) -> Result<Order> {
    if q.is_zero() {
        return Err(Error::Domain("multiplicative order of zero".into()));
    }
    match &q.value {
        Value::Residue(r) => {
            let p = q.field.modulus().unwrap();
            Ok(Order::Finite(order_mod(*r, p)))
        }
        Value::Rational(x) => {
            if x.is_one() {
                Ok(Order::Finite(1))
            } else if x.is_integer() && x.numer().abs().is_one() {
                Ok(Order::Finite(2))
            } else {
                Ok(Order::Infinite)
            }
        }
    }
}

fn order_mod(a: u64, p: u64) -> u64 {
    let mut order = p - 1;
    for (prime, _) in factorize(p - 1) {
        while order.is_multiple_of(prime) && pow_mod(a, order / prime, p) == 1 {
            order /= prime;
        }
    }
    order
}

/// An element of multiplicative order exactly `m` in `F_p`, if `m | p - 1`.
pub fn element_of_order(field: FieldSpec, m: u64) -> Result<Scalar> {
    let p = field
        .modulus()
        .ok_or_else(|| Error::Domain(format!("no element of order {m} chosen in Q")))?;
    if m == 0 || (p - 1) % m != 0 {
        return Err(Error::Domain(format!(
            "order {m} does not divide p - 1 = {}; choose another prime",
            p - 1
        )));
    }
    let g = primitive_root(p);
    Ok(Scalar::from_residue(field, pow_mod(g, (p - 1) / m, p)))
}

/// Smallest generator of `F_p^*`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
        })
        .expect("primitive roots exist modulo a prime")
}

/// Smallest prime strictly greater than `n` satisfying `pred`.
pub fn next_prime_where(n: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime(c) && pred(c) {
            return c;
        }
        c += 1;
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        for small in [2u64, 3, 5, 7, 11, 13] {
            if n.is_multiple_of(small) {
                out.push(small);
                split(n / small, out);
                return;
            }
        }
        let f = pollard_rho(n);
        split(f, out);
        split(n / f, out);
    }
    let mut primes = Vec::new();
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}
