//! Exact field elements: arbitrary-precision rationals and prime-field residues.
//!
//! A [`FieldScalar`] is either a reduced `BigRational` or a residue in 𝔽_p
//! with a word-sized prime modulus (p < 2^62). Mixing scalars from different
//! fields panics in the arithmetic operators; public entry points validate
//! fields up front and surface [`Error::FieldMismatch`](crate::Error) instead.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a computation: ℚ or 𝔽_p with p prime, p < 2^62.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Validates the modulus for the `Fp` variant.
    pub fn fp(p: u64) -> Result<Field> {
        if p >= (1 << 62) {
            return Err(Error::Invalid("modulus must be below 2^62".into()));
        }
        if !is_prime_u64(p) {
            return Err(Error::Invalid(alloc::format!("{p} is not prime")));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(&self) -> FieldScalar {
        match self {
            Field::Q => FieldScalar::Q(BigRational::zero()),
            Field::Fp(p) => FieldScalar::Fp { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> FieldScalar {
        match self {
            Field::Q => FieldScalar::Q(BigRational::one()),
            Field::Fp(p) => FieldScalar::Fp { value: 1 % *p, modulus: *p },
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match self {
            Field::Q => FieldScalar::Q(BigRational::from(BigInt::from(v))),
            // Moduli are below 2^62, so they fit in i64.
            Field::Fp(p) => FieldScalar::Fp { value: v.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    /// Parses the wire format: reduced `p/q` or integer for ℚ, decimal residue for 𝔽_p.
    pub fn parse_scalar(&self, s: &str) -> Result<FieldScalar> {
        let s = s.trim();
        match self {
            Field::Q => {
                let mk_err = || Error::Invalid(alloc::format!("cannot parse rational '{s}'"));
                if let Some((num, den)) = s.split_once('/') {
                    let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
                    let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
                    if d.is_zero() {
                        return Err(Error::Invalid("zero denominator".into()));
                    }
                    Ok(FieldScalar::Q(BigRational::new(n, d)))
                } else {
                    let n: BigInt = s.parse().map_err(|_| mk_err())?;
                    Ok(FieldScalar::Q(BigRational::from(n)))
                }
            }
            Field::Fp(p) => {
                let v: u64 = s
                    .parse()
                    .map_err(|_| Error::Invalid(alloc::format!("cannot parse residue '{s}'")))?;
                if v >= *p {
                    return Err(Error::Invalid(alloc::format!("residue {v} not below modulus {p}")));
                }
                Ok(FieldScalar::Fp { value: v, modulus: *p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// One exact field element. Rationals are kept reduced with positive
/// denominator (the `BigRational` invariant); residues satisfy `value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldScalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Q(_) => Field::Q,
            FieldScalar::Fp { modulus, .. } => Field::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Q(r) => r.is_zero(),
            FieldScalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Q(r) => r.is_one(),
            FieldScalar::Fp { value, modulus } => *value == 1 % *modulus,
        }
    }

    pub fn from_rational(r: BigRational) -> FieldScalar {
        FieldScalar::Q(r)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldScalar::Q(r) => Some(r),
            FieldScalar::Fp { .. } => None,
        }
    }

    /// Multiplicative inverse; `Err(Singular)` on zero.
    pub fn inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        Ok(match self {
            FieldScalar::Q(r) => FieldScalar::Q(r.recip()),
            FieldScalar::Fp { value, modulus } => FieldScalar::Fp {
                value: mod_inv(*value, *modulus).expect("nonzero residue mod a prime"),
                modulus: *modulus,
            },
        })
    }

    /// Integer power, with negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldScalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Reduction of a rational into 𝔽_p. Fails when the denominator
    /// vanishes mod p; residues must already live in 𝔽_p.
    pub fn reduce_mod(&self, p: u64) -> Result<FieldScalar> {
        match self {
            FieldScalar::Fp { modulus, .. } => {
                if *modulus == p {
                    Ok(self.clone())
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            FieldScalar::Q(r) => {
                let num = bigint_mod_u64(r.numer(), p);
                let den = bigint_mod_u64(r.denom(), p);
                let inv = mod_inv(den, p).ok_or(Error::PrimeExhausted)?;
                Ok(FieldScalar::Fp { value: mul_mod(num, inv, p), modulus: p })
            }
        }
    }

    fn same_field(&self, other: &FieldScalar) {
        assert!(
            self.field() == other.field(),
            "field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("reduced residue fits u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
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

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

/// Deterministic Miller–Rabin, exact for all u64 with this witness set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                self.same_field(rhs);
                match (self, rhs) {
                    (FieldScalar::Q(a), FieldScalar::Q(b)) => FieldScalar::Q(a $op b),
                    (
                        FieldScalar::Fp { value: a, modulus: p },
                        FieldScalar::Fp { value: b, .. },
                    ) => FieldScalar::Fp {
                        value: fp_binop(*a, *b, *p, stringify!($method)),
                        modulus: *p,
                    },
                    _ => unreachable!(),
                }
            }
        }
        impl $trait for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

fn fp_binop(a: u64, b: u64, p: u64, op: &str) -> u64 {
    match op {
        "add" => {
            let s = a + b;
            if s >= p { s - p } else { s }
        }
        "sub" => {
            if a >= b { a - b } else { a + p - b }
        }
        "mul" => mul_mod(a, b, p),
        _ => unreachable!(),
    }
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Q(a) => FieldScalar::Q(-a),
            FieldScalar::Fp { value, modulus } => FieldScalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl Div for &FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Shared ring interface for the generic matrix algorithms. Implemented by
/// [`FieldScalar`] and by multivariate polynomials; division is deliberately
/// absent so the algorithms stay valid over non-fields.
pub trait RingElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl RingElem for FieldScalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Checks that a slice of scalars all share `field`.
pub fn check_field(entries: &[FieldScalar], field: Field) -> Result<()> {
    if entries.iter().any(|e| e.field() != field) {
        Err(Error::FieldMismatch)
    } else {
        Ok(())
    }
}

/// Parses a whole row-major string matrix in one field.
pub fn parse_entries(field: Field, rows: &[Vec<String>]) -> Result<Vec<FieldScalar>> {
    let mut out = Vec::new();
    for row in rows {
        for s in row {
            out.push(field.parse_scalar(s)?);
        }
    }
    Ok(out)
}

impl FieldScalar {
    /// Wire-format string; inverse of [`Field::parse_scalar`].
    pub fn to_wire(&self) -> String {
        self.to_string()
    }
}
