//! Exact scalar fields: `F_p` for primes below `2^31`, and `Q`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Arithmetic on field elements. Elements of `F_p` carry their modulus, so
/// no field context is needed for the ring operations.
pub trait Scalar: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Enumerates a finite field; for `Q` returns small integers in a zig-zag order.
    fn element(&self, index: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn spec(&self) -> FieldSpec;
    /// Candidate eigenvalues in the field of a square row-major matrix.
    /// Exact for `F_p`; for `Q` the caller must confirm each candidate.
    fn eigenvalue_candidates(&self, n: usize, entries: &[Self::Elem]) -> Vec<Self::Elem>;
    /// The canonical representative in `0..p`; `None` over `Q`.
    fn residue(&self, e: &Self::Elem) -> Option<u64>;
}

/// Serializable description of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime(p) if !poly::is_prime(p as u64) => {
                Err(Error::InvalidField(format!("{p} is not prime")))
            }
            FieldSpec::Prime(p) if p as u64 >= 1 << 31 => {
                Err(Error::InvalidField(format!("{p} exceeds 2^31")))
            }
            _ => Ok(()),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `rational`, `p=101`, `F_101`, `GF(101)` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "qq" | "rational" | "rationals") {
            return Ok(FieldSpec::Rational);
        }
        let digits = lower
            .trim_start_matches("p=")
            .trim_start_matches("f_")
            .trim_start_matches("gf(")
            .trim_end_matches(')');
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognised field {t:?}")))?;
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        Ok(spec)
    }
}

pub const DEFAULT_PRIME: u32 = 32003;

// ---------------------------------------------------------------------------
// F_p

/// An element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.v
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Fp {
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp {
            v: if self.v >= o.v {
                self.v - o.v
            } else {
                self.v + self.p - o.v
            },
            p: self.p,
        }
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp {
            v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        poly::inv_mod(self.v as u64, self.p as u64).map(|v| Fp {
            v: v as u32,
            p: self.p,
        })
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    #[inline]
    fn is_one(&self) -> bool {
        self.v == 1
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn elem(&self, v: u64) -> Fp {
        Fp {
            v: (v % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        self.elem(0)
    }
    fn one(&self) -> Fp {
        self.elem(1)
    }
    fn from_i64(&self, v: i64) -> Fp {
        let p = self.p as i64;
        self.elem(v.rem_euclid(p) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn element(&self, index: u64) -> Fp {
        self.elem(index)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        self.elem(rng.random_range(0..self.p as u64))
    }
    fn parse(&self, s: &str) -> Result<Fp> {
        let r = parse_rational(s)?;
        let num = r.numer().mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        let den = r.denom().mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        let inv = poly::inv_mod(den, self.p as u64)
            .ok_or_else(|| Error::ParseScalar(format!("{s} (denominator vanishes mod {})", self.p)))?;
        Ok(self.elem(poly::mul_mod(num, inv, self.p as u64)))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn eigenvalue_candidates(&self, n: usize, entries: &[Fp]) -> Vec<Fp> {
        let m = self.p as u64;
        let raw: Vec<u64> = entries.iter().map(|e| e.v as u64).collect();
        let cp = poly::charpoly(&raw, n, m);
        poly::roots(&cp, m).into_iter().map(|r| self.elem(r)).collect()
    }
    fn residue(&self, e: &Fp) -> Option<u64> {
        Some(e.v as u64)
    }
}

// ---------------------------------------------------------------------------
// Q

/// A rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(pub BigRational);

impl Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Rat {
    fn add(&self, o: &Self) -> Self {
        Rat(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_zero() || o.0.is_zero() {
            return Rat(BigRational::zero());
        }
        Rat(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::ParseScalar(t.to_string());
    match t.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|_| bad())?;
            let den: BigInt = b.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat(BigRational::zero())
    }
    fn one(&self) -> Rat {
        Rat(BigRational::one())
    }
    fn from_i64(&self, v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, index: u64) -> Rat {
        // 0, 1, -1, 2, -2, ...
        let k = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 1 { k } else { -k })
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        self.from_i64(rng.random_range(-7..=7))
    }
    fn parse(&self, s: &str) -> Result<Rat> {
        parse_rational(s).map(Rat)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn eigenvalue_candidates(&self, n: usize, entries: &[Rat]) -> Vec<Rat> {
        let m = poly::LARGE_PRIME;
        let big_m = BigInt::from(m);
        let mut raw = Vec::with_capacity(entries.len());
        for e in entries {
            let num = e.0.numer().mod_floor(&big_m).to_u64().unwrap();
            let den = e.0.denom().mod_floor(&big_m).to_u64().unwrap();
            match poly::inv_mod(den, m) {
                Some(inv) => raw.push(poly::mul_mod(num, inv, m)),
                None => return Vec::new(),
            }
        }
        let cp = poly::charpoly(&raw, n, m);
        poly::roots(&cp, m)
            .into_iter()
            .filter_map(|r| poly::rational_reconstruct(r, m))
            .map(|(a, b)| Rat(BigRational::new(BigInt::from(a), BigInt::from(b))))
            .collect()
    }
    fn residue(&self, _: &Rat) -> Option<u64> {
        None
    }
}

impl Rat {
    pub fn abs_height(&self) -> u64 {
        self.0
            .numer()
            .abs()
            .max(self.0.denom().abs())
            .to_u64()
            .unwrap_or(u64::MAX)
    }
}
