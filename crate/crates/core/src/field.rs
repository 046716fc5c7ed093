//! Exact coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Field`]. A field is a
//! value (not just a type) so that prime fields can carry their modulus at
//! runtime; elements are plain data that the field object operates on.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u32 },
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{p}"),
        }
    }
}

/// A field with exact arithmetic.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn characteristic(&self) -> u32;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Fails when the denominator vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    /// Canonical text: integers, `a/b` over Q, representatives `0..p` over F_p.
    fn format(&self, a: &Self::Elem) -> String;
    /// True when the canonical text starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Every element, for finite fields small enough to enumerate.
    fn enumerate(&self, limit: usize) -> Option<Vec<Self::Elem>>;

    /// Total order used for deterministic tie-breaking only.
    fn compare(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// A finite set containing every root in the field of the nonzero
    /// univariate polynomial with ascending coefficients `coeffs`.
    fn root_candidates(&self, coeffs: &[Self::Elem]) -> Result<Vec<Self::Elem>>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The rational numbers, elements stored as reduced big fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn characteristic(&self) -> u32 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn enumerate(&self, _limit: usize) -> Option<Vec<BigRational>> {
        None
    }
    fn compare(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
    fn root_candidates(&self, coeffs: &[BigRational]) -> Result<Vec<BigRational>> {
        let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> =
            coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let low = ints.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::ZeroInput("root search".into()))?;
        let high = ints.iter().rposition(|c| !c.is_zero()).expect("nonzero");
        let mut out = Vec::new();
        if low > 0 {
            out.push(BigRational::zero());
        }
        if high == low {
            return Ok(out);
        }
        let nums = divisors(&ints[low].abs())?;
        let dens = divisors(&ints[high].abs())?;
        for p in &nums {
            for q in &dens {
                let r = BigRational::new(p.clone(), q.clone());
                for cand in [r.clone(), -r] {
                    if !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Largest integer whose divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 44;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .to_u64()
        .filter(|&v| v <= DIVISOR_LIMIT)
        .ok_or_else(|| Error::Guard(format!("integer {n} too large for rational root search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// The prime field F_p for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u32().expect("residue fits in u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(a, self.p as u64 - 2))
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        self.reduce_big(n)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let d = self.reduce_big(den);
        let di = self.inv(&d).ok_or_else(|| Error::Domain(format!("denominator {den} vanishes modulo {}", self.p)))?;
        Ok(self.mul(&self.reduce_big(num), &di))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn is_negative(&self, _a: &u32) -> bool {
        false
    }
    fn enumerate(&self, limit: usize) -> Option<Vec<u32>> {
        if self.p as usize > limit {
            None
        } else {
            Some((0..self.p).collect())
        }
    }
    fn compare(&self, a: &u32, b: &u32) -> Ordering {
        a.cmp(b)
    }
    fn root_candidates(&self, _coeffs: &[u32]) -> Result<Vec<u32>> {
        self.enumerate(ENUMERATION_LIMIT)
            .ok_or_else(|| Error::Guard(format!("root search by enumeration needs p <= {ENUMERATION_LIMIT}")))
    }
}

/// Largest prime field whose elements are enumerated in root searches.
pub const ENUMERATION_LIMIT: usize = 100_000;

/// Trial division; moduli are below 2^31 so this is at most ~46k steps.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
