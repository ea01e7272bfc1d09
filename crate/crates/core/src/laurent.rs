//! Exact arithmetic in the Laurent polynomial ring `Z[t, t^-1]`.
//!
//! Coefficients are arbitrary-precision integers. Storage is sparse: a map
//! from exponent to nonzero coefficient, kept in ascending exponent order so
//! that iteration, printing and serialization are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot evaluate a Laurent polynomial at t = 0")]
    ZeroEvaluation,
    #[error("malformed Laurent polynomial term `{term}`: {reason}")]
    Parse { term: String, reason: String },
}

/// An element of `Z[t, t^-1]`.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

/// Canonical representative of a unit class `{±t^k · p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitNormal {
    pub poly: LaurentPoly,
    /// Exponent that was removed: `original = sign · t^shift · poly`.
    pub shift: i64,
    pub sign: i8,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(k, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The substitution `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a nonzero integer.
    pub fn evaluate_int(&self, v: i64) -> Result<BigRational, LaurentError> {
        if v == 0 {
            return Err(LaurentError::ZeroEvaluation);
        }
        let base = BigRational::from_integer(BigInt::from(v));
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let power = if *e >= 0 {
                num_traits::pow(base.clone(), *e as usize)
            } else {
                num_traits::pow(base.recip(), e.unsigned_abs() as usize)
            };
            acc += power * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Evaluation at `t = 1`, which is always an integer.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Returns the representative with minimum exponent 0 and positive
    /// lowest coefficient. Zero maps to `(0, 0, +1)`.
    pub fn unit_normalize(&self) -> UnitNormal {
        let Some((&lo, lo_coeff)) = self.terms.iter().next() else {
            return UnitNormal { poly: Self::zero(), shift: 0, sign: 1 };
        };
        let sign: i8 = if lo_coeff.is_negative() { -1 } else { 1 };
        let mut poly = self.shift(-lo);
        if sign < 0 {
            poly = -poly;
        }
        UnitNormal { poly, shift: lo, sign }
    }

    /// True iff `self = ±t^k · other` for some `k`.
    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.unit_normalize().poly == other.unit_normalize().poly
    }

    /// Exact quotient by `1 - t`, or `None` when it does not divide.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Some(Self::zero());
        };
        // p = (1 - t) q  =>  q_e = p_e + q_{e-1}
        let mut q = Self::zero();
        let mut carry = BigInt::zero();
        for e in lo..hi {
            carry += self.coeff(e);
            q.add_term(e, carry.clone());
        }
        if (&carry + self.coeff(hi)).is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// `-1*t^-3 + 2*t^0 - 1*t^5`; zero prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{c}*t^{e}")?;
            } else if c.is_negative() {
                write!(f, " - {}*t^{e}", c.abs())?;
            } else {
                write!(f, " + {c}*t^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the [`Display`](fmt::Display) grammar, plus the shorthands
    /// `t`, `t^k`, `-t^k` and bare integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentError::Parse { term: s.to_string(), reason: "empty input".into() });
        }
        // split at '+'/'-' that start a new term, i.e. not right after '^', '*' or another sign
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-')
                && !matches!(bytes[i - 1], b'^' | b'*' | b'+' | b'-')
            {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut p = Self::zero();
        for piece in pieces {
            let (e, c) = parse_term(piece)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

fn parse_term(term: &str) -> Result<(i64, BigInt), LaurentError> {
    let err = |reason: &str| LaurentError::Parse { term: term.to_string(), reason: reason.to_string() };
    // fold leading sign runs like "+-1" (from "a + -1*t^2")
    let mut negative = false;
    let mut body = term;
    while let Some(rest) = body.strip_prefix(['+', '-']) {
        if body.starts_with('-') {
            negative = !negative;
        }
        body = rest;
    }
    if body.is_empty() {
        return Err(err("missing coefficient"));
    }
    let (coeff_text, power_text) = match body.find('t') {
        None => (body, None),
        Some(pos) => {
            let coeff = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            (coeff, Some(&body[pos + 1..]))
        }
    };
    let mut coeff = if coeff_text.is_empty() {
        BigInt::one()
    } else {
        coeff_text.parse::<BigInt>().map_err(|_| err("bad coefficient"))?
    };
    if negative {
        coeff = -coeff;
    }
    let exp = match power_text {
        None => 0,
        Some("") => 1,
        Some(p) => p
            .strip_prefix('^')
            .ok_or_else(|| err("expected `^` after `t`"))?
            .parse::<i64>()
            .map_err(|_| err("bad exponent"))?,
    };
    Ok((exp, coeff))
}

/// Serialized as a map from exponent to decimal coefficient string.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.terms.iter().map(|(e, c)| (e, c.to_string())))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}
