//! Braid words over the Artin generators `σ_1 .. σ_{n-1}`.
//!
//! Words act on the left: in the product `u·v` the braid `v` is applied
//! first. Every downstream module (Burau matrices, the Artin action, the
//! kernel construction) follows this convention.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid token `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("generator index {index} out of range 1..={max} for {n} strands")]
    IndexOutOfRange { index: i64, n: usize, max: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("braid group needs at least {min} strands, got {n}")]
    TooFewStrands { n: usize, min: usize },
}

/// Grammar accepted by [`BraidWord::parse`], printed on usage errors.
pub const WORD_GRAMMAR: &str = "\
braid word: whitespace-separated tokens `s<i>` or `s<i>^<k>` (k != 0), \
e.g. \"s3^-1 s2 s1^2\"; or a signed integer list, e.g. \"-3 2 1 1\"; \
`e` or an empty string is the identity";

/// One generator `σ_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Self { index, sign: 1 }
    }

    pub fn neg(index: usize) -> Self {
        Self { index, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Self { index: self.index, sign: -self.sign }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.index == other.index && self.sign == -other.sign
    }
}

/// A word in `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn identity(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    /// Builds a word, checking every index against `1..n`.
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::TooFewStrands { n, min: 2 });
        }
        if let Some(bad) = letters.iter().find(|l| l.index == 0 || l.index >= n || l.sign.abs() != 1) {
            return Err(BraidError::IndexOutOfRange { index: bad.index as i64, n, max: n - 1 });
        }
        Ok(Self { n, letters })
    }

    /// Signed-integer shorthand: `3` is `σ_3`, `-3` is `σ_3^{-1}`.
    pub fn from_signed(n: usize, letters: &[i64]) -> Result<Self, BraidError> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(BraidError::IndexOutOfRange { index: l, n, max: n.saturating_sub(1) });
            }
            out.push(Letter { index: l.unsigned_abs() as usize, sign: l.signum() as i8 });
        }
        Self::new(n, out)
    }

    /// Parses `s<i>` / `s<i>^<k>` tokens or a signed integer list.
    /// Powers are expanded into repeated letters.
    pub fn parse(text: &str, n: usize) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::TooFewStrands { n, min: 2 });
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let bad = |reason: &str| BraidError::Parse { token: token.to_string(), reason: reason.to_string() };
            let (index, power): (i64, i64) = if let Some(rest) = token.strip_prefix('s') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, k)) => (i, k.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let idx = idx.parse::<i64>().map_err(|_| bad("bad generator index"))?;
                if pow == 0 {
                    return Err(bad("exponent must be nonzero"));
                }
                (idx, pow)
            } else {
                let v = token.parse::<i64>().map_err(|_| bad("expected `s<i>[^k]` or a signed integer"))?;
                if v == 0 {
                    return Err(bad("generator 0 does not exist"));
                }
                (v.abs(), v.signum())
            };
            if index < 1 || index as usize >= n {
                return Err(BraidError::IndexOutOfRange { index, n, max: n - 1 });
            }
            let letter = Letter { index: index as usize, sign: power.signum() as i8 };
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        Ok(Self { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.n != other.n {
            return Err(BraidError::StrandMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Concatenation `self · other` (no reduction).
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.repeat(k) }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        BraidWord { n: self.n, letters: stack }
    }

    /// `[a, b] = a^{-1} b^{-1} a b`, freely reduced.
    pub fn commutator(a: &BraidWord, b: &BraidWord) -> Result<BraidWord, BraidError> {
        a.check_same(b)?;
        let w = a.inverse().concat(&b.inverse())?.concat(a)?.concat(b)?;
        Ok(w.free_reduce())
    }

    /// `g^{-1} · self · g`, freely reduced.
    pub fn conjugate_by(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        Ok(g.inverse().concat(self)?.concat(g)?.free_reduce())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    /// Image in the symmetric group: letter `σ_i` swaps `i` and `i+1`.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        for l in &self.letters {
            p = p.compose(&Permutation::transposition(self.n, l.index));
        }
        p
    }

    /// Integer-list form, e.g. `[-3, 2, 1, 1]`.
    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.index as i64 * l.sign as i64).collect()
    }
}

/// Prints runs of equal letters as powers: `s3^-1 s2 s1^2`. The identity
/// prints as `e`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let power = run as i64 * l.sign as i64;
            if power == 1 {
                write!(f, "s{}", l.index)?;
            } else {
                write!(f, "s{}^{}", l.index, power)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BraidWord", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("word", &self.to_string())?;
        s.serialize_field("length", &self.letters.len())?;
        s.end()
    }
}

/// A permutation of `{1..n}`, stored as the image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The transposition `(i i+1)`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
        }
        Some(Self { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&p| self.apply(p)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p - 1] {
                seen[p - 1] = true;
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{p}")?;
                p = self.apply(p);
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}
