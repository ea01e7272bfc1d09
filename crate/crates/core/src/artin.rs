//! The Artin action of `B_n` on the free group `F_n = π₁(D_n)`.
//!
//! `σ_i` acts by `x_i -> x_i x_{i+1} x_i⁻¹`, `x_{i+1} -> x_i`, fixing the
//! other generators. The action is faithful, so a braid is trivial exactly
//! when it fixes every `x_j`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::braid::BraidWord;

/// Default cap on intermediate word length in [`act`].
pub const DEFAULT_LENGTH_BOUND: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArtinError {
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("free word grew to {len} letters, over the bound {bound}")]
    LengthBound { len: usize, bound: usize },
    #[error("malformed free-group token `{0}`")]
    Parse(String),
}

/// A freely reduced word in `x_1 .. x_n`; letters are `(index, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self { letters: vec![(i, 1)] }
    }

    /// `x_1 x_2 ... x_n`, the loop parallel to the boundary.
    pub fn boundary(n: usize) -> Self {
        Self { letters: (1..=n).map(|i| (i, 1)).collect() }
    }

    /// Reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, (i, s): (usize, i8)) {
        if self.letters.last() == Some(&(i, -s)) {
            self.letters.pop();
        } else {
            self.letters.push((i, s));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        Self { letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    /// Sum of exponents, the map `ε: F_n -> Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    /// Strips matching inverse letters from the two ends.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let l = &self.letters;
        let (mut a, mut b) = (0, l.len());
        while b - a >= 2 && l[a].0 == l[b - 1].0 && l[a].1 == -l[b - 1].1 {
            a += 1;
            b -= 1;
        }
        Self { letters: l[a..b].to_vec() }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, &(i, s)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if s > 0 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FreeWord {
    type Err = ArtinError;

    /// Accepts `x<i>` and `x<i>^<k>` tokens; `e` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = FreeWord::identity();
        for token in s.split_whitespace() {
            if token == "e" {
                continue;
            }
            let bad = || ArtinError::Parse(token.to_string());
            let rest = token.strip_prefix('x').ok_or_else(bad)?;
            let (idx, pow) = match rest.split_once('^') {
                Some((i, k)) => (i, k.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || pow == 0 {
                return Err(bad());
            }
            for _ in 0..pow.unsigned_abs() {
                out.push((idx, pow.signum() as i8));
            }
        }
        Ok(out)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Image of `x_j` under `σ_i^{sign}`, appended to `out`.
fn image_of(i: usize, sign: i8, j: usize, out: &mut FreeWord, inverse: bool) {
    let img: &[(usize, i8)] = match (sign > 0, j) {
        (true, j) if j == i => &[(i, 1), (i + 1, 1), (i, -1)],
        (true, j) if j == i + 1 => &[(i, 1)],
        (false, j) if j == i => &[(i + 1, 1)],
        (false, j) if j == i + 1 => &[(i + 1, -1), (i, 1), (i + 1, 1)],
        _ => {
            out.push((j, if inverse { -1 } else { 1 }));
            return;
        }
    };
    if inverse {
        for &(k, s) in img.iter().rev() {
            out.push((k, -s));
        }
    } else {
        for &l in img {
            out.push(l);
        }
    }
}

/// Applies `σ_i^{sign}` to `u` in `F_n`.
pub fn act_generator(i: usize, sign: i8, u: &FreeWord, n: usize) -> Result<FreeWord, ArtinError> {
    if i == 0 || i >= n {
        return Err(ArtinError::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    let mut out = FreeWord { letters: Vec::with_capacity(u.len() + 4) };
    for &(j, s) in &u.letters {
        image_of(i, sign, j, &mut out, s < 0);
    }
    Ok(out)
}

/// Replaces each `x_k` in `u` by `images[k-1]`.
fn substitute_all(images: &[FreeWord], u: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for &(k, s) in &u.letters {
        let img = &images[k - 1];
        if s > 0 {
            for &l in &img.letters {
                out.push(l);
            }
        } else {
            for &(m, t) in img.letters.iter().rev() {
                out.push((m, -t));
            }
        }
    }
    out
}

/// Images of `x_1 .. x_n` under `w`, failing once any image exceeds `bound`.
///
/// The images are built letter by letter from the left: if `I_k` are the
/// images under a prefix `p`, the images under `p·σ_i` are obtained by
/// substituting `I_k` into the images of `x_k` under `σ_i`.
pub fn generator_images_bounded(w: &BraidWord, bound: usize) -> Result<Vec<FreeWord>, ArtinError> {
    let mut imgs: Vec<FreeWord> = (1..=w.n()).map(FreeWord::generator).collect();
    for l in w.letters() {
        let (a, b) = (l.index - 1, l.index);
        let (ia, ib) = (imgs[a].clone(), imgs[b].clone());
        if l.sign > 0 {
            imgs[a] = ia.mul(&ib).mul(&ia.inverse());
            imgs[b] = ia;
        } else {
            imgs[b] = ib.inverse().mul(&ia).mul(&ib);
            imgs[a] = ib;
        }
        let len = imgs[a].len().max(imgs[b].len());
        if len > bound {
            return Err(ArtinError::LengthBound { len, bound });
        }
    }
    Ok(imgs)
}

pub fn generator_images(w: &BraidWord) -> Vec<FreeWord> {
    generator_images_bounded(w, DEFAULT_LENGTH_BOUND).expect("free word exceeded the default length bound")
}

/// Applies `w` to `u`; the last letter of `w` acts first.
pub fn act(w: &BraidWord, u: &FreeWord) -> FreeWord {
    act_bounded(w, u, DEFAULT_LENGTH_BOUND).expect("free word exceeded the default length bound")
}

pub fn act_bounded(w: &BraidWord, u: &FreeWord, bound: usize) -> Result<FreeWord, ArtinError> {
    let imgs = generator_images_bounded(w, bound)?;
    let out = substitute_all(&imgs, u);
    if out.len() > bound {
        return Err(ArtinError::LengthBound { len: out.len(), bound });
    }
    Ok(out)
}

/// True iff `w` fixes every free generator.
///
/// Writes `w = u·v` with `u` the first half and compares the actions of `u`
/// and `v⁻¹`, which agree exactly when `w` acts trivially. This keeps
/// intermediate words far shorter than acting with all of `w`.
pub fn is_trivial_braid(w: &BraidWord) -> bool {
    is_trivial_braid_bounded(w, DEFAULT_LENGTH_BOUND).expect("free word exceeded the default length bound")
}

pub fn is_trivial_braid_bounded(w: &BraidWord, bound: usize) -> Result<bool, ArtinError> {
    let half = w.len().div_ceil(2);
    let letters = w.letters();
    let u = BraidWord::new(w.n(), letters[..half].to_vec()).expect("letters of a valid word");
    let v = BraidWord::new(w.n(), letters[half..].to_vec()).expect("letters of a valid word");
    Ok(generator_images_bounded(&u, bound)? == generator_images_bounded(&v.inverse(), bound)?)
}

/// Conjugacy in `F_n`: cyclic reductions agree up to rotation.
pub fn conjugate_equal(u: &FreeWord, v: &FreeWord) -> bool {
    let (a, b) = (u.cyclic_reduce(), v.cyclic_reduce());
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let doubled: Vec<_> = a.letters.iter().chain(a.letters.iter()).copied().collect();
    doubled.windows(b.len()).any(|win| win == b.letters.as_slice())
}
