//! The unreduced and reduced Burau representations.
//!
//! Matrices act on column vectors. For the unreduced representation on the
//! basis `v_1 .. v_n`, `σ_i` sends `v_i -> (1-t) v_i + t v_{i+1}` and
//! `v_{i+1} -> v_i`, so its `(i, i+1)` block is `[[1-t, 1], [t, 0]]`.
//! The reduced representation is the restriction to the invariant submodule
//! spanned by `u_j = v_j - v_{j+1}`, written in the `u` basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::braid::{BraidError, BraidWord, Letter};
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Unreduced,
    Reduced,
}

impl Variant {
    /// Matrix size for `n` strands.
    pub fn size(self, n: usize) -> usize {
        match self {
            Variant::Unreduced => n,
            Variant::Reduced => n - 1,
        }
    }
}

/// Order in which generator matrices are multiplied.
///
/// Only [`ProductOrder::LeftAction`] is consistent with the rest of the
/// crate; the reversed order is kept for debugging convention mismatches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductOrder {
    #[default]
    LeftAction,
    Reversed,
}

#[derive(Clone, PartialEq, Eq)]
pub struct BurauMatrix {
    variant: Variant,
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl BurauMatrix {
    pub fn identity(size: usize, variant: Variant) -> Self {
        Self::scalar(size, variant, LaurentPoly::one())
    }

    pub fn scalar(size: usize, variant: Variant, value: LaurentPoly) -> Self {
        let mut entries = vec![LaurentPoly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = value.clone();
        }
        Self { variant, size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row * self.size + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> + '_ {
        self.entries.chunks(self.size)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BurauMatrix) -> BurauMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        let n = self.size;
        let mut out = BurauMatrix::scalar(n, self.variant, LaurentPoly::zero());
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * n + c;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        out
    }

    /// Exact identity test.
    pub fn is_identity(&self) -> bool {
        self.is_scalar(&LaurentPoly::one())
    }

    pub fn is_scalar(&self, value: &LaurentPoly) -> bool {
        (0..self.size).all(|r| {
            (0..self.size).all(|c| {
                let e = self.get(r, c);
                if r == c { e == value } else { e.is_zero() }
            })
        })
    }

    pub fn commutes_with(&self, other: &BurauMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Entry-wise evaluation at `t = 1`.
    pub fn specialize_t1(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|row| row.iter().map(LaurentPoly::at_one).collect()).collect()
    }

    /// Determinant by cofactor expansion; sizes here stay below 8.
    pub fn determinant(&self) -> LaurentPoly {
        let idx: Vec<usize> = (0..self.size).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> LaurentPoly {
        if cols.is_empty() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &self.minor_det(row + 1, &rest);
            if pos % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
}

fn unreduced_generator(letter: Letter, n: usize) -> BurauMatrix {
    let mut m = BurauMatrix::identity(n, Variant::Unreduced);
    let a = letter.index - 1;
    let block: [[LaurentPoly; 2]; 2] = if letter.sign > 0 {
        [
            [LaurentPoly::from_terms([(0, 1), (1, -1)]), LaurentPoly::one()],
            [LaurentPoly::t_pow(1), LaurentPoly::zero()],
        ]
    } else {
        [
            [LaurentPoly::zero(), LaurentPoly::t_pow(-1)],
            [LaurentPoly::one(), LaurentPoly::from_terms([(0, 1), (-1, -1)])],
        ]
    };
    for (r, row) in block.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m.set(a + r, a + c, v);
        }
    }
    m
}

/// Rewrites an unreduced matrix in the basis `u_j = v_j - v_{j+1}` of the
/// invariant submodule. A vector `Σ c_k v_k` with `Σ c_k = 0` has
/// `u_j`-coordinate `c_1 + ... + c_j`.
fn reduce(m: &BurauMatrix) -> BurauMatrix {
    let n = m.size;
    let mut out = BurauMatrix::scalar(n - 1, Variant::Reduced, LaurentPoly::zero());
    for j in 0..n - 1 {
        let mut partial = LaurentPoly::zero();
        for k in 0..n - 1 {
            partial += m.get(k, j);
            partial -= m.get(k, j + 1);
            out.set(k, j, partial.clone());
        }
        debug_assert!({
            let last = &(m.get(n - 1, j) - m.get(n - 1, j + 1)) + &partial;
            last.is_zero()
        });
    }
    out
}

/// Matrix of a single generator `σ_i^{±1}` on `n` strands.
pub fn generator_matrix(
    index: usize,
    sign: i8,
    n: usize,
    variant: Variant,
) -> Result<BurauMatrix, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands { n, min: 2 });
    }
    if index == 0 || index >= n {
        return Err(BraidError::IndexOutOfRange { index: index as i64, n, max: n - 1 });
    }
    let letter = Letter { index, sign: if sign < 0 { -1 } else { 1 } };
    let m = unreduced_generator(letter, n);
    Ok(match variant {
        Variant::Unreduced => m,
        Variant::Reduced => reduce(&m),
    })
}

/// Burau image of a word under the left-action convention.
pub fn burau(word: &BraidWord, variant: Variant) -> BurauMatrix {
    burau_with_order(word, variant, ProductOrder::LeftAction)
}

pub fn burau_with_order(word: &BraidWord, variant: Variant, order: ProductOrder) -> BurauMatrix {
    let n = word.n();
    let gens: Vec<BurauMatrix> = [1i8, -1]
        .iter()
        .flat_map(|&s| (1..n).map(move |i| (i, s)))
        .map(|(i, s)| generator_matrix(i, s, n, variant).expect("index checked by BraidWord"))
        .collect();
    let pick = |l: &Letter| &gens[(l.index - 1) + if l.sign > 0 { 0 } else { n - 1 }];
    let mut m = BurauMatrix::identity(variant.size(n), variant);
    match order {
        ProductOrder::LeftAction => {
            for l in word.letters() {
                m = m.mul(pick(l));
            }
        }
        ProductOrder::Reversed => {
            for l in word.letters().iter().rev() {
                m = m.mul(pick(l));
            }
        }
    }
    m
}

/// The permutation matrix `P` with `P[π(j)][j] = 1`, matching unreduced
/// Burau matrices specialized at `t = 1`.
pub fn permutation_matrix(perm: &crate::braid::Permutation) -> Vec<Vec<BigInt>> {
    let n = perm.n();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for j in 1..=n {
        out[perm.apply(j) - 1][j - 1] = BigInt::one();
    }
    out
}

impl fmt::Display for BurauMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BurauMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BurauMatrix({:?}, {}x{})", self.variant, self.size, self.size)?;
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BurauMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<&[LaurentPoly]> = self.rows().collect();
        let mut s = serializer.serialize_struct("BurauMatrix", 3)?;
        s.serialize_field("variant", &self.variant)?;
        s.serialize_field("size", &self.size)?;
        s.serialize_field("entries", &rows)?;
        s.end()
    }
}
