//! Twist words, commutator candidates and kernel certification.
//!
//! A candidate is certified when its reduced Burau image is the identity and
//! the Artin action shows it is a nontrivial braid.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::artin::is_trivial_braid;
use crate::braid::{BraidError, BraidWord, Permutation};
use crate::burau::{burau, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("no built-in kernel element for n = {0} (available: 5, 6)")]
    NoBuiltinElement(usize),
}

/// A standard twist `core` moved into position by `conjugator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistSpec {
    pub conjugator: BraidWord,
    pub core: BraidWord,
}

impl TwistSpec {
    pub fn new(conjugator: BraidWord, core: BraidWord) -> Self {
        Self { conjugator, core }
    }
}

/// `conjugator⁻¹ · core · conjugator`, freely reduced.
pub fn conjugated_twist(spec: &TwistSpec) -> Result<BraidWord, BraidError> {
    spec.core.conjugate_by(&spec.conjugator)
}

/// `σ_{n-1} ... σ_2 σ_1² σ_2 ... σ_{n-1}`: the full twist about the straight
/// arc from `p0` to `q_n` together with the boundary.
pub fn boundary_twist_word(n: usize) -> Result<BraidWord, BraidError> {
    if n < 3 {
        return Err(BraidError::TooFewStrands { n, min: 3 });
    }
    let mut signed: Vec<i64> = (1..n as i64).rev().collect();
    signed.push(1);
    signed.extend(2..n as i64);
    BraidWord::from_signed(n, &signed)
}

fn parse(text: &str, n: usize) -> BraidWord {
    BraidWord::parse(text, n).expect("built-in word")
}

/// The two twists whose commutator is the built-in kernel element.
pub fn builtin_twists(n: usize) -> Result<(TwistSpec, TwistSpec), KernelError> {
    match n {
        5 => Ok((
            TwistSpec::new(parse("s3^-1 s2 s1^2 s2 s4^3 s3 s2", 5), parse("s4", 5)),
            TwistSpec::new(parse("s4^-1 s3 s2 s1^-2 s2 s1^2 s2^2 s1 s4^5", 5), boundary_twist_word(5)?),
        )),
        6 => Ok((
            TwistSpec::new(parse("s4 s5^-1 s2^-1 s1", 6), parse("s3", 6)),
            TwistSpec::new(parse("s4^-1 s5^2 s2 s1^-2", 6), parse("s3", 6)),
        )),
        _ => Err(KernelError::NoBuiltinElement(n)),
    }
}

/// The commutator of the two twists of [`builtin_twists`], freely reduced.
pub fn builtin_kernel_element(n: usize) -> Result<BraidWord, KernelError> {
    let (a, b) = builtin_twists(n)?;
    Ok(BraidWord::commutator(&conjugated_twist(&a)?, &conjugated_twist(&b)?)?)
}

/// True iff the reduced Burau images of `a` and `b` commute.
pub fn commuting_check(a: &BraidWord, b: &BraidWord) -> bool {
    burau(a, Variant::Reduced).commutes_with(&burau(b, Variant::Reduced))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub word: BraidWord,
    pub letter_count: usize,
    pub burau_trivial: bool,
    pub artin_trivial: bool,
    pub permutation: Permutation,
    pub exponent_sum: i64,
    pub certified: bool,
}

impl KernelReport {
    pub fn is_certified(&self) -> bool {
        self.burau_trivial && !self.artin_trivial
    }
}

pub fn verify_kernel(w: &BraidWord) -> KernelReport {
    let burau_trivial = burau(w, Variant::Reduced).is_identity();
    let artin_trivial = is_trivial_braid(w);
    KernelReport {
        word: w.clone(),
        letter_count: w.len(),
        burau_trivial,
        artin_trivial,
        permutation: w.permutation(),
        exponent_sum: w.exponent_sum(),
        certified: burau_trivial && !artin_trivial,
    }
}

impl fmt::Display for KernelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands        {}", self.word.n())?;
        writeln!(f, "letters        {}", self.letter_count)?;
        writeln!(f, "word           {}", self.word)?;
        writeln!(f, "permutation    {}", self.permutation)?;
        writeln!(f, "exponent_sum   {}", self.exponent_sum)?;
        writeln!(f, "burau_trivial  {}", self.burau_trivial)?;
        writeln!(f, "artin_trivial  {}", self.artin_trivial)?;
        write!(f, "certified      {}", self.certified)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_word;
    use proptest::prelude::*;

    fn w(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    #[test]
    fn boundary_twist_words() {
        assert_eq!(boundary_twist_word(5).unwrap(), w("s4 s3 s2 s1 s1 s2 s3 s4", 5));
        assert_eq!(boundary_twist_word(3).unwrap(), w("s2 s1^2 s2", 3));
        assert!(boundary_twist_word(2).is_err());
        for n in 3..=7 {
            let b = boundary_twist_word(n).unwrap();
            assert_eq!(b.len(), 2 * (n - 1));
            assert!(b.permutation().is_identity());
            // It is Δ_n² Δ_{n-1}⁻², so it commutes with B_{n-1}.
            for i in 1..n - 1 {
                assert!(commuting_check(&b, &w(&format!("s{i}"), n)));
            }
            assert!(!commuting_check(&b, &w(&format!("s{}", n - 1), n)));
        }
    }

    #[test]
    fn conjugated_twist_examples() {
        let (a, b) = builtin_twists(5).unwrap();
        let ta = conjugated_twist(&a).unwrap();
        assert_eq!(ta.len(), 21);
        assert_eq!(ta, a.conjugator.inverse().concat(&w("s4", 5)).unwrap().concat(&a.conjugator).unwrap());
        // The trailing σ4 of the core cancels the leading σ4⁻¹ of the conjugator.
        assert_eq!(conjugated_twist(&b).unwrap().len(), 38);
        let plain = TwistSpec::new(BraidWord::identity(5), w("s2 s3", 5));
        assert_eq!(conjugated_twist(&plain).unwrap(), w("s2 s3", 5));
        let bad = TwistSpec::new(BraidWord::identity(4), w("s2", 5));
        assert!(conjugated_twist(&bad).is_err());
    }

    #[test]
    fn builtin_elements() {
        let e5 = builtin_kernel_element(5).unwrap();
        assert_eq!(e5.len(), 118);
        let (a, b) = builtin_twists(5).unwrap();
        let unreduced = |t: &TwistSpec| t.conjugator.inverse().concat(&t.core).unwrap().concat(&t.conjugator).unwrap();
        let (ua, ub) = (unreduced(&a), unreduced(&b));
        let literal = ua.inverse().concat(&ub.inverse()).unwrap().concat(&ua).unwrap().concat(&ub).unwrap();
        assert_eq!(literal.len(), 122);
        assert_eq!(literal.free_reduce(), e5);
        let e6 = builtin_kernel_element(6).unwrap();
        assert_eq!(e6.len(), 44);
        for e in [&e5, &e6] {
            assert_eq!(e.exponent_sum(), 0);
            assert_eq!(*e, e.free_reduce());
        }
        assert_eq!(builtin_kernel_element(4), Err(KernelError::NoBuiltinElement(4)));
    }

    #[test]
    fn builtin_elements_are_certified() {
        for n in [5, 6] {
            let r = verify_kernel(&builtin_kernel_element(n).unwrap());
            assert!(r.burau_trivial && !r.artin_trivial && r.certified, "n = {n}");
            assert!(r.permutation.is_identity());
            let (a, b) = builtin_twists(n).unwrap();
            assert!(commuting_check(&conjugated_twist(&a).unwrap(), &conjugated_twist(&b).unwrap()));
        }
    }

    #[test]
    fn generator_is_not_in_kernel() {
        let r = verify_kernel(&w("s1", 5));
        assert!(!r.burau_trivial && !r.artin_trivial && !r.certified);
        assert!(!verify_kernel(&BraidWord::identity(5)).certified);
    }

    #[test]
    fn commuting_examples() {
        assert!(!commuting_check(&w("s1", 3), &w("s2", 3)));
        assert!(commuting_check(&w("s1", 5), &w("s3", 5)));
    }

    #[test]
    fn commutator_triviality_matches_commuting_twists() {
        let core_a = w("s1", 5);
        let core_b = boundary_twist_word(5).unwrap();
        for conj in ["e", "s2", "s2^-1 s3", "s3 s4^-1 s2", "s1 s2 s3 s4"] {
            let ta = core_a.conjugate_by(&w(conj, 5)).unwrap();
            let c = BraidWord::commutator(&ta, &core_b).unwrap();
            assert_eq!(verify_kernel(&c).burau_trivial, commuting_check(&ta, &core_b), "{conj}");
        }
        let (a, b) = builtin_twists(5).unwrap();
        let (ta, tb) = (conjugated_twist(&a).unwrap(), conjugated_twist(&b).unwrap());
        assert_eq!(verify_kernel(&BraidWord::commutator(&ta, &tb).unwrap()).burau_trivial, commuting_check(&ta, &tb));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn flags_are_conjugation_invariant(g in arb_word(6, 6)) {
            let e = builtin_kernel_element(6).unwrap();
            let base = verify_kernel(&e);
            let c = verify_kernel(&e.conjugate_by(&g).unwrap());
            prop_assert_eq!(c.burau_trivial, base.burau_trivial);
            prop_assert_eq!(c.artin_trivial, base.artin_trivial);
        }

        #[test]
        fn flags_are_conjugation_invariant_off_kernel(w in arb_word(4, 6), g in arb_word(4, 6)) {
            let base = verify_kernel(&w);
            let c = verify_kernel(&w.conjugate_by(&g).unwrap());
            prop_assert_eq!(c.burau_trivial, base.burau_trivial);
            prop_assert_eq!(c.artin_trivial, base.artin_trivial);
        }
    }
}
