//! Braid groups, the Burau representation and a search for nontrivial
//! elements of its kernel.

pub mod artin;
pub mod braid;
pub mod burau;
pub mod disc;
pub mod fixtures;
pub mod kernel;
pub mod laurent;
pub mod search;

pub use artin::{act, conjugate_equal, is_trivial_braid, FreeWord};
pub use braid::{BraidError, BraidWord, Letter, Permutation};
pub use burau::{burau, BurauMatrix, Variant};
pub use laurent::{LaurentError, LaurentPoly};
