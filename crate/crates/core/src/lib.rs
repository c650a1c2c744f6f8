//! Counting distinct scattered subwords of base-`b` expansions.
//!
//! For a base `b >= 2`, `S_b(n)` is the number of distinct subwords of the
//! base-`b` expansion of `n` that are themselves valid expansions (no
//! leading zero; the empty word counts). The crate provides exact
//! evaluation of `S_b` and of its summatory function `A_b`, the linear
//! representation witnessing that `S_b` is `b`-regular, the exact
//! decomposition of `A_b(n)` into powers of `2b - 1`, high-precision
//! sampling of the periodic fluctuation of `A_b`, and the generalized
//! Pascal triangle built from word binomial coefficients.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod pascal;
pub mod regular;
pub mod summatory;
pub mod trie;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use words::{Base, Word};
