//! Base-`b` digit words, expansions and scattered-subword counting.
//!
//! Digits are stored most significant first. `rep(b, 0)` is the empty word,
//! and canonical words (the language `L_b`) are the empty word plus every
//! word whose first digit is nonzero.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A numeration base, `2 <= b <= 256` so that every digit fits in a `u8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub fn new(b: u64) -> Result<Self> {
        if (2..=256).contains(&b) {
            Ok(Base(b as u32))
        } else {
            Err(Error::InvalidBase(b))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// The largest digit, `b - 1`.
    #[inline]
    pub fn top_digit(self) -> u8 {
        (self.0 - 1) as u8
    }

    pub fn as_biguint(self) -> BigUint {
        BigUint::from(self.0)
    }

    /// `b^k` as an exact integer.
    pub fn pow(self, k: u32) -> BigUint {
        num_traits::pow(self.as_biguint(), k as usize)
    }

    /// `2b - 1`, the growth rate of the summatory function.
    pub fn growth(self) -> u32 {
        2 * self.0 - 1
    }

    fn check_digits(self, digits: &[u8]) -> Result<()> {
        match digits.iter().find(|&&d| u32::from(d) >= self.0) {
            Some(&d) => Err(Error::InvalidDigit {
                digit: d.into(),
                base: self.0,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite word over `{0, .., b-1}`, most significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    base: Base,
    digits: Vec<u8>,
}

impl Word {
    pub fn new(base: Base, digits: Vec<u8>) -> Result<Self> {
        base.check_digits(&digits)?;
        Ok(Word { base, digits })
    }

    pub fn empty(base: Base) -> Self {
        Word {
            base,
            digits: Vec::new(),
        }
    }

    /// Parses digits written as `0-9a-z` (bases up to 36), or as
    /// dot-separated decimal digits (`"12.0.255"`) for any base.
    pub fn parse(base: Base, s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = if s.contains('.') {
            s.split('.')
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<Vec<_>>>()?
        } else if s == "ε" {
            Vec::new()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(s.to_string()))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(base, digits)
    }

    #[inline]
    pub fn base(&self) -> Base {
        self.base
    }

    #[inline]
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        is_canonical(&self.digits)
    }

    pub fn value(&self) -> BigUint {
        value_of(self.base, &self.digits)
    }

    /// Concatenation; both words must share a base.
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.base, other.base);
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word {
            base: self.base,
            digits,
        }
    }

    /// The word with leading zeroes removed, i.e. `rep(b, val(b, w))`.
    pub fn normalized(&self) -> Word {
        let start = self
            .digits
            .iter()
            .position(|&d| d != 0)
            .unwrap_or(self.digits.len());
        Word {
            base: self.base,
            digits: self.digits[start..].to_vec(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("ε");
        }
        if self.base.get() <= 36 {
            for &d in &self.digits {
                let c = char::from_digit(d.into(), 36).expect("digit below 36");
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            f.write_str(&parts.join("."))
        }
    }
}

/// Greedy base-`b` expansion of `n`; `rep(b, 0)` is the empty word.
pub fn rep(base: Base, n: &BigUint) -> Word {
    let digits = if n.is_zero() {
        Vec::new()
    } else {
        n.to_radix_be(base.get())
    };
    Word { base, digits }
}

pub fn rep_u64(base: Base, mut n: u64) -> Word {
    let b = u64::from(base.get());
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % b) as u8);
        n /= b;
    }
    digits.reverse();
    Word { base, digits }
}

/// Value of a digit string in base `b`. Leading zeroes are allowed.
pub fn val(base: Base, digits: &[u8]) -> Result<BigUint> {
    base.check_digits(digits)?;
    Ok(value_of(base, digits))
}

fn value_of(base: Base, digits: &[u8]) -> BigUint {
    if digits.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(digits, base.get()).expect("digits were validated")
}

/// True for the empty word and words with a nonzero first digit.
pub fn is_canonical(digits: &[u8]) -> bool {
    digits.first() != Some(&0)
}

/// Number of occurrences of `v` as a scattered subword of `u`.
///
/// Prefix tabulation: after reading `u[..i]`, `table[j]` holds the number
/// of embeddings of `v[..j]`; reading letter `a` adds `table[j-1]` to
/// `table[j]` for every `j` with `v[j-1] = a`.
pub fn word_binomial(u: &[u8], v: &[u8]) -> BigUint {
    if v.len() > u.len() {
        return BigUint::zero();
    }
    // C(u, v) <= C(|u|, |v|) < 2^|u|
    if u.len() < 128 {
        BigUint::from(binomial_table::<u128>(u, v))
    } else {
        binomial_table::<BigUint>(u, v)
    }
}

fn binomial_table<T>(u: &[u8], v: &[u8]) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    let mut table = vec![T::zero(); v.len() + 1];
    table[0] = T::one();
    for &a in u {
        for j in (1..=v.len()).rev() {
            if v[j - 1] == a {
                table[j] = &table[j] + &table[j - 1];
            }
        }
    }
    table.pop().expect("table is nonempty")
}

/// `S_b` of a word: one (for ε) plus the number of distinct nonempty
/// subwords of `w` that start with a nonzero digit.
pub fn count_canonical_subwords(w: &Word) -> BigUint {
    count_canonical_subwords_in(w.base, &w.digits)
}

/// Same as [`count_canonical_subwords`] on a raw digit slice.
pub fn count_canonical_subwords_in(base: Base, digits: &[u8]) -> BigUint {
    // every suffix has fewer than 2^len distinct subwords
    if digits.len() < 127 {
        BigUint::from(distinct_subword_count::<u128>(base, digits))
    } else {
        distinct_subword_count::<BigUint>(base, digits)
    }
}

/// Machine-integer variant used by the sweeps; `digits.len()` must be below 127.
pub fn count_canonical_subwords_small(base: Base, digits: &[u8]) -> u128 {
    assert!(digits.len() < 127, "word too long for the u128 fast path");
    distinct_subword_count::<u128>(base, digits)
}

/// Suffix recurrence over `D(i)`, the number of distinct subwords (ε
/// included) of `w[i..]`:
///
/// `D(i) = 2 D(i+1) - D(k+1)` where `k > i` is the next occurrence of
/// `w[i]`, and `D(i) = 2 D(i+1)` if there is none. Subwords starting with
/// `a` are counted by `D(p_a + 1)`, `p_a` the first position of `a`.
fn distinct_subword_count<T>(base: Base, w: &[u8]) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = w.len();
    let b = base.get() as usize;
    let mut suffix = vec![T::zero(); n + 1];
    suffix[n] = T::one();
    let mut next_seen = vec![usize::MAX; b];
    for i in (0..n).rev() {
        let a = w[i] as usize;
        let doubled = &suffix[i + 1] + &suffix[i + 1];
        suffix[i] = match next_seen[a] {
            usize::MAX => doubled,
            k => &doubled - &suffix[k + 1],
        };
        next_seen[a] = i;
    }
    // after the sweep, next_seen[a] is the first position of a
    let mut total = T::one();
    for &first in next_seen.iter().skip(1) {
        if first != usize::MAX {
            total = &total + &suffix[first + 1];
        }
    }
    total
}

/// Replaces every digit `a` by `(b - 1) - a`.
pub fn digit_complement(w: &Word) -> Word {
    let top = w.base.top_digit();
    Word {
        base: w.base,
        digits: w.digits.iter().map(|&d| top - d).collect(),
    }
}
