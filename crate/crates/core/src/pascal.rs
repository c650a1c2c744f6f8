//! The generalized Pascal triangle `P_b(m, n) = C(rep_b(m), rep_b(n))`.
//!
//! Row `m` has exactly `S_b(m)` positive entries.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{rep_u64, word_binomial, Base};

pub fn triangle_entry(base: Base, m: u64, n: u64) -> BigUint {
    word_binomial(rep_u64(base, m).digits(), rep_u64(base, n).digits())
}

/// Number of `n` with `P_b(m, n) > 0`; entries vanish for `n > m`.
pub fn row_positive_count(base: Base, m: u64) -> u64 {
    let row = rep_u64(base, m);
    (0..=m)
        .filter(|&n| !word_binomial(row.digits(), rep_u64(base, n).digits()).is_zero())
        .count() as u64
}

/// The first `rows` rows, each stored up to the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleView {
    pub base: Base,
    pub entries: Vec<Vec<BigUint>>,
}

impl TriangleView {
    pub fn new(base: Base, rows: u64) -> Self {
        let entries = (0..rows)
            .into_par_iter()
            .map(|m| {
                let row = rep_u64(base, m);
                (0..=m)
                    .map(|n| word_binomial(row.digits(), rep_u64(base, n).digits()))
                    .collect()
            })
            .collect();
        TriangleView { base, entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Zero above the diagonal.
    pub fn get(&self, m: usize, n: usize) -> BigUint {
        self.entries[m].get(n).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderMode {
    /// Black for every positive entry.
    Threshold,
    /// Gray levels for `1..=cap`, black above.
    ClippedGray { cap: u32 },
}

impl RenderMode {
    fn cap(self) -> u32 {
        match self {
            RenderMode::Threshold => 1,
            RenderMode::ClippedGray { cap } => cap.max(1),
        }
    }

    /// Gray level of an entry: 0 is white, `cap` and above are black.
    pub fn shade(self, value: &BigUint) -> u8 {
        if value.is_zero() {
            return 255;
        }
        let cap = self.cap();
        let v = value.to_u32().unwrap_or(u32::MAX).min(cap);
        (255 - 255 * v / cap) as u8
    }
}

/// Binary graymap (`P5`, 8-bit) of size `rows x rows`, row `m` of the image
/// being row `m` of the triangle.
pub fn render_triangle(base: Base, rows: u64, mode: RenderMode) -> Result<Vec<u8>> {
    if rows == 0 {
        return Err(Error::OutOfRange("zero rows".into()));
    }
    let view = TriangleView::new(base, rows);
    Ok(render_view(&view, mode))
}

pub fn render_view(view: &TriangleView, mode: RenderMode) -> Vec<u8> {
    let side = view.rows();
    let mut out = format!("P5\n{side} {side}\n255\n").into_bytes();
    out.reserve(side * side);
    for row in &view.entries {
        out.extend(row.iter().map(|v| mode.shade(v)));
        out.extend(std::iter::repeat_n(255u8, side - row.len()));
    }
    out
}

/// Positive entries per row for `m < rows`.
pub fn compressed_profile(base: Base, rows: u64) -> Result<Vec<u64>> {
    if rows == 0 {
        return Err(Error::OutOfRange("zero rows".into()));
    }
    Ok((0..rows)
        .into_par_iter()
        .map(|m| row_positive_count(base, m))
        .collect())
}

/// CSV with header `m,count`.
pub fn profile_to_csv(profile: &[u64]) -> String {
    let mut out = String::from("m,count\n");
    for (m, count) in profile.iter().enumerate() {
        let _ = writeln!(out, "{m},{count}");
    }
    out
}
