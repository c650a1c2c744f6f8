//! Evaluation of `S_b(n)` and the witnesses of its `b`-regularity.
//!
//! Three independent routes compute `S_b(n)`: the definitional count
//! ([`s_oracle`]), the leading-digit recurrences ([`s_recurrence`]) and the
//! product of `b x b` matrices along the digits of `n` ([`s_fast`]). The
//! matrices come from the relations
//!
//! ```text
//! S(n b^2 + r)   = a_r S(n) + sum_s c_{r,s} S(n b + s)      r < b^2
//! S(n b + b - 1) = (2b - 1) S(n) - sum_s S(n b + s)
//! ```
//!
//! with `s` ranging over `0..=b-2`.

use std::ops::{Add, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{count_canonical_subwords, count_canonical_subwords_small, rep, rep_u64, Base};

/// `S_b(n)` by counting the distinct canonical subwords of `rep_b(n)`.
pub fn s_oracle(base: Base, n: &BigUint) -> BigUint {
    count_canonical_subwords(&rep(base, n))
}

/// Table of `S_b(n)` for `n < len`, from the definition.
pub fn s_table(base: Base, len: u64) -> Vec<u128> {
    (0..len)
        .map(|n| count_canonical_subwords_small(base, rep_u64(base, n).digits()))
        .collect()
}

/// `S_b(n)` through the recurrences on the two leading digits of `rep_b(n)`:
///
/// ```text
/// S(x 0 u) = S(x u) + S(u)
/// S(x x u) = 2 S(x u) - S(u)
/// S(x y u) = S(x u) + 2 S(y u) - 2 S(u)      y != 0, x
/// ```
///
/// where `S(u)` reads `u` with leading zeroes dropped. Every subproblem has
/// the form `x . d[i..]` for a nonzero letter `x` and a suffix of the digits
/// `d` of `n`, so a table indexed by `(x, i)` is filled from the right.
pub fn s_recurrence(base: Base, n: &BigUint) -> BigUint {
    let digits = rep(base, n);
    s_recurrence_digits(base, digits.digits())
}

/// [`s_recurrence`] on a canonical digit string.
pub fn s_recurrence_digits(base: Base, digits: &[u8]) -> BigUint {
    if digits.len() < 120 {
        BigUint::from(recurrence_table::<u128>(base, digits))
    } else {
        recurrence_table::<BigUint>(base, digits)
    }
}

fn recurrence_table<T>(base: Base, d: &[u8]) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let len = d.len();
    if len == 0 {
        return T::one();
    }
    let b = base.get() as usize;
    let two = T::one() + T::one();
    // table[i][x] = S(x . d[i..]) for 1 <= i <= len
    let mut table: Vec<Vec<T>> = vec![Vec::new(); len + 1];
    table[len] = vec![two.clone(); b];
    // tail[i] = S(d[i..]) with leading zeroes dropped
    let mut tail = vec![T::one(); len + 1];
    let mut first_nonzero = len;
    for i in (1..len).rev() {
        let rest = &tail[i + 1];
        let y = d[i] as usize;
        let mut row = Vec::with_capacity(b);
        row.push(T::zero());
        for x in 1..b {
            let shorter = &table[i + 1][x];
            let value = if y == 0 {
                shorter + rest
            } else if y == x {
                &(shorter + shorter) - rest
            } else {
                let other = &table[i + 1][y];
                &(&(shorter + other) + other) - &(rest + rest)
            };
            row.push(value);
        }
        table[i] = row;
        if y != 0 {
            first_nonzero = i;
        }
        tail[i] = if first_nonzero == len {
            T::one()
        } else {
            table[first_nonzero + 1][d[first_nonzero] as usize].clone()
        };
    }
    table[1][d[0] as usize].clone()
}

/// The coefficients `a_r` and `c_{r,s}` of the relations on `S_b(n b^2 + r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCoefficients {
    base: Base,
    a: Vec<i64>,
    c: Vec<Vec<i64>>,
}

impl RegularityCoefficients {
    pub fn base(&self) -> Base {
        self.base
    }

    /// `a_r` for `r < b^2`.
    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// `c[r][s]` for `r < b^2`, `s <= b - 2`.
    pub fn c(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// `(a_r, c_{r,0}, .., c_{r,b-2})`.
    pub fn row(&self, r: usize) -> Vec<i64> {
        let mut row = vec![self.a[r]];
        row.extend_from_slice(&self.c[r]);
        row
    }
}

/// Solves for the coefficients from `S_b(0), .., S_b(b^3 - 1)`:
///
/// ```text
/// a_r     = 3 S(r) + 2 sum_{j=1}^{b-2} S(j b^2 + r) - (2b - 3) S((b-1) b^2 + r)
/// c_{r,0} = -2 S(r) + S((b-1) b^2 + r)
/// c_{r,s} = -S(s b^2 + r) + S((b-1) b^2 + r)
/// ```
pub fn solve_coefficients(base: Base) -> RegularityCoefficients {
    let b = base.get() as usize;
    let bb = b * b;
    let s: Vec<i64> = s_table(base, (bb * b) as u64)
        .into_iter()
        .map(|v| v as i64)
        .collect();
    let top = |r: usize| s[(b - 1) * bb + r];
    let mut a = Vec::with_capacity(bb);
    let mut c = Vec::with_capacity(bb);
    for r in 0..bb {
        let middle: i64 = (1..b - 1).map(|j| s[j * bb + r]).sum();
        a.push(3 * s[r] + 2 * middle - (2 * b as i64 - 3) * top(r));
        let mut row = vec![-2 * s[r] + top(r)];
        row.extend((1..b - 1).map(|j| -s[j * bb + r] + top(r)));
        c.push(row);
    }
    RegularityCoefficients { base, a, c }
}

/// Block coefficients of the linear system determining the relations: the
/// system matrix is this `b x b` matrix tensored with the identity of size
/// `b^2`. Row `i` is `(S(i), S(ib), S(ib + 1), .., S(ib + b - 2))`.
pub fn kernel_system_blocks(base: Base) -> Vec<Vec<i64>> {
    let b = base.get() as usize;
    let s: Vec<i64> = s_table(base, (b * b) as u64)
        .into_iter()
        .map(|v| v as i64)
        .collect();
    (0..b)
        .map(|i| {
            let mut row = vec![s[i]];
            row.extend((0..b - 1).map(|k| s[i * b + k]));
            row
        })
        .collect()
}

/// Inverse of [`kernel_system_blocks`], in closed form.
pub fn kernel_system_inverse_blocks(base: Base) -> Vec<Vec<i64>> {
    let b = base.get() as usize;
    let last = b - 1;
    let mut inv = vec![vec![0i64; b]; b];
    inv[0][0] = 3;
    inv[0][1..last].fill(2);
    inv[0][last] = -(2 * b as i64 - 3);
    inv[1][0] = -2;
    inv[1][last] += 1;
    for (k, row) in inv.iter_mut().enumerate().skip(2) {
        row[k - 1] = -1;
        row[last] = 1;
    }
    inv
}

/// `blocks (x) I_size` as a dense matrix.
pub fn kron_identity(blocks: &[Vec<i64>], size: usize) -> Vec<Vec<i64>> {
    let n = blocks.len() * size;
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in blocks.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            for k in 0..size {
                out[i * size + k][j * size + k] = v;
            }
        }
    }
    out
}

pub fn mat_mul(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * y[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `S_b(n) = (1 0 .. 0) mu(n_0) mu(n_1) .. mu(n_k) V(0)` where
/// `n = n_k .. n_1 n_0` in base `b` and
/// `V(n) = (S(n), S(nb), S(nb + 1), .., S(nb + b - 2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    base: Base,
    mu: Vec<Vec<Vec<i64>>>,
    v0: Vec<i64>,
}

pub fn build_linear_representation(coeffs: &RegularityCoefficients) -> LinearRepresentation {
    let base = coeffs.base;
    let b = base.get() as usize;
    let mut mu = Vec::with_capacity(b);
    for s in 0..b {
        let mut m = Vec::with_capacity(b);
        let mut first = vec![0i64; b];
        if s + 1 < b {
            first[1 + s] = 1;
        } else {
            first[0] = 2 * b as i64 - 1;
            first[1..].fill(-1);
        }
        m.push(first);
        for t in 0..b - 1 {
            m.push(coeffs.row(b * s + t));
        }
        mu.push(m);
    }
    let mut v0 = vec![2i64; b];
    v0[0] = 1;
    v0[1] = 1;
    LinearRepresentation { base, mu, v0 }
}

impl LinearRepresentation {
    pub fn new(base: Base) -> Self {
        build_linear_representation(&solve_coefficients(base))
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn mu(&self, digit: u8) -> &[Vec<i64>] {
        &self.mu[digit as usize]
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.mu
    }

    pub fn v0(&self) -> &[i64] {
        &self.v0
    }

    pub fn selector(&self) -> Vec<i64> {
        let mut sel = vec![0; self.v0.len()];
        sel[0] = 1;
        sel
    }

    /// `V_b(n)` for `n` given by its digits, most significant first.
    pub fn state_digits(&self, digits: &[u8]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.v0.iter().map(|&x| BigInt::from(x)).collect();
        for &d in digits {
            v = self.mu[d as usize]
                .iter()
                .map(|row| row.iter().zip(&v).map(|(&m, x)| x * m).sum())
                .collect();
        }
        v
    }

    pub fn state(&self, n: &BigUint) -> Vec<BigInt> {
        self.state_digits(rep(self.base, n).digits())
    }

    /// `S_b` of the number with the given digits (leading zeroes allowed,
    /// since `mu(0) V(0) = V(0)`).
    pub fn eval_digits(&self, digits: &[u8]) -> BigUint {
        if let Some(v) = self.eval_small(digits) {
            return BigUint::from(v);
        }
        let first = self.state_digits(digits).swap_remove(0);
        first
            .to_biguint()
            .expect("S_b takes positive values")
    }

    pub fn eval(&self, n: &BigUint) -> BigUint {
        self.eval_digits(rep(self.base, n).digits())
    }

    /// Machine-integer evaluation; `None` on overflow.
    pub fn eval_small(&self, digits: &[u8]) -> Option<u128> {
        let mut v: Vec<i128> = self.v0.iter().map(|&x| x.into()).collect();
        let mut next = vec![0i128; v.len()];
        for &d in digits {
            for (slot, row) in next.iter_mut().zip(&self.mu[d as usize]) {
                let mut acc = 0i128;
                for (&m, &x) in row.iter().zip(&v) {
                    acc = acc.checked_add(x.checked_mul(m.into())?)?;
                }
                *slot = acc;
            }
            std::mem::swap(&mut v, &mut next);
        }
        u128::try_from(v[0]).ok()
    }

    pub fn to_export(&self, coeffs: &RegularityCoefficients) -> RepresentationExport {
        let strings = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>();
        RepresentationExport {
            base: self.base.get(),
            a: strings(coeffs.a()),
            c: coeffs.c().iter().map(|row| strings(row)).collect(),
            mu: self
                .mu
                .iter()
                .map(|m| m.iter().map(|row| strings(row)).collect())
                .collect(),
            v0: strings(&self.v0),
        }
    }
}

/// `S_b(n)` via a freshly built linear representation.
pub fn s_fast(base: Base, n: &BigUint) -> BigUint {
    LinearRepresentation::new(base).eval(n)
}

/// JSON shape of the coefficients and matrices, integers as decimal strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RepresentationExport {
    pub base: u32,
    pub a: Vec<String>,
    pub c: Vec<Vec<String>>,
    pub mu: Vec<Vec<Vec<String>>>,
    pub v0: Vec<String>,
}

/// Which relation failed in [`verify_regularity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `S(n b^2 + r)` in terms of `S(n)` and `S(nb + s)`.
    Square { r: usize },
    /// `S(nb + b - 1)` in terms of `S(n)` and `S(nb + s)`.
    TopDigit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub relation: Relation,
    pub n: u64,
    pub expected: i128,
    pub found: i128,
}

/// The relation for `S(n b^2 + m)` with `m = br + b - 1` follows from the
/// top-digit relation applied at `nb + r` and the relations for
/// `m' = br + s`, `s <= b - 2`. `derived` is the coefficient vector this
/// combination produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyWitness {
    pub m: usize,
    /// Position in the list "top-digit relation, then `r = 0, 1, ..`".
    pub position: usize,
    pub derived: Vec<i64>,
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub base: Base,
    pub n_max: u64,
    pub counterexample: Option<Counterexample>,
    pub redundant: Vec<RedundancyWitness>,
}

impl RegularityReport {
    pub fn success(&self) -> bool {
        self.counterexample.is_none() && self.redundant.iter().all(|w| w.confirmed)
    }
}

/// Checks both families of relations for every `n <= n_max` against the
/// definitional values, and derives the redundant ones.
pub fn verify_regularity(base: Base, n_max: u64) -> Result<RegularityReport> {
    let b = base.get() as u64;
    let bb = b * b;
    let limit = n_max
        .checked_add(1)
        .and_then(|x| x.checked_mul(bb))
        .filter(|&x| x <= 50_000_000)
        .ok_or_else(|| Error::OutOfRange(format!("n_max = {n_max} for base {b}")))?;
    let coeffs = solve_coefficients(base);
    let s: Vec<i128> = s_table(base, limit).into_iter().map(|v| v as i128).collect();

    let mut counterexample = None;
    'sweep: for n in 0..=n_max {
        let at = |k: u64| s[k as usize];
        let combine = |lead: i64, rest: &[i64]| -> i128 {
            let mut acc = i128::from(lead) * at(n);
            for (j, &c) in rest.iter().enumerate() {
                acc += i128::from(c) * at(n * b + j as u64);
            }
            acc
        };
        let top = vec![-1i64; (b - 1) as usize];
        let expected = combine(2 * b as i64 - 1, &top);
        let found = at(n * b + b - 1);
        if expected != found {
            counterexample = Some(Counterexample {
                relation: Relation::TopDigit,
                n,
                expected,
                found,
            });
            break 'sweep;
        }
        for r in 0..bb as usize {
            let expected = combine(coeffs.a[r], &coeffs.c[r]);
            let found = at(n * bb + r as u64);
            if expected != found {
                counterexample = Some(Counterexample {
                    relation: Relation::Square { r },
                    n,
                    expected,
                    found,
                });
                break 'sweep;
            }
        }
    }

    Ok(RegularityReport {
        base,
        n_max,
        counterexample,
        redundant: redundancy_witnesses(&coeffs),
    })
}

pub fn redundancy_witnesses(coeffs: &RegularityCoefficients) -> Vec<RedundancyWitness> {
    let b = coeffs.base.get() as usize;
    let growth = 2 * b as i64 - 1;
    // S(nb + r) in the basis S(n), S(nb), .., S(nb + b - 2)
    let generator = |r: usize| -> Vec<i64> {
        let mut v = vec![0i64; b];
        if r + 1 < b {
            v[1 + r] = 1;
        } else {
            v[0] = growth;
            v[1..].fill(-1);
        }
        v
    };
    (0..b)
        .map(|r| {
            let m = b * r + b - 1;
            let mut derived: Vec<i64> = generator(r).iter().map(|x| growth * x).collect();
            for s in 0..b - 1 {
                for (d, x) in derived.iter_mut().zip(coeffs.row(b * r + s)) {
                    *d -= x;
                }
            }
            RedundancyWitness {
                m,
                position: m + 2,
                confirmed: derived == coeffs.row(m),
                derived,
            }
        })
        .collect()
}

/// Checks `S((b-1) b^l + r) = S((b-1) b^l + b^l - 1 - r)` for all `r < b^l`.
///
/// The second argument is `(b-1)` followed by the digitwise complement of
/// `r` padded to `l` digits, so only half of the range needs visiting.
pub fn palindrome_check(base: Base, ell: u32) -> Result<bool> {
    if ell == 0 {
        return Err(Error::OutOfRange("palindrome length 0".into()));
    }
    let b = base.get() as u64;
    let span = b
        .checked_pow(ell)
        .filter(|&x| x <= 1 << 36)
        .ok_or_else(|| Error::OutOfRange(format!("{b}^{ell}")))?;
    let repr = LinearRepresentation::new(base);
    let top = base.top_digit();
    let mut word = vec![top; ell as usize + 1];
    word[1..].fill(0);
    let mut mirror = vec![top; ell as usize + 1];
    for _ in 0..span.div_ceil(2) {
        for (m, &d) in mirror[1..].iter_mut().zip(&word[1..]) {
            *m = top - d;
        }
        if repr.eval_digits(&word) != repr.eval_digits(&mirror) {
            return Ok(false);
        }
        increment(&mut word[1..], base);
    }
    Ok(true)
}

/// Odometer step on a fixed-width digit string.
fn increment(digits: &mut [u8], base: Base) {
    for d in digits.iter_mut().rev() {
        if u32::from(*d) + 1 < base.get() {
            *d += 1;
            return;
        }
        *d = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    fn nat(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn oracle_opening_values() {
        let b3 = base(3);
        let got: Vec<u128> = s_table(b3, 18);
        assert_eq!(got, [1, 2, 2, 3, 3, 4, 3, 4, 3, 4, 5, 6, 5, 4, 6, 7, 7, 6]);
        assert_eq!(s_oracle(b3, &nat(16)), nat(7));
        for b in 2..=9 {
            assert_eq!(s_oracle(base(b), &nat(0)), nat(1));
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(s_recurrence(base(3), &nat(11)), nat(6));
        assert_eq!(s_recurrence(base(3), &nat(0)), nat(1));
        assert_eq!(s_recurrence(base(7), &nat(5)), nat(2));
    }

    #[test]
    fn recurrence_matches_oracle() {
        for b in 2..=5u64 {
            let table = s_table(base(b), b.pow(6).min(3u64.pow(7)));
            for (n, &want) in table.iter().enumerate() {
                assert_eq!(s_recurrence(base(b), &nat(n as u64)), nat(want as u64), "b={b} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_long_words() {
        let b = base(4);
        let n = BigUint::parse_bytes(b"123012300321021301220033210123012330012301", 4).unwrap();
        let w = rep(b, &n);
        assert!(w.len() > 40);
        assert_eq!(s_recurrence(b, &n), count_canonical_subwords(&w));
        let long = BigUint::parse_bytes("1203".repeat(40).as_bytes(), 4).unwrap();
        assert_eq!(s_recurrence(b, &long), s_oracle(b, &long));
    }

    #[test]
    fn coefficients_base_three() {
        let c = solve_coefficients(base(3));
        assert_eq!(c.a(), &[-1, -2, 3, -2, -1, 3, 8, 8, 9]);
        let c0: Vec<i64> = c.c().iter().map(|r| r[0]).collect();
        let c1: Vec<i64> = c.c().iter().map(|r| r[1]).collect();
        assert_eq!(c0, [2, 2, 1, 1, 0, -1, -1, -2, -2]);
        assert_eq!(c1, [0, 1, -1, 2, 2, 1, -2, -1, -2]);
    }

    #[test]
    fn coefficients_base_two() {
        let c = solve_coefficients(base(2));
        assert_eq!(c.a(), &[-1, 1, 4, 5]);
        assert_eq!(c.c(), &[vec![2], vec![1], vec![-1], vec![-2]]);
    }

    #[test]
    fn coefficients_base_five_repeated_letter() {
        let c = solve_coefficients(base(5));
        for x in 1..4 {
            let r = 5 * x + x;
            assert_eq!(c.a()[r], -1);
            assert_eq!(c.c()[r][0], 0);
        }
    }

    #[test]
    fn system_inverse() {
        for b in 2..=5 {
            let m = kernel_system_blocks(base(b));
            let inv = kernel_system_inverse_blocks(base(b));
            let size = (b * b) as usize;
            let full = mat_mul(&kron_identity(&m, size), &kron_identity(&inv, size));
            for (i, row) in full.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, i64::from(i == j), "b={b} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn matrices_base_three() {
        let r = LinearRepresentation::new(base(3));
        assert_eq!(r.mu(0), &[vec![0, 1, 0], vec![-1, 2, 0], vec![-2, 2, 1]]);
        assert_eq!(r.mu(1), &[vec![0, 0, 1], vec![-2, 1, 2], vec![-1, 0, 2]]);
        assert_eq!(r.mu(2), &[vec![5, -1, -1], vec![8, -1, -2], vec![8, -2, -1]]);
        assert_eq!(r.v0(), &[1, 1, 2]);
        assert_eq!(r.selector(), vec![1, 0, 0]);
    }

    #[test]
    fn matrices_base_two() {
        let r = LinearRepresentation::new(base(2));
        assert_eq!(r.mu(0), &[vec![0, 1], vec![-1, 2]]);
        assert_eq!(r.mu(1), &[vec![3, -1], vec![4, -1]]);
        assert_eq!(r.v0(), &[1, 1]);
        assert_eq!(LinearRepresentation::new(base(6)).v0(), &[1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn fast_evaluation_order() {
        let r = LinearRepresentation::new(base(3));
        // 3 = "10": mu(0) mu(1) v0
        let v0: Vec<i64> = r.v0().to_vec();
        let step = |m: &[Vec<i64>], v: &[i64]| -> Vec<i64> {
            m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
        };
        let v = step(r.mu(0), &step(r.mu(1), &v0));
        assert_eq!(v[0], 3);
        assert_eq!(r.eval(&nat(3)), nat(3));
        assert_eq!(s_fast(base(3), &nat(16)), nat(7));
    }

    #[test]
    fn fast_matches_oracle_base_two() {
        let r = LinearRepresentation::new(base(2));
        let table = s_table(base(2), 1 << 16);
        for (n, &want) in table.iter().enumerate() {
            assert_eq!(r.eval(&nat(n as u64)), nat(want as u64), "n={n}");
        }
    }

    #[test]
    fn fast_big_path() {
        let b = base(3);
        let r = LinearRepresentation::new(b);
        let n = BigUint::parse_bytes("2101".repeat(50).as_bytes(), 3).unwrap();
        let digits = rep(b, &n);
        assert!(r.eval_small(digits.digits()).is_none());
        assert_eq!(r.eval(&n), s_oracle(b, &n));
        let state = r.state(&n);
        assert_eq!(state[0].to_biguint(), Some(s_oracle(b, &n)));
    }

    #[test]
    fn regularity_sweeps() {
        let report = verify_regularity(base(3), 243).unwrap();
        assert!(report.success(), "{report:?}");
        let report = verify_regularity(base(5), 625).unwrap();
        assert!(report.success(), "{report:?}");
    }

    #[test]
    fn redundant_identities_base_two_and_three() {
        let report = verify_regularity(base(2), 1024).unwrap();
        assert!(report.success());
        let positions: Vec<usize> = report.redundant.iter().map(|w| w.position).collect();
        assert_eq!(positions, [3, 5]);
        let three = redundancy_witnesses(&solve_coefficients(base(3)));
        let positions: Vec<usize> = three.iter().map(|w| w.position).collect();
        assert_eq!(positions, [4, 7, 10]);
        assert!(three.iter().all(|w| w.confirmed));
    }

    #[test]
    fn regularity_detects_tampering() {
        let mut c = solve_coefficients(base(3));
        c.a[5] += 1;
        let flags: Vec<bool> = redundancy_witnesses(&c).iter().map(|w| w.confirmed).collect();
        assert_eq!(flags, [true, false, true]);
    }

    #[test]
    fn palindromes() {
        assert!(palindrome_check(base(3), 4).unwrap());
        assert!(palindrome_check(base(2), 1).unwrap());
        assert!(palindrome_check(base(4), 3).unwrap());
        assert!(palindrome_check(base(3), 0).is_err());
    }

    #[test]
    fn export_shape() {
        let b = base(2);
        let c = solve_coefficients(b);
        let json = serde_json::to_value(LinearRepresentation::new(b).to_export(&c)).unwrap();
        assert_eq!(json["base"], 2);
        assert_eq!(json["a"][0], "-1");
        assert_eq!(json["c"][3][0], "-2");
        assert_eq!(json["mu"][1][0][0], "3");
        assert_eq!(json["v0"], serde_json::json!(["1", "1"]));
    }
}
