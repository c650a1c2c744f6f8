//! The summatory function `A_b(n) = S_b(0) + .. + S_b(n - 1)`.
//!
//! `A_b(n)` is evaluated from the leading two digits of `rep_b(n)`. Writing
//! `l + 1` for the length of `x u` and `g = 2b - 1`:
//!
//! ```text
//! A(x 0^l)   = (2x - 1) g^l
//! A(x 0 u)   = (2b - 2)(2x - 1) g^(l-1)          + A(x u) + A(u)
//! A(x x u)   = (4xb - 2x - 2b + 2) g^(l-1)       + 2 A(x u) - A(u)
//! A(x y u)   = (4xb - 4x - 2b + 3 - [y > x]) g^(l-1)
//!                                                + A(x u) + 2 A(y u) - 2 A(u)
//! ```
//!
//! Iterating these rules writes `A_b(n)` as `sum_i d_i g^(L - i)` with
//! `L = |rep_b(n)| - 2`, see [`decompose`].

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{count_canonical_subwords_small, rep, rep_u64, Base};

/// Number of `S_b` evaluations [`a_oracle`] accepts by default.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// `A_b(n)` as a plain prefix sum of definitional `S_b` values.
pub fn a_oracle(base: Base, n: &BigUint) -> Result<BigUint> {
    a_oracle_with_budget(base, n, DEFAULT_ORACLE_BUDGET)
}

pub fn a_oracle_with_budget(base: Base, n: &BigUint, budget: u64) -> Result<BigUint> {
    let count = n.to_u64().filter(|&c| c <= budget).ok_or_else(|| {
        Error::BudgetExceeded {
            budget,
            requested: n.to_string(),
        }
    })?;
    let total: u128 = (0..count)
        .map(|j| count_canonical_subwords_small(base, rep_u64(base, j).digits()))
        .sum();
    Ok(BigUint::from(total))
}

/// `A_b(0), .., A_b(len - 1)` by prefix sums.
pub fn a_table(base: Base, len: u64) -> Vec<u128> {
    let mut out = Vec::with_capacity(len as usize);
    let mut acc = 0u128;
    for j in 0..len {
        out.push(acc);
        acc += count_canonical_subwords_small(base, rep_u64(base, j).digits());
    }
    out
}

fn check_digit(base: Base, x: u32) -> Result<()> {
    if x == 0 || x >= base.get() {
        return Err(Error::InvalidDigit {
            digit: x.into(),
            base: base.get(),
        });
    }
    Ok(())
}

fn growth_pow(base: Base, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(base.growth()), k as usize)
}

/// `A_b(x b^l) = (2x - 1)(2b - 1)^l`.
pub fn a_closed_form_pure(base: Base, x: u32, ell: u32) -> Result<BigUint> {
    check_digit(base, x)?;
    Ok(BigUint::from(2 * x - 1) * growth_pow(base, ell))
}

/// `A_b(x b^l + y b^(l-1))`, equal to `(4xb - 2x + 4y - 2b)(2b - 1)^(l-1)`
/// when `y <= x`, and one less times the same power when `y > x`.
pub fn a_closed_form_mixed(base: Base, x: u32, y: u32, ell: u32) -> Result<BigUint> {
    check_digit(base, x)?;
    check_digit(base, y)?;
    if ell == 0 {
        return Err(Error::OutOfRange("exponent 0 in the two-digit form".into()));
    }
    let b = base.get();
    let factor = 4 * x * b + 4 * y - 2 * x - 2 * b - u32::from(y > x);
    Ok(BigUint::from(factor) * growth_pow(base, ell - 1))
}

/// The constant of the rule applied to `x y u`, by second digit `y`.
fn rule_constant(b: i64, x: i64, y: i64) -> i64 {
    if y == 0 {
        (2 * b - 2) * (2 * x - 1)
    } else if y == x {
        4 * x * b - 2 * x - 2 * b + 2
    } else {
        4 * x * b - 4 * x - 2 * b + 3 - i64::from(y > x)
    }
}

/// `A_b(n)` through the leading-digit rules, tabulated over
/// `(x, i) -> A(x . d[i..])` for the digits `d` of `n`.
pub fn a_fast(base: Base, n: &BigUint) -> BigUint {
    a_fast_digits(base, rep(base, n).digits())
}

/// [`a_fast`] on a canonical digit string.
pub fn a_fast_digits(base: Base, d: &[u8]) -> BigUint {
    let len = d.len();
    if len == 0 {
        return BigUint::zero();
    }
    let b = base.get() as usize;
    let g = BigInt::from(base.growth());
    // powers[k] = g^k
    let mut powers = vec![BigInt::one()];
    for k in 1..len {
        let next = &powers[k - 1] * &g;
        powers.push(next);
    }
    // table[i][x] = A(x . d[i..]); tail[i] = A(d[i..]) without leading zeroes
    let mut table: Vec<Vec<BigInt>> = vec![Vec::new(); len + 1];
    table[len] = (0..b).map(|x| BigInt::from(2 * x as i64 - 1)).collect();
    let mut tail = vec![BigInt::zero(); len + 1];
    let mut first_nonzero = len;
    for i in (1..len).rev() {
        let ell = len - i;
        let y = d[i] as usize;
        if y != 0 {
            first_nonzero = i;
        }
        let pure = first_nonzero == len;
        let rest = &tail[i + 1];
        let mut row = vec![BigInt::zero(); b];
        for (x, slot) in row.iter_mut().enumerate().skip(1) {
            *slot = if pure {
                BigInt::from(2 * x as i64 - 1) * &powers[ell]
            } else {
                let shorter = &table[i + 1][x];
                let constant =
                    BigInt::from(rule_constant(b as i64, x as i64, y as i64)) * &powers[ell - 1];
                if y == 0 {
                    constant + shorter + rest
                } else if y == x {
                    constant + shorter * 2 - rest
                } else {
                    constant + shorter + &table[i + 1][y] * 2 - rest * 2
                }
            };
        }
        table[i] = row;
        tail[i] = if pure {
            BigInt::zero()
        } else {
            table[first_nonzero + 1][d[first_nonzero] as usize].clone()
        };
    }
    table[1][d[0] as usize]
        .to_biguint()
        .expect("A_b is nonnegative")
}

/// The `(2b - 1)`-decomposition `A_b(n) = sum_{i=0}^{L} d_i (2b - 1)^(L - i)`
/// with `L = |rep_b(n)| - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base: Base,
    pub n: BigUint,
    pub ell: usize,
    pub d: Vec<BigInt>,
}

impl Decomposition {
    /// `sum_i d_i (2b - 1)^(L - i)`.
    pub fn reconstruct(&self) -> BigInt {
        let g = BigInt::from(self.base.growth());
        self.d.iter().fold(BigInt::zero(), |acc, di| acc * &g + di)
    }

    pub fn to_export(&self) -> DecompositionExport {
        DecompositionExport {
            base: self.base.get(),
            n: self.n.to_string(),
            ell: self.ell,
            d: self.d.iter().map(BigInt::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DecompositionExport {
    pub base: u32,
    pub n: String,
    pub ell: usize,
    pub d: Vec<String>,
}

/// Expands `A_b(n)` by the leading-digit rules until every term is a pure
/// power `x b^l` (kept as `2x - 1` at power `l`) or `A(0)`.
///
/// Each subproblem `A(x . d[i..])` is visited once: the multiplicity with
/// which it occurs in the expansion of `A(n)` is pushed down to its
/// children, from the longest subproblem to the shortest. If `n` is itself
/// a pure power `x b^(L+1)`, its single term `2x - 1` is folded into
/// `d_0 = (2x - 1)(2b - 1)`.
pub fn decompose(base: Base, n: &BigUint) -> Result<Decomposition> {
    let word = rep(base, n);
    let d = word.digits();
    let len = d.len();
    if len < 2 {
        return Err(Error::OutOfRange(format!(
            "decomposition of {n} in base {base} (needs n >= b)"
        )));
    }
    let b = base.get() as usize;
    let ell = len - 2;
    let mut coeffs = vec![BigInt::zero(); ell + 1];

    // mult[i][x] = multiplicity of A(x . d[i..])
    let mut mult: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); b]; len + 1];
    mult[1][d[0] as usize] = BigInt::one();
    // next nonzero position at or after j
    let mut next_nonzero = vec![len; len + 1];
    for j in (0..len).rev() {
        next_nonzero[j] = if d[j] != 0 { j } else { next_nonzero[j + 1] };
    }
    // A(d[j..]) is A(d[p] . d[p+1..]) for the first nonzero p >= j
    let tail_slot = |j: usize| -> Option<(usize, usize)> {
        let p = next_nonzero[j];
        (p < len).then(|| (p + 1, d[p] as usize))
    };

    for i in 1..=len {
        let power = len - i;
        let pure = next_nonzero[i] == len;
        for x in 1..b {
            let m = std::mem::take(&mut mult[i][x]);
            if m.is_zero() {
                continue;
            }
            if pure {
                let term = &m * BigInt::from(2 * x as i64 - 1);
                if power > ell {
                    coeffs[0] += term * BigInt::from(base.growth());
                } else {
                    coeffs[ell - power] += term;
                }
                continue;
            }
            let y = d[i] as usize;
            coeffs[ell - (power - 1)] += &m * BigInt::from(rule_constant(b as i64, x as i64, y as i64));
            let (own, other, tail) = if y == 0 {
                (1, 0, 1)
            } else if y == x {
                (2, 0, -1)
            } else {
                (1, 2, -2)
            };
            mult[i + 1][x] += &m * own;
            if other != 0 {
                mult[i + 1][y] += &m * other;
            }
            if let Some((at, lead)) = tail_slot(i + 1) {
                mult[at][lead] += &m * tail;
            }
        }
    }
    Ok(Decomposition {
        base,
        n: n.clone(),
        ell,
        d: coeffs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub base: Base,
    pub n_max: u64,
    /// First `n` with `A(nb) != (2b - 1) A(n)`.
    pub failure: Option<u64>,
}

impl MultiplicativityReport {
    pub fn success(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `A_b(nb) = (2b - 1) A_b(n)` for `n <= n_max` with [`a_fast`].
pub fn check_multiplicativity(base: Base, n_max: u64) -> MultiplicativityReport {
    let g = BigUint::from(base.growth());
    let b = u64::from(base.get());
    let failure = (0..=n_max).find(|&n| {
        let scaled = BigUint::from(n) * b;
        a_fast(base, &scaled) != &g * a_fast(base, &BigUint::from(n))
    });
    MultiplicativityReport {
        base,
        n_max,
        failure,
    }
}

/// Sign of the leading decomposition coefficient.
pub fn leading_sign(dec: &Decomposition) -> Sign {
    dec.d.first().map_or(Sign::NoSign, BigInt::sign)
}

/// Largest absolute value among the coefficients.
pub fn max_abs_coefficient(dec: &Decomposition) -> BigInt {
    dec.d.iter().map(BigInt::abs).max().unwrap_or_default()
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

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn oracle_opening_values() {
        let got = a_table(base(3), 16);
        assert_eq!(got, [0, 1, 3, 5, 8, 11, 15, 18, 22, 25, 29, 34, 40, 45, 49, 55]);
        assert_eq!(a_oracle(base(3), &nat(150)).unwrap(), nat(1665));
        assert_eq!(a_oracle(base(7), &nat(0)).unwrap(), nat(0));
    }

    #[test]
    fn oracle_budget() {
        let err = a_oracle_with_budget(base(3), &nat(11), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
        assert!(a_oracle(base(2), &nat(DEFAULT_ORACLE_BUDGET + 1)).is_err());
    }

    #[test]
    fn closed_forms() {
        let b3 = base(3);
        assert_eq!(a_closed_form_pure(b3, 1, 1).unwrap(), nat(5));
        assert_eq!(a_closed_form_pure(b3, 2, 1).unwrap(), nat(15));
        assert_eq!(a_closed_form_pure(base(10), 1, 0).unwrap(), nat(1));
        assert_eq!(a_closed_form_mixed(b3, 1, 2, 1).unwrap(), nat(11));
        assert_eq!(a_closed_form_mixed(b3, 1, 1, 1).unwrap(), nat(8));
        assert_eq!(a_closed_form_mixed(b3, 2, 1, 1).unwrap(), nat(18));
        assert!(a_closed_form_pure(b3, 3, 1).is_err());
        assert!(a_closed_form_pure(b3, 0, 1).is_err());
        assert!(a_closed_form_mixed(b3, 1, 0, 2).is_err());
    }

    #[test]
    fn fast_matches_oracle() {
        for b in 2..=5u64 {
            let len = b.pow(6).min(3u64.pow(7)) + 1;
            let table = a_table(base(b), len);
            for (n, &want) in table.iter().enumerate() {
                assert_eq!(a_fast(base(b), &nat(n as u64)), BigUint::from(want), "b={b} n={n}");
            }
        }
        assert_eq!(a_fast(base(3), &nat(150)), nat(1665));
    }

    #[test]
    fn fast_on_pure_powers() {
        for b in 2..=6u32 {
            let bb = base(b.into());
            for x in 1..b {
                for ell in 0..=20u32 {
                    let n = BigUint::from(x) * bb.pow(ell);
                    assert_eq!(a_fast(bb, &n), a_closed_form_pure(bb, x, ell).unwrap());
                }
            }
        }
    }

    #[test]
    fn decomposition_of_150() {
        let dec = decompose(base(3), &nat(150)).unwrap();
        assert_eq!(dec.ell, 3);
        assert_eq!(dec.d, ints(&[4, 32, 73, 0]));
        assert_eq!(dec.reconstruct(), BigInt::from(1665));
    }

    #[test]
    fn decomposition_of_pure_power() {
        let dec = decompose(base(3), &nat(9)).unwrap();
        assert_eq!(dec.ell, 1);
        assert_eq!(dec.d, ints(&[5, 0]));
        assert_eq!(dec.reconstruct(), BigInt::from(25));
        assert_eq!(leading_sign(&dec), Sign::Plus);
    }

    #[test]
    fn decomposition_small_cases() {
        assert!(decompose(base(3), &nat(2)).is_err());
        // A_3(3) = 5 = d_0 with L = 0
        assert_eq!(decompose(base(3), &nat(3)).unwrap().d, ints(&[5]));
        // A_3(5) = 11
        assert_eq!(decompose(base(3), &nat(5)).unwrap().d, ints(&[11]));
    }

    #[test]
    fn decomposition_reconstructs() {
        for b in 2..=5u64 {
            for n in b..3000 {
                let dec = decompose(base(b), &nat(n)).unwrap();
                let want = BigInt::from(a_fast(base(b), &nat(n)));
                assert_eq!(dec.reconstruct(), want, "b={b} n={n}");
                assert_eq!(leading_sign(&dec), Sign::Plus, "b={b} n={n}");
            }
        }
    }

    #[test]
    fn multiplicativity() {
        assert!(check_multiplicativity(base(3), 2000).success());
        assert!(check_multiplicativity(base(2), 2000).success());
        assert_eq!(a_fast(base(4), &nat(0)), nat(0));
    }

    #[test]
    fn export_shape() {
        let dec = decompose(base(3), &nat(150)).unwrap();
        let json = serde_json::to_value(dec.to_export()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"base": 3, "n": "150", "ell": 3, "d": ["4", "32", "73", "0"]})
        );
        assert!(max_abs_coefficient(&dec) == BigInt::from(73));
    }
}
