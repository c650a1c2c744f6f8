//! Sampling the periodic fluctuation of `A_b`.
//!
//! For `n >= 1` and `0 <= alpha < b - 1` let
//! `e_n(alpha) = b^(n+1) + b * floor(b^n * alpha) + 1` and
//!
//! ```text
//! phi_n(alpha) = A_b(e_n(alpha)) / (2b - 1)^(log_b e_n(alpha))
//! ```
//!
//! As `n` grows `phi_n` converges to `Phi_b`, and `H_b(x) = Phi_b(b^x - 1)`
//! is the periodic factor in `A_b(m) = (2b - 1)^(log_b m) H_b(log_b m)`.
//!
//! The numerator and the floor are exact integers. Only the real power is
//! evaluated in floating point, at [`PRECISION`] bits.

use std::fmt::Write as _;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::summatory::a_fast;
use crate::words::Base;

/// Working precision in bits of the real arithmetic.
pub const PRECISION: usize = 160;

/// Relative error bound claimed for [`phi`] values.
pub const ERROR_BUDGET: f64 = 1e-12;

const RM: RoundingMode = RoundingMode::ToEven;

/// One evaluation of `phi_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSample {
    /// `alpha`, rounded to a double for display.
    pub alpha: f64,
    pub n: u32,
    /// `e_n(alpha)`.
    pub argument: BigUint,
    pub value: f64,
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants")
}

fn to_float(n: &BigUint, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&n.to_str_radix(10), Radix::Dec, PRECISION, RM, cc)
}

fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(Radix::Dec, RM, cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// `A_b(m) / (2b - 1)^(log_b m)` for `m >= 1`.
pub fn normalized_summatory(base: Base, m: &BigUint) -> f64 {
    let mut cc = consts();
    let numerator = to_float(&a_fast(base, m), &mut cc);
    let ln_m = to_float(m, &mut cc).ln(PRECISION, RM, &mut cc);
    let ln_g = BigFloat::from_u32(base.growth(), PRECISION).ln(PRECISION, RM, &mut cc);
    let ln_b = BigFloat::from_u32(base.get(), PRECISION).ln(PRECISION, RM, &mut cc);
    let exponent = ln_m.mul(&ln_g, PRECISION, RM).div(&ln_b, PRECISION, RM);
    let denominator = exponent.exp(PRECISION, RM, &mut cc);
    to_f64(&numerator.div(&denominator, PRECISION, RM), &mut cc)
}

/// `e_n` from `floor(b^n * alpha)`.
pub fn argument(base: Base, n: u32, scaled_floor: &BigUint) -> BigUint {
    base.pow(n + 1) + scaled_floor * base.get() + 1u32
}

/// `phi_n(alpha)` for a rational `alpha = num / den` in `[0, b - 1)`.
pub fn phi(base: Base, n: u32, num: u64, den: u64) -> Result<PhiSample> {
    if n == 0 {
        return Err(Error::OutOfRange("phi index 0".into()));
    }
    let top = u128::from(base.get() - 1) * u128::from(den);
    if den == 0 || u128::from(num) >= top {
        return Err(Error::OutOfRange(format!(
            "alpha = {num}/{den} outside [0, {})",
            base.get() - 1
        )));
    }
    let scaled = (base.pow(n) * num) / den;
    let arg = argument(base, n, &scaled);
    Ok(PhiSample {
        alpha: num as f64 / den as f64,
        n,
        value: normalized_summatory(base, &arg),
        argument: arg,
    })
}

/// `phi_n(b^x - 1)` at `x = k / resolution`, `0 <= k < resolution`.
///
/// `floor(b^n (b^x - 1)) = floor(b^(n + x)) - b^n`, and `floor(b^(n+x))`
/// is the integer `resolution`-th root of `b^(n * resolution + k)`.
pub fn phi_at_period_point(base: Base, n: u32, k: u32, resolution: u32) -> Result<PhiSample> {
    if n == 0 || resolution == 0 || k >= resolution {
        return Err(Error::OutOfRange(format!(
            "period point {k}/{resolution} at n = {n}"
        )));
    }
    let power = base.pow(n * resolution + k).nth_root(resolution);
    let scaled = power - base.pow(n);
    let x = f64::from(k) / f64::from(resolution);
    let arg = argument(base, n, &scaled);
    Ok(PhiSample {
        alpha: f64::from(base.get()).powf(x) - 1.0,
        n,
        value: normalized_summatory(base, &arg),
        argument: arg,
    })
}

/// `phi_n` just below the right end of the period: `alpha = (b - 1) - b^-n`,
/// so that `e_n = b^(n+2) - b + 1`.
pub fn phi_period_end(base: Base, n: u32) -> PhiSample {
    let scaled = base.pow(n) * (base.get() - 1) - 1u32;
    let arg = argument(base, n, &scaled);
    PhiSample {
        alpha: f64::from(base.get() - 1),
        n,
        value: normalized_summatory(base, &arg),
        argument: arg,
    }
}

/// Estimates of `H_b` on the grid `x_k = k / resolution`, in grid order.
pub fn sample_h(base: Base, n: u32, resolution: u32) -> Result<Vec<(f64, f64)>> {
    if resolution < 2 {
        return Err(Error::OutOfRange(format!("resolution {resolution}")));
    }
    (0..resolution)
        .into_par_iter()
        .map(|k| {
            let sample = phi_at_period_point(base, n, k, resolution)?;
            Ok((f64::from(k) / f64::from(resolution), sample.value))
        })
        .collect()
}

/// Largest pointwise difference between two series on the same grid.
pub fn max_gap(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p.1 - q.1).abs())
        .fold(0.0, f64::max)
}

/// Formats `v` in positional notation with `digits` significant digits.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.*}", digits.saturating_sub(1));
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// CSV with header `x,value`.
pub fn series_to_csv(series: &[(f64, f64)]) -> String {
    let mut out = String::from("x,value\n");
    for &(x, v) in series {
        let _ = writeln!(
            out,
            "{},{}",
            format_significant(x, 15),
            format_significant(v, 15)
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub base: Base,
    pub samples: usize,
    /// `(j, m)` with `A(b^j m) != (2b - 1)^j A(m)`, if any.
    pub exact_failure: Option<(u32, BigUint)>,
    /// Largest `|phi(b^j m) - phi(m)|` over the sampled `m` and `j <= 5`.
    pub max_deviation: f64,
}

impl ScalingReport {
    pub fn success(&self, tolerance: f64) -> bool {
        self.exact_failure.is_none() && self.max_deviation < tolerance
    }
}

/// Draws `m = b^k + r` with `1 <= k <= 8`, `r < b^k` (seeded), and checks
/// that `A_b(b^j m) / (2b - 1)^(log_b(b^j m))` does not depend on `j`: exactly
/// as `A_b(b^j m) = (2b - 1)^j A_b(m)`, and numerically.
pub fn scaling_identity_check(base: Base, samples: usize, seed: u64) -> ScalingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<BigUint> = (0..samples)
        .map(|_| {
            let k = rng.gen_range(1..=8u32);
            let span = u64::from(base.get()).pow(k);
            base.pow(k) + rng.gen_range(0..span)
        })
        .collect();
    let g = BigUint::from(base.growth());
    let results: Vec<(Option<(u32, BigUint)>, f64)> = points
        .par_iter()
        .map(|m| {
            let a_m = a_fast(base, m);
            let reference = normalized_summatory(base, m);
            let mut failure = None;
            let mut deviation = 0.0f64;
            for j in 1..=5u32 {
                let scaled = m * base.pow(j);
                if a_fast(base, &scaled) != &a_m * num_traits::pow(g.clone(), j as usize) {
                    failure.get_or_insert((j, m.clone()));
                }
                deviation = deviation.max((normalized_summatory(base, &scaled) - reference).abs());
            }
            (failure, deviation)
        })
        .collect();
    ScalingReport {
        base,
        samples,
        exact_failure: results.iter().find_map(|(f, _)| f.clone()),
        max_deviation: results.iter().map(|r| r.1).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summatory::a_oracle;

    fn base(b: u64) -> Base {
        Base::new(b).unwrap()
    }

    #[test]
    fn arguments() {
        assert_eq!(phi(base(3), 3, 0, 1).unwrap().argument, BigUint::from(82u32));
        assert_eq!(phi(base(2), 5, 1, 2).unwrap().argument, BigUint::from(97u32));
        let end = phi_period_end(base(3), 2);
        assert_eq!(end.argument, BigUint::from(81u32 - 3 + 1));
    }

    #[test]
    fn phi_value_against_plain_doubles() {
        let s = phi(base(3), 3, 0, 1).unwrap();
        let a = a_oracle(base(3), &BigUint::from(82u32)).unwrap();
        let a: f64 = a.to_string().parse().unwrap();
        let expected = a / 5f64.powf(82f64.ln() / 3f64.ln());
        assert!((s.value - expected).abs() < 1e-12 * expected, "{} vs {expected}", s.value);
    }

    #[test]
    fn exact_powers_give_one() {
        for b in 2..=5u64 {
            for k in 1..12u32 {
                let v = normalized_summatory(base(b), &base(b).pow(k));
                assert!((v - 1.0).abs() < 1e-15, "b={b} k={k} {v}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(phi(base(3), 3, 2, 1).is_err());
        assert!(phi(base(3), 3, 3, 2).is_ok());
        assert!(phi(base(2), 3, 1, 1).is_err());
        assert!(phi(base(3), 0, 0, 1).is_err());
        assert!(phi(base(3), 2, 0, 0).is_err());
        assert!(sample_h(base(3), 4, 1).is_err());
    }

    #[test]
    fn period_points_are_exact() {
        // x = 0 gives alpha = 0
        let p = phi_at_period_point(base(3), 5, 0, 8).unwrap();
        assert_eq!(p.argument, BigUint::from(3u32.pow(6) + 1));
        // base 4, x = 1/2: b^x - 1 = 1 exactly
        let q = phi_at_period_point(base(4), 3, 1, 2).unwrap();
        assert_eq!(q.argument, phi(base(4), 3, 1, 1).unwrap().argument);
    }

    #[test]
    fn endpoints_approach_one() {
        let near = |n| (phi(base(3), n, 0, 1).unwrap().value - 1.0).abs();
        assert!(near(10) < near(5));
        assert!(near(10) < 1e-3);
        let far = |n| (phi_period_end(base(3), n).value - 1.0).abs();
        assert!(far(10) < far(5));
    }

    #[test]
    fn series_csv() {
        let series = sample_h(base(3), 4, 4).unwrap();
        assert_eq!(series.len(), 4);
        assert_eq!(series[1].0, 0.25);
        let csv = series_to_csv(&series);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,value"));
        assert_eq!(lines.next().unwrap().split(',').next(), Some("0.00000000000000"));
        assert_eq!(format_significant(0.5, 15), "0.500000000000000");
        assert_eq!(format_significant(123.25, 4), "123.2");
    }

    #[test]
    fn scaling() {
        let report = scaling_identity_check(base(3), 20, 7);
        assert!(report.success(1e-9), "{report:?}");
        let report = scaling_identity_check(base(2), 20, 7);
        assert!(report.success(1e-9), "{report:?}");
    }
}
