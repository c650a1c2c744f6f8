//! Named consistency checks shared by the `verify` command and the
//! acceptance suite.
//!
//! Every check returns a [`CheckResult`] holding either a short summary of
//! what was swept or the first counterexample found.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::asymptotics::{max_gap, phi, phi_period_end, sample_h, scaling_identity_check};
use crate::regular::{
    kernel_system_blocks, kernel_system_inverse_blocks, kron_identity, mat_mul,
    palindrome_check, s_recurrence_digits, s_table, solve_coefficients, verify_regularity,
    LinearRepresentation, Relation,
};
use crate::summatory::{
    a_closed_form_mixed, a_closed_form_pure, a_fast, a_fast_digits, a_table,
    check_multiplicativity, decompose, Decomposition,
};
use crate::trie::{block_factorization, build_trie, verify_structure, TrieBuilder};
use crate::words::{count_canonical_subwords_small, rep_u64, word_binomial, Base, Word};
use crate::pascal::{row_positive_count, triangle_entry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_outcome(name: impl Into<String>, outcome: Result<String, String>) -> Self {
        match outcome {
            Ok(detail) => CheckResult::pass(name, detail),
            Err(detail) => CheckResult::fail(name, detail),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

/// Opening terms of `S_3`.
pub const S3_PREFIX: [u64; 33] = [
    1, 2, 2, 3, 3, 4, 3, 4, 3, 4, 5, 6, 5, 4, 6, 7, 7, 6, 4, 6, 5, 7, 6, 7, 5, 6, 4, 5, 7, 8, 8,
    7, 10,
];

/// Opening terms of `A_3`.
pub const A3_PREFIX: [u64; 16] = [0, 1, 3, 5, 8, 11, 15, 18, 22, 25, 29, 34, 40, 45, 49, 55];

/// Coefficients for `b = 3`, indexed by `r`.
pub const B3_A: [i64; 9] = [-1, -2, 3, -2, -1, 3, 8, 8, 9];
pub const B3_C0: [i64; 9] = [2, 2, 1, 1, 0, -1, -1, -2, -2];
pub const B3_C1: [i64; 9] = [0, 1, -1, 2, 2, 1, -2, -1, -2];

/// Coefficients for `b = 2`.
pub const B2_A: [i64; 4] = [-1, 1, 4, 5];
pub const B2_C0: [i64; 4] = [2, 1, -1, -2];

/// The three digit matrices for `b = 3`.
pub const MU3: [[[i64; 3]; 3]; 3] = [
    [[0, 1, 0], [-1, 2, 0], [-2, 2, 1]],
    [[0, 0, 1], [-2, 1, 2], [-1, 0, 2]],
    [[5, -1, -1], [8, -1, -2], [8, -2, -1]],
];

/// Published `(2b - 1)`-decomposition of `A_3(150)`.
pub const DECOMPOSITION_150: [i64; 4] = [4, 32, 82, -45];

const LETTER_NAMES: [char; 4] = ['x', 'y', 'z', 't'];

/// Names the nonzero letters of `digits` in order of first appearance,
/// continuing a naming already started in `named`.
fn name_letters(digits: &[u8], named: &mut Vec<u8>) -> String {
    digits
        .iter()
        .map(|&d| {
            if d == 0 {
                return '0';
            }
            let index = match named.iter().position(|&n| n == d) {
                Some(i) => i,
                None => {
                    named.push(d);
                    named.len() - 1
                }
            };
            LETTER_NAMES[index]
        })
        .collect()
}

/// `S_b` of a word of length at most 3 by its letter pattern.
pub fn table1_value(pattern: &str) -> Option<u64> {
    Some(match pattern {
        "" => 1,
        "x" => 2,
        "x0" | "xx" => 3,
        "xy" | "x00" | "xxx" => 4,
        "x0x" | "xx0" => 5,
        "x0y" | "xxy" | "xyy" => 6,
        "xy0" | "xyx" => 7,
        "xyz" => 8,
        _ => return None,
    })
}

/// Pattern of `r < b^2` with `B = b - 1` kept literal and `x, y` standing
/// for distinct letters of `{1, .., b - 2}`, plus the letters bound to
/// `x` and `y`.
pub fn coefficient_class(base: Base, r: u64) -> (String, Vec<u8>) {
    let top = base.top_digit();
    let digits = rep_u64(base, r);
    let mut bound = Vec::new();
    let pattern = digits
        .digits()
        .iter()
        .map(|&d| {
            if d == 0 {
                '0'
            } else if d == top {
                'B'
            } else {
                let index = bound.iter().position(|&n| n == d).unwrap_or_else(|| {
                    bound.push(d);
                    bound.len() - 1
                });
                LETTER_NAMES[index]
            }
        })
        .collect();
    (pattern, bound)
}

/// Expected `a_r` and `c_{r,0}` by class.
pub fn table_a_c0(b: i64, class: &str) -> Option<(i64, i64)> {
    Some(match class {
        "" => (-1, 2),
        "x" => (-2, 2),
        "B" => (2 * b - 3, 1),
        "x0" => (-2, 1),
        "B0" => (4 * b - 4, -1),
        "xx" => (-1, 0),
        "BB" => (4 * b - 3, -2),
        "xy" => (-2, 0),
        "Bx" => (4 * b - 4, -2),
        "xB" => (2 * b - 3, -1),
        _ => return None,
    })
}

/// Expected `c_{r,s}` for `1 <= s <= b - 2`, where `s` is compared with the
/// letters bound to `x` and `y` in the class of `r`.
pub fn table_cs(class: &str, bound: &[u8], s: u8) -> Option<i64> {
    let is = |i: usize| bound.get(i) == Some(&s);
    Some(match class {
        "" => 0,
        "x" => i64::from(is(0)),
        "B" => -1,
        "x0" | "xx" => 2 * i64::from(is(0)),
        "B0" | "BB" => -2,
        "xy" => {
            if is(0) {
                2
            } else if is(1) {
                1
            } else {
                0
            }
        }
        "xB" => {
            if is(0) {
                1
            } else {
                -1
            }
        }
        "Bx" => {
            if is(0) {
                -1
            } else {
                -2
            }
        }
        _ => return None,
    })
}

/// `S_b(n b^2 + r)` for a two-digit `n` by the joint pattern of `rep_b(n)`
/// and `rep_b(r)`.
pub fn joint_table_value(n_pattern: &str, r_pattern: &str) -> Option<u64> {
    let row: &[(&str, u64)] = match n_pattern {
        "x0" => &[
            ("", 5), ("x", 7), ("y", 8), ("x0", 8), ("y0", 10), ("xx", 7), ("yy", 9),
            ("xy", 10), ("yx", 11), ("yz", 12),
        ],
        "xx" => &[
            ("", 7), ("x", 8), ("y", 10), ("x0", 7), ("y0", 11), ("xx", 5), ("yy", 9),
            ("xy", 8), ("yx", 10), ("yz", 12),
        ],
        "xy" => &[
            ("", 10), ("x", 13), ("y", 12), ("z", 14), ("x0", 13), ("y0", 11), ("z0", 15),
            ("xx", 10), ("yy", 8), ("zz", 12), ("xy", 12), ("xz", 14), ("yx", 11),
            ("yz", 12), ("zx", 15), ("zy", 14), ("zt", 16),
        ],
        _ => return None,
    };
    row.iter().find(|(p, _)| *p == r_pattern).map(|&(_, v)| v)
}

fn s_small(base: Base, n: u64) -> u64 {
    count_canonical_subwords_small(base, rep_u64(base, n).digits()) as u64
}

/// Calls `visit` on every word of length `len` over `{0, .., b-1}`, in
/// radix order. Stops early when `visit` returns an error.
pub fn for_each_word<E>(
    base: Base,
    len: usize,
    mut visit: impl FnMut(&[u8]) -> Result<(), E>,
) -> Result<(), E> {
    let mut word = vec![0u8; len];
    let top = base.top_digit();
    loop {
        visit(&word)?;
        let Some(pos) = word.iter().rposition(|&d| d != top) else {
            return Ok(());
        };
        word[pos] += 1;
        word[pos + 1..].fill(0);
    }
}

fn show(digits: &[u8]) -> String {
    if digits.is_empty() {
        "ε".into()
    } else {
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn check_s_prefix() -> CheckResult {
    let base = Base::new(3).expect("base 3");
    let got = s_table(base, S3_PREFIX.len() as u64);
    let outcome = match got.iter().zip(S3_PREFIX).position(|(&g, w)| g != u128::from(w)) {
        None => Ok(format!("S_3(0..={}) as printed", S3_PREFIX.len() - 1)),
        Some(n) => Err(format!("S_3({n}) = {}, expected {}", got[n], S3_PREFIX[n])),
    };
    CheckResult::from_outcome("s3-prefix", outcome)
}

pub fn check_a_prefix() -> CheckResult {
    let base = Base::new(3).expect("base 3");
    let got = a_table(base, A3_PREFIX.len() as u64);
    let outcome = match got.iter().zip(A3_PREFIX).position(|(&g, w)| g != u128::from(w)) {
        Some(n) => Err(format!("A_3({n}) = {}, expected {}", got[n], A3_PREFIX[n])),
        None => {
            let a150 = a_fast(base, &BigUint::from(150u32));
            if a150 == BigUint::from(1665u32) {
                Ok("A_3(0..=15) as printed, A_3(150) = 1665".into())
            } else {
                Err(format!("A_3(150) = {a150}, expected 1665"))
            }
        }
    };
    CheckResult::from_outcome("a3-prefix", outcome)
}

/// Compares `decompose(3, 150)` with the published coefficients.
pub fn check_decomposition_coefficients() -> CheckResult {
    let dec = decompose(Base::new(3).expect("base 3"), &BigUint::from(150u32))
        .expect("150 >= 3");
    let expected: Vec<BigInt> = DECOMPOSITION_150.iter().map(|&d| d.into()).collect();
    let shown = dec.d.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
    if dec.d == expected {
        CheckResult::pass("decomposition-150", format!("({shown})"))
    } else {
        let published = Decomposition {
            d: expected,
            ..dec.clone()
        };
        CheckResult::fail(
            "decomposition-150",
            format!(
                "got ({shown}) summing to {}; published (4, 32, 82, -45) sums to {}",
                dec.reconstruct(),
                published.reconstruct()
            ),
        )
    }
}

/// Reconstruction of `A_b(n)` from the decomposition, and `d_0 > 0`.
pub fn check_decomposition_reconstruction(base: Base, ns: &[BigUint]) -> CheckResult {
    let outcome = ns.iter().try_for_each(|n| {
        let dec = decompose(base, n).map_err(|e| e.to_string())?;
        let want = BigInt::from(a_fast(base, n));
        if dec.reconstruct() != want {
            return Err(format!("n = {n}: sum d_i g^(L-i) = {}, A = {want}", dec.reconstruct()));
        }
        if dec.d[0] <= BigInt::from(0) {
            return Err(format!("n = {n}: d_0 = {}", dec.d[0]));
        }
        Ok(())
    });
    CheckResult::from_outcome(
        format!("decomposition-reconstruction b={base}"),
        outcome.map(|()| format!("{} arguments", ns.len())),
    )
}

pub fn check_coefficient_examples() -> CheckResult {
    let b3 = solve_coefficients(Base::new(3).expect("base 3"));
    let b2 = solve_coefficients(Base::new(2).expect("base 2"));
    let mut mismatches = Vec::new();
    for r in 0..9 {
        let row = b3.row(r);
        if row != [B3_A[r], B3_C0[r], B3_C1[r]] {
            mismatches.push(format!("b=3 r={r}: {row:?}"));
        }
    }
    for r in 0..4 {
        let row = b2.row(r);
        if row != [B2_A[r], B2_C0[r]] {
            mismatches.push(format!("b=2 r={r}: {row:?}"));
        }
    }
    CheckResult::from_outcome(
        "coefficients-examples",
        if mismatches.is_empty() {
            Ok("27 values for b=3, 8 values for b=2".into())
        } else {
            Err(mismatches.join("; "))
        },
    )
}

/// Every `a_r`, `c_{r,s}` against the pattern classification (`b >= 3`).
pub fn check_coefficient_classes(base: Base) -> CheckResult {
    let b = base.get();
    let coeffs = solve_coefficients(base);
    let outcome = (0..u64::from(b * b)).try_for_each(|r| {
        let (class, bound) = coefficient_class(base, r);
        let (a, c0) = table_a_c0(b.into(), &class).ok_or(format!("no class for r = {r}"))?;
        let row = coeffs.row(r as usize);
        if row[0] != a || row[1] != c0 {
            return Err(format!("r = {r} ({class}): got ({}, {}), table ({a}, {c0})", row[0], row[1]));
        }
        for s in 1..b - 1 {
            let want = table_cs(&class, &bound, s as u8).ok_or(format!("no class for r = {r}"))?;
            if row[1 + s as usize] != want {
                return Err(format!("r = {r} ({class}), s = {s}: got {}, table {want}", row[1 + s as usize]));
            }
        }
        Ok(())
    });
    CheckResult::from_outcome(
        format!("coefficient-classes b={b}"),
        outcome.map(|()| format!("{} residues", b * b)),
    )
}

pub fn check_matrices_base3() -> CheckResult {
    let rep = LinearRepresentation::new(Base::new(3).expect("base 3"));
    let mismatch = (0..3u8).find(|&d| {
        let want: Vec<Vec<i64>> = MU3[d as usize].iter().map(|r| r.to_vec()).collect();
        rep.mu(d) != want.as_slice()
    });
    match mismatch {
        None => CheckResult::pass("mu3-matrices", "mu_3(0), mu_3(1), mu_3(2) as printed"),
        Some(d) => CheckResult::fail("mu3-matrices", format!("mu_3({d}) = {:?}", rep.mu(d))),
    }
}

/// The block system matrix times its closed-form inverse, at full size
/// `b^3`, with the blocks read from the pattern values of short words.
pub fn check_system_inverse(base: Base) -> CheckResult {
    let b = base.get() as usize;
    let blocks = kernel_system_blocks(base);
    let from_patterns: Option<Vec<Vec<i64>>> = (0..b as u64)
        .map(|i| {
            let mut ns = vec![i];
            ns.extend((0..b as u64 - 1).map(|k| i * b as u64 + k));
            ns.iter()
                .map(|&n| {
                    let w = rep_u64(base, n);
                    table1_value(&name_letters(w.digits(), &mut Vec::new())).map(|v| v as i64)
                })
                .collect()
        })
        .collect();
    if from_patterns.as_ref() != Some(&blocks) {
        return CheckResult::fail(format!("system-inverse b={b}"), "blocks differ from pattern values");
    }
    let size = b * b;
    let product = mat_mul(
        &kron_identity(&blocks, size),
        &kron_identity(&kernel_system_inverse_blocks(base), size),
    );
    let bad = product.iter().enumerate().find_map(|(i, row)| {
        row.iter()
            .enumerate()
            .find(|&(j, &v)| v != i64::from(i == j))
            .map(|(j, &v)| (i, j, v))
    });
    match bad {
        None => CheckResult::pass(format!("system-inverse b={b}"), format!("{0}x{0} identity", b * size)),
        Some((i, j, v)) => CheckResult::fail(format!("system-inverse b={b}"), format!("entry ({i},{j}) = {v}")),
    }
}

/// Definition, recurrences and matrix product agree on `n < limit`.
pub fn check_three_routes(base: Base, limit: u64) -> CheckResult {
    let rep = LinearRepresentation::new(base);
    let outcome = (0..limit).try_for_each(|n| {
        let w = rep_u64(base, n);
        let oracle = count_canonical_subwords_small(base, w.digits());
        let recurrence = s_recurrence_digits(base, w.digits());
        let fast = rep.eval_digits(w.digits());
        if recurrence != BigUint::from(oracle) || fast != BigUint::from(oracle) {
            return Err(format!("n = {n}: oracle {oracle}, recurrence {recurrence}, matrices {fast}"));
        }
        Ok(())
    });
    CheckResult::from_outcome(
        format!("s-routes b={base}"),
        outcome.map(|()| format!("n < {limit}")),
    )
}

/// Trie node counts equal `S_b` for all canonical words up to `max_len`.
pub fn check_trie_counts(base: Base, max_len: usize) -> CheckResult {
    let rep = LinearRepresentation::new(base);
    let mut builder = TrieBuilder::default();
    let mut count = 0u64;
    let outcome = (0..=max_len).try_for_each(|len| {
        for_each_word(base, len, |w| {
            if w.first() == Some(&0) {
                return Ok(());
            }
            count += 1;
            let nodes = builder.node_count(base, w) as u128;
            let oracle = count_canonical_subwords_small(base, w);
            let fast = rep.eval_small(w);
            if nodes != oracle || fast != Some(oracle) {
                return Err(format!("{}: trie {nodes}, oracle {oracle}, matrices {fast:?}", show(w)));
            }
            Ok(())
        })
    });
    CheckResult::from_outcome(
        format!("trie-counts b={base}"),
        outcome.map(|()| format!("{count} words of length <= {max_len}")),
    )
}

/// The block description of every trie of a canonical word up to `max_len`.
pub fn check_trie_structure(base: Base, max_len: usize) -> CheckResult {
    let mut count = 0u64;
    let outcome = (1..=max_len).try_for_each(|len| {
        for_each_word(base, len, |w| {
            if w[0] == 0 {
                return Ok(());
            }
            count += 1;
            let word = Word::new(base, w.to_vec()).map_err(|e| e.to_string())?;
            let trie = build_trie(&word).map_err(|e| e.to_string())?;
            let blocks = block_factorization(&word).map_err(|e| e.to_string())?;
            match verify_structure(&trie, &blocks) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("structure fails for {word}")),
                Err(e) => Err(e.to_string()),
            }
        })
    });
    CheckResult::from_outcome(
        format!("trie-structure b={base}"),
        outcome.map(|()| format!("{count} words of length <= {max_len}")),
    )
}

/// Values of `S_b` on words of length at most 3 against their patterns.
pub fn check_table1(base: Base) -> CheckResult {
    let b = u64::from(base.get());
    let outcome = (0..b * b * b).try_for_each(|n| {
        let w = rep_u64(base, n);
        let pattern = name_letters(w.digits(), &mut Vec::new());
        let want = table1_value(&pattern).ok_or(format!("no pattern {pattern}"))?;
        let got = s_small(base, n);
        if got != want {
            return Err(format!("n = {n} ({pattern}): {got}, table {want}"));
        }
        Ok(())
    });
    CheckResult::from_outcome(
        format!("short-word-values b={b}"),
        outcome.map(|()| format!("n < {}", b * b * b)),
    )
}

/// `S_b(n b^2 + r)` for two-digit `n` and `r < b^2` against the joint
/// pattern tables.
pub fn check_joint_tables(base: Base) -> CheckResult {
    let b = u64::from(base.get());
    let outcome = (b..b * b).try_for_each(|n| {
        let mut named = Vec::new();
        let n_pattern = name_letters(rep_u64(base, n).digits(), &mut named);
        (0..b * b).try_for_each(|r| {
            let r_pattern = name_letters(rep_u64(base, r).digits(), &mut named.clone());
            let want = joint_table_value(&n_pattern, &r_pattern)
                .ok_or(format!("no entry for ({n_pattern}, {r_pattern})"))?;
            let got = s_small(base, n * b * b + r);
            if got != want {
                return Err(format!("n = {n}, r = {r} ({n_pattern}, {r_pattern}): {got}, table {want}"));
            }
            Ok(())
        })
    });
    CheckResult::from_outcome(
        format!("joint-pattern-values b={b}"),
        outcome.map(|()| format!("{} arguments", (b * b - b) * b * b)),
    )
}

pub fn check_regularity(base: Base, n_max: u64) -> CheckResult {
    let name = format!("regularity b={base}");
    match verify_regularity(base, n_max) {
        Err(e) => CheckResult::fail(name, e.to_string()),
        Ok(report) => {
            if let Some(c) = &report.counterexample {
                let which = match c.relation {
                    Relation::Square { r } => format!("r = {r}"),
                    Relation::TopDigit => "top digit".into(),
                };
                return CheckResult::fail(name, format!("{which}, n = {}: {} vs {}", c.n, c.expected, c.found));
            }
            let witnesses: Vec<String> = report
                .redundant
                .iter()
                .map(|w| format!("#{}{}", w.position, if w.confirmed { "" } else { "?" }))
                .collect();
            let detail = format!("n <= {n_max}; derived relations {}", witnesses.join(" "));
            if report.success() {
                CheckResult::pass(name, detail)
            } else {
                CheckResult::fail(name, detail)
            }
        }
    }
}

/// The five identities on words `x00u`, `xx0u`, `x0yu`, `xxyu`, `xyzu`
/// for all admissible letters and all `u` up to `max_len`.
pub fn check_word_identities(base: Base, max_len: usize) -> CheckResult {
    let b = base.get() as u8;
    let count = |w: &[u8]| count_canonical_subwords_small(base, w) as i128;
    let with = |prefix: &[u8], u: &[u8]| -> Vec<u8> {
        let mut w = prefix.to_vec();
        w.extend_from_slice(u);
        w
    };
    let mut checked = 0u64;
    let outcome = (0..=max_len).try_for_each(|len| {
        for_each_word(base, len, |u| {
            for x in 1..b {
                let lhs = count(&with(&[x, 0, 0], u));
                let rhs = 2 * count(&with(&[x, 0], u)) - count(&with(&[x], u));
                if lhs != rhs {
                    return Err(format!("x00u, x = {x}, u = {}", show(u)));
                }
                let lhs = count(&with(&[x, x, 0], u));
                let rhs = count(&with(&[x, 0], u)) + count(&with(&[x], u));
                if lhs != rhs {
                    return Err(format!("xx0u, x = {x}, u = {}", show(u)));
                }
                for y in 1..b {
                    let lhs = count(&with(&[x, 0, y], u));
                    let rhs = count(&with(&[x, y], u)) + count(&with(&[y], u));
                    if lhs != rhs {
                        return Err(format!("x0yu, x = {x}, y = {y}, u = {}", show(u)));
                    }
                    let lhs = count(&with(&[x, x, y], u));
                    let rhs = 2 * count(&with(&[x, y], u)) - count(&with(&[y], u));
                    if lhs != rhs {
                        return Err(format!("xxyu, x = {x}, y = {y}, u = {}", show(u)));
                    }
                    if x == y {
                        continue;
                    }
                    for z in 0..b {
                        let zu = with(&[z], u);
                        let tail = count(&zu);
                        if z == 0 {
                            // the count only sees rep_b(val_b(zu))
                            let start = zu.iter().position(|&d| d != 0).unwrap_or(zu.len());
                            if tail != count(&zu[start..]) {
                                return Err(format!("normalization, u = {}", show(u)));
                            }
                        }
                        let lhs = count(&with(&[x, y, z], u));
                        let rhs = count(&with(&[x, z], u)) + 2 * count(&with(&[y, z], u)) - 2 * tail;
                        if lhs != rhs {
                            return Err(format!("xyzu, x = {x}, y = {y}, z = {z}, u = {}", show(u)));
                        }
                    }
                }
            }
            checked += 1;
            Ok(())
        })
    });
    CheckResult::from_outcome(
        format!("word-identities b={b}"),
        outcome.map(|()| format!("{checked} words u of length <= {max_len}")),
    )
}

/// `A_b` by the digit rules against prefix sums for `n <= n_max`, the two
/// closed forms below `limit`, the rules themselves on the inclusive range
/// of `r`, and strict monotonicity.
pub fn check_summatory(base: Base, n_max: u64, limit: u64) -> CheckResult {
    let b = u64::from(base.get());
    let table = a_table(base, n_max.max(limit) + 1);
    let a = |n: u64| table[n as usize];
    let outcome = (|| {
        for n in 0..=n_max {
            let fast = a_fast_digits(base, rep_u64(base, n).digits());
            if fast != BigUint::from(a(n)) {
                return Err(format!("n = {n}: rules {fast}, prefix sum {}", a(n)));
            }
            if n > 0 && a(n) <= a(n - 1) {
                return Err(format!("not increasing at {n}"));
            }
        }
        for x in 1..b {
            let mut ell = 0u32;
            while x * b.pow(ell) < limit {
                let n = x * b.pow(ell);
                let closed = a_closed_form_pure(base, x as u32, ell).map_err(|e| e.to_string())?;
                if closed != BigUint::from(a(n)) {
                    return Err(format!("pure power x = {x}, l = {ell}: {closed} vs {}", a(n)));
                }
                if ell >= 1 {
                    for y in 1..b {
                        let m = n + y * b.pow(ell - 1);
                        if m >= limit {
                            continue;
                        }
                        let closed = a_closed_form_mixed(base, x as u32, y as u32, ell)
                            .map_err(|e| e.to_string())?;
                        if closed != BigUint::from(a(m)) {
                            return Err(format!("x = {x}, y = {y}, l = {ell}: {closed} vs {}", a(m)));
                        }
                    }
                }
                ell += 1;
            }
        }
        check_rules_inclusive(base, limit, &table)
    })();
    CheckResult::from_outcome(
        format!("summatory b={b}"),
        outcome.map(|()| format!("n <= {n_max}, closed forms below {limit}")),
    )
}

/// The three rules for `A_b(x b^l + y b^(l-1) + r)` with `r` running over
/// `0..=b^(l-1)`, the upper end included, evaluated by prefix sums.
fn check_rules_inclusive(base: Base, limit: u64, table: &[u128]) -> Result<(), String> {
    let b = u64::from(base.get());
    let bi = i128::from(base.get());
    let g = i128::from(base.growth());
    let a = |n: u64| table[n as usize] as i128;
    let mut ell = 1u32;
    while b.pow(ell) < limit {
        let low = b.pow(ell - 1);
        let unit = g.pow(ell - 1);
        for x in 1..b {
            let xi = x as i128;
            for r in 0..=low {
                let n0 = x * b.pow(ell) + r;
                if n0 + x * low < limit {
                    let rhs = (2 * bi - 2) * (2 * xi - 1) * unit + a(x * low + r) + a(r);
                    if a(n0) != rhs {
                        return Err(format!("second digit 0: x = {x}, l = {ell}, r = {r}"));
                    }
                    let n1 = n0 + x * low;
                    let rhs = (4 * xi * bi - 2 * xi - 2 * bi + 2) * unit + 2 * a(x * low + r) - a(r);
                    if a(n1) != rhs {
                        return Err(format!("repeated digit: x = {x}, l = {ell}, r = {r}"));
                    }
                }
                for y in (1..b).filter(|&y| y != x) {
                    let n = x * b.pow(ell) + y * low + r;
                    if n >= limit {
                        continue;
                    }
                    let yi = y as i128;
                    let constant = 4 * xi * bi - 4 * xi - 2 * bi + 3 - i128::from(y > x);
                    let rhs = constant * unit + a(x * low + r) + 2 * a(y * low + r) - 2 * a(r);
                    if a(n) != rhs {
                        return Err(format!("digits x = {x}, y = {yi}, l = {ell}, r = {r}"));
                    }
                }
            }
        }
        ell += 1;
    }
    Ok(())
}

pub fn check_multiplicativity_sweep(base: Base, n_max: u64) -> CheckResult {
    let report = check_multiplicativity(base, n_max);
    let name = format!("scaling-by-base b={base}");
    match report.failure {
        None => CheckResult::pass(name, format!("A(nb) = (2b-1)A(n) for n <= {n_max}")),
        Some(n) => CheckResult::fail(name, format!("fails at n = {n}")),
    }
}

/// The symmetry of `S_b` on `[(b-1) b^l, b^(l+1))` for `1 <= l <= max_ell`,
/// and its word form `S((b-1) u) = S((b-1) u')` with `u'` the digitwise
/// complement, for all `u` up to `max_len`.
pub fn check_palindromes(base: Base, max_ell: u32, max_len: usize) -> CheckResult {
    let top = base.top_digit();
    let outcome = (|| {
        for ell in 1..=max_ell {
            if !palindrome_check(base, ell).map_err(|e| e.to_string())? {
                return Err(format!("interval of length {ell}"));
            }
        }
        (0..=max_len).try_for_each(|len| {
            for_each_word(base, len, |u| {
                let mut w = vec![top];
                w.extend_from_slice(u);
                let mut c = vec![top];
                c.extend(u.iter().map(|&d| top - d));
                if count_canonical_subwords_small(base, &w) != count_canonical_subwords_small(base, &c) {
                    return Err(format!("word form, u = {}", show(u)));
                }
                Ok(())
            })
        })
    })();
    CheckResult::from_outcome(
        format!("palindromes b={base}"),
        outcome.map(|()| format!("l <= {max_ell}, |u| <= {max_len}")),
    )
}

/// Positive entries per triangle row against `S_b`, and the classical
/// binomials on rows `a^m`.
pub fn check_triangle(base: Base, rows: u64, max_power: u32) -> CheckResult {
    let outcome = (|| {
        for m in 0..rows {
            let count = row_positive_count(base, m);
            let s = s_small(base, m);
            if count != s {
                return Err(format!("row {m}: {count} positive entries, S = {s}"));
            }
        }
        for a in 1..base.get() as u8 {
            for m in 0..=max_power as usize {
                for k in 0..=m {
                    let word_m = vec![a; m];
                    let word_k = vec![a; k];
                    let entry = word_binomial(&word_m, &word_k);
                    let classical = num_integer::binomial(BigUint::from(m), BigUint::from(k));
                    if entry != classical {
                        return Err(format!("a = {a}, C({m}, {k}) = {entry}"));
                    }
                    let vm = crate::words::val(base, &word_m).map_err(|e| e.to_string())?;
                    let vk = crate::words::val(base, &word_k).map_err(|e| e.to_string())?;
                    if let (Ok(vm), Ok(vk)) = (u64::try_from(&vm), u64::try_from(&vk)) {
                        if triangle_entry(base, vm, vk) != classical {
                            return Err(format!("P({vm}, {vk}) != C({m}, {k})"));
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    CheckResult::from_outcome(
        format!("pascal-triangle b={base}"),
        outcome.map(|()| format!("rows < {rows}, a^m with m <= {max_power}")),
    )
}

/// Numerical behaviour of the fluctuation samples.
#[derive(Clone, Debug)]
pub struct AsymptoticsSettings {
    pub base: Base,
    pub n: u32,
    pub resolution: u32,
    pub scaling_samples: usize,
    pub seed: u64,
}

impl Default for AsymptoticsSettings {
    fn default() -> Self {
        AsymptoticsSettings {
            base: Base::new(3).expect("base 3"),
            n: 12,
            resolution: 512,
            scaling_samples: 100,
            seed: 2024,
        }
    }
}

/// Endpoint, convergence and scaling checks; the measured quantities are
/// reported in the details.
pub fn check_asymptotics(settings: &AsymptoticsSettings) -> Vec<CheckResult> {
    let base = settings.base;
    let n = settings.n;
    let res = settings.resolution;
    let mut out = Vec::new();

    let series = |m: u32| sample_h(base, m, res).map_err(|e| e.to_string());
    let top = series(n);
    let prev = series(n - 1);
    let (low, low_prev) = (series(5), series(6));
    match (top, prev, low, low_prev) {
        (Ok(top), Ok(prev), Ok(low), Ok(low_prev)) => {
            let start = (top[0].1 - 1.0).abs();
            out.push(CheckResult::from_outcome(
                "fluctuation-endpoint",
                if start < 1e-2 {
                    Ok(format!("|H(0) - 1| = {start:.3e} at n = {n}"))
                } else {
                    Err(format!("|H(0) - 1| = {start:.3e} at n = {n}"))
                },
            ));
            let late = max_gap(&top, &prev);
            let early = max_gap(&low_prev, &low);
            let detail = format!("gap(n={n},{}) = {late:.3e}, gap(6,5) = {early:.3e}", n - 1);
            out.push(CheckResult::from_outcome(
                "fluctuation-convergence",
                if late < early { Ok(detail) } else { Err(detail) },
            ));
        }
        _ => out.push(CheckResult::fail("fluctuation-samples", "sampling failed")),
    }

    // consecutive-n gaps from n = 4 upwards, on a coarse grid
    let coarse: Result<Vec<_>, _> = (3..=n).map(|m| sample_h(base, m, 64)).collect();
    out.push(match coarse {
        Ok(series) => {
            let gaps: Vec<f64> = series.windows(2).map(|w| max_gap(&w[0], &w[1])).collect();
            let steady = gaps.windows(2).all(|w| w[1] <= w[0] + 1e-3);
            let detail = format!(
                "gaps for n = 4..={n}: {}",
                gaps.iter().map(|g| format!("{g:.2e}")).collect::<Vec<_>>().join(", ")
            );
            CheckResult::from_outcome("fluctuation-convergence-sweep", if steady { Ok(detail) } else { Err(detail) })
        }
        Err(e) => CheckResult::fail("fluctuation-convergence-sweep", e.to_string()),
    });

    // the left end of the period against the limit at its right end
    let gaps: Vec<f64> = [n - 2, n - 1, n]
        .iter()
        .map(|&m| {
            let left = phi(base, m, 0, 1).map(|s| s.value).unwrap_or(f64::NAN);
            (left - phi_period_end(base, m).value).abs()
        })
        .collect();
    let shrinking = gaps.windows(2).all(|w| w[1] < w[0]);
    let detail = format!(
        "|phi(0) - phi(b-1 limit)| = {} for n = {}..={n}",
        gaps.iter().map(|g| format!("{g:.3e}")).collect::<Vec<_>>().join(", "),
        n - 2
    );
    out.push(CheckResult::from_outcome(
        "fluctuation-periodicity",
        if shrinking { Ok(detail) } else { Err(detail) },
    ));

    let report = scaling_identity_check(base, settings.scaling_samples, settings.seed);
    let detail = format!(
        "{} samples, exact identity {}, max deviation {:.3e}",
        report.samples,
        if report.exact_failure.is_none() { "holds" } else { "fails" },
        report.max_deviation
    );
    out.push(CheckResult::from_outcome(
        "fluctuation-scaling",
        if report.success(1e-9) { Ok(detail) } else { Err(detail) },
    ));
    out
}

/// Bounds for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub bases: Vec<Base>,
    /// Sweep bound on `n` for the per-integer checks.
    pub max: u64,
    /// Longest word for the per-word checks.
    pub max_word: usize,
    pub include_asymptotics: bool,
}

/// The full property suite for the configured bases; published base-2 and
/// base-3 values are checked when those bases are included.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckResult> {
    let has = |b: u32| config.bases.iter().any(|x| x.get() == b);
    let mut out = Vec::new();
    if has(3) {
        out.extend([
            check_s_prefix(),
            check_a_prefix(),
            check_decomposition_coefficients(),
            check_matrices_base3(),
        ]);
    }
    if has(2) || has(3) {
        out.push(check_coefficient_examples());
    }
    for &base in &config.bases {
        let b = u64::from(base.get());
        let max = config.max.max(b * b);
        out.push(check_three_routes(base, max));
        out.push(check_trie_counts(base, config.max_word));
        out.push(check_trie_structure(base, config.max_word));
        out.push(check_table1(base));
        if b >= 3 {
            out.push(check_coefficient_classes(base));
            out.push(check_joint_tables(base));
        }
        if b <= 5 {
            out.push(check_system_inverse(base));
        }
        out.push(check_regularity(base, max / (b * b)));
        out.push(check_word_identities(base, config.max_word.min(8)));
        out.push(check_summatory(base, max, max));
        out.push(check_multiplicativity_sweep(base, max));
        let samples: Vec<BigUint> = (b..max.min(b + 2000)).map(BigUint::from).collect();
        out.push(check_decomposition_reconstruction(base, &samples));
        out.push(check_palindromes(base, 4, config.max_word.min(10)));
        out.push(check_triangle(base, max.min(b.pow(4)), 12));
    }
    if config.include_asymptotics {
        out.extend(check_asymptotics(&AsymptoticsSettings::default()));
    }
    out
}
