//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use subwords::verify::{self, AsymptoticsSettings, CheckResult};
use subwords::Base;

fn base(b: u64) -> Base {
    Base::new(b).expect("valid base")
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    time_limit: Option<Duration>,
    run: fn() -> Vec<CheckResult>,
}

fn bases(range: std::ops::RangeInclusive<u64>) -> impl Iterator<Item = Base> {
    range.map(base)
}

/// `sb --base 3 0..32` through the command-line entry point.
fn cli_prefix() -> CheckResult {
    let mut out = Vec::new();
    let code = subwords::cli::run_with(["subwords", "sb", "--base", "3", "0..32"], &mut out);
    let printed = String::from_utf8_lossy(&out).trim().to_string();
    let expected = verify::S3_PREFIX.map(|v| v.to_string()).join(" ");
    if code == 0 && printed == expected {
        CheckResult::pass("cli-sb", "sb --base 3 0..32")
    } else {
        CheckResult::fail("cli-sb", format!("exit {code}, printed {printed}"))
    }
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: "1",
            title: "S_3(0..=32) prefix",
            time_limit: Some(Duration::from_secs(1)),
            run: || vec![verify::check_s_prefix(), cli_prefix()],
        },
        Criterion {
            id: "2",
            title: "A_3(0..=15) prefix and A_3(150)",
            time_limit: Some(Duration::from_secs(1)),
            run: || vec![verify::check_a_prefix()],
        },
        Criterion {
            id: "3a",
            title: "decomposition of A_3(150) equals (4, 32, 82, -45)",
            time_limit: None,
            run: || vec![verify::check_decomposition_coefficients()],
        },
        Criterion {
            id: "3b",
            title: "decomposition of A_3(150) reconstructs 1665",
            time_limit: None,
            run: || {
                vec![verify::check_decomposition_reconstruction(
                    base(3),
                    &[BigUint::from(150u32)],
                )]
            },
        },
        Criterion {
            id: "4",
            title: "regularity coefficients",
            time_limit: Some(Duration::from_secs(10)),
            run: || {
                let mut out = vec![verify::check_coefficient_examples()];
                out.extend(bases(3..=8).map(verify::check_coefficient_classes));
                out
            },
        },
        Criterion {
            id: "5",
            title: "digit matrices and system inverse",
            time_limit: None,
            run: || {
                let mut out = vec![verify::check_matrices_base3()];
                out.extend(bases(2..=5).map(verify::check_system_inverse));
                out
            },
        },
        Criterion {
            id: "6",
            title: "definition, recurrences, matrices and tries agree",
            time_limit: Some(Duration::from_secs(180)),
            run: || {
                let mut out: Vec<CheckResult> = bases(2..=5)
                    .map(|b| verify::check_three_routes(b, u64::from(b.get()).pow(6)))
                    .collect();
                out.extend(bases(2..=4).map(|b| verify::check_trie_counts(b, 12)));
                out
            },
        },
        Criterion {
            id: "7",
            title: "regularity relations for n < b^4",
            time_limit: None,
            run: || {
                bases(2..=5)
                    .map(|b| verify::check_regularity(b, u64::from(b.get()).pow(4) - 1))
                    .collect()
            },
        },
        Criterion {
            id: "8",
            title: "word identities for |u| <= 8",
            time_limit: None,
            run: || bases(2..=4).map(|b| verify::check_word_identities(b, 8)).collect(),
        },
        Criterion {
            id: "9",
            title: "summatory function",
            time_limit: Some(Duration::from_secs(120)),
            run: || {
                let mut out: Vec<CheckResult> = bases(2..=5)
                    .map(|b| {
                        let limit = u64::from(b.get()).pow(6);
                        verify::check_summatory(b, limit, limit)
                    })
                    .collect();
                out.extend(
                    [2, 3, 5]
                        .into_iter()
                        .map(|b| verify::check_multiplicativity_sweep(base(b), 100_000)),
                );
                out
            },
        },
        Criterion {
            id: "10",
            title: "palindromes",
            time_limit: None,
            run: || bases(2..=4).map(|b| verify::check_palindromes(b, 8, 10)).collect(),
        },
        Criterion {
            id: "11",
            title: "triangle rows and embedded binomials",
            time_limit: None,
            run: || {
                bases(2..=4)
                    .map(|b| verify::check_triangle(b, u64::from(b.get()).pow(4), 12))
                    .collect()
            },
        },
        Criterion {
            id: "12",
            title: "fluctuation samples",
            time_limit: Some(Duration::from_secs(60)),
            run: || verify::check_asymptotics(&AsymptoticsSettings::default()),
        },
    ]
}

fn main() -> ExitCode {
    let mut failures = 0;
    for criterion in criteria() {
        let start = Instant::now();
        let checks = (criterion.run)();
        let elapsed = start.elapsed();
        let in_time = criterion.time_limit.is_none_or(|limit| elapsed <= limit);
        let passed = in_time && checks.iter().all(|c| c.passed);
        if !passed {
            failures += 1;
        }
        println!(
            "{} criterion {}: {} ({:.2?}{})",
            if passed { "PASS" } else { "FAIL" },
            criterion.id,
            criterion.title,
            elapsed,
            match criterion.time_limit {
                Some(limit) if !in_time => format!(", over the {limit:?} limit"),
                _ => String::new(),
            }
        );
        for check in &checks {
            println!("    {check}");
        }
    }
    println!("{failures} criteria failed");
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
