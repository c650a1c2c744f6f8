//! S_b(n) by three independent routes, plus A_b(n) for a few huge n.

use num_bigint::BigUint;
use subwords::regular::{s_fast, s_recurrence};
use subwords::summatory::a_fast;
use subwords::words::{count_canonical_subwords, rep_u64};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let base = Base::new(3)?;
    println!("{:>4} {:>8} {:>3} {:>3} {:>3}", "n", "rep", "def", "rec", "mat");
    for n in 0..20u64 {
        let w = rep_u64(base, n);
        let big = BigUint::from(n);
        println!(
            "{n:>4} {:>8} {:>3} {:>3} {:>3}",
            w.to_string(),
            count_canonical_subwords(&w),
            s_recurrence(base, &big),
            s_fast(base, &big),
        );
    }

    let n = BigUint::from(10u32).pow(60);
    println!("S_3(10^60) = {}", s_fast(base, &n));
    println!("A_3(10^60) = {}", a_fast(base, &n));
    Ok(())
}
