//! A_b(n) written in powers of 2b - 1.

use num_bigint::BigUint;
use subwords::summatory::{a_fast, decompose};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let base = Base::new(3)?;
    for n in [9u64, 42, 150, 728, 1_000_000] {
        let n = BigUint::from(n);
        let dec = decompose(base, &n)?;
        let terms: Vec<String> = dec
            .d
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{d}*5^{}", dec.ell - i))
            .collect();
        println!("A_3({n}) = {} = {}", a_fast(base, &n), terms.join(" + "));
        assert_eq!(dec.reconstruct(), a_fast(base, &n).into());
    }
    Ok(())
}
