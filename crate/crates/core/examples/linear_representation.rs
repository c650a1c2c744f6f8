//! Regularity coefficients and digit matrices, with the kernel relations
//! they encode checked on the first few thousand integers.

use subwords::regular::{redundancy_witnesses, solve_coefficients, verify_regularity, LinearRepresentation};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let b: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let base = Base::new(b)?;
    let coeffs = solve_coefficients(base);
    println!("r: a_r c_r,0 .. c_r,{}", b - 2);
    for r in 0..(b * b) as usize {
        println!("{r:>3}: {:?}", coeffs.row(r));
    }

    let repr = LinearRepresentation::new(base);
    for (d, m) in repr.matrices().iter().enumerate() {
        println!("mu({d}) = {m:?}");
    }
    println!("v0 = {:?}", repr.v0());

    for w in redundancy_witnesses(&coeffs) {
        println!("redundant identity at m = {} (position {}): {}", w.m, w.position, w.confirmed);
    }
    let report = verify_regularity(base, 5000 / b)?;
    println!("relations hold up to {}: {}", report.n_max, report.success());
    Ok(())
}
