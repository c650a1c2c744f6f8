//! Samples of A_b(b^(n+x)) / (2b - 1)^(n+x) over one period, written as CSV.

use subwords::asymptotics::{max_gap, sample_h, series_to_csv};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let base = Base::new(3)?;
    let coarse = sample_h(base, 8, 64)?;
    let fine = sample_h(base, 12, 64)?;
    println!("gap between n = 8 and n = 12: {:.3e}", max_gap(&coarse, &fine));
    let (lo, hi) = fine
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)));
    println!("range over the period: [{lo:.6}, {hi:.6}]");

    let path = std::env::temp_dir().join("fluctuation_b3.csv");
    std::fs::write(&path, series_to_csv(&fine)).map_err(|e| subwords::Error::Parse(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}
