//! The property suite for small bases, one line per check.

use subwords::verify::{run_suite, SuiteConfig};
use subwords::Base;

fn main() -> subwords::Result<()> {
    let config = SuiteConfig {
        bases: vec![Base::new(2)?, Base::new(4)?],
        max: 5000,
        max_word: 6,
        include_asymptotics: false,
    };
    let results = run_suite(&config);
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} checks, {failed} failed", results.len());
    Ok(())
}
