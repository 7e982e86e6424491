//! Classic vs. saturation-corrected Amdahl performance for a growing system.
//!
//! ```bash
//! cargo run -p perfwall --example amdahl_basics
//! ```

use perfwall::model::{saturation_limit, ParallelSystem};
use perfwall::units::Prefix;

fn main() -> Result<(), perfwall::ModelError> {
    let p = 100e9;
    let nonparallel = 1e-7;
    println!("P = 100 Gflop/s per unit, (1-alpha) = {nonparallel:e}");
    println!("{:>12} {:>14} {:>14} {:>10}", "N", "classic Pf/s", "modern Pf/s", "E");

    let mut n = 1.0;
    while n <= 1e9 {
        let sys = ParallelSystem::with_nonparallel(n, p, nonparallel)?;
        println!(
            "{:>12e} {:>14.4} {:>14.4} {:>10.4}",
            n,
            Prefix::Peta.scale(sys.classic_total_perf()),
            Prefix::Peta.scale(sys.modern_total_perf()),
            sys.efficiency()
        );
        n *= 10.0;
    }

    let limit = saturation_limit(p, nonparallel)?;
    println!("saturation limit P/(1-alpha) = {} Pflop/s", Prefix::Peta.scale(limit));
    Ok(())
}
