//! Effective non-parallel fractions from bundled measurements.
//!
//! ```bash
//! cargo run -p perfwall --example invert_measurements
//! ```

use perfwall::dataset;
use perfwall::ingest::derive;
use perfwall::model::alpha_from_measurement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Taihulight: one machine, two benchmarks, two very different (1-alpha)
    let cores = dataset::TAIHULIGHT_CORES as f64;
    let hpl = alpha_from_measurement(cores, 0.0930 / 0.1254)?;
    let hpcg = alpha_from_measurement(cores, 0.000480 / 0.1254)?;
    println!("Taihulight HPL  (1-alpha_eff) = {hpl:.3e}");
    println!("Taihulight HPCG (1-alpha_eff) = {hpcg:.3e}");
    println!("ratio HPCG/HPL = {:.0}", hpcg / hpl);
    println!();

    let parsed = dataset::fig4_points_joined()?;
    println!("{:<22} {:<5} {:>10} {:>12}", "machine", "bench", "E", "(1-alpha)");
    for d in derive(&parsed.records) {
        let (Some(e), Some(s)) = (d.efficiency, d.nonparallel) else {
            continue;
        };
        println!("{:<22} {:<5} {:>10.4} {:>12.3e}", d.record.machine, d.record.benchmark.tag(), e, s);
    }
    Ok(())
}
