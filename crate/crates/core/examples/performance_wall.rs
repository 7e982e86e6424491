//! Where adding processors stops paying off, for each benchmark preset.
//!
//! ```bash
//! cargo run -p perfwall --example performance_wall
//! ```

use perfwall::contributions::{alpha_os, peak_point, preset, rmax_of_rpeak, Preset};
use perfwall::units::Prefix;

fn main() -> Result<(), perfwall::ModelError> {
    let ef = Prefix::Exa;
    for name in Preset::ALL {
        let bp = preset(name);
        let peak = peak_point(&bp.machine, &bp.decomposition)?;
        println!(
            "{:<5} peak r_max = {:.4} Ef at r_peak = {:.4} Ef (N* = {}, analytic {:.0})",
            bp.name,
            ef.scale(peak.r_max_star),
            ef.scale(peak.r_peak_star),
            peak.n_star_int,
            peak.n_star_analytic
        );
    }
    println!();

    // The HPL curve beyond its peak: contribution and payload
    let hpl = preset(Preset::Hpl);
    for r_peak in [0.01e18, 0.1e18, 0.447e18, 0.8e18, 1.1e18] {
        let n = hpl.machine.units_for(r_peak);
        let point = rmax_of_rpeak(r_peak, &hpl.machine, &hpl.decomposition)?;
        println!(
            "r_peak {:>5.3} Ef  alpha_OS {:.2e}  r_max {:.4} Ef",
            ef.scale(r_peak),
            alpha_os(n, &hpl.decomposition),
            ef.scale(point.r_max)
        );
    }
    Ok(())
}
