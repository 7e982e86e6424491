//! Constant acceleration under a speed limit: the same saturation shape as
//! the modern Amdahl curve.
//!
//! ```bash
//! cargo run -p perfwall --example relativity_analogy
//! ```

use perfwall::model::{classic_speed, relativistic_speed, RelativisticParams};

fn main() -> Result<(), perfwall::ModelError> {
    let vacuum = RelativisticParams::gravity(1.0)?;
    let glass = RelativisticParams::gravity(1.5)?;
    println!("{:>10} {:>14} {:>14} {:>14}", "days", "classic m/s", "n=1 m/s", "n=1.5 m/s");
    for days in [1.0, 10.0, 100.0, 365.0, 1000.0, 5000.0] {
        let t = days * 86_400.0;
        println!(
            "{:>10} {:>14.4e} {:>14.4e} {:>14.4e}",
            days,
            classic_speed(t, vacuum.accel()),
            relativistic_speed(t, &vacuum),
            relativistic_speed(t, &glass)
        );
    }
    Ok(())
}
