//! Closed-form performance algebra.
//!
//! The classic model adds processing-unit performance linearly. The modern
//! model divides that sum by `N·(1−α) + α`, which stays close to one until
//! the non-parallelizable fraction `(1−α)` times the unit count `N` becomes
//! comparable to unity, after which the total saturates at
//! `perf_single / (1−α)`.
//!
//! The same shape appears in relativistic speed addition: a body under
//! constant acceleration follows `t·a` at first and then saturates at `c/n`.
//! Both sides are provided so the analogy can be plotted and tested.
//!
//! All quantities are in base units (flop/s, seconds, m/s). The unit count is
//! a real number so that nominal-performance sweeps can treat it as
//! continuous.

use crate::error::ModelError;

/// Speed of light in vacuum, m/s.
pub const LIGHT_SPEED: f64 = 299_792_458.0;

/// Standard gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.81;

/// A parallel machine described by its unit count, per-unit payload
/// performance and parallel fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelSystem {
    n_proc: f64,
    perf_single: f64,
    // stored as (1−α); values near 1e-8 lose digits when kept as α
    nonparallel: f64,
}

impl ParallelSystem {
    pub fn new(n_proc: f64, perf_single: f64, alpha: f64) -> Result<Self, ModelError> {
        check_alpha(alpha)?;
        Self::with_nonparallel(n_proc, perf_single, 1.0 - alpha)
    }

    /// Builds a system from the non-parallelizable fraction `(1−α)`.
    pub fn with_nonparallel(
        n_proc: f64,
        perf_single: f64,
        nonparallel: f64,
    ) -> Result<Self, ModelError> {
        check_n_proc(n_proc)?;
        if !(perf_single.is_finite() && perf_single > 0.0) {
            return Err(ModelError::InvalidPerformance(perf_single));
        }
        check_alpha(nonparallel)?;
        Ok(Self {
            n_proc,
            perf_single,
            nonparallel,
        })
    }

    pub fn n_proc(&self) -> f64 {
        self.n_proc
    }

    pub fn perf_single(&self) -> f64 {
        self.perf_single
    }

    pub fn alpha(&self) -> f64 {
        1.0 - self.nonparallel
    }

    /// `(1−α)`.
    pub fn nonparallel(&self) -> f64 {
        self.nonparallel
    }

    pub fn classic_total_perf(&self) -> f64 {
        classic_total_perf(self)
    }

    pub fn modern_total_perf(&self) -> f64 {
        modern_total_perf(self)
    }

    pub fn efficiency(&self) -> f64 {
        efficiency_nonparallel(self.n_proc, self.nonparallel())
    }

    /// Nominal and payload performance of this system as a single point.
    pub fn performance_point(&self) -> PerformancePoint {
        let r_peak = self.classic_total_perf();
        let eff = self.efficiency();
        PerformancePoint {
            r_peak,
            r_max: r_peak * eff,
            efficiency: eff,
        }
    }
}

/// Parameters of the relativistic speed analogy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticParams {
    accel: f64,
    light_speed: f64,
    density: f64,
}

impl RelativisticParams {
    pub fn new(accel: f64, light_speed: f64, density: f64) -> Result<Self, ModelError> {
        if !(accel.is_finite() && accel > 0.0) {
            return Err(ModelError::InvalidRelativistic("acceleration must be > 0"));
        }
        if !(light_speed.is_finite() && light_speed > 0.0) {
            return Err(ModelError::InvalidRelativistic("light speed must be > 0"));
        }
        if !(density.is_finite() && density >= 1.0) {
            return Err(ModelError::InvalidRelativistic("optical density must be >= 1"));
        }
        Ok(Self {
            accel,
            light_speed,
            density,
        })
    }

    /// Standard gravity in a medium of the given optical density.
    pub fn gravity(density: f64) -> Result<Self, ModelError> {
        Self::new(STANDARD_GRAVITY, LIGHT_SPEED, density)
    }

    pub fn accel(&self) -> f64 {
        self.accel
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    /// Limiting speed `c/n`.
    pub fn limit(&self) -> f64 {
        self.light_speed / self.density
    }
}

/// Nominal (`r_peak`) and payload (`r_max`) performance with their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerformancePoint {
    pub r_peak: f64,
    pub r_max: f64,
    pub efficiency: f64,
}

impl PerformancePoint {
    pub fn new(r_peak: f64, r_max: f64) -> Result<Self, ModelError> {
        if !(r_max > 0.0 && r_max <= r_peak && r_peak.is_finite()) {
            return Err(ModelError::InvalidMeasurement { r_peak, r_max });
        }
        Ok(Self {
            r_peak,
            r_max,
            efficiency: r_max / r_peak,
        })
    }
}

/// `N × P`.
pub fn classic_total_perf(sys: &ParallelSystem) -> f64 {
    sys.n_proc * sys.perf_single
}

/// `N·P / (N·(1−α) + α)`.
pub fn modern_total_perf(sys: &ParallelSystem) -> f64 {
    sys.n_proc * sys.perf_single / denominator(sys.n_proc, sys.nonparallel)
}

/// Efficiency `1 / (N·(1−α) + α)` for parallel fraction `alpha`.
pub fn efficiency(n_proc: f64, alpha: f64) -> Result<f64, ModelError> {
    check_n_proc(n_proc)?;
    check_alpha(alpha)?;
    Ok(efficiency_nonparallel(n_proc, 1.0 - alpha))
}

/// Efficiency written in terms of `(1−α)` directly.
///
/// Passing `(1−α)` avoids the cancellation in `1 − α` when α is within
/// 1e-8 of one.
pub fn efficiency_nonparallel(n_proc: f64, nonparallel: f64) -> f64 {
    1.0 / denominator(n_proc, nonparallel)
}

/// Payload performance for a real-valued unit count and `(1−α)`.
pub fn payload(n_proc: f64, perf_single: f64, nonparallel: f64) -> f64 {
    n_proc * perf_single / denominator(n_proc, nonparallel)
}

// N·(1−α) + α, regrouped as 1 + (N−1)·(1−α) to keep precision at small (1−α).
fn denominator(n_proc: f64, nonparallel: f64) -> f64 {
    1.0 + (n_proc - 1.0) * nonparallel
}

/// Inverts a measured efficiency into the non-parallelizable fraction
/// `(1−α) = (1/E − 1)/(N − 1)`.
pub fn alpha_from_measurement(n_proc: f64, efficiency: f64) -> Result<f64, ModelError> {
    if !(n_proc.is_finite() && n_proc >= 2.0) {
        return Err(ModelError::DegenerateInversion(n_proc));
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(ModelError::InvalidEfficiency(efficiency));
    }
    Ok((1.0 / efficiency - 1.0) / (n_proc - 1.0))
}

/// `N → ∞` limit of [`modern_total_perf`] at constant `(1−α)`.
pub fn saturation_limit(perf_single: f64, nonparallel: f64) -> Result<f64, ModelError> {
    if nonparallel == 0.0 {
        return Err(ModelError::Unbounded);
    }
    if !(nonparallel > 0.0 && nonparallel <= 1.0) {
        return Err(ModelError::InvalidFraction(nonparallel));
    }
    Ok(perf_single / nonparallel)
}

/// `t·a / sqrt(1 + (t·a/(c/n))²)`.
pub fn relativistic_speed(t: f64, p: &RelativisticParams) -> f64 {
    let v = t * p.accel;
    v / (v / p.limit()).hypot(1.0)
}

/// `t·a`.
pub fn classic_speed(t: f64, accel: f64) -> f64 {
    t * accel
}

fn check_n_proc(n_proc: f64) -> Result<(), ModelError> {
    if n_proc.is_finite() && n_proc >= 1.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidUnitCount(n_proc))
    }
}

fn check_alpha(alpha: f64) -> Result<(), ModelError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(ModelError::InvalidFraction(alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TAIHULIGHT_CORES: f64 = 10_649_600.0;

    fn sys(n: f64, p: f64, alpha: f64) -> ParallelSystem {
        ParallelSystem::new(n, p, alpha).unwrap()
    }

    #[test]
    fn classic_examples() {
        assert_eq!(classic_total_perf(&sys(1.0, 100e9, 0.5)), 100e9);
        assert_eq!(classic_total_perf(&sys(1e6, 100e9, 0.5)), 1e17);
        // 0.1254 Ef over Taihulight's core count
        let p = 0.1254e18 / TAIHULIGHT_CORES;
        assert_relative_eq!(p, 11.775e9, max_relative = 1e-4);
        assert_relative_eq!(
            classic_total_perf(&sys(TAIHULIGHT_CORES, p, 1.0)),
            125.4e15,
            max_relative = 1e-12
        );
    }

    #[test]
    fn modern_reduces_to_classic_and_single() {
        let s = sys(12345.0, 3e9, 1.0);
        assert_eq!(modern_total_perf(&s), classic_total_perf(&s));
        for alpha in [0.0, 0.3, 0.999_999] {
            assert_eq!(modern_total_perf(&sys(1.0, 7e9, alpha)), 7e9);
        }
    }

    #[test]
    fn efficiency_examples() {
        assert_eq!(efficiency(1.0, 0.5).unwrap(), 1.0);
        assert_eq!(efficiency(1e6, 1.0).unwrap(), 1.0);
        let e = efficiency_nonparallel(TAIHULIGHT_CORES, 3.3e-8);
        assert_relative_eq!(e, 0.740, max_relative = 2e-3);
        assert!(efficiency(0.5, 0.5).is_err());
        assert!(efficiency(10.0, 1.5).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(alpha_from_measurement(2.0, 1.0).unwrap(), 0.0);
        let hpl = alpha_from_measurement(TAIHULIGHT_CORES, 0.0930 / 0.1254).unwrap();
        assert_relative_eq!(hpl, 3.3e-8, max_relative = 0.02);
        let hpcg = alpha_from_measurement(TAIHULIGHT_CORES, 0.000480 / 0.1254).unwrap();
        assert_relative_eq!(hpcg, 2.4e-5, max_relative = 0.02);
    }

    #[test]
    fn inversion_errors() {
        assert!(matches!(
            alpha_from_measurement(1.0, 0.5),
            Err(ModelError::DegenerateInversion(_))
        ));
        assert!(matches!(
            alpha_from_measurement(10.0, 0.0),
            Err(ModelError::InvalidEfficiency(_))
        ));
        assert!(matches!(
            alpha_from_measurement(10.0, 1.01),
            Err(ModelError::InvalidEfficiency(_))
        ));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation_limit(100e9, 1.0).unwrap(), 100e9);
        assert_relative_eq!(saturation_limit(100e9, 1e-8).unwrap(), 1e19, max_relative = 1e-15);
        assert!(matches!(saturation_limit(100e9, 0.0), Err(ModelError::Unbounded)));
        let big = modern_total_perf(&ParallelSystem::with_nonparallel(1e10, 100e9, 1e-8).unwrap());
        let lim = saturation_limit(100e9, 1e-8).unwrap();
        assert!(big < lim && big > 0.99 * lim);
    }

    #[test]
    fn speeds() {
        let p1 = RelativisticParams::gravity(1.0).unwrap();
        assert_eq!(relativistic_speed(0.0, &p1), 0.0);
        assert_eq!(classic_speed(0.0, 9.81), 0.0);
        assert_eq!(classic_speed(1.0, 9.81), 9.81);
        assert_relative_eq!(classic_speed(86_400.0, 9.81), 847_584.0, max_relative = 1e-15);
        let v = relativistic_speed(1e15, &p1);
        assert!(v < LIGHT_SPEED && v > 0.999_999 * LIGHT_SPEED);
        assert!(RelativisticParams::gravity(0.5).is_err());
        assert!(RelativisticParams::new(0.0, LIGHT_SPEED, 1.0).is_err());
    }

    #[test]
    fn system_validation() {
        assert!(ParallelSystem::new(0.0, 1.0, 0.5).is_err());
        assert!(ParallelSystem::new(1.0, 0.0, 0.5).is_err());
        assert!(ParallelSystem::new(1.0, 1.0, -0.1).is_err());
        assert!(ParallelSystem::with_nonparallel(1.0, 1.0, 1.5).is_err());
        let s = sys(4.0, 1.0, 0.75);
        assert_eq!(s.nonparallel(), 0.25);
    }

    #[test]
    fn performance_point_bounds() {
        assert!(PerformancePoint::new(1.0, 2.0).is_err());
        assert!(PerformancePoint::new(1.0, 0.0).is_err());
        let p = PerformancePoint::new(4.0, 1.0).unwrap();
        assert_eq!(p.efficiency, 0.25);
    }
}
