//! Decomposition of the non-parallelizable fraction into its sources.
//!
//! The effective `(1−α)` of a measurement is the sum of a constant software
//! share and an operating-system share. The OS share has a fixed
//! context-switch cost plus a looping cost that grows linearly with the
//! number of processing units the first unit has to orchestrate:
//!
//! ```text
//! (1−α_total)(N) = α_sw + ctx/total + bio·loop·N/total
//! ```
//!
//! The linear term makes the payload curve unimodal. Its maximum is the
//! performance wall: beyond it, adding processing units lowers the delivered
//! performance. Neural-simulation workloads synchronize on a biological
//! clock period, which multiplies the looping cost by `bio`.

use std::fmt;
use std::str::FromStr;

use crate::error::ModelError;
use crate::model::{payload, PerformancePoint};
use crate::search::golden_section_max;

/// Clock cycles lost to one context change.
pub const CONTEXT_SWITCH_CLOCKS: f64 = 1e4;
/// Clock cycles in a full benchmark measurement.
pub const MEASUREMENT_CLOCKS: f64 = 2e13;
/// Orchestration clock cycles per processing unit.
pub const LOOP_CLOCKS_PER_PU: f64 = 1.0;
/// Biological clock period relative to the HPCG case.
pub const BIOLOGICAL_CLOCK_FACTOR: f64 = 5000.0;
/// Default per-unit payload performance of the model machine.
pub const DEFAULT_PERF_PER_PU: f64 = 100e9;
/// Default clock frequency of the model machine.
pub const DEFAULT_CLOCK_FREQ: f64 = 1e9;

/// Relative tolerance of the numeric peak search, in `ln N`.
const PEAK_TOLERANCE: f64 = 1e-7;

/// Constants that generate `(1−α_total)(N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaDecomposition {
    pub alpha_sw: f64,
    pub ctx_switch_clocks: f64,
    pub total_clocks: f64,
    pub loop_clocks_per_pu: f64,
    pub bio_factor: f64,
}

impl AlphaDecomposition {
    pub fn validate(&self) -> Result<(), ModelError> {
        let fields = [
            self.alpha_sw,
            self.ctx_switch_clocks,
            self.loop_clocks_per_pu,
            self.bio_factor,
        ];
        if fields.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(ModelError::InvalidDecomposition(
                "all fields must be finite and >= 0",
            ));
        }
        if !(self.total_clocks.is_finite() && self.total_clocks > 0.0) {
            return Err(ModelError::InvalidDecomposition("total_clocks must be > 0"));
        }
        Ok(())
    }

    /// N-independent part of `(1−α_total)`.
    pub fn constant_part(&self) -> f64 {
        self.alpha_sw + self.ctx_switch_clocks / self.total_clocks
    }

    /// Coefficient of N in `(1−α_total)`.
    pub fn slope(&self) -> f64 {
        self.bio_factor * self.loop_clocks_per_pu / self.total_clocks
    }
}

/// Per-unit performance and clock of the modelled machine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineModel {
    pub perf_per_pu: f64,
    pub clock_freq: f64,
}

impl MachineModel {
    pub fn new(perf_per_pu: f64, clock_freq: f64) -> Result<Self, ModelError> {
        if !(perf_per_pu.is_finite() && perf_per_pu > 0.0) {
            return Err(ModelError::InvalidPerformance(perf_per_pu));
        }
        if !(clock_freq.is_finite() && clock_freq > 0.0) {
            return Err(ModelError::InvalidDecomposition("clock frequency must be > 0"));
        }
        Ok(Self {
            perf_per_pu,
            clock_freq,
        })
    }

    /// Wall-clock length of a measurement of `total_clocks` cycles.
    pub fn measurement_seconds(&self, d: &AlphaDecomposition) -> f64 {
        d.total_clocks / self.clock_freq
    }

    /// Real-valued unit count behind a nominal performance.
    pub fn units_for(&self, r_peak: f64) -> f64 {
        r_peak / self.perf_per_pu
    }
}

impl Default for MachineModel {
    fn default() -> Self {
        Self {
            perf_per_pu: DEFAULT_PERF_PER_PU,
            clock_freq: DEFAULT_CLOCK_FREQ,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Dense linear algebra, minimal communication.
    Hpl,
    /// Conjugate gradient, moderate communication.
    Hpcg,
    /// Processor-based neural simulation on a biological clock.
    Nn,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Hpl, Preset::Hpcg, Preset::Nn];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Hpl => "HPL",
            Preset::Hpcg => "HPCG",
            Preset::Nn => "NN",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HPL" => Ok(Preset::Hpl),
            "HPCG" => Ok(Preset::Hpcg),
            "NN" => Ok(Preset::Nn),
            _ => Err(ModelError::UnknownPreset(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkPreset {
    pub name: Preset,
    pub decomposition: AlphaDecomposition,
    pub machine: MachineModel,
}

/// Constants of one benchmark preset.
pub fn preset(name: Preset) -> BenchmarkPreset {
    let (alpha_sw, bio_factor) = match name {
        Preset::Hpl => (2e-8, 1.0),
        Preset::Hpcg => (2e-6, 1.0),
        Preset::Nn => (2e-6, BIOLOGICAL_CLOCK_FACTOR),
    };
    BenchmarkPreset {
        name,
        decomposition: AlphaDecomposition {
            alpha_sw,
            ctx_switch_clocks: CONTEXT_SWITCH_CLOCKS,
            total_clocks: MEASUREMENT_CLOCKS,
            loop_clocks_per_pu: LOOP_CLOCKS_PER_PU,
            bio_factor,
        },
        machine: MachineModel::default(),
    }
}

/// Looks a preset up by name (`HPL`, `HPCG`, `NN`; case-insensitive).
pub fn preset_named(name: &str) -> Result<BenchmarkPreset, ModelError> {
    Ok(preset(name.parse()?))
}

/// OS contribution: context switching plus per-unit looping.
pub fn alpha_os(n_proc: f64, d: &AlphaDecomposition) -> f64 {
    d.ctx_switch_clocks / d.total_clocks + d.slope() * n_proc
}

/// Total non-parallelizable fraction; an error once it reaches one.
pub fn alpha_total(n_proc: f64, d: &AlphaDecomposition) -> Result<f64, ModelError> {
    let total = d.alpha_sw + alpha_os(n_proc, d);
    if total >= 1.0 || total.is_nan() {
        return Err(ModelError::OutsideValidity {
            n_proc,
            nonparallel: total,
        });
    }
    Ok(total)
}

/// Payload performance delivered at a nominal performance.
pub fn rmax_of_rpeak(
    r_peak: f64,
    m: &MachineModel,
    d: &AlphaDecomposition,
) -> Result<PerformancePoint, ModelError> {
    if !(r_peak.is_finite() && r_peak >= m.perf_per_pu) {
        return Err(ModelError::BelowSingleUnit {
            r_peak,
            perf_per_pu: m.perf_per_pu,
        });
    }
    let n = m.units_for(r_peak);
    let nonparallel = alpha_total(n, d)?;
    let r_max = payload(n, m.perf_per_pu, nonparallel);
    Ok(PerformancePoint {
        r_peak,
        r_max,
        efficiency: r_max / r_peak,
    })
}

/// Location of the payload maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPoint {
    /// Continuous maximizer from the numeric search.
    pub n_star: f64,
    /// Whichever neighbouring integer unit count delivers more.
    pub n_star_int: u64,
    pub r_peak_star: f64,
    pub r_max_star: f64,
    /// Closed-form `sqrt((1 − a)/b)` for the same decomposition.
    pub n_star_analytic: f64,
}

/// Closed-form maximizer `sqrt((1 − a)/b)` of the payload curve, with `a`
/// the constant part and `b` the slope of `(1−α_total)(N)`.
pub fn analytic_peak_units(d: &AlphaDecomposition) -> Result<f64, ModelError> {
    let b = d.slope();
    if b.is_nan() || b <= 0.0 {
        return Err(ModelError::NoInteriorMaximum);
    }
    let a = d.constant_part();
    if a >= 1.0 {
        return Err(ModelError::OutsideValidity {
            n_proc: 1.0,
            nonparallel: a + b,
        });
    }
    Ok(((1.0 - a) / b).sqrt())
}

/// Finds the unit count that maximizes payload performance by
/// golden-section search over `ln N`.
pub fn peak_point(m: &MachineModel, d: &AlphaDecomposition) -> Result<PeakPoint, ModelError> {
    d.validate()?;
    let analytic = analytic_peak_units(d)?;
    let (a, b) = (d.constant_part(), d.slope());
    // (1−α_total) reaches one at this N; r_max is unimodal below it
    let n_limit = (1.0 - a) / b;
    if n_limit <= 1.0 {
        return Err(ModelError::NoInteriorMaximum);
    }
    let curve = |n: f64| payload(n, m.perf_per_pu, a + b * n);
    let u = golden_section_max(|u| curve(u.exp()), 0.0, n_limit.ln(), PEAK_TOLERANCE);
    if u <= PEAK_TOLERANCE {
        return Err(ModelError::NoInteriorMaximum);
    }
    let n_star = u.exp();

    let lower = n_star.floor().max(1.0);
    let upper = n_star.ceil();
    let n_star_int = if curve(upper) > curve(lower) && upper < n_limit {
        upper
    } else {
        lower
    };

    Ok(PeakPoint {
        n_star,
        n_star_int: n_star_int as u64,
        r_peak_star: n_star * m.perf_per_pu,
        r_max_star: curve(n_star),
        n_star_analytic: analytic,
    })
}
