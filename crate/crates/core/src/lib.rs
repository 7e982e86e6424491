//! Saturation-corrected Amdahl performance modelling.
//!
//! Large parallel systems do not add up like their parts. With `N`
//! processing units of payload performance `P` and parallel fraction `α`,
//! the delivered performance is
//!
//! ```text
//! Perf_total(N) = N·P / (N·(1−α) + α)
//! ```
//!
//! which is linear for small `N(1−α)` and saturates at `P/(1−α)`. When the
//! non-parallel fraction itself grows with `N` (orchestration, looping,
//! synchronization), the curve acquires a maximum, after which adding units
//! reduces performance.
//!
//! Modules:
//!
//! - [`model`]: the closed-form formulas, their inversion, and the
//!   relativistic speed analogy.
//! - [`contributions`]: `(1−α_total)(N)` from software, context-switch and
//!   looping contributions; benchmark presets; the performance peak.
//! - [`ingest`]: TOP500-style measurement CSV, derived efficiencies and
//!   per-machine timelines. [`dataset`] bundles reference measurements.
//! - [`report`]: figure datasets as [`report::CurveSet`], written as CSV or
//!   SVG.
//! - [`cli`]: the `perfwall` command line.
//!
//! ```
//! use perfwall::contributions::{peak_point, preset, Preset};
//!
//! let hpl = preset(Preset::Hpl);
//! let peak = peak_point(&hpl.machine, &hpl.decomposition).unwrap();
//! assert!(peak.r_peak_star > 0.4e18 && peak.r_peak_star < 0.5e18);
//! ```
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run -p perfwall --example amdahl_basics
//! cargo run -p perfwall --example invert_measurements
//! cargo run -p perfwall --example performance_wall
//! cargo run -p perfwall --example machine_timelines
//! cargo run -p perfwall --example relativity_analogy
//! cargo run -p perfwall --example render_figures
//! ```

pub mod cli;
pub mod contributions;
pub mod dataset;
pub mod error;
pub mod ingest;
pub mod model;
pub mod report;
pub mod search;
pub mod units;

pub use contributions::{AlphaDecomposition, BenchmarkPreset, MachineModel, PeakPoint, Preset};
pub use error::{IngestError, ModelError, ReportError};
pub use ingest::{Benchmark, DerivedRecord, MachineRecord, TimelineEntry};
pub use model::{ParallelSystem, PerformancePoint, RelativisticParams};
