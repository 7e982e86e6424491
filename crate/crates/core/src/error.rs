use std::io;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("unit count must be a finite number >= 1, got {0}")]
    InvalidUnitCount(f64),
    #[error("per-unit performance must be > 0 flop/s, got {0}")]
    InvalidPerformance(f64),
    #[error("fraction must lie in [0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("inversion needs at least 2 processing units, got {0}")]
    DegenerateInversion(f64),
    #[error("measured efficiency must lie in (0, 1], got {0}")]
    InvalidEfficiency(f64),
    #[error("invalid measurement: r_max = {r_max} flop/s, r_peak = {r_peak} flop/s")]
    InvalidMeasurement { r_peak: f64, r_max: f64 },
    #[error("no saturation: non-parallel fraction is zero, performance is unbounded")]
    Unbounded,
    #[error("invalid relativistic parameters: {0}")]
    InvalidRelativistic(&'static str),
    #[error("model outside validity at N = {n_proc}: (1-alpha) = {nonparallel} >= 1")]
    OutsideValidity { n_proc: f64, nonparallel: f64 },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(&'static str),
    #[error("no interior maximum: the non-parallel fraction does not grow with N")]
    NoInteriorMaximum,
    #[error("nominal performance {r_peak} flop/s is below one processing unit ({perf_per_pu} flop/s)")]
    BelowSingleUnit { r_peak: f64, perf_per_pu: f64 },
    #[error("unknown preset '{0}', expected one of HPL, HPCG, NN")]
    UnknownPreset(String),
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}, column '{column}': {message}")]
    Malformed {
        line: u64,
        column: String,
        message: String,
    },
    #[error("line {line}: unknown benchmark tag '{tag}', expected HPL or HPCG")]
    UnknownBenchmark { line: u64, tag: String },
    #[error("missing required column '{0}'")]
    MissingColumn(&'static str),
    #[error("unknown machine '{0}'")]
    UnknownMachine(String),
    #[error("machine '{machine}' has two records dated {date}")]
    DuplicateDate { machine: String, date: f64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("invalid curve set: {0}")]
    InvalidCurveSet(String),
    #[error("no data")]
    NoData,
    #[error("unknown figure '{0}', expected one of 1, 3, 4, 5, 6A, 6B, 6C")]
    UnknownFigure(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}
