use std::fmt;
use std::str::FromStr;

use super::{check_range, log_space, AxisSide, AxisSpec, ChartKind, CurveSet, Scale, Series, SeriesStyle, SAMPLES};
use crate::contributions::{alpha_os, alpha_total, preset, BenchmarkPreset, Preset};
use crate::dataset;
use crate::error::ReportError;
use crate::ingest::{derive, machines, timeline, Benchmark, DerivedRecord, MachineRecord};
use crate::model::{efficiency_nonparallel, payload, relativistic_speed, RelativisticParams};
use crate::units::Prefix;

/// Non-parallel fractions of the payload-vs-nominal chart. The first and
/// fourth reproduce Taihulight's HPL and HPCG measurements.
pub const FIG4_NONPARALLEL: [f64; 6] = [3.3e-8, 5e-7, 1e-5, 2.4e-5, 1e-4, 1.5e-3];

/// `(R_Peak, R_Max)` in Eflop/s of the system used for neural simulation.
pub const NEURAL_SIM_POINT: (f64, f64) = (9.83e-6, 8.39e-6);

/// Taihulight's HPCG R_Peak, Eflop/s, used to derive per-core performance.
const TAIHULIGHT_RPEAK_EF: f64 = 0.1254;

const FIG6_OVERLAY_HPL: (f64, f64) = (0.00587, 0.005);
const FIG6_OVERLAY_HPCG: (f64, f64) = (0.00587, 0.000095);

const EXA: Prefix = Prefix::Exa;

/// Which chart to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Surface,
    Timeline,
    PayloadVsNominal,
    Relativistic,
    Contributions(Preset),
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Surface,
        FigureId::Timeline,
        FigureId::PayloadVsNominal,
        FigureId::Relativistic,
        FigureId::Contributions(Preset::Hpl),
        FigureId::Contributions(Preset::Hpcg),
        FigureId::Contributions(Preset::Nn),
    ];

    /// Identifier as used on the command line: `1`, `3`, `4`, `5`, `6A`...
    pub fn id(self) -> &'static str {
        match self {
            FigureId::Surface => "1",
            FigureId::Timeline => "3",
            FigureId::PayloadVsNominal => "4",
            FigureId::Relativistic => "5",
            FigureId::Contributions(Preset::Hpl) => "6A",
            FigureId::Contributions(Preset::Hpcg) => "6B",
            FigureId::Contributions(Preset::Nn) => "6C",
        }
    }

    /// Output file stem, e.g. `fig6A`.
    pub fn file_stem(self) -> String {
        format!("fig{}", self.id())
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FigureId {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches("fig").to_ascii_uppercase();
        FigureId::ALL
            .into_iter()
            .find(|f| f.id() == t)
            .ok_or_else(|| ReportError::UnknownFigure(s.to_string()))
    }
}

/// Builds a figure with its default parameters. `records` replaces the
/// bundled measurement data for figures 1, 3 and 4.
pub fn build_figure(id: FigureId, records: Option<&[MachineRecord]>) -> Result<CurveSet, ReportError> {
    match id {
        FigureId::Surface => {
            let recs = match records {
                Some(r) => r.to_vec(),
                None => dataset::fig4_points_joined()?.records,
            };
            fig1_surface(&SurfaceSpec::default(), &derive(&recs))
        }
        FigureId::Timeline => {
            let recs = match records {
                Some(r) => r.to_vec(),
                None => dataset::fig3_timeline()?.records,
            };
            fig3_timeline(&recs)
        }
        FigureId::PayloadVsNominal => {
            let recs = match records {
                Some(r) => r.to_vec(),
                None => dataset::fig4_points()?.records,
            };
            let per_core = TAIHULIGHT_RPEAK_EF * EXA.factor() / dataset::TAIHULIGHT_CORES as f64;
            fig4_curves(&FIG4_NONPARALLEL, per_core, (1e-6 * 1e18, 0.5e18), &recs)
        }
        FigureId::Relativistic => fig5_curves((86_400.0, 1e9), &[1.0, 2.0]),
        FigureId::Contributions(p) => fig6_panel(&preset(p), (0.001e18, 1.1e18)),
    }
}

/// Grid of the efficiency surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSpec {
    pub n_range: (f64, f64),
    /// Range of `(1−α)`; must lie in `(0, 1)`.
    pub nonparallel_range: (f64, f64),
    pub n_points: usize,
    pub nonparallel_points: usize,
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        Self {
            n_range: (1.0, 1e8),
            nonparallel_range: (1e-8, 1e-1),
            n_points: 64,
            nonparallel_points: 64,
        }
    }
}

/// Efficiency `E(N, 1−α)` on a log-log grid, one series per `(1−α)` row.
///
/// Measured records with a derived `(1−α_eff)` are overlaid at
/// `(cores, 1−α_eff)`, grouped by benchmark.
pub fn fig1_surface(spec: &SurfaceSpec, measured: &[DerivedRecord]) -> Result<CurveSet, ReportError> {
    let (n_lo, n_hi) = spec.n_range;
    let (s_lo, s_hi) = spec.nonparallel_range;
    if !(n_lo >= 1.0 && n_lo < n_hi && n_hi.is_finite()) {
        return Err(ReportError::InvalidRange(format!(
            "unit count range must satisfy 1 <= min < max, got [{n_lo}, {n_hi}]"
        )));
    }
    check_range("(1-alpha) range", s_lo, s_hi)?;
    if s_hi >= 1.0 {
        return Err(ReportError::InvalidRange(format!("(1-alpha) must stay below 1, got {s_hi}")));
    }
    if spec.n_points < 2 || spec.nonparallel_points < 2 {
        return Err(ReportError::InvalidRange("grid needs at least 2 points per axis".into()));
    }

    let ns = log_space(n_lo, n_hi, spec.n_points);
    let series = log_space(s_lo, s_hi, spec.nonparallel_points)
        .into_iter()
        .map(|s| Series {
            name: format!("E (1-alpha)={s:e}"),
            axis: AxisSide::Left,
            style: SeriesStyle::Line,
            param: Some(s),
            points: ns.iter().map(|&n| (n, efficiency_nonparallel(n, s))).collect(),
        })
        .collect();

    let mut overlays = Vec::new();
    for b in [Benchmark::Hpl, Benchmark::Hpcg] {
        let pts: Vec<(f64, f64)> = measured
            .iter()
            .filter(|d| d.record.benchmark == b)
            .filter_map(|d| Some((d.record.cores? as f64, d.nonparallel?)))
            .filter(|&(_, s)| s > 0.0)
            .collect();
        if !pts.is_empty() {
            overlays.push(Series::markers(format!("measured {b}"), pts));
        }
    }

    Ok(CurveSet {
        title: "Efficiency surface E = 1/(N(1-alpha)+alpha)".into(),
        kind: ChartKind::HeatMap,
        x_axis: AxisSpec::new("processing units N", "", Scale::Log10, n_lo, n_hi),
        y_axis: AxisSpec::new("non-parallel fraction (1-alpha)", "", Scale::Log10, s_lo, s_hi),
        y2_axis: None,
        series,
        overlays,
    })
}

/// Payload performance per machine over list editions, in Pflop/s, with
/// the successive improvement ratios on the right axis.
pub fn fig3_timeline(records: &[MachineRecord]) -> Result<CurveSet, ReportError> {
    if records.is_empty() {
        return Err(ReportError::NoData);
    }
    let mut series = Vec::new();
    let mut ratios = Vec::new();
    for m in machines(records) {
        let t = timeline(records, &m)?;
        series.push(
            Series::line(
                m.clone(),
                t.points.iter().map(|&(d, r)| (d, Prefix::Peta.scale(r))).collect(),
            )
            .styled(SeriesStyle::LineMarkers),
        );
        if !t.ratios.is_empty() {
            let pts = t.points[1..].iter().zip(&t.ratios).map(|(&(d, _), &q)| (d, q)).collect();
            ratios.push(Series::markers(format!("{m} ratio"), pts).on(AxisSide::Right));
        }
    }
    let max_ratio = ratios
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(2.0_f64, f64::max);
    series.extend(ratios);

    Ok(CurveSet {
        title: "R_Max payload performance by year of construction".into(),
        kind: ChartKind::Lines,
        x_axis: AxisSpec::new("years", "fractional year", Scale::Linear, 2010.0, 2020.0),
        y_axis: AxisSpec::new("R_Max", "Pflop/s", Scale::Log10, 0.5, 230.0),
        y2_axis: Some(AxisSpec::new(
            "ratio to predecessor",
            "",
            Scale::Linear,
            0.0,
            (max_ratio * 1.1).ceil(),
        )),
        series,
        overlays: Vec::new(),
    })
}

fn fig4_series_name(s: f64) -> String {
    if s == FIG4_NONPARALLEL[0] {
        format!("HPL (1-alpha)={s:e}")
    } else if s == FIG4_NONPARALLEL[3] {
        format!("HPCG (1-alpha)={s:e}")
    } else {
        format!("(1-alpha)={s:e}")
    }
}

/// `R_Max(R_Peak)` at constant `(1−α)` values, Eflop/s on both axes.
///
/// `rpeak_range` is in flop/s and must start at or above one processing
/// unit. Measured records with a known R_Peak are overlaid by benchmark,
/// followed by the neural-simulation system.
pub fn fig4_curves(
    nonparallel: &[f64],
    perf_per_pu: f64,
    rpeak_range: (f64, f64),
    measured: &[MachineRecord],
) -> Result<CurveSet, ReportError> {
    let (lo, hi) = rpeak_range;
    check_range("R_Peak range", lo, hi)?;
    if !(perf_per_pu > 0.0 && lo >= perf_per_pu) {
        return Err(ReportError::InvalidRange(format!(
            "R_Peak range must start at or above one processing unit ({perf_per_pu:e} flop/s)"
        )));
    }
    if nonparallel.is_empty() || nonparallel.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
        return Err(ReportError::InvalidRange("(1-alpha) values must lie in (0, 1]".into()));
    }

    let grid = log_space(lo, hi, SAMPLES);
    let series = nonparallel
        .iter()
        .map(|&s| {
            let pts = grid
                .iter()
                .map(|&r| (EXA.scale(r), EXA.scale(payload(r / perf_per_pu, perf_per_pu, s))))
                .collect();
            Series::line(fig4_series_name(s), pts)
        })
        .collect();

    let mut overlays = Vec::new();
    for b in [Benchmark::Hpl, Benchmark::Hpcg] {
        let pts: Vec<(f64, f64)> = measured
            .iter()
            .filter(|r| r.benchmark == b)
            .filter_map(|r| Some((EXA.scale(r.r_peak?), EXA.scale(r.r_max))))
            .collect();
        if !pts.is_empty() {
            overlays.push(Series::markers(format!("measured {b}"), pts));
        }
    }
    overlays.push(Series::markers("neural simulation system", vec![NEURAL_SIM_POINT]));

    Ok(CurveSet {
        title: "Payload performance R_Max versus nominal performance R_Peak".into(),
        kind: ChartKind::Lines,
        x_axis: AxisSpec::new("R_Peak", "Eflop/s", Scale::Log10, 1e-6, 0.5),
        y_axis: AxisSpec::new("R_Max", "Eflop/s", Scale::Log10, 1e-6, 0.3),
        y2_axis: None,
        series,
        overlays,
    })
}

/// Speed of a body under standard gravity against time, one series per
/// optical density.
pub fn fig5_curves(t_range: (f64, f64), densities: &[f64]) -> Result<CurveSet, ReportError> {
    let (lo, hi) = t_range;
    check_range("time range", lo, hi)?;
    if densities.is_empty() {
        return Err(ReportError::InvalidRange("at least one optical density is required".into()));
    }
    let grid = log_space(lo, hi, SAMPLES);
    let series = densities
        .iter()
        .map(|&n| {
            let p = RelativisticParams::gravity(n)?;
            let pts = grid.iter().map(|&t| (t, relativistic_speed(t, &p))).collect();
            Ok(Series::line(format!("v(t), n={n}"), pts))
        })
        .collect::<Result<Vec<_>, ReportError>>()?;

    Ok(CurveSet {
        title: "Relativistic speed of a body accelerated by g".into(),
        kind: ChartKind::Lines,
        x_axis: AxisSpec::new("time", "s", Scale::Log10, 86_400.0, 5e8),
        y_axis: AxisSpec::new("speed", "m/s", Scale::Log10, 1e6, 5e8),
        y2_axis: None,
        series,
        overlays: Vec::new(),
    })
}

/// Contributions to `(1−α_total)` (left axis) and R_Max (right axis) over a
/// nominal-performance sweep in flop/s. Axes are in Eflop/s.
pub fn fig6_panel(bp: &BenchmarkPreset, rpeak_range: (f64, f64)) -> Result<CurveSet, ReportError> {
    let (lo, hi) = rpeak_range;
    check_range("R_Peak range", lo, hi)?;
    let d = &bp.decomposition;
    let m = &bp.machine;
    d.validate()?;
    if lo < m.perf_per_pu {
        return Err(ReportError::InvalidRange(format!(
            "R_Peak range must start at or above one processing unit ({:e} flop/s)",
            m.perf_per_pu
        )));
    }

    let grid = log_space(lo, hi, SAMPLES);
    let mut sw = Vec::with_capacity(SAMPLES);
    let mut os = Vec::with_capacity(SAMPLES);
    let mut total = Vec::with_capacity(SAMPLES);
    let mut rmax = Vec::with_capacity(SAMPLES);
    for &r in &grid {
        let n = m.units_for(r);
        let x = EXA.scale(r);
        let s = alpha_total(n, d)?;
        sw.push((x, d.alpha_sw));
        os.push((x, alpha_os(n, d)));
        total.push((x, s));
        rmax.push((x, EXA.scale(payload(n, m.perf_per_pu, s))));
    }

    let mut series = Vec::new();
    // a zero software share cannot be drawn on the log axis
    if d.alpha_sw > 0.0 {
        series.push(Series::line("alpha_SW", sw));
    }
    series.push(Series::line("alpha_OS", os));
    series.push(Series::line("alpha_eff", total));
    series.push(Series::line("R_Max", rmax).on(AxisSide::Right));

    let overlays = match bp.name {
        Preset::Hpl => vec![Series::markers("measured HPL", vec![FIG6_OVERLAY_HPL]).on(AxisSide::Right)],
        Preset::Hpcg => vec![Series::markers("measured HPCG", vec![FIG6_OVERLAY_HPCG]).on(AxisSide::Right)],
        Preset::Nn => Vec::new(),
    };

    Ok(CurveSet {
        title: format!(
            "Contributions to (1-alpha_eff) and R_Max, {} ({:e} flop/s per unit)",
            bp.name, m.perf_per_pu
        ),
        kind: ChartKind::Lines,
        x_axis: AxisSpec::new("R_Peak", "Eflop/s", Scale::Log10, EXA.scale(lo), EXA.scale(hi)),
        y_axis: AxisSpec::new(&format!("(1-alpha_eff^{})", bp.name), "", Scale::Log10, 1e-10, 5e-4),
        y2_axis: Some(AxisSpec::new(&format!("R_Max^{}", bp.name), "Eflop/s", Scale::Log10, 1e-5, 1.0)),
        series,
        overlays,
    })
}
