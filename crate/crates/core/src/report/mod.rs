//! Figure datasets and their CSV/SVG renderings.
//!
//! A [`CurveSet`] is the exchange format between the model and the emitters.
//! Its coordinates are already in the display unit named by the axis (for
//! example Eflop/s), so emitted files read the same as the axis labels.

mod csv_out;
mod figures;
mod svg;

pub use csv_out::emit_csv;
pub use figures::{
    build_figure, fig1_surface, fig3_timeline, fig4_curves, fig5_curves, fig6_panel, FigureId,
    SurfaceSpec, FIG4_NONPARALLEL, NEURAL_SIM_POINT,
};
pub use svg::emit_svg;

use crate::error::ReportError;

/// Points per sampled model curve.
pub const SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log10,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub label: String,
    pub unit: String,
    pub scale: Scale,
    pub min: f64,
    pub max: f64,
}

impl AxisSpec {
    pub fn new(label: &str, unit: &str, scale: Scale, min: f64, max: f64) -> Self {
        Self {
            label: label.to_string(),
            unit: unit.to_string(),
            scale,
            min,
            max,
        }
    }

    pub fn validate(&self) -> Result<(), ReportError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(ReportError::InvalidCurveSet(format!(
                "axis '{}' needs min < max, got [{}, {}]",
                self.label, self.min, self.max
            )));
        }
        if self.scale == Scale::Log10 && self.min <= 0.0 {
            return Err(ReportError::InvalidCurveSet(format!(
                "log axis '{}' needs min > 0",
                self.label
            )));
        }
        Ok(())
    }

    /// Label with the unit in parentheses.
    pub fn title(&self) -> String {
        if self.unit.is_empty() {
            self.label.clone()
        } else {
            format!("{} ({})", self.label, self.unit)
        }
    }

    fn accepts(&self, v: f64) -> bool {
        v.is_finite() && (self.scale == Scale::Linear || v > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStyle {
    Line,
    Markers,
    LineMarkers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub axis: AxisSide,
    pub style: SeriesStyle,
    /// Row coordinate of a heat-map row; unused for line charts.
    pub param: Option<f64>,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn line(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            axis: AxisSide::Left,
            style: SeriesStyle::Line,
            param: None,
            points,
        }
    }

    pub fn markers(name: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Self {
            style: SeriesStyle::Markers,
            ..Self::line(name, points)
        }
    }

    pub fn on(mut self, axis: AxisSide) -> Self {
        self.axis = axis;
        self
    }

    pub fn styled(mut self, style: SeriesStyle) -> Self {
        self.style = style;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    Lines,
    /// Series are grid rows: `param` is the row's y coordinate and each
    /// point is `(x, value)`. Values are colored on `[0, 1]`.
    HeatMap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSet {
    pub title: String,
    pub kind: ChartKind,
    pub x_axis: AxisSpec,
    pub y_axis: AxisSpec,
    pub y2_axis: Option<AxisSpec>,
    /// Model output.
    pub series: Vec<Series>,
    /// Measured points drawn on top of the model.
    pub overlays: Vec<Series>,
}

impl CurveSet {
    pub fn validate(&self) -> Result<(), ReportError> {
        self.x_axis.validate()?;
        self.y_axis.validate()?;
        if let Some(y2) = &self.y2_axis {
            y2.validate()?;
        }
        for s in self.series.iter().chain(&self.overlays) {
            if s.points.is_empty() {
                return Err(ReportError::InvalidCurveSet(format!(
                    "series '{}' is empty",
                    s.name
                )));
            }
            let y_axis = match s.axis {
                AxisSide::Left => &self.y_axis,
                AxisSide::Right => self.y2_axis.as_ref().ok_or_else(|| {
                    ReportError::InvalidCurveSet(format!(
                        "series '{}' uses the right axis, which is not defined",
                        s.name
                    ))
                })?,
            };
            let is_row = self.kind == ChartKind::HeatMap && self.series.contains(s);
            if is_row {
                match s.param {
                    Some(p) if y_axis.accepts(p) => {}
                    _ => {
                        return Err(ReportError::InvalidCurveSet(format!(
                            "heat-map row '{}' needs a valid row coordinate",
                            s.name
                        )))
                    }
                }
            }
            for &(x, y) in &s.points {
                let y_ok = if is_row { y.is_finite() } else { y_axis.accepts(y) };
                if !self.x_axis.accepts(x) || !y_ok {
                    return Err(ReportError::InvalidCurveSet(format!(
                        "series '{}' has point ({x}, {y}) not representable on its axes",
                        s.name
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `count` points from `lo` to `hi`, evenly spaced in `log10`. Both ends
/// are returned exactly.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let step = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| match i {
                    0 => lo,
                    i if i == count - 1 => hi,
                    i => 10f64.powf(a + step * i as f64),
                })
                .collect()
        }
    }
}

pub(crate) fn check_range(name: &str, lo: f64, hi: f64) -> Result<(), ReportError> {
    if lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi {
        Ok(())
    } else {
        Err(ReportError::InvalidRange(format!(
            "{name} must satisfy 0 < min < max, got [{lo}, {hi}]"
        )))
    }
}
