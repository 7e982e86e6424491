//! Standalone SVG 1.1 rendering of a [`CurveSet`].
//!
//! Output depends only on the curve set: fixed canvas, fixed palette, fixed
//! number formatting. Identical input gives byte-identical documents.

use std::fmt::Write as _;
use std::io::Write;

use super::{AxisSide, AxisSpec, ChartKind, CurveSet, Scale, Series, SeriesStyle};
use crate::error::ReportError;

const WIDTH: f64 = 1000.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 720.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 520.0;
const LEGEND_X: f64 = 800.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#8c564b", "#9467bd", "#ff7f0e", "#17becf", "#7f7f7f",
    "#bcbd22", "#e377c2",
];
const OVERLAY_COLORS: [&str; 4] = ["#000000", "#d62728", "#2ca02c", "#1f77b4"];

struct Mapper<'a> {
    axis: &'a AxisSpec,
    lo: f64,
    hi: f64,
}

impl<'a> Mapper<'a> {
    fn new(axis: &'a AxisSpec, lo: f64, hi: f64) -> Self {
        Self { axis, lo, hi }
    }

    fn frac(&self, v: f64) -> f64 {
        match self.axis.scale {
            Scale::Linear => (v - self.axis.min) / (self.axis.max - self.axis.min),
            Scale::Log10 => {
                (v.log10() - self.axis.min.log10()) / (self.axis.max.log10() - self.axis.min.log10())
            }
        }
    }

    fn map(&self, v: f64) -> f64 {
        self.lo + self.frac(v) * (self.hi - self.lo)
    }

    fn contains(&self, v: f64) -> bool {
        let f = self.frac(v);
        (-1e-9..=1.0 + 1e-9).contains(&f)
    }
}

/// Writes the curve set as an SVG document.
pub fn emit_svg<W: Write>(set: &CurveSet, mut sink: W) -> Result<(), ReportError> {
    set.validate()?;
    let doc = render(set);
    sink.write_all(doc.as_bytes())?;
    sink.flush()?;
    Ok(())
}

fn render(set: &CurveSet) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{}" height="{}"/></clipPath></defs>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        escape(&set.title)
    );

    let xm = Mapper::new(&set.x_axis, LEFT, RIGHT);
    let ym = Mapper::new(&set.y_axis, BOTTOM, TOP);
    let y2m = set.y2_axis.as_ref().map(|a| Mapper::new(a, BOTTOM, TOP));

    if set.kind == ChartKind::HeatMap {
        heat_map(&mut s, set, &xm, &ym);
    }
    axes(&mut s, set, &xm, &ym, y2m.as_ref());

    let mut legend: Vec<(String, String, SeriesStyle)> = Vec::new();
    let _ = writeln!(s, r#"<g clip-path="url(#plot-area)">"#);
    if set.kind == ChartKind::Lines {
        for (i, series) in set.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let y = pick(series, &ym, y2m.as_ref());
            draw_series(&mut s, series, &xm, y, color);
            legend.push((series.name.clone(), color.to_string(), series.style));
        }
    }
    for (i, series) in set.overlays.iter().enumerate() {
        let color = OVERLAY_COLORS[i % OVERLAY_COLORS.len()];
        let y = pick(series, &ym, y2m.as_ref());
        draw_series(&mut s, series, &xm, y, color);
        legend.push((series.name.clone(), color.to_string(), series.style));
    }
    let _ = writeln!(s, "</g>");

    if set.kind == ChartKind::HeatMap {
        color_key(&mut s);
    }
    draw_legend(&mut s, &legend, if set.kind == ChartKind::HeatMap { 200.0 } else { TOP });
    let _ = writeln!(s, "</svg>");
    s
}

fn pick<'a>(series: &Series, left: &'a Mapper<'a>, right: Option<&'a Mapper<'a>>) -> &'a Mapper<'a> {
    match (series.axis, right) {
        (AxisSide::Right, Some(r)) => r,
        _ => left,
    }
}

fn draw_series(s: &mut String, series: &Series, xm: &Mapper, ym: &Mapper, color: &str) {
    if matches!(series.style, SeriesStyle::Line | SeriesStyle::LineMarkers) && series.points.len() > 1 {
        let mut pts = String::new();
        for &(x, y) in &series.points {
            let _ = write!(pts, "{:.2},{:.2} ", xm.map(x), ym.map(y));
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            pts.trim_end()
        );
    }
    if matches!(series.style, SeriesStyle::Markers | SeriesStyle::LineMarkers) {
        for &(x, y) in &series.points {
            if xm.contains(x) && ym.contains(y) {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{color}" stroke="black" stroke-width="0.5"/>"#,
                    xm.map(x),
                    ym.map(y)
                );
            }
        }
    }
}

fn axes(s: &mut String, set: &CurveSet, xm: &Mapper, ym: &Mapper, y2m: Option<&Mapper>) {
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    for (v, label) in ticks(&set.x_axis) {
        let x = xm.map(v);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{BOTTOM}" stroke="#dddddd"/><line x1="{x:.2}" y1="{BOTTOM}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{label}</text>"##,
            BOTTOM + 5.0,
            BOTTOM + 20.0
        );
    }
    for (v, label) in ticks(&set.y_axis) {
        let y = ym.map(v);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{RIGHT}" y2="{y:.2}" stroke="#dddddd"/><line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{label}</text>"##,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0
        );
    }
    if let (Some(axis), Some(m)) = (&set.y2_axis, y2m) {
        for (v, label) in ticks(axis) {
            let y = m.map(v);
            let _ = writeln!(
                s,
                r#"<line x1="{RIGHT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="start">{label}</text>"#,
                RIGHT + 5.0,
                RIGHT + 8.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text transform="translate({},{}) rotate(90)" text-anchor="middle">{}</text>"#,
            RIGHT + 62.0,
            (TOP + BOTTOM) / 2.0,
            escape(&axis.title())
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 45.0,
        escape(&set.x_axis.title())
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate({},{}) rotate(-90)" text-anchor="middle" font-size="13">{}</text>"#,
        25.0,
        (TOP + BOTTOM) / 2.0,
        escape(&set.y_axis.title())
    );
}

fn ticks(axis: &AxisSpec) -> Vec<(f64, String)> {
    match axis.scale {
        Scale::Log10 => {
            let lo = axis.min.log10().ceil() as i32;
            let hi = axis.max.log10().floor() as i32;
            let step = ((hi - lo) / 10 + 1).max(1);
            (lo..=hi)
                .filter(|k| (k - lo) % step == 0)
                .map(|k| (10f64.powi(k), format!("1e{k}")))
                .collect()
        }
        Scale::Linear => {
            let raw = (axis.max - axis.min) / 6.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .into_iter()
                .map(|m| m * mag)
                .find(|&st| st >= raw)
                .unwrap_or(10.0 * mag);
            let decimals = if step >= 1.0 { 0 } else { (-step.log10().floor()) as usize };
            let first = (axis.min / step).ceil() as i64;
            let last = (axis.max / step).floor() as i64;
            (first..=last)
                .map(|i| {
                    let v = i as f64 * step;
                    (v, format!("{v:.decimals$}"))
                })
                .collect()
        }
    }
}

fn heat_map(s: &mut String, set: &CurveSet, xm: &Mapper, ym: &Mapper) {
    let mut rows: Vec<&Series> = set.series.iter().filter(|r| r.param.is_some()).collect();
    rows.sort_by(|a, b| a.param.unwrap_or(0.0).total_cmp(&b.param.unwrap_or(0.0)));
    let row_pos: Vec<f64> = rows.iter().map(|r| ym.map(r.param.unwrap_or(0.0))).collect();
    let _ = writeln!(s, r#"<g clip-path="url(#plot-area)">"#);
    for (i, row) in rows.iter().enumerate() {
        let (y_a, y_b) = cell_bounds(&row_pos, i);
        let col_pos: Vec<f64> = row.points.iter().map(|p| xm.map(p.0)).collect();
        for (j, &(_, v)) in row.points.iter().enumerate() {
            let (x_a, x_b) = cell_bounds(&col_pos, j);
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                x_a.min(x_b),
                y_a.min(y_b),
                (x_b - x_a).abs(),
                (y_b - y_a).abs(),
                ramp(v)
            );
        }
    }
    let _ = writeln!(s, "</g>");
}

// Cell edges halfway (in screen space) to the neighbours.
fn cell_bounds(pos: &[f64], i: usize) -> (f64, f64) {
    let half_prev = if i > 0 { (pos[i] - pos[i - 1]) / 2.0 } else if pos.len() > 1 { (pos[1] - pos[0]) / 2.0 } else { 5.0 };
    let half_next = if i + 1 < pos.len() { (pos[i + 1] - pos[i]) / 2.0 } else { half_prev };
    (pos[i] - half_prev, pos[i] + half_next)
}

// Dark blue at 0, teal at 0.5, yellow at 1.
fn ramp(v: f64) -> String {
    const STOPS: [(f64, [f64; 3]); 3] = [
        (0.0, [48.0, 18.0, 120.0]),
        (0.5, [33.0, 145.0, 140.0]),
        (1.0, [253.0, 231.0, 37.0]),
    ];
    let v = v.clamp(0.0, 1.0);
    let (a, b) = if v <= 0.5 { (STOPS[0], STOPS[1]) } else { (STOPS[1], STOPS[2]) };
    let t = (v - a.0) / (b.0 - a.0);
    let c: Vec<u8> = (0..3).map(|k| (a.1[k] + t * (b.1[k] - a.1[k])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn color_key(s: &mut String) {
    let _ = writeln!(s, r#"<text x="{LEFT_KEY}" y="{}">efficiency E</text>"#, TOP + 10.0, LEFT_KEY = LEGEND_X);
    for k in 0..=10 {
        let v = k as f64 / 10.0;
        let y = TOP + 20.0 + (10 - k) as f64 * 12.0;
        let _ = writeln!(
            s,
            r#"<rect x="{LEGEND_X}" y="{y}" width="20" height="12" fill="{}"/><text x="{}" y="{}">{v:.1}</text>"#,
            ramp(v),
            LEGEND_X + 26.0,
            y + 10.0
        );
    }
}

fn draw_legend(s: &mut String, entries: &[(String, String, SeriesStyle)], top: f64) {
    for (i, (name, color, style)) in entries.iter().enumerate() {
        let y = top + 10.0 + i as f64 * 18.0;
        if y > HEIGHT - 10.0 {
            break;
        }
        match style {
            SeriesStyle::Markers => {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{}" cy="{y}" r="4" fill="{color}" stroke="black" stroke-width="0.5"/>"#,
                    LEGEND_X + 10.0
                );
            }
            _ => {
                let _ = writeln!(
                    s,
                    r#"<line x1="{LEGEND_X}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/>"#,
                    LEGEND_X + 20.0
                );
            }
        }
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, LEGEND_X + 26.0, y + 4.0, escape(name));
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}
