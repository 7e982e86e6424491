use std::io::Write;

use super::CurveSet;
use crate::error::ReportError;

/// Writes `series,x,y` rows: model series first, then overlays, with 17
/// significant digits.
pub fn emit_csv<W: Write>(set: &CurveSet, sink: W) -> Result<(), ReportError> {
    set.validate()?;
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["series", "x", "y"])?;
    for s in set.series.iter().chain(&set.overlays) {
        for &(x, y) in &s.points {
            w.write_record([s.name.as_str(), &format!("{x:.16e}"), &format!("{y:.16e}")])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{AxisSpec, ChartKind, Scale, Series};

    fn set(overlays: Vec<Series>) -> CurveSet {
        CurveSet {
            title: "t".into(),
            kind: ChartKind::Lines,
            x_axis: AxisSpec::new("x", "", Scale::Linear, 0.0, 1.0),
            y_axis: AxisSpec::new("y", "", Scale::Linear, 0.0, 1.0),
            y2_axis: None,
            series: vec![Series::line("model, a", vec![(0.1, 1.0 / 3.0)])],
            overlays,
        }
    }

    #[test]
    fn model_only() {
        let mut out = Vec::new();
        emit_csv(&set(vec![]), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "series,x,y\n\"model, a\",1.0000000000000001e-1,3.3333333333333331e-1\n"
        );
    }

    #[test]
    fn overlays_follow_model() {
        let mut out = Vec::new();
        emit_csv(&set(vec![Series::markers("m", vec![(0.5, 0.25)])]), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let last = text.lines().last().unwrap();
        assert_eq!(last, "m,5.0000000000000000e-1,2.5000000000000000e-1");
    }
}
