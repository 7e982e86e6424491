//! Benchmark measurement records: parsing, derived efficiencies and
//! per-machine timelines.
//!
//! Input is CSV with a header row naming at least
//! `machine,date,benchmark,rpeak_flops,rmax_flops,cores`. The performance
//! columns may carry an SI prefix in the header (`rmax_pflops`,
//! `rpeak_eflops`, ...), which scales every value in that column. Lines
//! starting with `#` are comments. `rpeak` and `cores` may be left empty.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::IngestError;
use crate::model::alpha_from_measurement;
use crate::units::Prefix;

/// Earliest and latest accepted list date.
pub const DATE_RANGE: (f64, f64) = (1990.0, 2100.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Benchmark {
    Hpl,
    Hpcg,
}

impl Benchmark {
    pub fn tag(self) -> &'static str {
        match self {
            Benchmark::Hpl => "HPL",
            Benchmark::Hpcg => "HPCG",
        }
    }
}

impl fmt::Display for Benchmark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Benchmark {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "HPL" => Ok(Benchmark::Hpl),
            "HPCG" => Ok(Benchmark::Hpcg),
            _ => Err(s.to_string()),
        }
    }
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineRecord {
    pub machine: String,
    /// Fractional year of the list edition.
    pub date: f64,
    pub benchmark: Benchmark,
    /// flop/s; absent for series that only report payload performance.
    pub r_peak: Option<f64>,
    /// flop/s
    pub r_max: f64,
    pub cores: Option<u64>,
}

/// A record with its efficiency and effective non-parallel fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedRecord {
    pub record: MachineRecord,
    /// `r_max / r_peak`, when `r_peak` is known.
    pub efficiency: Option<f64>,
    /// `(1−α_eff)`, when both `r_peak` and at least two cores are known.
    pub nonparallel: Option<f64>,
}

/// Payload performance of one machine over successive list editions.
#[derive(Debug, Clone, PartialEq)]
pub struct TimelineEntry {
    pub machine: String,
    /// `(date, r_max)` sorted by date.
    pub points: Vec<(f64, f64)>,
    /// `r_max[k+1] / r_max[k]`.
    pub ratios: Vec<f64>,
}

/// A row that was read but rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Warning {
    pub line: u64,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Parsed {
    pub records: Vec<MachineRecord>,
    pub warnings: Vec<Warning>,
}

/// CSV dialect of a record source.
#[derive(Debug, Clone, Copy)]
pub struct RecordFormat {
    pub delimiter: u8,
    pub comment: u8,
}

impl Default for RecordFormat {
    fn default() -> Self {
        Self {
            delimiter: b',',
            comment: b'#',
        }
    }
}

/// Canonical header written by [`write_records`].
pub const HEADER: [&str; 6] = [
    "machine",
    "date",
    "benchmark",
    "rpeak_flops",
    "rmax_flops",
    "cores",
];

struct Columns {
    machine: usize,
    date: usize,
    benchmark: usize,
    rpeak: (usize, f64),
    rmax: (usize, f64),
    cores: usize,
}

impl Columns {
    fn locate(headers: &csv::StringRecord) -> Result<Self, IngestError> {
        let plain = |name: &'static str| {
            headers
                .iter()
                .position(|h| h.eq_ignore_ascii_case(name))
                .ok_or(IngestError::MissingColumn(name))
        };
        Ok(Self {
            machine: plain("machine")?,
            date: plain("date")?,
            benchmark: plain("benchmark")?,
            rpeak: flops_column(headers, "rpeak", "rpeak_flops")?,
            rmax: flops_column(headers, "rmax", "rmax_flops")?,
            cores: plain("cores")?,
        })
    }
}

// Finds `<base>_<prefix>flops` and returns its index and scale factor.
fn flops_column(
    headers: &csv::StringRecord,
    base: &str,
    canonical: &'static str,
) -> Result<(usize, f64), IngestError> {
    for (idx, h) in headers.iter().enumerate() {
        let h = h.to_ascii_lowercase();
        let Some(rest) = h.strip_prefix(base).and_then(|r| r.strip_prefix('_')) else {
            continue;
        };
        let Some(symbol) = rest.strip_suffix("flops") else {
            continue;
        };
        let prefix = match symbol {
            "" => Prefix::None,
            "k" => Prefix::Kilo,
            "m" => Prefix::Mega,
            "g" => Prefix::Giga,
            "t" => Prefix::Tera,
            "p" => Prefix::Peta,
            "e" => Prefix::Exa,
            _ => continue,
        };
        return Ok((idx, prefix.factor()));
    }
    Err(IngestError::MissingColumn(canonical))
}

/// Reads measurement records.
///
/// Malformed rows and unknown benchmark tags abort parsing. Rows with
/// `r_max > r_peak` are skipped and reported in [`Parsed::warnings`].
pub fn parse_records<R: Read>(source: R, format: RecordFormat) -> Result<Parsed, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(format.delimiter)
        .comment(Some(format.comment))
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Ok(Parsed::default());
    }
    let cols = Columns::locate(&headers)?;

    let mut out = Parsed::default();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |idx: usize| row.get(idx).unwrap_or("");
        let malformed = |column: &str, message: String| IngestError::Malformed {
            line,
            column: column.to_string(),
            message,
        };

        let machine = field(cols.machine);
        if machine.is_empty() {
            return Err(malformed("machine", "empty machine name".into()));
        }
        let date: f64 = field(cols.date)
            .parse()
            .map_err(|_| malformed("date", format!("not a number: '{}'", field(cols.date))))?;
        if !(DATE_RANGE.0..=DATE_RANGE.1).contains(&date) {
            return Err(malformed("date", format!("{date} outside [1990, 2100]")));
        }
        let benchmark: Benchmark = field(cols.benchmark)
            .parse()
            .map_err(|tag| IngestError::UnknownBenchmark { line, tag })?;
        let r_peak = optional_flops(field(cols.rpeak.0), cols.rpeak.1)
            .map_err(|m| malformed(&headers[cols.rpeak.0], m))?;
        let r_max = optional_flops(field(cols.rmax.0), cols.rmax.1)
            .map_err(|m| malformed(&headers[cols.rmax.0], m))?
            .ok_or_else(|| malformed(&headers[cols.rmax.0], "missing value".into()))?;
        let cores = match field(cols.cores) {
            "" => None,
            s => match s.parse::<u64>() {
                Ok(c) if c >= 1 => Some(c),
                _ => return Err(malformed("cores", format!("expected an integer >= 1, got '{s}'"))),
            },
        };

        if let Some(peak) = r_peak {
            if r_max > peak {
                out.warnings.push(Warning {
                    line,
                    message: format!(
                        "{machine} ({date}, {benchmark}): r_max {r_max:e} exceeds r_peak {peak:e}; row rejected"
                    ),
                });
                continue;
            }
        }
        out.records.push(MachineRecord {
            machine: machine.to_string(),
            date,
            benchmark,
            r_peak,
            r_max,
            cores,
        });
    }
    Ok(out)
}

fn optional_flops(s: &str, factor: f64) -> Result<Option<f64>, String> {
    if s.is_empty() {
        return Ok(None);
    }
    let v: f64 = s.parse().map_err(|_| format!("not a number: '{s}'"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("performance must be > 0, got '{s}'"));
    }
    Ok(Some(v * factor))
}

/// Writes records with the canonical header, values in flop/s.
pub fn write_records<W: Write>(records: &[MachineRecord], sink: W) -> Result<(), IngestError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record([
            r.machine.clone(),
            r.date.to_string(),
            r.benchmark.to_string(),
            r.r_peak.map(|v| format!("{v:e}")).unwrap_or_default(),
            format!("{:e}", r.r_max),
            r.cores.map(|c| c.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Adds efficiency and, where cores are known, `(1−α_eff)` to each record.
pub fn derive(records: &[MachineRecord]) -> Vec<DerivedRecord> {
    records
        .iter()
        .map(|r| {
            let efficiency = r.r_peak.map(|peak| r.r_max / peak);
            let nonparallel = match (efficiency, r.cores) {
                (Some(e), Some(c)) if c >= 2 => alpha_from_measurement(c as f64, e).ok(),
                _ => None,
            };
            DerivedRecord {
                record: r.clone(),
                efficiency,
                nonparallel,
            }
        })
        .collect()
}

/// Timeline of a machine across all its records.
pub fn timeline(records: &[MachineRecord], machine: &str) -> Result<TimelineEntry, IngestError> {
    build_timeline(records.iter().filter(|r| r.machine == machine), machine)
}

/// Timeline of a machine restricted to one benchmark.
pub fn timeline_for(
    records: &[MachineRecord],
    machine: &str,
    benchmark: Benchmark,
) -> Result<TimelineEntry, IngestError> {
    build_timeline(
        records
            .iter()
            .filter(|r| r.machine == machine && r.benchmark == benchmark),
        machine,
    )
}

fn build_timeline<'a>(
    records: impl Iterator<Item = &'a MachineRecord>,
    machine: &str,
) -> Result<TimelineEntry, IngestError> {
    let mut points: Vec<(f64, f64)> = records.map(|r| (r.date, r.r_max)).collect();
    if points.is_empty() {
        return Err(IngestError::UnknownMachine(machine.to_string()));
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(IngestError::DuplicateDate {
            machine: machine.to_string(),
            date: w[0].0,
        });
    }
    let ratios = points.windows(2).map(|w| w[1].1 / w[0].1).collect();
    Ok(TimelineEntry {
        machine: machine.to_string(),
        points,
        ratios,
    })
}

/// Machine names in order of first appearance.
pub fn machines(records: &[MachineRecord]) -> Vec<String> {
    let mut seen: Vec<String> = Vec::new();
    for r in records {
        if !seen.contains(&r.machine) {
            seen.push(r.machine.clone());
        }
    }
    seen
}

/// External per-machine metadata used to complete plotted series.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineMeta {
    pub machine: String,
    /// `None` applies to any date lacking a dated entry.
    pub date: Option<f64>,
    pub r_peak: Option<f64>,
    pub cores: Option<u64>,
    pub source: String,
}

/// Reads `machine,date,rpeak_flops,cores,source` metadata.
pub fn parse_metadata<R: Read>(source: R) -> Result<Vec<MachineMeta>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let col = |name: &'static str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or(IngestError::MissingColumn(name))
    };
    let (machine, date, cores, source) = (col("machine")?, col("date")?, col("cores")?, col("source")?);
    let rpeak = flops_column(&headers, "rpeak", "rpeak_flops")?;

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |idx: usize| row.get(idx).unwrap_or("");
        let malformed = |column: &str, message: String| IngestError::Malformed {
            line,
            column: column.to_string(),
            message,
        };
        let d = match field(date) {
            "" => None,
            s => Some(
                s.parse::<f64>()
                    .map_err(|_| malformed("date", format!("not a number: '{s}'")))?,
            ),
        };
        let c = match field(cores) {
            "" => None,
            s => Some(
                s.parse::<u64>()
                    .map_err(|_| malformed("cores", format!("not an integer: '{s}'")))?,
            ),
        };
        out.push(MachineMeta {
            machine: field(machine).to_string(),
            date: d,
            r_peak: optional_flops(field(rpeak.0), rpeak.1).map_err(|m| malformed("rpeak", m))?,
            cores: c,
            source: field(source).to_string(),
        });
    }
    Ok(out)
}

/// Fills missing `r_peak` and `cores` from metadata. A dated entry wins over
/// an undated one. Records whose joined `r_peak` is below `r_max` keep their
/// original value and produce a warning.
pub fn attach_metadata(records: &mut [MachineRecord], meta: &[MachineMeta]) -> Vec<Warning> {
    let mut warnings = Vec::new();
    for r in records.iter_mut() {
        let entry = meta
            .iter()
            .find(|m| m.machine == r.machine && m.date == Some(r.date))
            .or_else(|| meta.iter().find(|m| m.machine == r.machine && m.date.is_none()));
        let Some(entry) = entry else { continue };
        if r.r_peak.is_none() {
            match entry.r_peak {
                Some(p) if p < r.r_max => warnings.push(Warning {
                    line: 0,
                    message: format!(
                        "{} ({}): metadata r_peak {p:e} below r_max {:e}; not applied",
                        r.machine, r.date, r.r_max
                    ),
                }),
                p => r.r_peak = p,
            }
        }
        if r.cores.is_none() {
            r.cores = entry.cores;
        }
    }
    warnings
}
