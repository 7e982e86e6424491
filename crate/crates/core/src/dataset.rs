//! Bundled measurement data.
//!
//! `fig3_timeline.csv` and `fig4_points.csv` hold plotted values verbatim.
//! `machines_meta.csv` holds TOP500 metadata (R_Peak, core counts) from an
//! external source and is kept in its own file so the plotted values stay
//! auditable. The `*_joined` helpers merge the two.

use crate::error::IngestError;
use crate::ingest::{attach_metadata, parse_metadata, parse_records, MachineMeta, Parsed, RecordFormat};

pub const FIG3_TIMELINE_CSV: &str = include_str!("../../../data/fig3_timeline.csv");
pub const FIG4_POINTS_CSV: &str = include_str!("../../../data/fig4_points.csv");
pub const MACHINES_META_CSV: &str = include_str!("../../../data/machines_meta.csv");

/// Core count of Sunway TaihuLight.
pub const TAIHULIGHT_CORES: u64 = 10_649_600;

/// The payload-performance timeline, unjoined.
pub fn fig3_timeline() -> Result<Parsed, IngestError> {
    parse_records(FIG3_TIMELINE_CSV.as_bytes(), RecordFormat::default())
}

/// The measured `(R_Peak, R_Max)` points, unjoined.
pub fn fig4_points() -> Result<Parsed, IngestError> {
    parse_records(FIG4_POINTS_CSV.as_bytes(), RecordFormat::default())
}

pub fn machines_meta() -> Result<Vec<MachineMeta>, IngestError> {
    parse_metadata(MACHINES_META_CSV.as_bytes())
}

/// Timeline records with R_Peak and cores filled from metadata.
pub fn fig3_timeline_joined() -> Result<Parsed, IngestError> {
    joined(fig3_timeline()?)
}

/// Measured points with cores filled from metadata.
pub fn fig4_points_joined() -> Result<Parsed, IngestError> {
    joined(fig4_points()?)
}

/// Joins any parsed record set with the bundled metadata.
pub fn joined(mut parsed: Parsed) -> Result<Parsed, IngestError> {
    let meta = machines_meta()?;
    let warnings = attach_metadata(&mut parsed.records, &meta);
    parsed.warnings.extend(warnings);
    Ok(parsed)
}
