//! Per-machine payload growth across list editions, plus parsing a
//! user-supplied file with a rejected row.
//!
//! ```bash
//! cargo run -p perfwall --example machine_timelines
//! ```

use perfwall::dataset;
use perfwall::ingest::{machines, parse_records, timeline, RecordFormat};

const CSV: &str = "\
machine,date,benchmark,rpeak_pflops,rmax_pflops,cores
Demo,2018.0,HPL,100,70,1000000
Demo,2018.5,HPL,120,90,1200000
# r_max above r_peak is rejected with a warning
Demo,2019.0,HPL,120,130,1200000
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = dataset::fig3_timeline()?.records;
    for name in machines(&records) {
        let t = timeline(&records, &name)?;
        let growth: Vec<String> = t.ratios.iter().map(|r| format!("{r:.3}")).collect();
        println!("{:<12} {} points, ratios [{}]", name, t.points.len(), growth.join(", "));
    }

    let parsed = parse_records(CSV.as_bytes(), RecordFormat::default())?;
    println!("\nparsed {} rows", parsed.records.len());
    for w in &parsed.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
