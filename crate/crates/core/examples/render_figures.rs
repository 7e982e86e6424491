//! Writes every figure as CSV and SVG into a directory.
//!
//! ```bash
//! cargo run -p perfwall --example render_figures -- out/
//! ```

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use perfwall::report::{build_figure, emit_csv, emit_svg, FigureId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    fs::create_dir_all(&dir)?;
    for id in FigureId::ALL {
        let set = build_figure(id, None)?;
        let stem = id.file_stem();
        emit_csv(&set, BufWriter::new(File::create(dir.join(format!("{stem}.csv")))?))?;
        emit_svg(&set, BufWriter::new(File::create(dir.join(format!("{stem}.svg")))?))?;
        println!("{stem}: {} series, {} overlays", set.series.len(), set.overlays.len());
    }
    println!("wrote {}", dir.display());
    Ok(())
}
