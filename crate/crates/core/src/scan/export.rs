use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::RegionGrid;
use crate::classify::ClassReport;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// The JSON document written by [`export_json`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanJson {
    pub schema_version: u32,
    pub resolution: usize,
    pub reports: Vec<ClassReport>,
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_error(path, e))
}

/// One row per (cell, criterion); floats carry 17 significant digits.
pub fn write_csv<W: Write>(grid: &RegionGrid, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "g,w,criterion_id,verdict,margin")?;
    for cell in grid.cells() {
        let p = cell.report.point;
        for v in &cell.verdicts {
            writeln!(
                out,
                "{:.16e},{:.16e},{},{},{:.16e}",
                p.g(),
                p.w(),
                v.id,
                v.status,
                v.margin
            )?;
        }
    }
    Ok(())
}

pub fn export_csv(grid: &RegionGrid, path: &Path) -> Result<()> {
    let mut out = create(path)?;
    write_csv(grid, &mut out).map_err(|e| io_error(path, e))?;
    out.flush().map_err(|e| io_error(path, e))
}

pub fn export_json(grid: &RegionGrid, path: &Path) -> Result<()> {
    let doc = ScanJson {
        schema_version: SCHEMA_VERSION,
        resolution: grid.resolution(),
        reports: grid.reports(),
    };
    let mut out = create(path)?;
    serde_json::to_writer(&mut out, &doc)?;
    out.flush().map_err(|e| io_error(path, e))
}

pub fn import_json(path: &Path) -> Result<ScanJson> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let doc: ScanJson = serde_json::from_reader(std::io::BufReader::new(file))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidArgument(format!(
            "unsupported schema version {}",
            doc.schema_version
        )));
    }
    Ok(doc)
}
