//! File formats: indicator-field CSV, peak lists, binary PGM heatmaps, and
//! the DataMatrix CSV interchange format.
//!
//! Floats are printed with 17 significant digits (`{:.16e}`), which
//! round-trips every f64 bit-exactly. The log column and the PGM log
//! transform use `10 log10(v)` floored at -300 dB so zero values stay
//! plottable.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::{DataMatrix, Provenance};
use crate::grid::{IndicatorField, PeakSet};
use crate::num::ComplexMatrix;

/// Floor for the decibel transform.
pub const DB_FLOOR: f64 = -300.0;

/// Cap on rows x cols accepted from an untrusted DataMatrix CSV (16 Mi
/// entries = 256 MiB of complex values).
const MAX_CSV_ENTRIES: usize = 16 * 1024 * 1024;

/// `10 log10(v)`, floored at -300 dB (and used for v <= 0).
pub fn db10(v: f64) -> f64 {
    if v <= 0.0 {
        return DB_FLOOR;
    }
    (10.0 * v.log10()).max(DB_FLOOR)
}

fn fmt17(v: f64) -> String {
    format!("{:.16e}", v)
}

/// Field CSV: a header row naming the axes and the method, then one row per
/// grid point in grid order with coordinates, the raw value, and (when
/// `log_scale` is set) the decibel value.
pub fn field_csv_string(field: &IndicatorField, log_scale: bool) -> String {
    let slug = field.spec.slug();
    let mut out = String::new();
    match field.grid.dimension() {
        1 => {
            out.push('x');
            out.push(',');
            out.push_str(&slug);
            if log_scale {
                out.push_str(&format!(",{}_db", slug));
            }
            out.push('\n');
            for (i, &v) in field.values.iter().enumerate() {
                let p = field.grid.point(i);
                out.push_str(&fmt17(p[0]));
                out.push(',');
                out.push_str(&fmt17(v));
                if log_scale {
                    out.push(',');
                    out.push_str(&fmt17(db10(v)));
                }
                out.push('\n');
            }
        }
        _ => {
            out.push_str("x,y,");
            out.push_str(&slug);
            if log_scale {
                out.push_str(&format!(",{}_db", slug));
            }
            out.push('\n');
            for (i, &v) in field.values.iter().enumerate() {
                let p = field.grid.point(i);
                out.push_str(&fmt17(p[0]));
                out.push(',');
                out.push_str(&fmt17(p[1]));
                out.push(',');
                out.push_str(&fmt17(v));
                if log_scale {
                    out.push(',');
                    out.push_str(&fmt17(db10(v)));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn write_field_csv(field: &IndicatorField, path: &Path, log_scale: bool) -> Result<()> {
    write_atomic(path, field_csv_string(field, log_scale).as_bytes())
}

/// Peak CSV: coordinates and value per detected peak, descending by value.
pub fn peaks_csv_string(peaks: &PeakSet, dimension: usize) -> String {
    let mut out = String::new();
    if dimension == 1 {
        out.push_str("x,value\n");
        for p in &peaks.peaks {
            out.push_str(&format!("{},{}\n", fmt17(p.position[0]), fmt17(p.value)));
        }
    } else {
        out.push_str("x,y,value\n");
        for p in &peaks.peaks {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt17(p.position[0]),
                fmt17(p.position[1]),
                fmt17(p.value)
            ));
        }
    }
    out
}

/// Binary PGM (P5, maxval 255) of a 2-d field. Pixel rows run top to bottom
/// in decreasing second axis; columns left to right in increasing first
/// axis. Values map linearly onto 0..=255 after the optional decibel
/// transform; a constant field renders all black.
pub fn pgm_bytes(field: &IndicatorField, log_scale: bool) -> Result<Vec<u8>> {
    if field.grid.dimension() != 2 {
        return Err(Error::InvalidArgument(
            "pgm output needs a 2-d field; write 1-d fields as csv".into(),
        ));
    }
    let nx = field.grid.axis(0).count;
    let ny = field.grid.axis(1).count;
    let transformed: Vec<f64> = if log_scale {
        field.values.iter().map(|&v| db10(v)).collect()
    } else {
        field.values.clone()
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in &transformed {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = hi - lo;

    let mut bytes = format!("P5\n{} {}\n255\n", nx, ny).into_bytes();
    for row in 0..ny {
        let iy = ny - 1 - row; // top row = largest y
        for ix in 0..nx {
            let v = transformed[ix * ny + iy];
            let pixel = if range > 0.0 {
                ((v - lo) / range * 255.0).round() as u8
            } else {
                0
            };
            bytes.push(pixel);
        }
    }
    Ok(bytes)
}

pub fn write_heatmap_pgm(field: &IndicatorField, path: &Path, log_scale: bool) -> Result<()> {
    write_atomic(path, &pgm_bytes(field, log_scale)?)
}

/// DataMatrix CSV: a column-name header, one metadata line
/// (rows, cols, wavenumber, provenance), then one `row,col,re,im` line per
/// entry in row-major order.
pub fn data_csv_string(data: &DataMatrix) -> String {
    let mut out = String::from("rows,cols,wavenumber,provenance\n");
    out.push_str(&format!(
        "{},{},{},{}\n",
        data.rows(),
        data.cols(),
        data.wavenumber.map(fmt17).unwrap_or_default(),
        data.provenance().as_str()
    ));
    for i in 0..data.rows() {
        for j in 0..data.cols() {
            let e = data.matrix[(i, j)];
            out.push_str(&format!("{},{},{},{}\n", i, j, fmt17(e.re), fmt17(e.im)));
        }
    }
    out
}

pub fn write_data_csv(data: &DataMatrix, path: &Path) -> Result<()> {
    write_atomic(path, data_csv_string(data).as_bytes())
}

/// Parse the DataMatrix CSV format. Every entry must appear exactly once;
/// all errors carry a 1-based line number.
pub fn parse_data_csv(text: &str) -> Result<DataMatrix> {
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .ok_or_else(|| csv_err(1, "empty file"))?
        .1
        .trim();
    if header != "rows,cols,wavenumber,provenance" {
        return Err(csv_err(
            1,
            "header must be 'rows,cols,wavenumber,provenance'",
        ));
    }
    let (meta_idx, meta) = lines
        .next()
        .ok_or_else(|| csv_err(2, "missing metadata line"))?;
    let fields: Vec<&str> = meta.trim().split(',').collect();
    if fields.len() != 4 {
        return Err(csv_err(
            meta_idx + 1,
            "metadata needs 4 comma-separated fields",
        ));
    }
    let rows: usize = fields[0]
        .parse()
        .map_err(|_| csv_err(meta_idx + 1, "rows must be a nonnegative integer"))?;
    let cols: usize = fields[1]
        .parse()
        .map_err(|_| csv_err(meta_idx + 1, "cols must be a nonnegative integer"))?;
    if rows == 0 || cols == 0 {
        return Err(csv_err(meta_idx + 1, "rows and cols must be at least 1"));
    }
    if rows.saturating_mul(cols) > MAX_CSV_ENTRIES {
        return Err(csv_err(meta_idx + 1, "matrix too large"));
    }
    let wavenumber = if fields[2].is_empty() {
        None
    } else {
        let k: f64 = fields[2]
            .parse()
            .map_err(|_| csv_err(meta_idx + 1, "wavenumber must be a number"))?;
        if !k.is_finite() || k <= 0.0 {
            return Err(csv_err(
                meta_idx + 1,
                "wavenumber must be finite and positive",
            ));
        }
        Some(k)
    };
    let provenance = match fields[3] {
        "aoa" => Provenance::Aoa,
        "born" => Provenance::Born,
        "external" => Provenance::External,
        other => {
            return Err(csv_err(
                meta_idx + 1,
                format!("provenance '{}' not one of aoa, born, external", other),
            ))
        }
    };

    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut seen = vec![false; rows * cols];
    let mut count = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parts: Vec<&str> = trimmed.split(',').collect();
        if parts.len() != 4 {
            return Err(csv_err(line_no, "entry needs 'row,col,re,im'"));
        }
        let r: usize = parts[0]
            .parse()
            .map_err(|_| csv_err(line_no, "row index must be an integer"))?;
        let c: usize = parts[1]
            .parse()
            .map_err(|_| csv_err(line_no, "col index must be an integer"))?;
        if r >= rows || c >= cols {
            return Err(csv_err(line_no, "entry index out of range"));
        }
        let re: f64 = parts[2]
            .parse()
            .map_err(|_| csv_err(line_no, "re must be a number"))?;
        let im: f64 = parts[3]
            .parse()
            .map_err(|_| csv_err(line_no, "im must be a number"))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(csv_err(line_no, "entries must be finite"));
        }
        let flat = r * cols + c;
        if seen[flat] {
            return Err(csv_err(line_no, "duplicate entry"));
        }
        seen[flat] = true;
        entries[flat] = Complex64::new(re, im);
        count += 1;
    }
    if count != rows * cols {
        return Err(csv_err(
            0,
            format!("expected {} entries, found {}", rows * cols, count),
        ));
    }
    let matrix = ComplexMatrix::from_entries(rows, cols, entries)?;
    DataMatrix::new(
        matrix,
        "row",
        (0..rows).map(|i| i as f64).collect(),
        "col",
        (0..cols).map(|i| i as f64).collect(),
        provenance,
        wavenumber,
    )
}

pub fn read_data_csv(path: &Path) -> Result<DataMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_data_csv(&text)
}

fn csv_err(line: usize, message: impl Into<String>) -> Error {
    Error::Csv {
        line,
        message: message.into(),
    }
}

/// Write through a temp file and rename, so readers never observe a partial
/// file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    let mut f = std::fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))?;
    Ok(())
}
