//! Report, grid and plot files.

use crate::checks::{fmt_num, Artifact, Num, Record};
use crate::scenario::{Format, GridSpec};
use littlewood::coeffs::DominationRow;
use littlewood::lelong::LogValue;
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const SCHEMA: u32 = 1;
/// Largest number of heat-map cells per side.
const SVG_CELLS: usize = 256;
/// Colour scale spans at most this many units below the largest value.
const SVG_DEPTH: f64 = 8.0;

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    records: &'a [Record],
}

#[derive(Serialize)]
struct Timing<'a> {
    check: &'a str,
    runtime_seconds: f64,
}

pub fn report_json(records: &[Record]) -> String {
    let mut s = serde_json::to_string_pretty(&JsonReport {
        schema: SCHEMA,
        records,
    })
    .expect("records serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_csv(records: &[Record]) -> String {
    let mut s = String::from("check,lhs,rhs,margin,verdict\n");
    for r in records {
        let Num(lhs) = r.lhs;
        let Num(rhs) = r.rhs;
        let Num(margin) = r.margin;
        writeln!(
            s,
            "{},{},{},{},{}",
            csv_field(&r.check),
            fmt_num(lhs),
            fmt_num(rhs),
            fmt_num(margin),
            r.outcome.as_str()
        )
        .unwrap();
    }
    s
}

pub fn grid_csv(points: &[(Complex64, LogValue)]) -> String {
    let mut s = String::from("x_re,x_im,value\n");
    for (x, v) in points {
        writeln!(s, "{:?},{:?},{}", x.re, x.im, fmt_num(v.to_f64())).unwrap();
    }
    s
}

pub fn table_csv(rows: &[DominationRow]) -> String {
    let mut s = String::from("n,a_sum,b_sum,shifted_b_sum,holds\n");
    for r in rows {
        writeln!(
            s,
            "{},{:?},{:?},{:?},{}",
            r.n, r.a_sum, r.b_sum, r.shifted_b_sum, r.holds
        )
        .unwrap();
    }
    s
}

fn colour(t: f64) -> String {
    // dark blue through white to dark red
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let s = t / 0.5;
        (40.0 + 215.0 * s, 60.0 + 195.0 * s, 140.0 + 115.0 * s)
    } else {
        let s = (t - 0.5) / 0.5;
        (255.0 - 75.0 * s, 255.0 - 215.0 * s, 255.0 - 215.0 * s)
    };
    format!("#{:02x}{:02x}{:02x}", r as u8, g as u8, b as u8)
}

/// Heat map of grid values; cells outside the image are left blank.
pub fn heat_map_svg(spec: &GridSpec, points: &[(Complex64, LogValue)]) -> String {
    let n = spec.resolution;
    let stride = n.div_ceil(SVG_CELLS);
    let cells = n.div_ceil(stride);
    let step = (spec.hi - spec.lo) / (n - 1) as f64;
    let mut grid: Vec<Option<LogValue>> = vec![None; cells * cells];
    for (x, v) in points {
        let i = ((x.re - spec.lo) / step).round() as usize;
        let j = ((x.im - spec.lo) / step).round() as usize;
        if i.is_multiple_of(stride) && j.is_multiple_of(stride) && i < n && j < n {
            grid[(j / stride) * cells + i / stride] = Some(*v);
        }
    }
    let finite: Vec<f64> = grid.iter().flatten().filter_map(|v| v.finite()).collect();
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = finite
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
        .max(hi - SVG_DEPTH);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let px = 2;
    let size = cells * px;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(
        s,
        r##"<rect width="{size}" height="{size}" fill="#ffffff"/>"##
    )
    .unwrap();
    for j in 0..cells {
        for i in 0..cells {
            let Some(v) = grid[j * cells + i] else {
                continue;
            };
            let fill = match v.finite() {
                Some(x) => colour((x - lo) / span),
                None => "#000000".to_string(),
            };
            // imaginary axis points up
            let y = (cells - 1 - j) * px;
            writeln!(
                s,
                r#"<rect x="{}" y="{y}" width="{px}" height="{px}" fill="{fill}"/>"#,
                i * px
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Writes the report, timings and per-check artifacts into `dir`.
/// Returns the paths written, report first.
pub fn write_outputs(dir: &Path, records: &[Record], format: Format) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let (name, body) = match format {
        Format::Json => ("report.json", report_json(records)),
        Format::Csv => ("report.csv", report_csv(records)),
    };
    let path = dir.join(name);
    fs::write(&path, body)?;
    written.push(path);

    let timings: Vec<Timing> = records
        .iter()
        .map(|r| Timing {
            check: &r.check,
            runtime_seconds: r.runtime_seconds,
        })
        .collect();
    let path = dir.join("timings.json");
    fs::write(
        &path,
        serde_json::to_string_pretty(&timings).expect("timings serialize") + "\n",
    )?;
    written.push(path);

    for r in records {
        let stem = r.check.replace('#', "-");
        match &r.artifact {
            Some(Artifact::Grid { spec, points }) => {
                let path = dir.join(format!("{stem}.csv"));
                fs::write(&path, grid_csv(points))?;
                written.push(path);
                let path = dir.join(format!("{stem}.svg"));
                fs::write(&path, heat_map_svg(spec, points))?;
                written.push(path);
            }
            Some(Artifact::Table(rows)) => {
                let path = dir.join(format!("{stem}.csv"));
                fs::write(&path, table_csv(rows))?;
                written.push(path);
            }
            None => {}
        }
    }
    Ok(written)
}
