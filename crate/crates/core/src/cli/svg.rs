//! Point-set CSV (`re,im,kind`) and a deterministic SVG scatter of it.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PointSeries {
    pub kind: String,
    pub points: Vec<Complex64>,
}

impl PointSeries {
    pub fn new(kind: impl Into<String>, points: Vec<Complex64>) -> Self {
        Self {
            kind: kind.into(),
            points,
        }
    }
}

pub fn write_points_csv<W: Write>(series: &[PointSeries], mut out: W) -> Result<()> {
    let io = |e| Error::io("writing point CSV", e);
    writeln!(out, "re,im,kind").map_err(io)?;
    for s in series {
        for z in &s.points {
            writeln!(out, "{:?},{:?},{}", z.re, z.im, s.kind).map_err(io)?;
        }
    }
    Ok(())
}

/// Series in order of first appearance.
pub fn read_points_csv<R: Read>(input: R) -> Result<Vec<PointSeries>> {
    let mut series: Vec<PointSeries> = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line.map_err(|e| Error::io("reading point CSV", e))?;
        if i == 0 {
            if line.trim() != "re,im,kind" {
                return Err(Error::Config(format!("unexpected point CSV header `{line}`")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut f = line.splitn(3, ',');
        let (re, im, kind) = match (f.next(), f.next(), f.next()) {
            (Some(a), Some(b), Some(k)) => (a, b, k),
            _ => return Err(Error::Config(format!("point CSV line {}: expected re,im,kind", i + 1))),
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("point CSV line {}: bad number `{s}`", i + 1)))
        };
        let z = Complex64::new(num(re)?, num(im)?);
        match series.iter_mut().find(|s| s.kind == kind) {
            Some(s) => s.points.push(z),
            None => series.push(PointSeries::new(kind, vec![z])),
        }
    }
    Ok(series)
}

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"];

/// Scatter of the series over the unit circle. Even-indexed series are drawn
/// as dots, odd-indexed ones as crosses; every series is a single `<path>`.
pub fn render_svg(series: &[PointSeries]) -> String {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (-1.1f64, 1.1f64, -1.1f64, 1.1f64);
    for z in series.iter().flat_map(|s| &s.points).filter(|z| z.re.is_finite() && z.im.is_finite()) {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let cx = 0.5 * (lo_x + hi_x);
    let cy = 0.5 * (lo_y + hi_y);
    let px = |x: f64| SIZE / 2.0 + (x - cx) * scale;
    let py = |y: f64| SIZE / 2.0 - (y - cy) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        MARGIN / 2.0,
        py(0.0),
        SIZE - MARGIN / 2.0,
        py(0.0)
    );
    let _ = writeln!(
        s,
        r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        px(0.0),
        MARGIN / 2.0,
        px(0.0),
        SIZE - MARGIN / 2.0
    );
    let _ = writeln!(
        s,
        r##"<circle class="unit-circle" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#888888" stroke-dasharray="4 3"/>"##,
        px(0.0),
        py(0.0),
        scale
    );
    for (k, ser) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut d = String::new();
        for z in ser.points.iter().filter(|z| z.re.is_finite() && z.im.is_finite()) {
            let (x, y) = (px(z.re), py(z.im));
            if k % 2 == 0 {
                let _ = write!(d, "M{x:.2} {y:.2}h0");
            } else {
                let _ = write!(d, "M{:.2} {:.2}l5 5M{:.2} {:.2}l5 -5", x - 2.5, y - 2.5, x - 2.5, y + 2.5);
            }
        }
        let (width, cap) = if k % 2 == 0 { (3.0, "round") } else { (1.2, "butt") };
        let _ = writeln!(
            s,
            r#"<path class="series series-{}" d="{d}" fill="none" stroke="{color}" stroke-width="{width}" stroke-linecap="{cap}"/>"#,
            ser.kind
        );
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="13" fill="{color}">{} ({})</text>"#,
            MARGIN / 2.0 + 16.0 * (k as f64 + 1.0),
            ser.kind,
            ser.points.len()
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn emit_svg(series: &[PointSeries], path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(series)).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
