//! Single-file SVG heatmap of one sweep quantity.
//!
//! Color is linear in value: each RGB channel is interpolated linearly from
//! `LOW` at the column minimum to `HIGH` at the maximum. A constant column
//! renders entirely in `LOW`. Rows follow axis1 top to bottom, columns
//! axis2 left to right, in sweep order (not rescaled for log axes).

use anyhow::{anyhow, Result};
use std::fmt::Write;
use wavedof_core::numfmt::fmt_sig;

use crate::sweep::SweepTable;

pub const LOW: [u8; 3] = [68, 1, 84];
pub const HIGH: [u8; 3] = [253, 231, 37];

const CELL: usize = 16;
const MARGIN: usize = 60;

pub fn color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let ch = |i: usize| (LOW[i] as f64 + (HIGH[i] as f64 - LOW[i] as f64) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(1), ch(2))
}

pub fn heatmap(table: &SweepTable, quantity: &str) -> Result<String> {
    let col = table
        .column(quantity)
        .ok_or_else(|| anyhow!("quantity '{quantity}' not in sweep"))?;
    let (n1, n2) = table.shape();
    let values: Vec<f64> = table.rows.iter().map(|r| r[col].as_f64()).collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let (w, h) = (2 * MARGIN + n2 * CELL, 2 * MARGIN + n1 * CELL);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )?;
    writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="12">{quantity}: {} (low) .. {} (high), linear</text>"#,
        MARGIN / 2,
        fmt_sig(lo),
        fmt_sig(hi)
    )?;
    for (idx, v) in values.iter().enumerate() {
        let (r, c) = (idx / n2.max(1), idx % n2.max(1));
        let t = if span > 0.0 { (v - lo) / span } else { 0.0 };
        writeln!(
            s,
            r#"<rect x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
            MARGIN + c * CELL,
            MARGIN + r * CELL,
            color(t)
        )?;
    }
    let (a1, a2) = (&table.header[0], &table.header[1]);
    writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{a2} →</text>"#,
        w / 2,
        h - MARGIN / 3
    )?;
    writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 {} {})" text-anchor="middle">{a1} →</text>"#,
        MARGIN / 2,
        h / 2,
        MARGIN / 2,
        h / 2
    )?;
    s.push_str("</svg>\n");
    Ok(s)
}
