//! Static sweep plot: one panel per coupling, total momentum across and
//! eigenvalue phase upward, both on (−π, π].

use std::f64::consts::PI;
use std::fmt::Write;

use crate::commands::SweepRow;

const PANEL: f64 = 240.0;
const MARGIN: f64 = 36.0;
const COLUMNS: usize = 3;
const PP_COLOUR: &str = "#c0392b";
const PM_COLOUR: &str = "#d4a017";

fn x_of(p: f64, left: f64) -> f64 {
    left + (p + PI) / (2.0 * PI) * PANEL
}

fn y_of(phi: f64, top: f64) -> f64 {
    top + (PI - phi) / (2.0 * PI) * PANEL
}

/// Pieces of the counterclockwise arc from `start` to `end` as angle intervals.
fn pieces(start: f64, end: f64) -> Vec<(f64, f64)> {
    if end >= start {
        vec![(start, end)]
    } else {
        vec![(start, PI), (-PI, end)]
    }
}

fn segment(out: &mut String, x: f64, top: f64, lo: f64, hi: f64, width: f64, colour: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="{colour}" stroke-width="{width:.3}"/>"#,
        y_of(lo, top),
        y_of(hi, top)
    );
}

pub fn render(rows: &[SweepRow], chis: &[f64]) -> String {
    let panel_rows = chis.len().div_ceil(COLUMNS).max(1);
    let columns = chis.len().clamp(1, COLUMNS);
    let width = columns as f64 * (PANEL + MARGIN) + MARGIN;
    let height = panel_rows as f64 * (PANEL + 2.0 * MARGIN) + MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, &chi) in chis.iter().enumerate() {
        let left = MARGIN + (i % COLUMNS) as f64 * (PANEL + MARGIN);
        let top = 1.5 * MARGIN + (i / COLUMNS) as f64 * (PANEL + 2.0 * MARGIN);
        let _ = writeln!(
            out,
            r#"<rect x="{left:.3}" y="{top:.3}" width="{PANEL}" height="{PANEL}" fill="none" stroke="black" stroke-width="0.6"/>"#
        );
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">χ = {chi:.4}</text>"#, left + PANEL / 2.0, top - 6.0);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">p</text>"#, left + PANEL / 2.0, top + PANEL + 14.0);
        let panel: Vec<&SweepRow> = rows.iter().filter(|r| r.chi == chi).collect();
        let stroke = (PANEL / panel.len().max(1) as f64).max(0.5);
        for r in &panel {
            let x = x_of(r.p, left);
            for (start, end, colour) in [(r.pp_start, r.pp_end, PP_COLOUR), (r.pm_start, r.pm_end, PM_COLOUR)] {
                if let (Some(a), Some(b)) = (start, end) {
                    for (lo, hi) in pieces(a, b) {
                        segment(&mut out, x, top, lo, hi, stroke, colour);
                    }
                }
            }
        }
        for r in &panel {
            if let Some(phase) = r.eigenphase() {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="1.6" fill="black"/>"#,
                    x_of(r.p, left),
                    y_of(phase.angle(), top)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
