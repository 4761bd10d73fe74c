//! SVG 1.1 figures of lemniscates. Geometry is written in mathematical
//! coordinates inside one group whose transform flips the y axis, so the
//! polyline points are the same numbers that appear in the JSON report.

use std::fmt::Write;

use num_complex::Complex64;

use crate::bound::BoundSample;
use crate::geom::BoundingBox;
use crate::level::LevelCurve;
use crate::poly::{CriticalPoint, RootSet};

const WIDTH: f64 = 800.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

/// What goes into one figure.
#[derive(Clone, Copy, Debug, Default)]
pub struct Figure<'a> {
    pub roots: Option<&'a RootSet>,
    pub criticals: &'a [CriticalPoint],
    pub curves: &'a [LevelCurve],
    /// Bound samples colored by `value / n`.
    pub heat: &'a [BoundSample],
    pub n: usize,
}

/// Bounding box of zeros and curve points, grown by half its extent on each side.
pub fn frame(fig: &Figure<'_>) -> BoundingBox {
    let pts = fig
        .roots
        .into_iter()
        .flat_map(|r| r.locations())
        .chain(fig.curves.iter().flat_map(|c| c.points.iter().copied()))
        .chain(fig.criticals.iter().filter(|c| c.is_proper()).map(|c| c.location));
    BoundingBox::of(pts)
        .unwrap_or(BoundingBox {
            min: Complex64::new(-1.0, -1.0),
            max: Complex64::new(1.0, 1.0),
        })
        .with_margin(0.5, 0.5)
}

fn heat_color(ratio: f64) -> String {
    let t = ratio.clamp(0.0, 1.0);
    let r = (255.0 * t).round() as u8;
    let b = (255.0 * (1.0 - t)).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

pub fn render(fig: &Figure<'_>) -> String {
    let bb = frame(fig);
    let scale = WIDTH / bb.width().max(bb.height());
    let (w, h) = (bb.width() * scale, bb.height() * scale);
    let unit = 1.0 / scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w:.2}" height="{h:.2}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g id="plot" transform="matrix({scale} 0 0 {} {} {})">"#,
        -scale,
        -bb.min.re * scale,
        bb.max.im * scale
    );

    let _ = writeln!(s, r#"<g id="curves" fill="none" stroke-width="1.5">"#);
    for (k, c) in fig.curves.iter().enumerate() {
        let _ = write!(
            s,
            r#"<polyline class="level-curve" data-level="{}" data-argument-increment="{}" stroke="{}" vector-effect="non-scaling-stroke" points=""#,
            c.level,
            c.argument_increment,
            PALETTE[k % PALETTE.len()]
        );
        for (i, z) in c.points.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{},{}", z.re, z.im);
        }
        s.push_str("\"/>\n");
    }
    s.push_str("</g>\n");

    if !fig.heat.is_empty() {
        let _ = writeln!(s, r#"<g id="heat">"#);
        for b in fig.heat {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{}" data-value="{}"/>"#,
                b.z.re,
                b.z.im,
                1.5 * unit,
                heat_color(b.value / fig.n.max(1) as f64),
                b.value
            );
        }
        s.push_str("</g>\n");
    }

    if let Some(roots) = fig.roots {
        let _ = writeln!(s, r#"<g id="zeros" fill="black">"#);
        for r in &roots.roots {
            let _ = writeln!(
                s,
                r#"<circle class="zero" cx="{}" cy="{}" r="{}" data-multiplicity="{}"/>"#,
                r.location.re,
                r.location.im,
                4.0 * unit,
                r.multiplicity
            );
        }
        s.push_str("</g>\n");
    }

    let _ = writeln!(s, r#"<g id="critical-points" stroke="crimson" stroke-width="2">"#);
    for c in fig.criticals.iter().filter(|c| c.is_proper()) {
        let (x, y, d) = (c.location.re, c.location.im, 5.0 * unit);
        let _ = writeln!(
            s,
            r#"<path class="critical" d="M {} {} L {} {} M {} {} L {} {}" vector-effect="non-scaling-stroke"/>"#,
            x - d,
            y - d,
            x + d,
            y + d,
            x - d,
            y + d,
            x + d,
            y - d
        );
    }
    s.push_str("</g>\n</g>\n</svg>\n");
    s
}
