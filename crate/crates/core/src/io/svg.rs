use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::drawing::{EdgeClass, Q};
use crate::expanded::ExpandedDrawing;

/// Presentation settings. Loaded from JSON with `--style`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderStyle {
    pub width: f64,
    pub height: f64,
    pub stroke_width: f64,
    /// Pixel height given to each disk band above and below the lateral strip.
    pub band_height: f64,
    pub colors: BTreeMap<EdgeClass, String>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            width: 960.0,
            height: 640.0,
            stroke_width: 1.0,
            band_height: 180.0,
            colors: BTreeMap::from([
                (EdgeClass::EX, "#1f77b4".to_string()),
                (EdgeClass::EXY, "#2ca02c".to_string()),
                (EdgeClass::EY, "#d62728".to_string()),
                (EdgeClass::EZXY, "#9467bd".to_string()),
            ]),
        }
    }
}

const MARGIN: f64 = 24.0;

impl RenderStyle {
    pub fn validate(&self) -> Result<(), IoError> {
        let bad = |m: &str| Err(IoError::Style(m.to_string()));
        let finite = [self.width, self.height, self.stroke_width, self.band_height].iter().all(|v| v.is_finite());
        if !finite || self.width <= 2.0 * MARGIN || self.height <= 2.0 * MARGIN || self.stroke_width <= 0.0 {
            return bad("dimensions and stroke width must be positive");
        }
        if self.band_height <= 0.0 || 2.0 * self.band_height >= self.height - 2.0 * MARGIN {
            return bad("band height must leave room for the lateral strip");
        }
        let mut seen = BTreeSet::new();
        for c in EdgeClass::ALL {
            match self.colors.get(&c) {
                None => return Err(IoError::Style(format!("no color for {c}"))),
                Some(col) if !seen.insert(col.to_ascii_lowercase()) => {
                    return Err(IoError::Style(format!("color {col} used twice")))
                }
                Some(col) if col.contains(['"', '<', '>', '&']) => {
                    return Err(IoError::Style(format!("bad color {col:?}")))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

struct Frame {
    x0: f64,
    sx: f64,
    strip_top: f64,
    strip_bottom: f64,
    top_scale: f64,
    bottom_scale: f64,
}

impl Frame {
    fn px(&self, x: &Q) -> f64 {
        MARGIN + (f(x) - self.x0) * self.sx
    }

    /// Lateral strip in the middle; each disk band squeezed into its own height.
    fn py(&self, y: &Q) -> f64 {
        let y = f(y);
        if y > 1.0 {
            self.strip_top - (y - 1.0) * self.top_scale
        } else if y < 0.0 {
            self.strip_bottom - y * self.bottom_scale
        } else {
            self.strip_bottom - y * (self.strip_bottom - self.strip_top)
        }
    }
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Renders the chart: one `<polyline>` per polyline, one labelled dot per
/// vertex, and the crossing count in the top-left corner.
pub fn render_svg(e: &ExpandedDrawing, crossings: Option<u64>, style: &RenderStyle) -> Result<String, IoError> {
    style.validate()?;
    let all: Vec<(f64, f64)> = e
        .points
        .values()
        .chain(e.polylines.iter().flat_map(|l| l.points.iter()))
        .map(|p| (f(&p.x), f(&p.y)))
        .collect();
    let (mut x0, mut x1) = (0.0f64, 1.0f64);
    let (mut ytop, mut ybot) = (1.0f64, 0.0f64);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        ytop = ytop.max(y);
        ybot = ybot.min(y);
    }
    let strip_top = MARGIN + style.band_height;
    let strip_bottom = style.height - MARGIN - style.band_height;
    let frame = Frame {
        x0,
        sx: (style.width - 2.0 * MARGIN) / (x1 - x0),
        strip_top,
        strip_bottom,
        top_scale: style.band_height / if ytop > 1.0 { ytop - 1.0 } else { 1.0 },
        bottom_scale: style.band_height / if ybot < 0.0 { -ybot } else { 1.0 },
    };

    let mut s = String::new();
    let (w, h) = (style.width, style.height);
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.6}" height="{h:.6}" viewBox="0 0 {w:.6} {h:.6}">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{w:.6}" height="{h:.6}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r##"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="#f4f4f4" stroke="#bbbbbb"/>"##,
        MARGIN,
        strip_top,
        w - 2.0 * MARGIN,
        strip_bottom - strip_top
    )
    .unwrap();
    for l in &e.polylines {
        let pts: Vec<String> = l.points.iter().map(|p| format!("{:.6},{:.6}", frame.px(&p.x), frame.py(&p.y))).collect();
        writeln!(
            s,
            r#"<polyline class="edge {}" data-u="{}" data-v="{}" fill="none" stroke="{}" stroke-width="{:.6}" points="{}"/>"#,
            l.class,
            l.u,
            l.v,
            style.colors[&l.class],
            style.stroke_width,
            pts.join(" ")
        )
        .unwrap();
    }
    for (v, p) in &e.points {
        let (x, y) = (frame.px(&p.x), frame.py(&p.y));
        writeln!(s, r#"<circle class="vertex" cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"/>"#, 2.0 * style.stroke_width + 1.0).unwrap();
        writeln!(s, r#"<text class="label" x="{:.6}" y="{:.6}" font-size="10" font-family="sans-serif">{v}</text>"#, x + 4.0, y - 4.0).unwrap();
    }
    if let Some(c) = crossings {
        writeln!(s, r#"<text class="crossings" x="{:.6}" y="{:.6}" font-size="14" font-family="sans-serif">crossings: {c}</text>"#, MARGIN, MARGIN - 6.0).unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
