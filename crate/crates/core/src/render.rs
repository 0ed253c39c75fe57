//! SVG preview of a layout. Yarn edges are dark gray, loop edges blue; a
//! node pair joined by both draws once, in the yarn style.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, KnitGraph};
use crate::layout::Layout;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Node radius in stitch units.
    pub node_radius: f64,
    pub node_color: String,
    pub yarn_color: String,
    pub yarn_width: f64,
    pub loop_color: String,
    pub loop_width: f64,
    /// Margin around the drawing in stitch units.
    pub padding: f64,
    /// `None` leaves the canvas transparent.
    pub background: Option<String>,
    /// Size of the SVG viewport per stitch unit.
    pub pixels_per_unit: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            node_radius: 0.12,
            node_color: "#202020".into(),
            yarn_color: "#505050".into(),
            yarn_width: 0.06,
            loop_color: "#2a6fdb".into(),
            loop_width: 0.06,
            padding: 0.5,
            background: Some("#ffffff".into()),
            pixels_per_unit: 40.0,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("node radius", self.node_radius),
            ("yarn width", self.yarn_width),
            ("loop width", self.loop_width),
            ("pixels per unit", self.pixels_per_unit),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive")));
            }
        }
        if !(self.padding.is_finite() && self.padding >= 0.0) {
            return Err(Error::InvalidParameter(
                "padding must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Shortest decimal form with at most four fractional digits.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_svg(layout: &Layout, g: &KnitGraph, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    let pos = layout.resolve(g)?;
    // SVG y grows downwards; flip so later rows sit higher
    let pts: Vec<(f64, f64)> = pos.iter().map(|p| (p.x, -p.y)).collect();

    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let pad = style.padding + style.node_radius;
    let (vx, vy) = (x0 - pad, y0 - pad);
    let (vw, vh) = (
        (x1 - x0 + 2.0 * pad).max(1e-6),
        (y1 - y0 + 2.0 * pad).max(1e-6),
    );

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(vw * style.pixels_per_unit),
        num(vh * style.pixels_per_unit),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    if g.node_count() == 0 {
        out.push_str("</svg>\n");
        return Ok(out);
    }
    if let Some(bg) = &style.background {
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
            num(vx),
            num(vy),
            num(vw),
            num(vh),
            escape(bg)
        );
    }

    let yarn_pairs: HashSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Yarn)
        .map(|e| {
            let (a, b) = (e.u.min(e.v) as usize - 1, e.u.max(e.v) as usize - 1);
            (a, b)
        })
        .collect();
    out.push_str("<g stroke-linecap=\"round\">\n");
    for s in g.segments() {
        let yarn = yarn_pairs.contains(&(s.a, s.b));
        let (class, color, width) = if yarn {
            ("yarn", &style.yarn_color, style.yarn_width)
        } else {
            ("loop", &style.loop_color, style.loop_width)
        };
        let (p, q) = (pts[s.a], pts[s.b]);
        let _ = writeln!(
            out,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
            num(p.0),
            num(p.1),
            num(q.0),
            num(q.1),
            escape(color),
            num(width)
        );
    }
    out.push_str("</g>\n<g>\n");
    for (i, n) in g.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "<circle id=\"n{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"><title>{} {}</title></circle>",
            n.id,
            num(pts[i].0),
            num(pts[i].1),
            num(style.node_radius),
            escape(&style.node_color),
            n.id,
            escape(&n.stitch)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
