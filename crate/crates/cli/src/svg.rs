//! Static SVG figures.

use std::time::{SystemTime, UNIX_EPOCH};

use honeylab::geom::ConvexPolygon;
use serde_json::Value;

use crate::output::VERSION;

pub enum Overlay {
    Circle(f64),
    Square(f64),
}

pub struct Layer<'a> {
    pub polygons: &'a [ConvexPolygon],
    pub stroke: &'a str,
    pub fill: &'a str,
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn path(p: &ConvexPolygon) -> String {
    let mut d = String::new();
    for (i, v) in p.vertices().iter().enumerate() {
        // y grows downward in SVG
        d.push_str(&format!("{}{},{} ", if i == 0 { "M" } else { "L" }, f(v.x), f(-v.y)));
    }
    d.push('Z');
    d
}

/// Renders the layers in a square view fitted to their extent and the
/// overlay.
pub fn render(layers: &[Layer], overlay: Option<Overlay>, config: &Value, reproducible: bool) -> String {
    let mut ext = 0.0f64;
    for l in layers {
        for p in l.polygons {
            for v in p.vertices() {
                ext = ext.max(v.x.abs()).max(v.y.abs());
            }
        }
    }
    if let Some(Overlay::Circle(r) | Overlay::Square(r)) = overlay {
        ext = ext.max(r);
    }
    let ext = if ext > 0.0 { ext * 1.05 } else { 1.0 };
    let width = ext / 400.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"800\">\n",
        f(-ext),
        f(-ext),
        f(2.0 * ext),
        f(2.0 * ext)
    ));
    let cfg = serde_json::to_string(config).expect("config").replace("--", "- -");
    out.push_str(&format!("<!-- honeylab {VERSION} config: {cfg} -->\n"));
    if !reproducible {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        out.push_str(&format!("<metadata>generated {secs}</metadata>\n"));
    }
    for l in layers {
        out.push_str(&format!(
            "<g fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\">\n",
            l.fill,
            l.stroke,
            f(width)
        ));
        for p in l.polygons {
            out.push_str(&format!("<path d=\"{}\"/>\n", path(p)));
        }
        out.push_str("</g>\n");
    }
    match overlay {
        Some(Overlay::Circle(r)) => out.push_str(&format!(
            "<circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"{}\"/>\n",
            f(r),
            f(2.0 * width)
        )),
        Some(Overlay::Square(r)) => out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"{}\"/>\n",
            f(-r),
            f(-r),
            f(2.0 * r),
            f(2.0 * r),
            f(2.0 * width)
        )),
        None => {}
    }
    out.push_str("</svg>\n");
    out
}

