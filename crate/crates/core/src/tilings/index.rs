//! Uniform grid over cell bounding boxes.

use std::collections::HashMap;

use crate::geom::{ConvexPolygon, Point2};

pub(crate) struct CellIndex {
    size: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    boxes: Vec<(Point2, Point2)>,
}

fn bbox(p: &ConvexPolygon) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in p.vertices() {
        lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    (lo, hi)
}

impl CellIndex {
    pub fn new(cells: &[ConvexPolygon]) -> Self {
        let boxes: Vec<_> = cells.iter().map(bbox).collect();
        let size = boxes
            .iter()
            .map(|(lo, hi)| (hi.x - lo.x).max(hi.y - lo.y))
            .fold(0.0, f64::max)
            .max(1e-9);
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, (lo, hi)) in boxes.iter().enumerate() {
            let (a, b) = (Self::key(size, *lo), Self::key(size, *hi));
            for x in a.0..=b.0 {
                for y in a.1..=b.1 {
                    buckets.entry((x, y)).or_default().push(i);
                }
            }
        }
        CellIndex { size, buckets, boxes }
    }

    fn key(size: f64, p: Point2) -> (i64, i64) {
        ((p.x / size).floor() as i64, (p.y / size).floor() as i64)
    }

    /// Cells whose bounding box meets the box `[lo, hi]` grown by `pad`,
    /// in increasing index order.
    pub fn query(&self, lo: Point2, hi: Point2, pad: f64) -> Vec<usize> {
        let lo = Point2::new(lo.x - pad, lo.y - pad);
        let hi = Point2::new(hi.x + pad, hi.y + pad);
        let (a, b) = (Self::key(self.size, lo), Self::key(self.size, hi));
        let mut out = Vec::new();
        for x in a.0..=b.0 {
            for y in a.1..=b.1 {
                if let Some(v) = self.buckets.get(&(x, y)) {
                    for &i in v {
                        let (l, h) = self.boxes[i];
                        if l.x <= hi.x && h.x >= lo.x && l.y <= hi.y && h.y >= lo.y {
                            out.push(i);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn near_cell(&self, i: usize, pad: f64) -> Vec<usize> {
        let (lo, hi) = self.boxes[i];
        self.query(lo, hi, pad)
    }

    pub fn near_point(&self, p: Point2, pad: f64) -> Vec<usize> {
        self.query(p, p, pad)
    }
}

/// Largest gap along an edge normal of either polygon between the two
/// projections; non-positive iff the polygons meet.
pub(crate) fn separation(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for (p, q) in [(a, b), (b, a)] {
        for i in 0..p.len() {
            let u = p.edge_normal(i);
            let hp = u.dot(p.vertex(i));
            let lq = q.vertices().iter().map(|v| u.dot(*v)).fold(f64::INFINITY, f64::min);
            best = best.max(lq - hp);
        }
    }
    best
}
