//! Triangles whose three side midpoints are vertices of the polygon.
//!
//! A triangle with side midpoints `p, q, r` has vertices `p + q - r`,
//! `q + r - p`, `r + p - q` and four times the area of `pqr`. The side
//! through `q` is parallel to `pr`, so `q` must be the extreme vertex in the
//! outward direction perpendicular to `pr`; for a fixed `p` that vertex
//! advances monotonically as `r` does.

use crate::geom::Point2;

pub(crate) struct MidpointTriangle {
    pub area: f64,
    pub vertices: [Point2; 3],
}

/// Outward normal for a side parallel to the chord `from -> to`.
#[inline]
fn right_normal(from: Point2, to: Point2) -> Point2 {
    let d = to - from;
    Point2::new(d.y, -d.x)
}

fn supports(v: &[Point2], i: usize, u: Point2, slack: f64) -> bool {
    let m = v.len();
    let h = u.dot(v[i % m]);
    let s = slack * u.norm();
    u.dot(v[(i + 1) % m]) <= h + s && u.dot(v[(i + m - 1) % m]) <= h + s
}

/// Smallest such triangle over all vertex triples, vertices in `v` being
/// counterclockwise and strictly convex.
pub(crate) fn best_midpoint_triangle(v: &[Point2], slack: f64) -> Option<MidpointTriangle> {
    let m = v.len();
    if m < 3 {
        return None;
    }
    let at = |i: usize| v[i % m];
    let mut best: Option<MidpointTriangle> = None;
    for i in 0..m {
        let p = at(i);
        let mut j = i + 1;
        for l in i + 2..i + m {
            let r = at(l);
            let u = right_normal(p, r);
            if j <= i {
                j = i + 1;
            }
            while j + 1 < l && u.dot(at(j + 1)) >= u.dot(at(j)) {
                j += 1;
            }
            let mut qs = [Some(j), None];
            if j > i + 1 && (u.dot(at(j - 1)) - u.dot(at(j))).abs() <= slack * u.norm() {
                qs[1] = Some(j - 1);
            }
            for jj in qs.into_iter().flatten() {
                let q = at(jj);
                if !supports(v, jj, u, slack)
                    || !supports(v, i, right_normal(r, q), slack)
                    || !supports(v, l, right_normal(q, p), slack)
                {
                    continue;
                }
                let area = 2.0 * (q - p).cross(r - p);
                if area > 0.0 && best.as_ref().map_or(true, |b| area < b.area) {
                    best = Some(MidpointTriangle {
                        area,
                        vertices: [r + p - q, p + q - r, q + r - p],
                    });
                }
            }
        }
    }
    best
}
