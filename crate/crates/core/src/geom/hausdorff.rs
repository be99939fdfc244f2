use std::f64::consts::TAU;

use crate::geom::{ConvexPolygon, Point2};

/// Edge normal angles folded into `[0, 2pi)`, sorted, with edge indices.
fn folded_normals(p: &ConvexPolygon) -> Vec<(f64, usize)> {
    let mut v: Vec<(f64, usize)> = (0..p.len())
        .map(|i| (p.edge_normal(i).angle().rem_euclid(TAU), i))
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v
}

/// Support vertex for direction angle `psi`: the start vertex of the first
/// edge whose normal angle is `>= psi`.
fn support_index(normals: &[(f64, usize)], psi: f64) -> usize {
    let k = normals.partition_point(|&(a, _)| a < psi);
    normals[k % normals.len()].1
}

/// `psi` lies on the arc from `lo` to `hi` (with `hi - lo < 2pi`).
fn on_arc(psi: f64, lo: f64, hi: f64) -> bool {
    let d = (psi - lo).rem_euclid(TAU);
    d <= hi - lo
}

/// Euclidean Hausdorff distance between two convex polygons.
///
/// Uses `d_H = sup_u |h_P(u) - h_Q(u)|` over unit `u`. Between consecutive
/// edge normals of either polygon both support vertices are fixed, so the
/// gap is `<p - q, u>` and its maximum on the arc is found in closed form.
///
/// ```
/// use honeylab::geom::{hausdorff_distance, ConvexPolygon};
/// let a = ConvexPolygon::regular(64, 1.0, 0.0).unwrap();
/// let b = a.scaled(1.25);
/// assert!((hausdorff_distance(&a, &b) - 0.25).abs() < 1e-12);
/// ```
pub fn hausdorff_distance(p: &ConvexPolygon, q: &ConvexPolygon) -> f64 {
    let np = folded_normals(p);
    let nq = folded_normals(q);
    let mut breaks: Vec<f64> = np.iter().chain(nq.iter()).map(|&(a, _)| a).collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut best: f64 = 0.0;
    let k = breaks.len();
    for j in 0..k {
        let lo = breaks[j];
        let hi = if j + 1 < k { breaks[j + 1] } else { breaks[0] + TAU };
        let mid = (0.5 * (lo + hi)).rem_euclid(TAU);
        let d: Point2 = p.vertex(support_index(&np, mid)) - q.vertex(support_index(&nq, mid));
        for psi in [lo, hi] {
            best = best.max(d.dot(Point2::polar(psi)).abs());
        }
        let len = d.norm();
        if len > 0.0 {
            let a = d.angle();
            if on_arc(a, lo, hi) || on_arc(a + std::f64::consts::PI, lo, hi) {
                best = best.max(len);
            }
        }
    }
    best
}
