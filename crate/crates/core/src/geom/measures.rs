use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::lp::{maximize, LpOutcome};
use crate::geom::{ConvexPolygon, Point2};

/// Radius of the largest inscribed disk.
///
/// Solved as the linear program `max r` subject to `<n_i, c> + r <= h_i`,
/// in coordinates centred at the centroid and scaled to unit size so that
/// the slack basis is feasible and well-conditioned.
pub fn inradius(p: &ConvexPolygon) -> f64 {
    inball(p).1
}

/// Centre and radius of a largest inscribed disk.
pub fn inball(p: &ConvexPolygon) -> (Point2, f64) {
    let c0 = p.centroid();
    let s = p.scale();
    let m = p.len();
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for i in 0..m {
        let n = p.edge_normal(i);
        let h = n.dot((p.vertex(i) - c0) / s);
        a.push(vec![n.x, -n.x, n.y, -n.y, 1.0]);
        b.push(h.max(0.0));
    }
    match maximize(&a, &b, &[0.0, 0.0, 0.0, 0.0, 1.0]) {
        LpOutcome::Optimal { value, x } => {
            let c = c0 + Point2::new(x[0] - x[1], x[2] - x[3]) * s;
            (c, value * s)
        }
        LpOutcome::Unbounded => unreachable!("inradius of a bounded polygon"),
    }
}

/// Radius of the smallest enclosing disk.
pub fn circumradius(p: &ConvexPolygon) -> f64 {
    enclosing_circle(p.vertices()).1
}

fn circle2(a: Point2, b: Point2) -> (Point2, f64) {
    ((a + b) * 0.5, 0.5 * a.dist(b))
}

fn circle3(a: Point2, b: Point2, c: Point2) -> (Point2, f64) {
    let (bx, by) = (b.x - a.x, b.y - a.y);
    let (cx, cy) = (c.x - a.x, c.y - a.y);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-300 {
        // collinear: widest pair
        let cands = [circle2(a, b), circle2(a, c), circle2(b, c)];
        return cands.into_iter().max_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    (Point2::new(a.x + ux, a.y + uy), ux.hypot(uy))
}

/// Smallest enclosing circle by Welzl's incremental algorithm on a fixed
/// pseudo-random permutation.
pub fn enclosing_circle(points: &[Point2]) -> (Point2, f64) {
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1c1e);
    pts.shuffle(&mut rng);
    let inside = |c: &(Point2, f64), p: Point2| p.dist(c.0) <= c.1 * (1.0 + 1e-12) + 1e-300;

    let mut c = (pts[0], 0.0);
    for i in 1..pts.len() {
        if inside(&c, pts[i]) {
            continue;
        }
        c = (pts[i], 0.0);
        for j in 0..i {
            if inside(&c, pts[j]) {
                continue;
            }
            c = circle2(pts[i], pts[j]);
            for k in 0..j {
                if !inside(&c, pts[k]) {
                    c = circle3(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    c
}

/// Minimal width, attained in an edge-normal direction (rotating calipers).
pub fn min_width(p: &ConvexPolygon) -> f64 {
    let m = p.len();
    let height = |i: usize, j: usize| {
        let e = p.edge(i);
        e.cross(p.vertex(j) - p.vertex(i)) / e.norm()
    };
    let mut j = 1;
    let mut best = f64::INFINITY;
    for i in 0..m {
        if j <= i {
            j = i + 1;
        }
        while height(i, j + 1) >= height(i, j) && j < i + m {
            j += 1;
        }
        best = best.min(height(i, j));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Tolerance;
    use std::f64::consts::PI;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::canonicalize(
            &[(0., 0.), (1., 0.), (1., 1.), (0., 1.)].map(Point2::from),
            Tolerance::default(),
        )
        .unwrap()
    }

    // Oracle: every candidate disk is tangent to three edge lines (or two
    // parallel ones); keep the largest that is feasible.
    fn brute_inradius(p: &ConvexPolygon) -> f64 {
        let m = p.len();
        let lines: Vec<(Point2, f64)> = (0..m)
            .map(|i| {
                let n = p.edge_normal(i);
                (n, n.dot(p.vertex(i)))
            })
            .collect();
        let feasible = |c: Point2, r: f64| lines.iter().all(|&(n, h)| n.dot(c) + r <= h + 1e-9);
        let mut best: f64 = 0.0;
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    // solve <n, c> + r = h for the three lines
                    let (a, b, c) = (lines[i], lines[j], lines[k]);
                    let det = |u: [f64; 3], v: [f64; 3], w: [f64; 3]| {
                        u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
                            + u[2] * (v[0] * w[1] - v[1] * w[0])
                    };
                    let ra = [a.0.x, a.0.y, 1.0];
                    let rb = [b.0.x, b.0.y, 1.0];
                    let rc = [c.0.x, c.0.y, 1.0];
                    let d = det(ra, rb, rc);
                    if d.abs() < 1e-12 {
                        continue;
                    }
                    let hs = [a.1, b.1, c.1];
                    let col = |k: usize| {
                        let mut x = [ra, rb, rc];
                        for (row, h) in x.iter_mut().zip(hs) {
                            row[k] = h;
                        }
                        det(x[0], x[1], x[2]) / d
                    };
                    let (cx, cy, r) = (col(0), col(1), col(2));
                    if r > 0.0 && feasible(Point2::new(cx, cy), r) {
                        best = best.max(r);
                    }
                }
            }
        }
        best
    }

    fn brute_circumradius(pts: &[Point2]) -> f64 {
        let n = pts.len();
        let covers = |c: (Point2, f64)| pts.iter().all(|p| p.dist(c.0) <= c.1 + 1e-9);
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                let c = circle2(pts[i], pts[j]);
                if covers(c) {
                    best = best.min(c.1);
                }
                for k in j + 1..n {
                    let c = circle3(pts[i], pts[j], pts[k]);
                    if covers(c) {
                        best = best.min(c.1);
                    }
                }
            }
        }
        best
    }

    fn brute_width(p: &ConvexPolygon) -> f64 {
        (0..p.len())
            .map(|i| {
                let n = p.edge_normal(i);
                let h = n.dot(p.vertex(i));
                p.vertices().iter().map(|v| h - n.dot(*v)).fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn unit_square_measures() {
        let s = unit_square();
        assert!((inradius(&s) - 0.5).abs() < 1e-12);
        assert!((circumradius(&s) - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((min_width(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hexagon_measures() {
        let h = ConvexPolygon::regular_about_unit_disk(6).unwrap();
        assert!((inradius(&h) - 1.0).abs() < 1e-12);
        assert!((circumradius(&h) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((min_width(&h) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_inball_centre() {
        let t = ConvexPolygon::canonicalize(&[(0., 0.), (3., 0.), (0., 4.)].map(Point2::from), Tolerance::default())
            .unwrap();
        let (c, r) = inball(&t);
        assert!((r - 1.0).abs() < 1e-12);
        assert!(c.dist(Point2::new(1.0, 1.0)) < 1e-12);
        assert!((min_width(&t) - 2.4).abs() < 1e-12);
    }

    #[test]
    fn dense_polygon_is_fast_and_accurate() {
        let d = ConvexPolygon::regular(4096, 1.0, 0.0).unwrap();
        assert!((inradius(&d) - (PI / 4096.0).cos()).abs() < 1e-12);
        assert!((circumradius(&d) - 1.0).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn polygon() -> impl Strategy<Value = ConvexPolygon> {
            prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3..12).prop_filter_map("degenerate", |raw| {
                let pts: Vec<Point2> = raw.into_iter().map(Point2::from).collect();
                ConvexPolygon::canonicalize(&pts, Tolerance::default())
                    .ok()
                    .filter(|p| p.area() > 1e-2)
            })
        }

        proptest! {
            #[test]
            fn oracles_agree(p in polygon()) {
                let ir = inradius(&p);
                prop_assert!((ir - brute_inradius(&p)).abs() < 1e-9, "{} vs {}", ir, brute_inradius(&p));
                let cr = circumradius(&p);
                prop_assert!((cr - brute_circumradius(p.vertices())).abs() < 1e-9);
                prop_assert!((min_width(&p) - brute_width(&p)).abs() < 1e-12);
            }

            #[test]
            fn ordering_chain(p in polygon()) {
                let (ir, cr, w) = (inradius(&p), circumradius(&p), min_width(&p));
                prop_assert!(ir <= cr + 1e-12);
                prop_assert!(w <= 2.0 * cr + 1e-12);
                prop_assert!(ir >= w / 3.0 - 1e-12);
                prop_assert!(w <= 6.0 * ir + 1e-12);
            }

            #[test]
            fn rotation_invariant(p in polygon(), theta in 0.0f64..6.3) {
                let q = p.rotate(theta);
                let rel = |a: f64, b: f64| ((a - b) / a).abs();
                prop_assert!(rel(p.area(), q.area()) < 1e-10);
                prop_assert!(rel(inradius(&p), inradius(&q)) < 1e-10);
                prop_assert!(rel(circumradius(&p), circumradius(&q)) < 1e-10);
                prop_assert!(rel(min_width(&p), min_width(&q)) < 1e-10);
            }
        }
    }
}
