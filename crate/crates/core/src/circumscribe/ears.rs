//! Ear areas between support lines of a convex polygon.
//!
//! Indices are unrolled: vertex `i` and edge `i` mean `i mod m`, and normal
//! angles grow by a full turn per lap, so every pair of sides is addressed
//! by increasing indices.

use std::f64::consts::{PI, TAU};

use crate::geom::{ConvexPolygon, Point2};

/// Turning angles this close to a half turn count as parallel lines.
pub(crate) const ANGLE_EPS: f64 = 1e-9;

pub(crate) struct Ears {
    pub m: usize,
    pub origin: Point2,
    pub area: f64,
    v: Vec<Point2>,
    dir: Vec<Point2>,
    theta: Vec<f64>,
    pre: Vec<f64>,
    first: Vec<usize>,
    reach: Vec<usize>,
}

/// A support line through `p` with unit direction `d` (interior on the left)
/// touching the polygon from vertex `first` to vertex `last`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line {
    pub p: Point2,
    pub d: Point2,
    pub first: usize,
    pub last: usize,
}

impl Ears {
    pub fn new(k: &ConvexPolygon) -> Self {
        let m = k.len();
        let origin = k.centroid();
        let len = 3 * m + 2;
        let base: Vec<Point2> = k.vertices().iter().map(|&p| p - origin).collect();
        let v: Vec<Point2> = (0..len).map(|i| base[i % m]).collect();
        let dir: Vec<Point2> = (0..len)
            .map(|i| {
                let e = base[(i + 1) % m] - base[i % m];
                e / e.norm()
            })
            .collect();
        let lap = k.edge_normal_angles();
        let theta: Vec<f64> = (0..len).map(|i| lap[i % m] + TAU * (i / m) as f64).collect();
        let mut pre = vec![0.0; len + 1];
        for i in 0..len - 1 {
            pre[i + 1] = pre[i] + v[i].cross(v[i + 1]);
        }
        pre[len] = pre[len - 1];

        let lim = PI - ANGLE_EPS;
        let mut first = vec![0; len];
        let mut y = 0;
        for x in 0..len {
            while theta[x] - theta[y] >= lim {
                y += 1;
            }
            first[x] = y.min(x.saturating_sub(1));
        }
        let mut reach = vec![0; len];
        let mut x = 0;
        for y in 0..len {
            x = x.max(y + 1);
            while x + 1 < len && theta[x + 1] - theta[y] < lim {
                x += 1;
            }
            reach[y] = x.min(len - 1);
        }
        Ears {
            m,
            origin,
            area: k.area(),
            v,
            dir,
            theta,
            pre,
            first,
            reach,
        }
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.v[i]
    }

    #[inline]
    pub fn theta(&self, i: usize) -> f64 {
        self.theta[i]
    }

    /// Smallest `y < x` whose edge line meets edge line `x` ahead of `y`.
    #[inline]
    pub fn first(&self, x: usize) -> usize {
        self.first[x]
    }

    /// Largest `x > y` whose edge line meets edge line `y` ahead of `y`.
    #[inline]
    pub fn reach(&self, y: usize) -> usize {
        self.reach[y]
    }

    /// Area between the chord `v_a v_b` and the boundary chain `a..=b`.
    #[inline]
    pub fn cap(&self, a: usize, b: usize) -> f64 {
        0.5 * (self.pre[b] - self.pre[a] + self.v[b].cross(self.v[a]))
    }

    pub fn flush_line(&self, e: usize) -> Line {
        Line {
            p: self.v[e],
            d: self.dir[e],
            first: e,
            last: e + 1,
        }
    }

    /// Support line with outward normal angle `phi` through vertex `c`.
    pub fn slack_line(&self, c: usize, phi: f64) -> Line {
        Line {
            p: self.v[c],
            d: Point2::new(-phi.sin(), phi.cos()),
            first: c,
            last: c,
        }
    }

    /// Area enclosed by line `a`, line `b` (in counterclockwise order,
    /// turning by less than a half turn) and the polygon.
    #[inline]
    pub fn ear(&self, a: &Line, b: &Line) -> f64 {
        let (la, fb) = (a.last, b.first);
        if la >= fb {
            return 0.0;
        }
        let den = a.d.cross(b.d);
        let t = (b.p - a.p).cross(b.d) / den;
        let x = a.p + a.d * t;
        let pa = self.v[la];
        let tri = 0.5 * (x - pa).cross(self.v[fb] - pa);
        (tri - self.cap(la, fb)).max(0.0)
    }

    /// Intersection point of two support lines.
    pub fn meet(&self, a: &Line, b: &Line) -> Point2 {
        let den = a.d.cross(b.d);
        let t = (b.p - a.p).cross(b.d) / den;
        a.p + a.d * t
    }

    /// Ear cost between flush sides on edges `i < j`; infinite when the
    /// lines do not meet on the correct side.
    #[inline]
    pub fn w(&self, i: usize, j: usize) -> f64 {
        if j == i + 1 {
            return 0.0;
        }
        if self.theta[j] - self.theta[i] >= PI - ANGLE_EPS {
            return f64::INFINITY;
        }
        let (vi, vj) = (self.v[i + 1], self.v[j]);
        let (di, dj) = (self.dir[i], self.dir[j]);
        let t = (vj - vi).cross(dj) / di.cross(dj);
        let x = vi + di * t;
        let tri = 0.5 * (x - vi).cross(vj - vi);
        (tri - self.cap(i + 1, j)).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_ears() {
        let sq = ConvexPolygon::regular_about_unit_disk(4).unwrap();
        let e = Ears::new(&sq);
        assert_eq!(e.w(0, 1), 0.0);
        // skipping one side of the square: parallel lines
        assert!(e.w(0, 2).is_infinite());
        assert_eq!(e.first(2), 1);
        assert_eq!(e.reach(0), 1);
        assert!((e.cap(0, 2) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn hexagon_ear_is_a_triangle() {
        let h = ConvexPolygon::regular_about_unit_disk(6).unwrap();
        let e = Ears::new(&h);
        // dropping one side of the hexagon adds an equilateral triangle on it
        let side = 2.0 * (PI / 6.0).tan();
        let want = 3f64.sqrt() / 4.0 * side * side;
        for i in 0..6 {
            assert!((e.w(i, i + 2) - want).abs() < 1e-12);
        }
        // dropping two sides leaves parallel lines
        assert!(e.w(0, 3).is_infinite());
        assert!((e.w(1, 3) + e.w(4, 6) + h.area() - 8.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(e.w(0, 4).is_infinite());
    }

    #[test]
    fn general_ear_matches_flush() {
        let k = ConvexPolygon::regular(9, 1.3, 0.4).unwrap();
        let e = Ears::new(&k);
        for i in 0..9 {
            for j in i + 2..i + 5 {
                let a = e.flush_line(i);
                let b = e.flush_line(j);
                assert!((e.ear(&a, &b) - e.w(i, j)).abs() < 1e-13);
            }
        }
    }
}
