use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Tolerance};

/// A strictly convex polygon with counterclockwise vertices, stored in
/// canonical order (starting at the lexicographically smallest vertex).
///
/// Serializes as `{"vertices": [[x, y], ...]}`; deserializing
/// canonicalizes with the default tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<Point2>,
}

impl TryFrom<RawPolygon> for ConvexPolygon {
    type Error = Error;

    fn try_from(raw: RawPolygon) -> Result<Self> {
        ConvexPolygon::canonicalize(&raw.vertices, Tolerance::default())
    }
}

fn lex_less(a: Point2, b: Point2) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

fn bbox_scale(pts: &[Point2]) -> f64 {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    (x1 - x0).max(y1 - y0)
}

impl ConvexPolygon {
    /// Convex hull of `raw`, with duplicate and collinear vertices removed.
    ///
    /// A vertex is dropped when its turn cross product is at most
    /// `tol.abs * scale^2`, `scale` being the larger bounding-box side.
    ///
    /// ```
    /// use honeylab::geom::{ConvexPolygon, Point2, Tolerance};
    /// let raw = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0)].map(Point2::from);
    /// let t = ConvexPolygon::canonicalize(&raw, Tolerance::default()).unwrap();
    /// assert_eq!(t.len(), 3);
    /// assert_eq!(t.area(), 1.0);
    /// ```
    pub fn canonicalize(raw: &[Point2], tol: Tolerance) -> Result<Self> {
        if raw.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput("non-finite coordinate".into()));
        }
        if raw.len() < 3 {
            return Err(Error::DegenerateInput(format!("{} points", raw.len())));
        }
        let scale = bbox_scale(raw);
        if !(scale > 0.0) {
            return Err(Error::DegenerateInput("all points coincide".into()));
        }
        let thr = tol.abs * scale * scale;
        let mut pts = raw.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();

        // Andrew's monotone chain; `<= thr` drops collinear points.
        let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= thr {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        Self::tidy(hull, thr, tol.abs * scale)
    }

    /// Removes cyclic near-duplicates and flat turns, then validates.
    fn tidy(mut v: Vec<Point2>, thr: f64, dup: f64) -> Result<Self> {
        loop {
            let n = v.len();
            if n < 3 {
                return Err(Error::DegenerateInput("hull is a segment or a point".into()));
            }
            let mut drop = None;
            for i in 0..n {
                let a = v[(i + n - 1) % n];
                let b = v[i];
                let c = v[(i + 1) % n];
                if b.dist(c) <= dup || (b - a).cross(c - b) <= thr {
                    drop = Some(i);
                    break;
                }
            }
            match drop {
                Some(i) => {
                    v.remove(i);
                }
                None => break,
            }
        }
        let mut p = ConvexPolygon { vertices: v };
        p.rotate_to_canonical_start();
        if !(p.area() > 0.0) {
            return Err(Error::DegenerateInput("zero area".into()));
        }
        Ok(p)
    }

    /// Trusted constructor for vertex lists already known to be strictly
    /// convex and counterclockwise; only the start vertex is normalized.
    pub(crate) fn from_ccw_trusted(vertices: Vec<Point2>) -> Self {
        let mut p = ConvexPolygon { vertices };
        p.rotate_to_canonical_start();
        p
    }

    fn rotate_to_canonical_start(&mut self) {
        let mut best = 0;
        for (i, &p) in self.vertices.iter().enumerate() {
            if lex_less(p, self.vertices[best]) {
                best = i;
            }
        }
        self.vertices.rotate_left(best);
    }

    /// Regular `m`-gon with the given circumradius, first vertex at angle `phase`.
    pub fn regular(m: usize, circumradius: f64, phase: f64) -> Result<Self> {
        if m < 3 || !(circumradius > 0.0) {
            return Err(Error::OutOfRange(format!("regular polygon m={m} r={circumradius}")));
        }
        let v = (0..m)
            .map(|i| Point2::polar(phase + TAU * i as f64 / m as f64) * circumradius)
            .collect();
        Ok(Self::from_ccw_trusted(v))
    }

    /// Regular `m`-gon circumscribed about the unit disk, one edge normal
    /// pointing along the positive x-axis.
    pub fn regular_about_unit_disk(m: usize) -> Result<Self> {
        let r = 1.0 / (PI / m as f64).cos();
        Self::regular(m, r, PI / m as f64)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex `i` with cyclic indexing.
    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge vector from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> Point2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// Outward unit normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Point2 {
        let e = self.edge(i);
        Point2::new(e.y, -e.x) / e.norm()
    }

    /// Outward normal angles of the edges, unrolled so that they increase
    /// strictly and span less than one full turn.
    pub fn edge_normal_angles(&self) -> Vec<f64> {
        let m = self.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let mut a = self.edge_normal(i).angle();
            if let Some(&prev) = out.last() {
                while a <= prev {
                    a += TAU;
                }
            }
            out.push(a);
        }
        out
    }

    pub fn area(&self) -> f64 {
        let o = self.vertices[0];
        let m = self.len();
        let mut s = 0.0;
        for i in 1..m - 1 {
            s += (self.vertices[i] - o).cross(self.vertices[i + 1] - o);
        }
        0.5 * s
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|i| self.edge(i).norm()).sum()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        let o = self.vertices[0];
        let m = self.len();
        let (mut a, mut c) = (0.0, Point2::ORIGIN);
        for i in 1..m - 1 {
            let p = self.vertices[i] - o;
            let q = self.vertices[i + 1] - o;
            let w = p.cross(q);
            a += w;
            c += (p + q) * w;
        }
        o + c / (3.0 * a)
    }

    /// Larger side of the bounding box; the length unit for tolerances.
    pub fn scale(&self) -> f64 {
        bbox_scale(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, &p) in self.vertices.iter().enumerate() {
            for &q in &self.vertices[i + 1..] {
                d = d.max(p.dist(q));
            }
        }
        d
    }

    /// `max <v, u>` over the vertices.
    ///
    /// ```
    /// use honeylab::geom::{ConvexPolygon, Point2};
    /// let sq = ConvexPolygon::regular_about_unit_disk(4).unwrap();
    /// assert!((sq.support_function(Point2::new(1.0, 1.0)).unwrap() - 2.0).abs() < 1e-12);
    /// ```
    pub fn support_function(&self, u: Point2) -> Result<f64> {
        if u.x == 0.0 && u.y == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_raw(u))
    }

    pub(crate) fn support_raw(&self, u: Point2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Containment with a length slack.
    pub fn contains_with(&self, p: Point2, slack: f64) -> bool {
        (0..self.len()).all(|i| {
            let e = self.edge(i);
            e.cross(p - self.vertex(i)) >= -slack * e.norm()
        })
    }

    pub fn contains(&self, p: Point2, tol: Tolerance) -> bool {
        self.contains_with(p, tol.rel * self.scale())
    }

    /// Polar body `{u : <u, v> <= 1 for all v}`.
    ///
    /// Each edge with outward normal `n` at distance `h` from the origin
    /// becomes the vertex `n / h`.
    pub fn polar_dual(&self, tol: Tolerance) -> Result<Self> {
        let slack = tol.abs * self.scale();
        let m = self.len();
        let mut out = Vec::with_capacity(m);
        for i in 0..m {
            let n = self.edge_normal(i);
            let h = n.dot(self.vertex(i));
            if !(h > slack) {
                return Err(Error::OriginNotInterior);
            }
            out.push(n / h);
        }
        Self::canonicalize(&out, tol)
    }

    pub fn rotate(&self, angle: f64) -> Self {
        Self::from_ccw_trusted(self.vertices.iter().map(|v| v.rotate(angle)).collect())
    }

    /// Homothety about the origin; `s` must be positive.
    pub fn scaled(&self, s: f64) -> Self {
        assert!(s > 0.0, "scale factor must be positive");
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn translated(&self, t: Point2) -> Self {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Point reflection through the origin.
    pub fn reflected(&self) -> Self {
        Self::from_ccw_trusted(self.vertices.iter().map(|&v| -v).collect())
    }

    /// Largest distance from the origin to a vertex.
    pub fn max_vertex_radius(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Smallest distance from the origin to the boundary, assuming the
    /// origin is inside; negative distances flag an exterior origin.
    pub fn min_edge_offset(&self) -> f64 {
        (0..self.len())
            .map(|i| self.edge_normal(i).dot(self.vertex(i)))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point2> {
        raw.iter().map(|&p| p.into()).collect()
    }

    fn square() -> ConvexPolygon {
        ConvexPolygon::regular_about_unit_disk(4).unwrap()
    }

    #[test]
    fn canonicalize_drops_collinear() {
        let t = ConvexPolygon::canonicalize(&pts(&[(0., 0.), (1., 0.), (2., 0.), (1., 1.)]), Tolerance::default())
            .unwrap();
        assert_eq!(t.vertices(), &pts(&[(0., 0.), (2., 0.), (1., 1.)])[..]);
    }

    #[test]
    fn canonicalize_fixes_orientation() {
        let cw = pts(&[(0., 0.), (0., 1.), (1., 1.), (1., 0.)]);
        let p = ConvexPolygon::canonicalize(&cw, Tolerance::default()).unwrap();
        assert_eq!(p.vertices(), &pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])[..]);
        assert_eq!(p.area(), 1.0);
    }

    #[test]
    fn canonicalize_rejects_segment() {
        let r = ConvexPolygon::canonicalize(&pts(&[(0., 0.), (1., 0.), (2., 0.)]), Tolerance::default());
        assert!(matches!(r, Err(Error::DegenerateInput(_))));
        let r = ConvexPolygon::canonicalize(&pts(&[(1., 1.), (1., 1.), (1., 1.)]), Tolerance::default());
        assert!(matches!(r, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn canonicalize_drops_interior_and_duplicates() {
        let raw = pts(&[(0., 0.), (2., 0.), (2., 2.), (0., 2.), (1., 1.), (2., 2.), (0.5, 1.5)]);
        let p = ConvexPolygon::canonicalize(&raw, Tolerance::default()).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.area(), 4.0);
    }

    #[test]
    fn areas() {
        let hex = ConvexPolygon::regular_about_unit_disk(6).unwrap();
        assert!((hex.area() - 6.0 * (PI / 6.0).tan()).abs() < 1e-12);
        let t = ConvexPolygon::canonicalize(&pts(&[(0., 0.), (2., 0.), (1., 1.)]), Tolerance::default()).unwrap();
        assert_eq!(t.area(), 1.0);
    }

    #[test]
    fn square_vertices_are_unit_corners() {
        let s = square();
        assert_eq!(s.len(), 4);
        for v in s.vertices() {
            assert!((v.x.abs() - 1.0).abs() < 1e-12 && (v.y.abs() - 1.0).abs() < 1e-12);
        }
        assert!(s.vertices()[0].x < 0.0 && s.vertices()[0].y < 0.0);
    }

    #[test]
    fn polar_of_square_is_diamond() {
        let d = square().polar_dual(Tolerance::default()).unwrap();
        assert_eq!(d.len(), 4);
        let mut got: Vec<(i64, i64)> = d
            .vertices()
            .iter()
            .map(|v| ((v.x * 1e9).round() as i64, (v.y * 1e9).round() as i64))
            .collect();
        got.sort();
        let g = 1_000_000_000;
        assert_eq!(got, vec![(-g, 0), (0, -g), (0, g), (g, 0)]);
    }

    #[test]
    fn polar_requires_interior_origin() {
        let p = square().translated(Point2::new(1.0, 0.0));
        assert_eq!(p.polar_dual(Tolerance::default()), Err(Error::OriginNotInterior));
    }

    #[test]
    fn support_examples() {
        let s = square();
        assert!((s.support_function(Point2::new(1.0, 0.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((s.support_function(Point2::new(1.0, 1.0)).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(s.support_function(Point2::ORIGIN), Err(Error::ZeroDirection));
    }

    #[test]
    fn rotations() {
        let d = square().polar_dual(Tolerance::default()).unwrap();
        let r = d.rotate(PI / 2.0);
        for (a, b) in r.vertices().iter().zip(d.vertices()) {
            assert!(a.dist(*b) < 1e-12);
        }
        let r = square().rotate(PI / 4.0);
        for v in r.vertices() {
            assert!((v.norm() - 2f64.sqrt()).abs() < 1e-12);
            assert!(v.x.abs() < 1e-12 || v.y.abs() < 1e-12);
        }
    }

    #[test]
    fn normal_angles_increase() {
        let p = ConvexPolygon::regular(7, 1.0, 0.3).unwrap();
        let a = p.edge_normal_angles();
        assert!(a.windows(2).all(|w| w[1] > w[0]));
        assert!(a[6] - a[0] < TAU);
    }

    #[test]
    fn centroid_of_triangle() {
        let t = ConvexPolygon::canonicalize(&pts(&[(0., 0.), (3., 0.), (0., 3.)]), Tolerance::default()).unwrap();
        let c = t.centroid();
        assert!((c.x - 1.0).abs() < 1e-12 && (c.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_disk_is_nearly_self_polar() {
        let d = ConvexPolygon::regular(4096, 1.0, 0.0).unwrap();
        let dual = d.polar_dual(Tolerance::default()).unwrap();
        assert_eq!(dual.len(), 4096);
        // brute-force support comparison on a direction grid
        let mut gap: f64 = 0.0;
        for k in 0..2000 {
            let u = Point2::polar(TAU * k as f64 / 2000.0 + 0.123);
            gap = gap.max((d.support_raw(u) - dual.support_raw(u)).abs());
        }
        assert!(gap < 1e-5, "{gap}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        // random polygons containing a disk of radius 0.2 about the origin
        fn around_origin() -> impl Strategy<Value = ConvexPolygon> {
            prop::collection::vec((0.0f64..TAU, 0.3f64..2.0), 3..16).prop_filter_map("degenerate", |raw| {
                let pts: Vec<Point2> = raw.into_iter().map(|(a, r)| Point2::polar(a) * r).collect();
                ConvexPolygon::canonicalize(&pts, Tolerance::default())
                    .ok()
                    .filter(|p| p.min_edge_offset() > 0.2)
            })
        }

        proptest! {
            #[test]
            fn double_polar_is_identity(p in around_origin()) {
                let tol = Tolerance::default();
                let pp = p.polar_dual(tol).unwrap().polar_dual(tol).unwrap();
                let d = crate::geom::hausdorff_distance(&p, &pp);
                prop_assert!(d <= 10.0 * tol.rel * p.diameter(), "{}", d);
                prop_assert_eq!(pp.len(), p.len());
            }

            #[test]
            fn polar_reverses_inclusion(p in around_origin(), s in 1.0f64..1.5, t in 0.0f64..6.3) {
                let tol = Tolerance::default();
                // L = hull(K, s * rotated K) contains K
                let mut pts = p.vertices().to_vec();
                pts.extend(p.rotate(t).vertices().iter().map(|&v| v * s));
                let l = ConvexPolygon::canonicalize(&pts, tol).unwrap();
                let kd = p.polar_dual(tol).unwrap();
                let ld = l.polar_dual(tol).unwrap();
                for &v in ld.vertices() {
                    prop_assert!(kd.contains(v, tol));
                }
            }

            #[test]
            fn canonicalize_idempotent(p in around_origin()) {
                let again = ConvexPolygon::canonicalize(p.vertices(), Tolerance::default()).unwrap();
                prop_assert_eq!(again, p);
            }
        }
    }
}
