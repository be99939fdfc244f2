//! Unit disks of polygonal normed planes: gauge evaluation, M-perimeter and
//! the isoperimetrix.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point2, Tolerance};

/// Default vertex count for polygonal stand-ins of smooth disks.
pub const SMOOTH_DISK_VERTICES: usize = 4096;

/// An origin-symmetric convex polygon used as the unit disk of a norm.
#[derive(Debug, Clone, PartialEq)]
pub struct NormDisk {
    disk: ConvexPolygon,
    // unrolled polar angles of the vertices, starting at vertex 0
    vertex_angles: Vec<f64>,
    // outward unit normal over offset, per edge: gauge = <row, p>
    dual: Vec<Point2>,
}

impl NormDisk {
    /// Wraps `disk`, averaging antipodal vertex pairs.
    ///
    /// Inputs whose antipodal mismatch exceeds `sqrt(tol.rel) * scale` are
    /// rejected, which tolerates decimal round-off in stored files.
    pub fn new(disk: ConvexPolygon, tol: Tolerance) -> Result<Self> {
        let m = disk.len();
        let scale = disk.scale();
        if disk.min_edge_offset() <= tol.abs * scale {
            return Err(Error::OriginNotInterior);
        }
        let limit = tol.rel.sqrt() * scale;
        if m % 2 == 1 {
            return Err(Error::NotSymmetric {
                asymmetry: f64::INFINITY,
                limit,
            });
        }
        let h = m / 2;
        let v = disk.vertices();
        let asymmetry = (0..h).map(|i| (v[i] + v[i + h]).norm()).fold(0.0, f64::max);
        if asymmetry > limit {
            return Err(Error::NotSymmetric { asymmetry, limit });
        }
        let mut w = vec![Point2::ORIGIN; m];
        for i in 0..h {
            let a = (v[i] - v[i + h]) * 0.5;
            w[i] = a;
            w[i + h] = -a;
        }
        Ok(Self::from_symmetric(ConvexPolygon::from_ccw_trusted(w)))
    }

    fn from_symmetric(disk: ConvexPolygon) -> Self {
        let m = disk.len();
        let mut vertex_angles = Vec::with_capacity(m);
        for &v in disk.vertices() {
            let mut a = v.angle();
            if let Some(&prev) = vertex_angles.last() {
                while a <= prev {
                    a += TAU;
                }
            }
            vertex_angles.push(a);
        }
        let dual = (0..m)
            .map(|i| {
                let n = disk.edge_normal(i);
                n / n.dot(disk.vertex(i))
            })
            .collect();
        NormDisk {
            disk,
            vertex_angles,
            dual,
        }
    }

    /// Regular `m`-gon (even `m`) inscribed in the unit circle; with the
    /// default vertex count this is the Euclidean stand-in.
    pub fn euclidean(m: usize) -> Result<Self> {
        if m < 4 || m % 2 == 1 {
            return Err(Error::OutOfRange(format!("euclidean approximation needs even m >= 4, got {m}")));
        }
        Self::new(ConvexPolygon::regular(m, 1.0, 0.0)?, Tolerance::default())
    }

    /// Inscribed `m`-gon approximation of the ellipse with semi-axes `a`, `b`.
    pub fn ellipse(a: f64, b: f64, m: usize) -> Result<Self> {
        if m < 4 || m % 2 == 1 || !(a > 0.0 && b > 0.0) {
            return Err(Error::OutOfRange(format!("ellipse a={a} b={b} m={m}")));
        }
        let pts: Vec<Point2> = (0..m)
            .map(|i| {
                let t = TAU * i as f64 / m as f64;
                Point2::new(a * t.cos(), b * t.sin())
            })
            .collect();
        Self::new(ConvexPolygon::from_ccw_trusted(pts), Tolerance::default())
    }

    /// Regular `2k`-gon circumscribed about the unit disk.
    pub fn regular(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("regular 2k-gon needs k >= 2, got {k}")));
        }
        Self::new(ConvexPolygon::regular_about_unit_disk(2 * k)?, Tolerance::default())
    }

    pub fn disk(&self) -> &ConvexPolygon {
        &self.disk
    }

    pub fn into_polygon(self) -> ConvexPolygon {
        self.disk
    }

    /// Positive scaling of the unit disk.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_symmetric(self.disk.scaled(s))
    }

    /// Minkowski functional of the disk.
    ///
    /// The ray direction is located among the vertex angles by binary
    /// search, so evaluation is logarithmic in the vertex count.
    ///
    /// ```
    /// use honeylab::geom::{ConvexPolygon, Point2, Tolerance};
    /// use honeylab::norms::NormDisk;
    /// let linf = NormDisk::new(ConvexPolygon::regular_about_unit_disk(4).unwrap(), Tolerance::default()).unwrap();
    /// assert!((linf.gauge(Point2::new(3.0, 2.0)) - 3.0).abs() < 1e-12);
    /// ```
    pub fn gauge(&self, p: Point2) -> f64 {
        if p.x == 0.0 && p.y == 0.0 {
            return 0.0;
        }
        let m = self.dual.len();
        let a0 = self.vertex_angles[0];
        let psi = a0 + (p.angle() - a0).rem_euclid(TAU);
        // edge i spans the wedge between vertex angles i and i + 1
        let k = self.vertex_angles.partition_point(|&a| a <= psi);
        let i = (k + m - 1) % m;
        let g = |j: usize| self.dual[j % m].dot(p);
        g(i).max(g(i + 1)).max(g(i + m - 1))
    }

    /// M-perimeter of a convex polygon: the sum of the gauges of its edges.
    pub fn m_perimeter(&self, k: &ConvexPolygon) -> f64 {
        (0..k.len()).map(|i| self.gauge(k.edge(i))).sum()
    }

    /// Euclidean polar of the disk, rotated by a quarter turn.
    pub fn isoperimetrix(&self, tol: Tolerance) -> Result<NormDisk> {
        let polar = self.disk.polar_dual(tol)?;
        NormDisk::new(polar.rotate(FRAC_PI_2), tol)
    }
}

/// Free-function form of [`NormDisk::gauge`].
pub fn gauge_norm(m: &NormDisk, p: Point2) -> f64 {
    m.gauge(p)
}

/// Free-function form of [`NormDisk::m_perimeter`].
pub fn m_perimeter(m: &NormDisk, k: &ConvexPolygon) -> f64 {
    m.m_perimeter(k)
}

/// Free-function form of [`NormDisk::isoperimetrix`].
pub fn isoperimetrix(m: &NormDisk, tol: Tolerance) -> Result<NormDisk> {
    m.isoperimetrix(tol)
}
