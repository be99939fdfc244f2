//! Lattice and Voronoi patch generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PatchMeta, TilingPatch};
use crate::geom::{circumradius, inradius, ConvexPolygon, Point2, Tolerance};
use crate::{Error, Result};

/// A convex cell with two lattice vectors. With `reflect = Some(t)` every
/// lattice point also carries the point reflection `-cell + t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CustomPrototype {
    pub cell: ConvexPolygon,
    pub v1: Point2,
    pub v2: Point2,
    pub reflect: Option<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Prototype {
    Square,
    Triangle,
    Hexagon,
    Custom(CustomPrototype),
}

impl Prototype {
    /// Unit-area version of the prototype.
    pub fn unit(&self) -> Result<CustomPrototype> {
        let three = 3f64.sqrt();
        let raw = match self {
            Prototype::Square => CustomPrototype {
                cell: ConvexPolygon::canonicalize(
                    &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(Point2::from),
                    Tolerance::default(),
                )?,
                v1: Point2::new(1.0, 0.0),
                v2: Point2::new(0.0, 1.0),
                reflect: None,
            },
            Prototype::Triangle => {
                let (s, h) = (1.0, three / 2.0);
                CustomPrototype {
                    cell: ConvexPolygon::canonicalize(
                        &[(0.0, 0.0), (s, 0.0), (s / 2.0, h)].map(Point2::from),
                        Tolerance::default(),
                    )?,
                    v1: Point2::new(s, 0.0),
                    v2: Point2::new(s / 2.0, h),
                    reflect: Some(Point2::new(1.5 * s, h)),
                }
            }
            Prototype::Hexagon => {
                let h = ConvexPolygon::regular(6, 1.0, 0.0)?;
                hexagon_prototype(&h)?
            }
            Prototype::Custom(c) => c.clone(),
        };
        let s = 1.0 / raw.cell.area().sqrt();
        Ok(CustomPrototype {
            cell: raw.cell.scaled(s),
            v1: raw.v1 * s,
            v2: raw.v2 * s,
            reflect: raw.reflect.map(|t| t * s),
        })
    }
}

/// Translation lattice of an origin-symmetric hexagon (or parallelogram).
pub(crate) fn hexagon_prototype(h: &ConvexPolygon) -> Result<CustomPrototype> {
    let p = |i| h.vertex(i);
    let (v1, v2) = match h.len() {
        6 => (p(2) - p(0), p(3) - p(1)),
        4 => (p(1) - p(0), p(2) - p(1)),
        n => {
            return Err(Error::NonTilingPrototype(format!(
                "{n}-gon is not a centrally symmetric hexagon or parallelogram"
            )))
        }
    };
    Ok(CustomPrototype {
        cell: h.clone(),
        v1,
        v2,
        reflect: None,
    })
}

fn base_copies(p: &CustomPrototype) -> Vec<ConvexPolygon> {
    let mut out = vec![p.cell.clone()];
    if let Some(t) = p.reflect {
        out.push(p.cell.reflected().translated(t));
    }
    out
}

/// Area balance plus edge-to-edge pairing of every base edge against the
/// surrounding copies.
pub(crate) fn validate(p: &CustomPrototype) -> Result<()> {
    let base = base_copies(p);
    let cell_area: f64 = base.iter().map(ConvexPolygon::area).sum();
    let lattice_area = p.v1.cross(p.v2).abs();
    if (cell_area - lattice_area).abs() > 1e-9 * lattice_area {
        return Err(Error::NonTilingPrototype(format!(
            "cells cover {cell_area} per lattice cell of area {lattice_area}"
        )));
    }
    let eps = 1e-9 * p.cell.scale();
    let mut around = Vec::new();
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            let t = p.v1 * i as f64 + p.v2 * j as f64;
            for (c, cell) in base.iter().enumerate() {
                if i != 0 || j != 0 {
                    around.push((c, cell.translated(t)));
                } else {
                    around.push((c + base.len(), cell.clone()));
                }
            }
        }
    }
    for (c, cell) in base.iter().enumerate() {
        for e in 0..cell.len() {
            let (a, b) = (cell.vertex(e), cell.vertex(e + 1));
            let matched = around.iter().any(|(id, other)| {
                *id != c + base.len()
                    && (0..other.len()).any(|f| other.vertex(f).dist(b) <= eps && other.vertex(f + 1).dist(a) <= eps)
            });
            if !matched {
                return Err(Error::NonTilingPrototype(format!("edge {e} of copy {c} has no partner")));
            }
        }
    }
    Ok(())
}

fn lattice_cells(p: &CustomPrototype, r: f64) -> Vec<ConvexPolygon> {
    let base = base_copies(p);
    let reach = base
        .iter()
        .flat_map(|c| c.vertices().iter().map(|v| v.norm()))
        .fold(0.0, f64::max);
    let det = p.v1.cross(p.v2);
    // rows of the inverse basis give the lattice coordinates
    let inv1 = Point2::new(p.v2.y, -p.v2.x) / det;
    let inv2 = Point2::new(-p.v1.y, p.v1.x) / det;
    let span = r + reach;
    let ni = (inv1.norm() * span).ceil() as i64 + 1;
    let nj = (inv2.norm() * span).ceil() as i64 + 1;
    let mut out = Vec::new();
    for i in -ni..=ni {
        for j in -nj..=nj {
            let t = p.v1 * i as f64 + p.v2 * j as f64;
            if t.norm() > span {
                continue;
            }
            for c in &base {
                if c.vertices().iter().all(|v| (*v + t).norm() <= r) {
                    out.push(c.translated(t));
                }
            }
        }
    }
    out
}

pub(crate) fn lattice_patch(p: &CustomPrototype, r: f64, generator: &str) -> Result<TilingPatch> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange(format!("R = {r}")));
    }
    validate(p)?;
    let base = base_copies(p);
    let cells = lattice_cells(p, r);
    let r_hat = base.iter().map(inradius).fold(f64::INFINITY, f64::min);
    let big_r_hat = base.iter().map(circumradius).fold(0.0, f64::max);
    let sides = cells.iter().map(ConvexPolygon::len).collect();
    Ok(TilingPatch {
        cells,
        window_r: r,
        sides,
        meta: PatchMeta {
            generator: generator.to_string(),
            r_hat,
            big_r_hat,
            params: serde_json::json!({
                "v1": p.v1,
                "v2": p.v2,
                "reflect": p.reflect,
                "prototype": p.cell.vertices(),
            }),
        },
    })
}

/// Voronoi cells of the unit-area hexagonal lattice with every site moved
/// uniformly within `jitter` lattice spacings. Cells keep their Voronoi
/// areas.
pub fn build_voronoi_patch(jitter: f64, r: f64, seed: u64) -> Result<TilingPatch> {
    if !(0.0..=0.4).contains(&jitter) {
        return Err(Error::OutOfRange(format!("jitter = {jitter} outside [0, 0.4]")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange(format!("R = {r}")));
    }
    let d = (2.0 / 3f64.sqrt()).sqrt();
    let v1 = Point2::new(d, 0.0);
    let v2 = Point2::new(d / 2.0, d * 3f64.sqrt() / 2.0);
    let reach = r + 3.0 * d;
    let n = (reach / (d * 3f64.sqrt() / 2.0)).ceil() as i64 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sites = Vec::new();
    for j in -n..=n {
        for i in -2 * n..=2 * n {
            let p = v1 * i as f64 + v2 * j as f64;
            // draw for every lattice point so the jitter field does not
            // depend on the window
            let rad = jitter * d * rng.gen::<f64>().sqrt();
            let ang = rng.gen_range(0.0..std::f64::consts::TAU);
            if p.norm() <= reach {
                sites.push(p + Point2::polar(ang) * rad);
            }
        }
    }
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    let key = |p: Point2| ((p.x / d).floor() as i64, (p.y / d).floor() as i64);
    for (i, s) in sites.iter().enumerate() {
        grid.entry(key(*s)).or_default().push(i);
    }
    let tol = Tolerance::default();
    let mut cells = Vec::new();
    for (i, &p) in sites.iter().enumerate() {
        if p.norm() > r {
            continue;
        }
        let h = 2.0 * d;
        let mut poly = vec![
            p + Point2::new(-h, -h),
            p + Point2::new(h, -h),
            p + Point2::new(h, h),
            p + Point2::new(-h, h),
        ];
        let (kx, ky) = key(p);
        for x in kx - 3..=kx + 3 {
            for y in ky - 3..=ky + 3 {
                for &jdx in grid.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[]) {
                    if jdx != i {
                        poly = clip(&poly, sites[jdx] - p, (p + sites[jdx]) * 0.5);
                    }
                }
            }
        }
        let cell = ConvexPolygon::canonicalize(&poly, tol)?;
        if cell.vertices().iter().all(|v| v.norm() <= r) {
            cells.push(cell);
        }
    }
    let r_hat = cells.iter().map(inradius).fold(f64::INFINITY, f64::min);
    let big_r_hat = cells.iter().map(circumradius).fold(0.0, f64::max);
    let sides = cells.iter().map(ConvexPolygon::len).collect();
    Ok(TilingPatch {
        cells,
        window_r: r,
        sides,
        meta: PatchMeta {
            generator: "voronoi".into(),
            r_hat,
            big_r_hat,
            params: serde_json::json!({ "jitter": jitter, "seed": seed }),
        },
    })
}

/// Keeps the part of `poly` with `(x - o) . u <= 0`.
fn clip(poly: &[Point2], u: Point2, o: Point2) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (fa, fb) = ((a - o).dot(u), (b - o).dot(u));
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            out.push(a + (b - a) * (fa / (fa - fb)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prototypes_are_unit_area_and_tile() {
        for p in [Prototype::Square, Prototype::Triangle, Prototype::Hexagon] {
            let u = p.unit().unwrap();
            assert!((u.cell.area() - 1.0).abs() < 1e-12, "{p:?}");
            validate(&u).unwrap();
        }
    }

    #[test]
    fn broken_prototypes_are_rejected() {
        let mut u = Prototype::Square.unit().unwrap();
        u.v2 = Point2::new(0.5, 1.0);
        // brick pattern covers the plane but is not edge to edge
        assert!(matches!(validate(&u), Err(Error::NonTilingPrototype(_))));
        u.v2 = Point2::new(0.0, 2.0);
        assert!(matches!(validate(&u), Err(Error::NonTilingPrototype(_))));
        let pent = ConvexPolygon::regular(5, 1.0, 0.0).unwrap();
        assert!(hexagon_prototype(&pent).is_err());
    }

    #[test]
    fn skew_hexagon_tiles() {
        let pts = [(2.0, 0.0), (1.0, 1.5), (-0.5, 1.0)].map(Point2::from);
        let mut all = pts.to_vec();
        all.extend(pts.iter().map(|&p| -p));
        let h = ConvexPolygon::canonicalize(&all, Tolerance::default()).unwrap();
        validate(&hexagon_prototype(&h).unwrap()).unwrap();
    }

    #[test]
    fn voronoi_cells_are_deterministic() {
        let a = build_voronoi_patch(0.3, 12.0, 7).unwrap();
        let b = build_voronoi_patch(0.3, 12.0, 7).unwrap();
        assert_eq!(a.cells, b.cells);
        let total: f64 = a.cells.iter().map(ConvexPolygon::area).sum();
        assert!(total < std::f64::consts::PI * 144.0);
        assert!(total > 0.8 * std::f64::consts::PI * 144.0);
        let z = build_voronoi_patch(0.0, 8.0, 1).unwrap();
        assert!(z.cells.iter().all(|c| c.len() == 6 && (c.area() - 1.0).abs() < 1e-9));
    }
}
