//! Finite tiling patches and their window-averaged statistics.
//!
//! A patch keeps the cells of a tiling lying inside a window (a disk of
//! radius `window_r`, or the square `[-window_r, window_r]^2` for the
//! nested square construction). Averages are finite-`R` series; the
//! boundary layer contributes `O(1/R)`.

mod index;
mod lattice;
mod steinhaus;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use lattice::{build_voronoi_patch, CustomPrototype, Prototype};
pub use steinhaus::{steinhaus_count_formula, steinhaus_example_patch, steinhaus_greedy, Milestone, SteinhausRun, Step};

use crate::circumscribe::{min_area_circumscribed, min_area_symmetric_circumscribed};
use crate::dowker::powered_bound;
use crate::geom::{circumradius, inradius, ConvexPolygon, Point2, Tolerance};
use crate::norms::NormDisk;
use crate::{Error, Result};
use index::{separation, CellIndex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatchMeta {
    pub generator: String,
    /// smallest cell inradius
    pub r_hat: f64,
    /// largest cell circumradius
    pub big_r_hat: f64,
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingPatch {
    pub cells: Vec<ConvexPolygon>,
    pub window_r: f64,
    /// side count per cell; exceeds the vertex count where a side is cut
    /// by vertices of neighbouring cells
    pub sides: Vec<usize>,
    pub meta: PatchMeta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StatKind {
    /// `perim_M(C)^alpha`, `alpha > 0`
    PoweredPerim(f64),
    LogPerim,
    Sides,
    /// `perim_M(C)^2 / area(C)`
    IsoRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Window {
    Round,
    Square,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageSeries {
    pub r_values: Vec<f64>,
    pub counts: Vec<usize>,
    pub stat_values: Vec<f64>,
    pub stat_kind: StatKind,
    pub window: Window,
}

/// Tiling by unit-area translates of the optimal origin-symmetric hexagon
/// circumscribed about the isoperimetrix of `m`.
pub fn build_hex_tiling(m: &NormDisk, r: f64, tol: Tolerance) -> Result<TilingPatch> {
    let h = optimal_hexagon(m, tol)?;
    let proto = lattice::hexagon_prototype(&h)?;
    lattice::lattice_patch(&proto, r, "hex")
}

/// The optimal hexagon scaled to unit area.
pub fn optimal_hexagon(m: &NormDisk, tol: Tolerance) -> Result<ConvexPolygon> {
    let iso = m.isoperimetrix(tol)?;
    let h = min_area_symmetric_circumscribed(&iso, 6, tol)?.polygon;
    Ok(h.scaled(1.0 / h.area().sqrt()))
}

/// Unit-area lattice patch of `proto` inside `R B^2`.
pub fn build_lattice_patch(proto: &Prototype, r: f64) -> Result<TilingPatch> {
    let name = match proto {
        Prototype::Square => "square",
        Prototype::Triangle => "triangle",
        Prototype::Hexagon => "hexagon",
        Prototype::Custom(_) => "custom",
    };
    lattice::lattice_patch(&proto.unit()?, r, name)
}

fn cell_stat(m: &NormDisk, kind: StatKind, cell: &ConvexPolygon, sides: usize) -> f64 {
    match kind {
        StatKind::PoweredPerim(a) => m.m_perimeter(cell).powf(a),
        StatKind::LogPerim => m.m_perimeter(cell).ln(),
        StatKind::Sides => sides as f64,
        StatKind::IsoRatio => m.m_perimeter(cell).powi(2) / cell.area(),
    }
}

fn window_series(
    patch: &TilingPatch,
    m: &NormDisk,
    kind: StatKind,
    r_list: &[f64],
    window: Window,
) -> Result<AverageSeries> {
    if let StatKind::PoweredPerim(a) = kind {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::OutOfRange(format!("powered perimeter needs alpha > 0, got {a}")));
        }
    }
    for w in r_list.windows(2) {
        if w[1] < w[0] {
            return Err(Error::OutOfRange("R values must be nondecreasing".into()));
        }
    }
    if let Some(&r) = r_list.iter().find(|&&r| !(r > 0.0 && r <= patch.window_r)) {
        return Err(Error::OutOfRange(format!("R = {r} outside (0, {}]", patch.window_r)));
    }
    let extent = |c: &ConvexPolygon| match window {
        Window::Round => c.max_vertex_radius(),
        Window::Square => c.vertices().iter().map(|v| v.x.abs().max(v.y.abs())).fold(0.0, f64::max),
    };
    let mut keyed: Vec<(f64, usize)> = patch.cells.iter().enumerate().map(|(i, c)| (extent(c), i)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut counts = Vec::with_capacity(r_list.len());
    let mut stat_values = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let inside = keyed.partition_point(|&(e, _)| e <= r);
        if inside == 0 {
            return Err(Error::EmptyWindow(r));
        }
        // summed in cell order so the value does not depend on the other
        // radii requested
        let mut idx: Vec<usize> = keyed[..inside].iter().map(|&(_, i)| i).collect();
        idx.sort_unstable();
        let sum: f64 = idx.iter().map(|&i| cell_stat(m, kind, &patch.cells[i], patch.sides[i])).sum();
        counts.push(inside);
        stat_values.push(sum / inside as f64);
    }
    Ok(AverageSeries {
        r_values: r_list.to_vec(),
        counts,
        stat_values,
        stat_kind: kind,
        window,
    })
}

/// Averages of a per-cell statistic over cells inside `R B^2`.
pub fn window_average(patch: &TilingPatch, m: &NormDisk, kind: StatKind, r_list: &[f64]) -> Result<AverageSeries> {
    window_series(patch, m, kind, r_list, Window::Round)
}

/// As [`window_average`] with the square windows `[-R, R]^2`.
pub fn window_average_square(
    patch: &TilingPatch,
    m: &NormDisk,
    kind: StatKind,
    r_list: &[f64],
) -> Result<AverageSeries> {
    window_series(patch, m, kind, r_list, Window::Square)
}

/// Lower bound `(4 A_{M_iso}(6))^alpha` on the average `2 alpha`-th powered
/// perimeter of unit-area cells (`log(4 A) / 2` for the log average at
/// `alpha = 0`).
pub fn honeycomb_bound(m: &NormDisk, alpha: f64, tol: Tolerance) -> Result<f64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange(format!("alpha = {alpha}")));
    }
    let iso = m.isoperimetrix(tol)?;
    let a6 = min_area_circumscribed(iso.disk(), 6, tol)?.area_value;
    Ok(powered_bound(a6, alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChakerianGap {
    /// M-perimeter of K
    pub l: f64,
    /// area of K
    pub big_f: f64,
    /// area of the polygon about the isoperimetrix with K's edge normals
    pub f: f64,
    pub gap: f64,
}

/// Polygon of support lines of `k` with the given outer normal angles
/// (increasing, wrapping once around).
pub(crate) fn support_polygon(k: &ConvexPolygon, normals: &[f64]) -> Result<Vec<Point2>> {
    let n = normals.len();
    if n < 3 {
        return Err(Error::UnboundedKStar);
    }
    for i in 0..n {
        let next = if i + 1 < n { normals[i + 1] } else { normals[0] + std::f64::consts::TAU };
        if next - normals[i] >= std::f64::consts::PI {
            return Err(Error::UnboundedKStar);
        }
    }
    let lines: Vec<(Point2, f64)> = normals
        .iter()
        .map(|&a| {
            let u = Point2::polar(a);
            (u, k.support_function(u).expect("unit normal"))
        })
        .collect();
    Ok((0..n)
        .map(|i| {
            let (u1, h1) = lines[i];
            let (u2, h2) = lines[(i + 1) % n];
            let det = u1.cross(u2);
            Point2::new(h1 * u2.y - h2 * u1.y, u1.x * h2 - u2.x * h1) / det
        })
        .collect())
}

fn shoelace(v: &[Point2]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

/// `L^2 - 4 f F` for `K` in the norm of `m`.
pub fn chakerian_gap(m: &NormDisk, k: &ConvexPolygon, tol: Tolerance) -> Result<ChakerianGap> {
    let iso = m.isoperimetrix(tol)?;
    let normals = k.edge_normal_angles();
    let star = support_polygon(iso.disk(), &normals)?;
    let l = m.m_perimeter(k);
    let big_f = k.area();
    let f = shoelace(&star);
    Ok(ChakerianGap {
        l,
        big_f,
        f,
        gap: l * l - 4.0 * f * big_f,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normality {
    pub r_hat: f64,
    pub big_r_hat: f64,
    /// `9 R_hat^2 / r_hat^2 - 1`
    pub max_neighbors_bound: f64,
    /// most neighbours (cells sharing a boundary point) of any cell
    pub max_neighbors: usize,
    pub bound_holds: bool,
}

/// Normality constants of the patch and a check of the neighbour bound.
pub fn normality_constants(patch: &TilingPatch) -> Result<Normality> {
    if patch.cells.is_empty() {
        return Err(Error::EmptyWindow(patch.window_r));
    }
    let r_hat = patch.cells.iter().map(inradius).fold(f64::INFINITY, f64::min);
    let big_r_hat = patch.cells.iter().map(circumradius).fold(0.0, f64::max);
    let bound = 9.0 * big_r_hat * big_r_hat / (r_hat * r_hat) - 1.0;
    let idx = CellIndex::new(&patch.cells);
    let eps = 1e-9 * (1.0 + big_r_hat);
    let max_neighbors = (0..patch.cells.len())
        .map(|i| {
            idx.near_cell(i, eps)
                .into_iter()
                .filter(|&j| j != i && separation(&patch.cells[i], &patch.cells[j]) <= eps)
                .count()
        })
        .max()
        .unwrap_or(0);
    Ok(Normality {
        r_hat,
        big_r_hat,
        max_neighbors_bound: bound,
        max_neighbors,
        bound_holds: max_neighbors as f64 <= bound,
    })
}

fn origin_distance(c: &ConvexPolygon) -> f64 {
    if c.contains_with(Point2::ORIGIN, 0.0) {
        return 0.0;
    }
    (0..c.len())
        .map(|i| {
            let (a, b) = (c.vertex(i), c.vertex(i + 1));
            let d = b - a;
            let t = (-a.dot(d) / d.norm_sq()).clamp(0.0, 1.0);
            (a + d * t).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Number of cells meeting the circle of radius `r`.
pub fn boundary_cell_count(patch: &TilingPatch, r: f64) -> usize {
    patch
        .cells
        .iter()
        .filter(|c| origin_distance(c) <= r && c.max_vertex_radius() >= r)
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub samples: usize,
    /// points strictly inside exactly one cell
    pub single: usize,
    /// points on a shared boundary
    pub boundary: usize,
    pub uncovered: usize,
    pub overlapping: usize,
}

/// Samples `samples` uniform points in the disk of radius `radius` and
/// classifies them against the cells.
pub fn coverage_check(patch: &TilingPatch, radius: f64, samples: usize, seed: u64) -> Coverage {
    let idx = CellIndex::new(&patch.cells);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Coverage {
        samples,
        single: 0,
        boundary: 0,
        uncovered: 0,
        overlapping: 0,
    };
    for _ in 0..samples {
        let p = Point2::polar(rng.gen_range(0.0..std::f64::consts::TAU)) * (radius * rng.gen::<f64>().sqrt());
        let mut interior = 0;
        let mut touching = 0;
        for i in idx.near_point(p, 0.0) {
            let c = &patch.cells[i];
            let eps = 1e-9 * c.scale();
            if c.contains_with(p, -eps) {
                interior += 1;
            } else if c.contains_with(p, eps) {
                touching += 1;
            }
        }
        match (interior, touching) {
            (1, 0) => out.single += 1,
            (0, t) if t >= 2 => out.boundary += 1,
            (0, _) => out.uncovered += 1,
            _ => out.overlapping += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests;
