//! Minimum-area convex n-gons circumscribed about a convex polygon, and the
//! sequence of those minima.
//!
//! An optimal n-gon (n >= 4) can be chosen with every side containing an
//! edge of K except possibly one, which then touches K at a vertex that
//! bisects it. The all-flush part is a cyclic path problem over K's edges;
//! the single slack side is a one-dimensional unimodal search between its
//! two flush neighbours. For triangles the configurations with every side
//! bisected by a vertex are enumerated as well.

mod ears;
mod path;
mod slack;
mod triangle;

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point2, Tolerance};
use crate::norms::NormDisk;
use ears::{Ears, Line, ANGLE_EPS};
use slack::{SlackChoice, SlackSide};

/// Above this edge count the slack side is only searched next to the
/// sides of the flush optimum instead of over every flush chain.
pub const SLACK_EXACT_LIMIT: usize = 256;

/// An optimal circumscribed polygon with its tangency pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct CircumscribeResult {
    pub polygon: ConvexPolygon,
    pub area_value: f64,
    /// per side of `polygon`, in order: the edge of K it contains, if any
    pub flush_edges: Vec<Option<usize>>,
    pub slack_side_used: bool,
}

/// `n -> A_K(n)` for `n = n_min..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DowkerTable {
    pub disk_id: String,
    pub n_min: usize,
    pub n_max: usize,
    pub values: Vec<f64>,
    pub disk_area: f64,
    pub tol: Tolerance,
}

impl DowkerTable {
    /// Wraps raw values starting at `n = 3`.
    pub fn from_values(disk_id: impl Into<String>, values: Vec<f64>, disk_area: f64, tol: Tolerance) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientTable("no values".into()));
        }
        Ok(DowkerTable {
            disk_id: disk_id.into(),
            n_min: 3,
            n_max: 2 + values.len(),
            values,
            disk_area,
            tol,
        })
    }

    /// `A_K(n)`, if covered.
    pub fn value(&self, n: usize) -> Option<f64> {
        (n >= self.n_min && n <= self.n_max).then(|| self.values[n - self.n_min])
    }

    /// `A_K(n)`, panicking outside the table.
    pub fn a(&self, n: usize) -> f64 {
        self.value(n)
            .unwrap_or_else(|| panic!("n = {n} outside table {}..={}", self.n_min, self.n_max))
    }
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Flush(usize),
    Slack { c: usize, phi: f64 },
    Free { p: Point2, d: Point2 },
}

/// Reusable solver for one polygon; precomputed slack sides are shared
/// between calls with different `n`.
pub struct Circumscriber {
    k: ConvexPolygon,
    ears: Ears,
    tol: Tolerance,
    slack: OnceLock<Vec<Option<SlackSide>>>,
    midpoint_triangle: OnceLock<Option<(f64, [Point2; 3])>>,
}

struct Candidate {
    cost: f64,
    sides: Vec<Side>,
}

impl Circumscriber {
    pub fn new(k: &ConvexPolygon, tol: Tolerance) -> Self {
        Circumscriber {
            k: k.clone(),
            ears: Ears::new(k),
            tol,
            slack: OnceLock::new(),
            midpoint_triangle: OnceLock::new(),
        }
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.k
    }

    fn m(&self) -> usize {
        self.k.len()
    }

    /// Slack side between edges `a` (in `0..m`) and `a + d`.
    fn slack_at(&self, a: usize, d: usize) -> Option<SlackSide> {
        let m = self.m();
        if m <= SLACK_EXACT_LIMIT {
            let table = self.slack.get_or_init(|| {
                let mut t = vec![None; m * m];
                for a in 0..m {
                    for d in 2..m {
                        t[a * m + d] = self.ears.slack_between(a, a + d);
                    }
                }
                t
            });
            table[a * m + d]
        } else {
            self.ears.slack_between(a, a + d)
        }
    }

    fn flush_phase(&self, n: usize) -> Option<Candidate> {
        let m = self.m();
        path::cyclic(&self.ears, m, n, false).map(|(cost, nodes)| Candidate {
            cost,
            sides: nodes.into_iter().map(Side::Flush).collect(),
        })
    }

    /// Exact search: flush chain `b ..= a` with `n - 2` links, then one
    /// slack side from `a` back to `b + m`.
    fn slack_phase_exact(&self, n: usize) -> Option<Candidate> {
        let m = self.m();
        let e = &self.ears;
        let mut best: Option<(f64, usize, usize)> = None;
        for b in 0..m {
            let Some(layers) = path::layered(e, b, n - 2, None, b + m - 1, None) else {
                continue;
            };
            let last = &layers[n - 2];
            for (off, &d) in last.d.iter().enumerate() {
                let a = last.lo + off;
                if !d.is_finite() || e.theta(b + m) - e.theta(a) < PI - ANGLE_EPS {
                    continue;
                }
                let Some(s) = self.slack_at(a % m, b + m - a) else { continue };
                let total = d + s.value;
                if best.map_or(true, |(c, _, _)| total < c) {
                    best = Some((total, b, a));
                }
            }
        }
        let (cost, b, a) = best?;
        let layers = path::layered(e, b, n - 2, None, b + m - 1, None)?;
        let chain = path::backtrack(&layers, a);
        let s = self.slack_at(a % m, b + m - a)?;
        let mut sides: Vec<Side> = chain.into_iter().map(Side::Flush).collect();
        sides.push(slack_side(s));
        Some(Candidate { cost, sides })
    }

    /// Local search: replace one side of the flush optimum whose
    /// neighbours turn by at least a half turn with the best slack side.
    fn slack_phase_local(&self, flush: &Candidate) -> Option<Candidate> {
        let m = self.m();
        let e = &self.ears;
        let nodes: Vec<usize> = flush
            .sides
            .iter()
            .map(|s| match s {
                Side::Flush(x) => *x,
                _ => unreachable!("flush candidate"),
            })
            .collect();
        let n = nodes.len();
        let at = |j: isize| -> usize {
            let nn = n as isize;
            let lap = j.div_euclid(nn);
            (nodes[j.rem_euclid(nn) as usize] as isize + lap * m as isize + m as isize) as usize
        };
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n as isize {
            let (a, mid, b) = (at(j - 1), at(j), at(j + 1));
            if e.theta(b) - e.theta(a) < PI - ANGLE_EPS {
                continue;
            }
            let Some(s) = self.slack_at(a % m, b - a) else { continue };
            let total = flush.cost - e.w(a, mid) - e.w(mid, b) + s.value;
            if total < flush.cost - 1e-15 * (1.0 + flush.cost) && best.map_or(true, |(c, _)| total < c) {
                best = Some((total, j as usize));
            }
        }
        let (cost, j) = best?;
        let a = at(j as isize - 1);
        let b = at(j as isize + 1);
        let s = self.slack_at(a % m, b - a)?;
        let mut sides: Vec<Side> = Vec::with_capacity(n);
        for i in 0..n {
            if i == j {
                sides.push(slack_side(s));
            } else {
                sides.push(Side::Flush(nodes[i]));
            }
        }
        Some(Candidate { cost, sides })
    }

    fn triangle_phase(&self) -> Option<Candidate> {
        let (area, verts) = (*self.midpoint_triangle.get_or_init(|| {
            let v: Vec<Point2> = (0..self.m()).map(|i| self.ears.vertex(i)).collect();
            let slack = 1e-12 * self.k.scale();
            triangle::best_midpoint_triangle(&v, slack).map(|t| (t.area, t.vertices))
        }))?;
        let sides = (0..3)
            .map(|i| {
                let p = verts[i];
                let d = verts[(i + 1) % 3] - p;
                Side::Free { p, d: d / d.norm() }
            })
            .collect();
        Some(Candidate {
            cost: area - self.ears.area,
            sides,
        })
    }

    /// Minimum-area circumscribed `n`-gon.
    pub fn solve(&self, n: usize) -> Result<CircumscribeResult> {
        if n < 3 {
            return Err(Error::InvalidN(n));
        }
        let m = self.m();
        if n >= m {
            return Ok(self.itself());
        }
        let flush = self.flush_phase(n);
        let slack = if m <= SLACK_EXACT_LIMIT {
            self.slack_phase_exact(n)
        } else {
            match &flush {
                Some(f) => self.slack_phase_local(f),
                None => self.slack_phase_exact(n),
            }
        };
        let tri = if n == 3 { self.triangle_phase() } else { None };

        let mut best: Option<Candidate> = None;
        for c in [flush, slack, tri].into_iter().flatten() {
            // earlier phases win near-ties
            let tie = 1e-12 * (1.0 + self.ears.area);
            if best.as_ref().map_or(true, |b| c.cost < b.cost - tie) {
                best = Some(c);
            }
        }
        let best = best.ok_or_else(|| Error::DegenerateInput(format!("no circumscribed {n}-gon found")))?;
        Ok(self.assemble(best))
    }

    fn itself(&self) -> CircumscribeResult {
        CircumscribeResult {
            polygon: self.k.clone(),
            area_value: self.k.area(),
            flush_edges: (0..self.m()).map(Some).collect(),
            slack_side_used: false,
        }
    }

    fn line_of(&self, s: &Side) -> Line {
        match *s {
            Side::Flush(e) => self.ears.flush_line(e),
            Side::Slack { c, phi } => self.ears.slack_line(c, phi),
            Side::Free { p, d } => Line { p, d, first: 0, last: 0 },
        }
    }

    fn assemble(&self, c: Candidate) -> CircumscribeResult {
        let m = self.m();
        let n = c.sides.len();
        let lines: Vec<Line> = c.sides.iter().map(|s| self.line_of(s)).collect();
        let verts: Vec<Point2> = (0..n)
            .map(|j| self.ears.meet(&lines[j], &lines[(j + 1) % n]) + self.ears.origin)
            .collect();
        // sides run from vertex j-1 to vertex j; rotate so side i matches
        // the polygon edge starting at its i-th vertex
        let mut sides = c.sides.clone();
        sides.rotate_left(1);
        let mut poly_verts = verts.clone();
        let start = (0..n)
            .min_by(|&a, &b| {
                let (p, q) = (poly_verts[a], poly_verts[b]);
                p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
            })
            .unwrap();
        poly_verts.rotate_left(start);
        sides.rotate_left(start);
        let flush_edges = sides
            .iter()
            .map(|s| match *s {
                Side::Flush(e) => Some(e % m),
                _ => None,
            })
            .collect();
        let slack_side_used = sides.iter().any(|s| !matches!(s, Side::Flush(_)));
        CircumscribeResult {
            polygon: ConvexPolygon::from_ccw_trusted(poly_verts),
            area_value: self.ears.area + c.cost,
            flush_edges,
            slack_side_used,
        }
    }

    /// Minimum-area origin-symmetric circumscribed `n`-gon, `n` even. For an
    /// origin-symmetric `K` its area equals the unrestricted minimum.
    fn solve_symmetric(&self, n: usize) -> Result<CircumscribeResult> {
        if n < 4 || n % 2 == 1 {
            return Err(Error::OddN(n));
        }
        let m = self.m();
        if n >= m {
            return Ok(self.itself());
        }
        let h = m / 2;
        let (cost, nodes) = path::cyclic(&self.ears, h, n / 2, false)
            .ok_or_else(|| Error::DegenerateInput(format!("no symmetric {n}-gon found")))?;
        let mut sides: Vec<Side> = nodes.iter().map(|&x| Side::Flush(x)).collect();
        sides.extend(nodes.iter().map(|&x| Side::Flush(x + h)));
        Ok(self.assemble(Candidate { cost: 2.0 * cost, sides }))
    }

    /// `A_K(n)` for `n = 3..=n_max`.
    pub fn table(&self, n_max: usize, disk_id: &str) -> Result<DowkerTable> {
        if n_max < 6 {
            return Err(Error::OutOfRange(format!("n_max = {n_max} < 6")));
        }
        let mut values = Vec::with_capacity(n_max - 2);
        for n in 3..=n_max {
            values.push(self.solve(n)?.area_value);
        }
        DowkerTable::from_values(disk_id, values, self.k.area(), self.tol)
    }
}

// Slack sides are computed relative to the first lap; line geometry only
// depends on indices modulo m, so they can be used at any lap.
fn slack_side(s: SlackSide) -> Side {
    match s.choice {
        SlackChoice::Flush(e) => Side::Flush(e),
        SlackChoice::Vertex { c, phi } => Side::Slack { c, phi },
    }
}

/// Minimum-area convex `n`-gon circumscribed about `k`.
///
/// ```
/// use honeylab::circumscribe::min_area_circumscribed;
/// use honeylab::geom::{ConvexPolygon, Tolerance};
/// let hex = ConvexPolygon::regular_about_unit_disk(6).unwrap();
/// let q = min_area_circumscribed(&hex, 4, Tolerance::default()).unwrap();
/// assert!((q.area_value - 8.0 / 3f64.sqrt()).abs() < 1e-12);
/// ```
pub fn min_area_circumscribed(k: &ConvexPolygon, n: usize, tol: Tolerance) -> Result<CircumscribeResult> {
    Circumscriber::new(k, tol).solve(n)
}

/// Minimum-area origin-symmetric circumscribed `n`-gon about a norm disk.
pub fn min_area_symmetric_circumscribed(k: &NormDisk, n: usize, tol: Tolerance) -> Result<CircumscribeResult> {
    Circumscriber::new(k.disk(), tol).solve_symmetric(n)
}

/// Table of `A_K(n)` for `n = 3..=n_max`.
pub fn dowker_table(k: &ConvexPolygon, n_max: usize, tol: Tolerance) -> Result<DowkerTable> {
    Circumscriber::new(k, tol).table(n_max, &format!("{}-gon", k.len()))
}

/// Closed form of `A_K(n)` for the regular `2k`-gon circumscribed about
/// the unit disk.
pub fn regular_akn(k: usize, n: usize) -> Result<f64> {
    if k < 2 || n < 3 || n > 2 * k {
        return Err(Error::OutOfRange(format!("regular_akn(k={k}, n={n}) needs k >= 2, 3 <= n <= 2k")));
    }
    let kk = 2 * k;
    let (q, r) = (kk / n, kk % n);
    let t = |j: usize| (PI * j as f64 / kk as f64).tan();
    if n >= 4 {
        return Ok((n - r) as f64 * t(q) + r as f64 * t(q + 1));
    }
    let kf = k as f64;
    let c = 2.0 / (PI / kk as f64).cos().powi(2);
    let s = |j: usize| (j as f64 * PI / kf).sin();
    Ok(match r {
        0 => 3.0 * (PI / 3.0).tan(),
        1 => c * (2.0 * s(q) + s(q + 1)),
        _ => c * (s(q) + 2.0 * s(q + 1)),
    })
}

/// `n tan(pi / n)`, the minimum area of an `n`-gon about the unit disk.
pub fn disk_akn(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("disk_akn(n={n}) needs n >= 3")));
    }
    Ok(n as f64 * (PI / n as f64).tan())
}
