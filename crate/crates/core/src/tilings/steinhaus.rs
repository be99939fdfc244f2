//! Nested square construction whose square-window average number of
//! sides exceeds any prescribed bound.
//!
//! Coordinates are integers in units of the half-side of the starting
//! square `[-1, 1]^2`. Step A wraps the current square `[-N, N]^2` in four
//! `2N x 4N` rectangles arranged as a pinwheel (the union becomes
//! `[-3N, 3N]^2`); step B adds a ring of `4N + 4` translates of the
//! starting square. A side cut by vertices of neighbouring cells counts as
//! that many separate edges.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{PatchMeta, TilingPatch};
use crate::geom::{ConvexPolygon, Point2};
use crate::{Error, Result};

/// Largest half-side the construction will build.
pub const MAX_HALF_SIDE: i64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rect {
    x0: i64,
    y0: i64,
    x1: i64,
    y1: i64,
}

impl Rect {
    fn corners(&self) -> [(i64, i64); 4] {
        [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]
    }

    fn polygon(&self) -> ConvexPolygon {
        let v = self.corners().map(|(x, y)| Point2::new(x as f64, y as f64));
        ConvexPolygon::from_ccw_trusted(v.to_vec())
    }
}

#[derive(Debug, Clone, Default)]
struct Construction {
    rects: Vec<Rect>,
    half: i64,
}

impl Construction {
    fn new() -> Self {
        Construction {
            rects: vec![Rect { x0: -1, y0: -1, x1: 1, y1: 1 }],
            half: 1,
        }
    }

    fn apply(&mut self, s: Step) -> Result<()> {
        let n = self.half;
        let next = match s {
            Step::A => 3 * n,
            Step::B => n + 2,
        };
        if next > MAX_HALF_SIDE {
            return Err(Error::OutOfRange(format!("half-side {next} exceeds {MAX_HALF_SIDE}")));
        }
        match s {
            Step::A => self.rects.extend([
                Rect { x0: -n, y0: -3 * n, x1: 3 * n, y1: -n },
                Rect { x0: n, y0: -n, x1: 3 * n, y1: 3 * n },
                Rect { x0: -3 * n, y0: n, x1: n, y1: 3 * n },
                Rect { x0: -3 * n, y0: -3 * n, x1: -n, y1: n },
            ]),
            Step::B => {
                let mut x = -n - 2;
                while x <= n {
                    self.rects.push(Rect { x0: x, y0: -n - 2, x1: x + 2, y1: -n });
                    self.rects.push(Rect { x0: x, y0: n, x1: x + 2, y1: n + 2 });
                    x += 2;
                }
                let mut y = -n;
                while y < n {
                    self.rects.push(Rect { x0: -n - 2, y0: y, x1: -n, y1: y + 2 });
                    self.rects.push(Rect { x0: n, y0: y, x1: n + 2, y1: y + 2 });
                    y += 2;
                }
            }
        }
        self.half = next;
        Ok(())
    }

    /// Edge counts under the split convention, by direct enumeration of
    /// the vertices lying inside each side.
    fn sides(&self) -> Vec<usize> {
        let mut by_x: HashMap<i64, Vec<i64>> = HashMap::new();
        let mut by_y: HashMap<i64, Vec<i64>> = HashMap::new();
        for r in &self.rects {
            for (x, y) in r.corners() {
                by_x.entry(x).or_default().push(y);
                by_y.entry(y).or_default().push(x);
            }
        }
        for v in by_x.values_mut().chain(by_y.values_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let inside = |m: &HashMap<i64, Vec<i64>>, key: i64, lo: i64, hi: i64| {
            let v = &m[&key];
            v.partition_point(|&t| t < hi) - v.partition_point(|&t| t <= lo)
        };
        self.rects
            .iter()
            .map(|r| {
                4 + inside(&by_x, r.x0, r.y0, r.y1)
                    + inside(&by_x, r.x1, r.y0, r.y1)
                    + inside(&by_y, r.y0, r.x0, r.x1)
                    + inside(&by_y, r.y1, r.x0, r.x1)
            })
            .collect()
    }

    /// Average split side count over cells inside `[-h, h]^2`.
    fn window_value(&self, h: i64) -> f64 {
        let sides = self.sides();
        let (mut sum, mut count) = (0usize, 0usize);
        for (r, s) in self.rects.iter().zip(&sides) {
            if r.x0 >= -h && r.y0 >= -h && r.x1 <= h && r.y1 <= h {
                sum += s;
                count += 1;
            }
        }
        sum as f64 / count as f64
    }

    fn patch(&self, schedule: &[Step]) -> TilingPatch {
        let cells: Vec<ConvexPolygon> = self.rects.iter().map(Rect::polygon).collect();
        TilingPatch {
            cells,
            window_r: self.half as f64,
            sides: self.sides(),
            meta: PatchMeta {
                generator: "steinhaus".into(),
                r_hat: 1.0,
                big_r_hat: self
                    .rects
                    .iter()
                    .map(|r| {
                        let (w, h) = ((r.x1 - r.x0) as f64, (r.y1 - r.y0) as f64);
                        0.5 * (w * w + h * h).sqrt()
                    })
                    .fold(0.0, f64::max),
                params: serde_json::json!({ "schedule": schedule, "half_side": self.half }),
            },
        }
    }
}

/// Builds the construction for `schedule` (square windows apply).
pub fn steinhaus_example_patch(schedule: &[Step]) -> Result<TilingPatch> {
    if schedule.is_empty() {
        return Err(Error::OutOfRange("empty schedule".into()));
    }
    let mut c = Construction::new();
    for &s in schedule {
        c.apply(s)?;
    }
    Ok(c.patch(schedule))
}

/// Closed-form square-window average after `k1` A-steps followed by one
/// B-step, at `R = 3^k1 + 1/2`.
pub fn steinhaus_count_formula(k1: u32) -> f64 {
    let k = k1 as f64;
    (4.0 * 3f64.powi(k1 as i32) + 2.0 * (12.0 * k - 4.0)) / (4.0 * k + 1.0)
}

/// A point where the square-window average was measured: the half-side
/// `n` of the union just before a B-step, at `R = n + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Milestone {
    pub step: usize,
    pub half_side: i64,
    pub r: f64,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct SteinhausRun {
    pub schedule: Vec<Step>,
    pub patch: TilingPatch,
    pub milestones: Vec<Milestone>,
}

/// Greedy schedule: keep applying A until following it with B would push
/// the square-window average above `nu`, then apply B; repeat for
/// `milestones` rounds.
pub fn steinhaus_greedy(nu: f64, milestones: usize) -> Result<SteinhausRun> {
    if !(nu.is_finite() && nu > 0.0) || milestones == 0 {
        return Err(Error::OutOfRange(format!("nu = {nu}, milestones = {milestones}")));
    }
    let mut c = Construction::new();
    let mut schedule = Vec::new();
    let mut out = Vec::new();
    while out.len() < milestones {
        c.apply(Step::A)?;
        schedule.push(Step::A);
        let mut trial = c.clone();
        trial.apply(Step::B)?;
        let value = trial.window_value(c.half);
        if value > nu {
            out.push(Milestone {
                step: schedule.len(),
                half_side: c.half,
                r: c.half as f64 + 0.5,
                value,
            });
            c = trial;
            schedule.push(Step::B);
        }
    }
    Ok(SteinhausRun {
        patch: c.patch(&schedule),
        schedule,
        milestones: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_a_steps() {
        let p = steinhaus_example_patch(&[Step::A, Step::A]).unwrap();
        assert_eq!(p.cells.len(), 9);
        assert_eq!(p.window_r, 9.0);
        let area: f64 = p.cells.iter().map(ConvexPolygon::area).sum();
        assert_eq!(area, 18.0 * 18.0);
    }

    #[test]
    fn ring_counts() {
        let p = steinhaus_example_patch(&[Step::A, Step::A, Step::B]).unwrap();
        assert_eq!(p.cells.len(), 9 + 4 * 9 + 4);
        assert_eq!(p.window_r, 11.0);
        let area: f64 = p.cells.iter().map(ConvexPolygon::area).sum();
        assert_eq!(area, 22.0 * 22.0);
        // boundary of the 18 x 18 square cut into 36 unit-square edges
        let inner: usize = p.sides[..9].iter().sum();
        assert_eq!(inner, 76);
    }

    #[test]
    fn formula_matches_enumeration() {
        for k1 in 1..=6u32 {
            let mut s = vec![Step::A; k1 as usize];
            s.push(Step::B);
            let mut c = Construction::new();
            for &t in &s {
                c.apply(t).unwrap();
            }
            let direct = c.window_value(3i64.pow(k1));
            assert_eq!(direct, steinhaus_count_formula(k1), "k1 = {k1}");
        }
        assert_eq!(steinhaus_count_formula(2), 76.0 / 9.0);
    }

    #[test]
    fn greedy_milestones() {
        let run = steinhaus_greedy(8.0, 3).unwrap();
        assert_eq!(run.milestones.len(), 3);
        assert_eq!(&run.schedule[..3], &[Step::A, Step::A, Step::B]);
        assert!(run.milestones.iter().all(|m| m.value > 8.0));
        assert!(steinhaus_greedy(f64::NAN, 1).is_err());
    }
}
