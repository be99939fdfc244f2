//! The one side of an optimal polygon that may touch only a vertex.
//!
//! Between flush sides on edges `a < b` whose normals turn by at least a
//! half turn, the slack line's normal angle `phi` ranges over
//! `(theta_b - pi, theta_a + pi)`. The enclosed area is unimodal in `phi`:
//! its derivative changes sign once, at the angle where the contact vertex
//! bisects the side. Edge normals inside the range are breakpoints where
//! the contact vertex advances; there the slack side is flush.

use std::f64::consts::PI;

use super::ears::{Ears, Line, ANGLE_EPS};

const GOLDEN_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SlackChoice {
    /// best breakpoint is an intermediate flush edge
    Flush(usize),
    /// contact vertex and normal angle
    Vertex { c: usize, phi: f64 },
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SlackSide {
    pub value: f64,
    pub choice: SlackChoice,
}

/// Minimizes `f` on `[lo, hi]`, returning the argmin and value.
pub(crate) fn golden_section(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > GOLDEN_WIDTH {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
        if x1 == x2 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

impl Ears {
    pub(crate) fn slack_line_between(&self, a: usize, b: usize, c: usize, phi: f64) -> (f64, Line) {
        let l = self.slack_line(c, phi);
        let v = self.ear(&self.flush_line(a), &l) + self.ear(&l, &self.flush_line(b));
        (v, l)
    }

    /// Best slack side between flush edges `a < b`, or `None` when their
    /// normals turn by less than a half turn (a flush side then does at
    /// least as well).
    pub(crate) fn slack_between(&self, a: usize, b: usize) -> Option<SlackSide> {
        let (ta, tb) = (self.theta(a), self.theta(b));
        if tb - ta < PI - ANGLE_EPS || b <= a + 1 {
            return None;
        }
        let lo = tb - PI;
        let hi = ta + PI;

        let mut best_e = None;
        let mut best_flush = f64::INFINITY;
        let mut cone_c = b;
        for e in a + 1..b {
            let t = self.theta(e);
            if t <= lo {
                continue;
            }
            if t >= hi {
                cone_c = cone_c.min(e);
                break;
            }
            let v = self.w(a, e) + self.w(e, b);
            if v < best_flush {
                best_flush = v;
                best_e = Some(e);
            }
        }

        let cone = |c: usize| {
            let l = lo.max(self.theta(c - 1));
            let h = hi.min(self.theta(c));
            (l < h).then(|| {
                let (phi, v) = golden_section(l, h, |p| self.slack_line_between(a, b, c, p).0);
                (c, phi, v)
            })
        };
        let cands: Vec<(usize, f64, f64)> = match best_e {
            None => cone(cone_c).into_iter().collect(),
            Some(e) => [cone(e), cone(e + 1)].into_iter().flatten().collect(),
        };

        let mut out = best_e.map(|e| SlackSide {
            value: best_flush,
            choice: SlackChoice::Flush(e),
        });
        for (c, phi, v) in cands {
            if !v.is_finite() || !self.midpoint_touches(a, b, c, phi) {
                continue;
            }
            if out.map_or(true, |o| v < o.value) {
                out = Some(SlackSide {
                    value: v,
                    choice: SlackChoice::Vertex { c, phi },
                });
            }
        }
        out
    }

    /// A minimizing slack side has its midpoint in the polygon, i.e. at
    /// the contact vertex; used to reject golden-section runs that slid
    /// into a cone boundary.
    fn midpoint_touches(&self, a: usize, b: usize, c: usize, phi: f64) -> bool {
        let l = self.slack_line(c, phi);
        let xa = self.meet(&self.flush_line(a), &l);
        let xb = self.meet(&l, &self.flush_line(b));
        let mid = (xa + xb) * 0.5;
        mid.dist(self.vertex(c)) <= 1e-6 * xa.dist(xb)
    }
}
