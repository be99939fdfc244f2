//! Minimum-cost link paths over unrolled edge indices.
//!
//! A path `x_0 < x_1 < ... < x_t` pays `w(x_{j-1}, x_j)` per link. Ear costs
//! satisfy the quadrangle inequality on their (staircase-shaped) finite
//! region, so each layer is filled by divide and conquer over monotone
//! argmins.

use super::ears::Ears;

/// Starts are enumerated one by one up to this period; beyond it the
/// interleaving restriction around one optimal path is used.
pub(crate) const EXHAUSTIVE_PERIOD: usize = 64;

pub(crate) struct Layer {
    pub lo: usize,
    pub d: Vec<f64>,
    pub arg: Vec<u32>,
}

impl Layer {
    fn hi(&self) -> usize {
        self.lo + self.d.len() - 1
    }

    pub fn get(&self, x: usize) -> Option<f64> {
        (x >= self.lo && x <= self.hi()).then(|| self.d[x - self.lo])
    }
}

/// Fills layers `0..=t` from start `s`. Layer `t` is restricted to `end`
/// when given; `cap` bounds every index; `bounds[j]` optionally clips
/// layer `j`.
pub(crate) fn layered(
    e: &Ears,
    s: usize,
    t: usize,
    end: Option<usize>,
    cap: usize,
    bounds: Option<&[(usize, usize)]>,
) -> Option<Vec<Layer>> {
    let mut layers = vec![Layer {
        lo: s,
        d: vec![0.0],
        arg: vec![s as u32],
    }];
    for j in 1..=t {
        let prev = &layers[j - 1];
        let (p, q) = (prev.lo, prev.hi());
        let mut xl = p + 1;
        let mut xr = e.reach(q).min(cap);
        if let Some(end) = end {
            xr = xr.min(end - (t - j));
            if j == t {
                xl = xl.max(end);
            }
        }
        if let Some(b) = bounds {
            xl = xl.max(b[j].0);
            xr = xr.min(b[j].1);
        }
        if xl > xr {
            return None;
        }
        let width = xr - xl + 1;
        let mut d = vec![f64::INFINITY; width];
        let mut arg = vec![0u32; width];
        let mut stack = vec![(xl, xr, p, q)];
        while let Some((a, b, ylo, yhi)) = stack.pop() {
            if a > b {
                continue;
            }
            let x = a + (b - a) / 2;
            let yl = ylo.max(e.first(x)).max(p);
            let yh = yhi.min(x - 1).min(q);
            let mut best = f64::INFINITY;
            let mut by = yl.min(yh);
            for y in yl..=yh {
                let c = prev.d[y - p] + e.w(y, x);
                if c < best {
                    best = c;
                    by = y;
                }
            }
            d[x - xl] = best;
            arg[x - xl] = by as u32;
            if x > a {
                stack.push((a, x - 1, ylo, by));
            }
            stack.push((x + 1, b, by, yhi));
        }
        layers.push(Layer { lo: xl, d, arg });
    }
    Some(layers)
}

/// Walks argmins back from `x` in the last layer.
pub(crate) fn backtrack(layers: &[Layer], x: usize) -> Vec<usize> {
    let t = layers.len() - 1;
    let mut path = vec![0; t + 1];
    let mut cur = x;
    for j in (0..=t).rev() {
        path[j] = cur;
        if j > 0 {
            cur = layers[j].arg[cur - layers[j].lo] as usize;
        }
    }
    path
}

/// Best closed path `s = x_0 < ... < x_t = s + period` with its chosen
/// nodes `x_0..x_{t-1}`.
pub(crate) fn closed_from(
    e: &Ears,
    s: usize,
    period: usize,
    t: usize,
    bounds: Option<&[(usize, usize)]>,
) -> Option<(f64, Vec<usize>)> {
    let end = s + period;
    let layers = layered(e, s, t, Some(end), end, bounds)?;
    let c = layers[t].get(end)?;
    if !c.is_finite() {
        return None;
    }
    let mut path = backtrack(&layers, end);
    path.pop();
    Some((c, path))
}

/// Tie-aware comparison: lower cost wins, near-equal costs fall back to
/// the lexicographically smaller index set modulo `m`.
pub(crate) fn better(cand: &(f64, Vec<usize>), best: &Option<(f64, Vec<usize>)>, m: usize) -> bool {
    let Some(b) = best else { return true };
    let tie = 1e-12 * (1.0 + b.0.abs());
    if cand.0 < b.0 - tie {
        return true;
    }
    if cand.0 > b.0 + tie {
        return false;
    }
    let key = |p: &[usize]| {
        let mut k: Vec<usize> = p.iter().map(|x| x % m).collect();
        k.sort_unstable();
        k
    };
    key(&cand.1) < key(&b.1)
}

/// Minimum closed `t`-link cycle with the given period.
pub(crate) fn cyclic(e: &Ears, period: usize, t: usize, exhaustive: bool) -> Option<(f64, Vec<usize>)> {
    let mut best: Option<(f64, Vec<usize>)> = None;
    if exhaustive || period <= EXHAUSTIVE_PERIOD {
        for s in 0..period {
            if let Some(c) = closed_from(e, s, period, t, None) {
                if better(&c, &best, e.m) {
                    best = Some(c);
                }
            }
        }
        return best;
    }

    // Some optimal cycle interleaves with the optimal cycle through 0.
    let (c0, a) = closed_from(e, 0, period, t, None)
        .or_else(|| (0..period).find_map(|s| closed_from(e, s, period, t, None)))?;
    let shift = a[0];
    let mut ring: Vec<usize> = a.clone();
    ring.push(shift + period);
    ring.push(a[1] + period);
    best = Some((c0, a.clone()));
    let bounds: Vec<(usize, usize)> = (0..=t).map(|j| (ring[j], ring[j + 1])).collect();
    for s in ring[0] + 1..=ring[1] {
        let mut b = bounds.clone();
        b[0] = (s, s);
        if let Some(c) = closed_from(e, s, period, t, Some(&b)) {
            if better(&c, &best, e.m) {
                best = Some(c);
            }
        }
    }
    best.map(|(c, p)| {
        let p = p.into_iter().map(|x| if x >= period { x - period } else { x }).collect::<Vec<_>>();
        let mut p = p;
        let r = p.iter().enumerate().min_by_key(|(_, &x)| x).map(|(i, _)| i).unwrap_or(0);
        p.rotate_left(r);
        // keep the chain increasing by unrolling the wrapped tail
        for i in 1..p.len() {
            while p[i] <= p[i - 1] {
                p[i] += period;
            }
        }
        (c, p)
    })
}
