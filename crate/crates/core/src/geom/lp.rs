//! Dense dictionary simplex for small-column linear programs.
//!
//! Solves `max c.x  s.t.  A x <= b, x >= 0` with `b >= 0`, so the slack
//! basis is feasible from the start. Bland's rule keeps degenerate
//! pivots from cycling.

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, x: Vec<f64> },
    Unbounded,
}

const EPS: f64 = 1e-12;

pub fn maximize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.len() == m && a.iter().all(|r| r.len() == n));
    debug_assert!(b.iter().all(|&v| v >= 0.0));

    let mut t: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut obj = c.to_vec();
    let mut z = 0.0;
    // variable labels: 0..n are structural, n..n+m are slacks
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + m).collect();

    loop {
        let entering = (0..n)
            .filter(|&j| obj[j] > EPS)
            .min_by_key(|&j| nonbasic[j]);
        let Some(j) = entering else { break };

        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][j] > EPS {
                let ratio = rhs[i] / t[i][j];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - EPS || (ratio <= best + EPS && basic[i] < basic[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else {
            return LpOutcome::Unbounded;
        };

        let piv = t[r][j];
        rhs[r] /= piv;
        for k in 0..n {
            if k != j {
                t[r][k] /= piv;
            }
        }
        t[r][j] = 1.0 / piv;
        let row_r = t[r].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = t[i][j];
            if f == 0.0 {
                continue;
            }
            rhs[i] -= f * rhs[r];
            for k in 0..n {
                if k != j {
                    t[i][k] -= f * row_r[k];
                }
            }
            t[i][j] = -f * row_r[j];
        }
        let f = obj[j];
        z += f * rhs[r];
        for k in 0..n {
            if k != j {
                obj[k] -= f * row_r[k];
            }
        }
        obj[j] = -f * row_r[j];
        std::mem::swap(&mut nonbasic[j], &mut basic[r]);
    }

    let mut x = vec![0.0; n];
    for (i, &lbl) in basic.iter().enumerate() {
        if lbl < n {
            x[lbl] = rhs[i];
        }
    }
    LpOutcome::Optimal { value: z, x }
}
