//! Convexity checks on `A_K(n)` tables and honeycomb certificates for
//! polygonal norms.
//!
//! For `alpha > 0` the sequence under test is `A(n)^alpha`; `alpha = 0`
//! stands for `log A(n)`. A check passes when every margin is at least
//! `-1e-9 * A(6)^max(alpha, 1)`.

use serde::{Deserialize, Serialize};

use crate::circumscribe::{disk_akn, dowker_table, min_area_symmetric_circumscribed, regular_akn, DowkerTable};
use crate::geom::{ConvexPolygon, Tolerance};
use crate::norms::NormDisk;
use crate::{Error, Result};

/// Relative verdict threshold, scaled by `A(6)^max(alpha, 1)`.
pub const VERDICT_REL: f64 = 1e-9;
/// Margins within this multiple of the threshold are flagged.
pub const WARN_FACTOR: f64 = 10.0;
/// Upper end of the minimal-alpha search.
pub const ALPHA_CAP: f64 = 4.0;
/// Table length used by [`honeycomb_certificate`] for dense isoperimetrices.
pub const CERTIFICATE_NMAX_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    AlphaDowker,
    WeakAlphaDowker,
    LogDowker,
    WeakLogDowker,
}

impl Property {
    fn new(weak: bool, alpha: f64) -> Self {
        match (weak, alpha == 0.0) {
            (false, false) => Property::AlphaDowker,
            (true, false) => Property::WeakAlphaDowker,
            (false, true) => Property::LogDowker,
            (true, true) => Property::WeakLogDowker,
        }
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Property::WeakAlphaDowker | Property::WeakLogDowker)
    }
}

/// One evaluated inequality. `witness` is `[n-1, n, n+1]` for the plain
/// check and `[m, 6, n]` for the weak one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub witness: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DowkerReport {
    pub property: Property,
    pub alpha: f64,
    pub verdict: bool,
    pub margins: Vec<Margin>,
    pub worst_margin: f64,
    pub worst_witness: Vec<usize>,
    pub threshold: f64,
    /// nonzero margins within `WARN_FACTOR` thresholds of zero
    pub warnings: Vec<Margin>,
    /// set when the table stops before its constant tail
    pub truncated_at: Option<usize>,
}

impl DowkerReport {
    /// Recomputes every margin from `table` and checks that the stored
    /// values, worst margin and verdict are reproduced exactly.
    pub fn reproduces(&self, table: &DowkerTable) -> bool {
        let mut worst = f64::INFINITY;
        for m in &self.margins {
            let v = match (self.property.is_weak(), m.witness.as_slice()) {
                (false, &[_, n, _]) => plain_margin(table, self.alpha, n),
                (true, &[lo, 6, hi]) => weak_margin(table, self.alpha, lo, hi),
                _ => return false,
            };
            if v.to_bits() != m.value.to_bits() {
                return false;
            }
            worst = worst.min(v);
        }
        worst.to_bits() == self.worst_margin.to_bits() && self.verdict == (worst >= -self.threshold)
    }
}

fn power(a: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        a.ln()
    } else {
        a.powf(alpha)
    }
}

fn plain_margin(t: &DowkerTable, alpha: f64, n: usize) -> f64 {
    power(t.a(n - 1), alpha) + power(t.a(n + 1), alpha) - 2.0 * power(t.a(n), alpha)
}

fn weak_margin(t: &DowkerTable, alpha: f64, m: usize, n: usize) -> f64 {
    let span = (n - m) as f64;
    let wm = (n - 6) as f64 / span;
    let wn = (6 - m) as f64 / span;
    wm * power(t.a(m), alpha) + wn * power(t.a(n), alpha) - power(t.a(6), alpha)
}

fn check_alpha(table: &DowkerTable, alpha: f64) -> Result<()> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::OutOfRange(format!("alpha = {alpha}")));
    }
    if table.n_min != 3 {
        return Err(Error::InsufficientTable(format!("table starts at n = {}", table.n_min)));
    }
    Ok(())
}

fn report(table: &DowkerTable, property: Property, alpha: f64, margins: Vec<Margin>) -> DowkerReport {
    let threshold = VERDICT_REL * table.a(6).powf(alpha.max(1.0));
    let (worst_margin, worst_witness) = margins
        .iter()
        .fold((f64::INFINITY, Vec::new()), |(w, ww), m| {
            if m.value < w {
                (m.value, m.witness.clone())
            } else {
                (w, ww)
            }
        });
    let warnings = margins
        .iter()
        .filter(|m| m.value != 0.0 && m.value.abs() <= WARN_FACTOR * threshold)
        .cloned()
        .collect();
    let last = table.a(table.n_max);
    let truncated_at = (!table.tol.close(last, table.disk_area)).then_some(table.n_max);
    DowkerReport {
        property,
        alpha,
        verdict: worst_margin >= -threshold,
        margins,
        worst_margin,
        worst_witness,
        threshold,
        warnings,
        truncated_at,
    }
}

/// Convexity of `A(n)^alpha` (log for `alpha = 0`) over `4 <= n < n_max`.
pub fn check_alpha_dowker(table: &DowkerTable, alpha: f64) -> Result<DowkerReport> {
    check_alpha(table, alpha)?;
    if table.n_max < 6 {
        return Err(Error::InsufficientTable(format!("n_max = {} < 6", table.n_max)));
    }
    let margins = (4..table.n_max)
        .map(|n| Margin {
            witness: vec![n - 1, n, n + 1],
            value: plain_margin(table, alpha, n),
        })
        .collect();
    Ok(report(table, Property::new(false, alpha), alpha, margins))
}

/// Chord inequality across `n = 6` for all `m in {3, 4, 5}`, `6 < n <= n_max`.
pub fn check_weak_alpha_dowker(table: &DowkerTable, alpha: f64) -> Result<DowkerReport> {
    check_alpha(table, alpha)?;
    if table.n_max <= 6 {
        return Err(Error::InsufficientTable(format!("n_max = {} <= 6", table.n_max)));
    }
    let mut margins = Vec::new();
    for m in 3..6 {
        for n in 7..=table.n_max {
            margins.push(Margin {
                witness: vec![m, 6, n],
                value: weak_margin(table, alpha, m, n),
            });
        }
    }
    Ok(report(table, Property::new(true, alpha), alpha, margins))
}

/// The log-convexity margin `log A(n-1) + log A(n+1) - 2 log A(n)` for each
/// `n` in `n_from..=n_to`.
pub fn log_convexity_scan(table: &DowkerTable, n_from: usize, n_to: usize) -> Result<Vec<(usize, f64)>> {
    if n_from < table.n_min + 1 || n_to + 1 > table.n_max || n_from > n_to {
        return Err(Error::InsufficientTable(format!(
            "scan {n_from}..={n_to} needs {}..={}, table has {}..={}",
            n_from.saturating_sub(1),
            n_to + 1,
            table.n_min,
            table.n_max
        )));
    }
    Ok((n_from..=n_to).map(|n| (n, plain_margin(table, 0.0, n))).collect())
}

/// Smallest `alpha` in `[0, ALPHA_CAP]` passing the weak check, located by
/// bisection to width `1e-6`; `None` if `ALPHA_CAP` already fails.
pub fn estimate_min_weak_alpha(table: &DowkerTable) -> Result<Option<f64>> {
    let pass = |a: f64| check_weak_alpha_dowker(table, a).map(|r| r.verdict);
    if pass(0.0)? {
        return Ok(Some(0.0));
    }
    if !pass(ALPHA_CAP)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, ALPHA_CAP);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if pass(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// `(sqrt A(5) + sqrt A(7) - 2 sqrt A(6)) / (sqrt A(5) + sqrt A(7) + 2 sqrt A(6))`
/// for the Euclidean disk.
pub fn stability_epsilon0() -> f64 {
    let s = |n| disk_akn(n).expect("n >= 3").sqrt();
    let (a5, a6, a7) = (s(5), s(6), s(7));
    (a5 + a7 - 2.0 * a6) / (a5 + a7 + 2.0 * a6)
}

/// Hausdorff distance from the unit circle after rescaling `m` to mean
/// support value 1, and whether it is within [`stability_epsilon0`].
pub fn check_stability_gate(m: &NormDisk) -> (f64, bool) {
    let p = m.disk();
    let s = std::f64::consts::TAU / p.perimeter();
    // the support function of a polygon peaks at vertex directions and
    // bottoms out at edge normals
    let d = (s * p.max_vertex_radius() - 1.0).max(1.0 - s * p.min_edge_offset());
    (d, d <= stability_epsilon0())
}

/// Lower bound on the average `2 alpha`-th powered perimeter of unit-area
/// cells, given `A_{M_iso}(6)`: `(4 A)^alpha`, or `log(4 A) / 2` at
/// `alpha = 0`.
pub fn powered_bound(a6: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        0.5 * (4.0 * a6).ln()
    } else {
        (4.0 * a6).powf(alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    #[serde(rename = "CERTIFIED_2ALPHA_HONEYCOMB")]
    Certified2AlphaHoneycomb,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoneycombCertificate {
    pub norm_id: String,
    pub alpha: f64,
    pub iso_table: DowkerTable,
    pub weak_report: DowkerReport,
    pub conclusion: Conclusion,
    /// optimal origin-symmetric hexagon about the isoperimetrix; a
    /// parallelogram when the isoperimetrix has only four sides
    pub hexagon: Option<ConvexPolygon>,
    pub bound_value: f64,
}

/// Certifies the `2 alpha`-honeycomb property of the norm with unit disk
/// `m`: isoperimetrix, its table, then the weak check. The table runs to
/// the isoperimetrix's edge count, clamped to `7..=CERTIFICATE_NMAX_CAP`.
pub fn honeycomb_certificate(m: &NormDisk, alpha: f64, tol: Tolerance) -> Result<HoneycombCertificate> {
    let edges = m.disk().len();
    honeycomb_certificate_with(m, alpha, edges.clamp(7, CERTIFICATE_NMAX_CAP), tol)
}

/// [`honeycomb_certificate`] with an explicit table length.
pub fn honeycomb_certificate_with(m: &NormDisk, alpha: f64, n_max: usize, tol: Tolerance) -> Result<HoneycombCertificate> {
    let iso = m.isoperimetrix(tol)?;
    let mut iso_table = dowker_table(iso.disk(), n_max.max(7), tol)?;
    iso_table.disk_id = format!("iso({}-gon)", m.disk().len());
    let weak_report = check_weak_alpha_dowker(&iso_table, alpha)?;
    let (conclusion, hexagon) = if weak_report.verdict {
        let h = min_area_symmetric_circumscribed(&iso, 6, tol)?;
        (Conclusion::Certified2AlphaHoneycomb, Some(h.polygon))
    } else {
        (Conclusion::NotCertified, None)
    };
    Ok(HoneycombCertificate {
        norm_id: format!("{}-gon", m.disk().len()),
        alpha,
        bound_value: powered_bound(iso_table.a(6), alpha),
        iso_table,
        weak_report,
        conclusion,
        hexagon,
    })
}

/// One row of the regular-polygon sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub verdict: bool,
    pub worst_margin: f64,
    /// `(m, n)` of the worst weak margin
    pub witness: (usize, usize),
}

/// Weak check on the solver's table for the regular `2k`-gon about the
/// unit disk, `n` running to `max(2k, 7)`.
pub fn regular_gon_row(k: usize, alpha: f64, tol: Tolerance) -> Result<SweepRow> {
    if !(2..=64).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k} outside 2..=64")));
    }
    let p = ConvexPolygon::regular_about_unit_disk(2 * k)?;
    let table = dowker_table(&p, (2 * k).max(7), tol)?;
    let r = check_weak_alpha_dowker(&table, alpha)?;
    Ok(SweepRow {
        k,
        verdict: r.verdict,
        worst_margin: r.worst_margin,
        witness: (r.worst_witness[0], r.worst_witness[2]),
    })
}

/// Table of the regular `2k`-gon from the closed form, constant past `2k`.
pub fn regular_closed_form_table(k: usize, n_max: usize, tol: Tolerance) -> Result<DowkerTable> {
    let area = regular_akn(k, 2 * k)?;
    let values = (3..=n_max)
        .map(|n| if n <= 2 * k { regular_akn(k, n) } else { Ok(area) })
        .collect::<Result<Vec<_>>>()?;
    DowkerTable::from_values(format!("closed-form {}-gon", 2 * k), values, area, tol)
}
