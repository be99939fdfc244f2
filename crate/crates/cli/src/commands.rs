use std::path::Path;

use honeylab::circumscribe::{min_area_symmetric_circumscribed, Circumscriber, DowkerTable};
use honeylab::dowker::{
    check_alpha_dowker, check_stability_gate, check_weak_alpha_dowker, honeycomb_certificate,
    honeycomb_certificate_with, regular_gon_row, stability_epsilon0, Conclusion, DowkerReport,
};
use honeylab::geom::{read_polygon_json, write_polygon_json, ConvexPolygon, Tolerance};
use honeylab::norms::{NormDisk, SMOOTH_DISK_VERTICES};
use honeylab::tilings::{
    build_hex_tiling, build_lattice_patch, build_voronoi_patch, normality_constants, steinhaus_example_patch,
    steinhaus_greedy, window_average, window_average_square, Prototype, StatKind, Step, TilingPatch,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::output::{csv_text, envelope, num, parse_csv, read, write};
use crate::svg::{render, Layer, Overlay};

pub const ALPHA_MAX: f64 = 8.0;
pub const NMAX_RANGE: (usize, usize) = (6, 512);
pub const R_MAX: f64 = 1e4;

type Res<T> = Result<T, CliError>;

struct Ctx {
    tol: Tolerance,
    config: Value,
    seed: u64,
    reproducible: bool,
}

/// Runs one command; the returned code is 0 on success and 1 when a
/// check is negative.
pub fn run(cli: &Cli) -> Res<u8> {
    let ctx = Ctx {
        tol: Tolerance::new(cli.global.rel, cli.global.abs)?,
        config: serde_json::to_value(cli).expect("config serializes"),
        seed: cli.global.seed,
        reproducible: cli.global.reproducible,
    };
    match &cli.command {
        Command::Isoperimetrix(a) => isoperimetrix(&ctx, a),
        Command::Circumscribe(a) => circumscribe(&ctx, a),
        Command::DowkerTable(a) => dowker_table(&ctx, a),
        Command::DowkerCheck(a) => dowker_check(&ctx, a),
        Command::Honeycomb(a) => honeycomb(&ctx, a),
        Command::Stability(a) => stability(&ctx, a),
        Command::Tiling(a) => tiling(&ctx, a),
        Command::Steinhaus(a) => steinhaus(&ctx, a),
        Command::Sweep(a) => sweep(&ctx, a),
    }
}

fn check_alpha(alpha: f64) -> Res<()> {
    if (0.0..=ALPHA_MAX).contains(&alpha) {
        Ok(())
    } else {
        Err(CliError::Parse(format!("alpha = {alpha} outside [0, {ALPHA_MAX}]")))
    }
}

fn check_nmax(n: usize) -> Res<()> {
    if (NMAX_RANGE.0..=NMAX_RANGE.1).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Parse(format!("nmax = {n} outside [{}, {}]", NMAX_RANGE.0, NMAX_RANGE.1)))
    }
}

fn check_r(r: f64) -> Res<()> {
    if r > 0.0 && r <= R_MAX {
        Ok(())
    } else {
        Err(CliError::Parse(format!("R = {r} outside (0, {R_MAX}]")))
    }
}

fn polygon(ctx: &Ctx, path: &Path) -> Res<ConvexPolygon> {
    Ok(read_polygon_json(&read(path)?, ctx.tol)?)
}

fn norm(ctx: &Ctx, path: &Path) -> Res<NormDisk> {
    Ok(NormDisk::new(polygon(ctx, path)?, ctx.tol)?)
}

/// Writes `text` to `path`, or prints it when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Res<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn svg(ctx: &Ctx, path: Option<&Path>, layers: &[Layer], overlay: Option<Overlay>) -> Res<()> {
    match path {
        Some(p) => write(p, &render(layers, overlay, &ctx.config, ctx.reproducible)),
        None => Ok(()),
    }
}

fn isoperimetrix(ctx: &Ctx, a: &IsoArgs) -> Res<u8> {
    let m = norm(ctx, &a.input)?;
    let iso = m.isoperimetrix(ctx.tol)?;
    let meta = json!({ "tool": "honeylab", "version": crate::output::VERSION, "config": ctx.config });
    emit(a.out.as_deref(), &(write_polygon_json(iso.disk(), Some(meta)) + "\n"))?;
    svg(
        ctx,
        a.svg.as_deref(),
        &[
            Layer { polygons: std::slice::from_ref(m.disk()), stroke: "#555555", fill: "none" },
            Layer { polygons: std::slice::from_ref(iso.disk()), stroke: "#1f5fa8", fill: "none" },
        ],
        None,
    )?;
    Ok(0)
}

fn circumscribe(ctx: &Ctx, a: &CircumscribeArgs) -> Res<u8> {
    if a.n < 3 {
        return Err(CliError::Parse(format!("n = {} < 3", a.n)));
    }
    let k = polygon(ctx, &a.input)?;
    let r = if a.symmetric {
        min_area_symmetric_circumscribed(&NormDisk::new(k.clone(), ctx.tol)?, a.n, ctx.tol)?
    } else {
        Circumscriber::new(&k, ctx.tol).solve(a.n)?
    };
    let meta = json!({
        "tool": "honeylab",
        "version": crate::output::VERSION,
        "config": ctx.config,
        "area": r.area_value,
        "flush_edges": r.flush_edges,
        "slack_side_used": r.slack_side_used,
    });
    emit(a.out.as_deref(), &(write_polygon_json(&r.polygon, Some(meta)) + "\n"))?;
    svg(
        ctx,
        a.svg.as_deref(),
        &[
            Layer { polygons: std::slice::from_ref(&r.polygon), stroke: "#1f5fa8", fill: "#dde8f5" },
            Layer { polygons: std::slice::from_ref(&k), stroke: "#333333", fill: "#ffffff" },
        ],
        None,
    )?;
    eprintln!("A = {}", num(r.area_value));
    Ok(0)
}

fn dowker_table(ctx: &Ctx, a: &TableArgs) -> Res<u8> {
    check_nmax(a.nmax)?;
    let k = polygon(ctx, &a.input)?;
    let solver = Circumscriber::new(&k, ctx.tol);
    let values = (3..=a.nmax)
        .into_par_iter()
        .map(|n| solver.solve(n).map(|r| r.area_value))
        .collect::<Result<Vec<_>, _>>()?;
    let table = DowkerTable::from_values(format!("{}-gon", k.len()), values, k.area(), ctx.tol)?;
    let rows: Vec<Vec<String>> = table
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![(i + 3).to_string(), num(*v)])
        .collect();
    let text = csv_text(
        &ctx.config,
        &[("disk_id", table.disk_id.clone()), ("disk_area", num(table.disk_area))],
        &["n", "A_K(n)"],
        &rows,
    )?;
    if a.csv.is_some() || a.json.is_none() {
        emit(a.csv.as_deref(), &text)?;
    }
    if let Some(p) = &a.json {
        write(p, &envelope(&ctx.config, &table))?;
    }
    Ok(0)
}

fn read_table(ctx: &Ctx, path: &Path) -> Res<DowkerTable> {
    let doc = parse_csv(&read(path)?)?;
    let key = |k: &str| doc.keys.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone());
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| CliError::Csv(format!("{s:?}: {e}")));
    let mut values = Vec::new();
    for (i, r) in doc.records.iter().enumerate() {
        if r.len() < 2 {
            return Err(CliError::Csv(format!("row {} has {} fields", i + 1, r.len())));
        }
        let n = parse(&r[0])?;
        if n != (i + 3) as f64 {
            return Err(CliError::Csv(format!("row {} has n = {}, expected {}", i + 1, &r[0], i + 3)));
        }
        values.push(parse(&r[1])?);
    }
    let area = match key("disk_area") {
        Some(s) => parse(&s)?,
        None => return Err(CliError::Csv("missing '# disk_area:' header".into())),
    };
    let id = key("disk_id").unwrap_or_else(|| "table".into());
    Ok(DowkerTable::from_values(id, values, area, ctx.tol)?)
}

fn describe(r: &DowkerReport) -> String {
    format!(
        "{:?} alpha={} verdict={} worst_margin={} witness={:?}{}",
        r.property,
        num(r.alpha),
        r.verdict,
        num(r.worst_margin),
        r.worst_witness,
        match r.truncated_at {
            Some(n) => format!(" truncated_at={n}"),
            None => String::new(),
        }
    )
}

fn dowker_check(ctx: &Ctx, a: &CheckArgs) -> Res<u8> {
    check_alpha(a.alpha)?;
    let table = read_table(ctx, &a.table)?;
    let r = match a.property {
        PropertyArg::Alpha => check_alpha_dowker(&table, a.alpha)?,
        PropertyArg::Weak => check_weak_alpha_dowker(&table, a.alpha)?,
    };
    println!("{}", describe(&r));
    for w in &r.warnings {
        eprintln!("warning: margin {} at {:?} is within the noise band", num(w.value), w.witness);
    }
    if let Some(p) = &a.json {
        write(p, &envelope(&ctx.config, &r))?;
    }
    Ok(if r.verdict { 0 } else { 1 })
}

fn honeycomb(ctx: &Ctx, a: &HoneycombArgs) -> Res<u8> {
    check_alpha(a.alpha)?;
    if let Some(n) = a.nmax {
        check_nmax(n)?;
    }
    let m = norm(ctx, &a.input)?;
    let cert = match a.nmax {
        Some(n) => honeycomb_certificate_with(&m, a.alpha, n, ctx.tol)?,
        None => honeycomb_certificate(&m, a.alpha, ctx.tol)?,
    };
    let ok = cert.conclusion == Conclusion::Certified2AlphaHoneycomb;
    println!("{:?} bound={} {}", cert.conclusion, num(cert.bound_value), describe(&cert.weak_report));
    if !ok {
        eprintln!(
            "weak check fails at (m, n) = ({}, {}) with margin {}",
            cert.weak_report.worst_witness[0],
            cert.weak_report.worst_witness[2],
            num(cert.weak_report.worst_margin)
        );
    }
    if let Some(p) = &a.json {
        write(p, &envelope(&ctx.config, &cert))?;
    }
    if let Some(h) = &cert.hexagon {
        let iso = m.isoperimetrix(ctx.tol)?;
        svg(
            ctx,
            a.svg.as_deref(),
            &[
                Layer { polygons: std::slice::from_ref(h), stroke: "#1f5fa8", fill: "#dde8f5" },
                Layer { polygons: std::slice::from_ref(iso.disk()), stroke: "#333333", fill: "#ffffff" },
            ],
            None,
        )?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn stability(ctx: &Ctx, a: &StabilityArgs) -> Res<u8> {
    let m = norm(ctx, &a.input)?;
    let (d, pass) = check_stability_gate(&m);
    let eps = stability_epsilon0();
    println!("distance={} epsilon0={} pass={}", num(d), num(eps), pass);
    if let Some(p) = &a.json {
        let r = json!({ "distance": d, "epsilon0": eps, "pass": pass });
        write(p, &envelope(&ctx.config, &r))?;
    }
    Ok(if pass { 0 } else { 1 })
}

fn parse_stat(s: &str) -> Res<StatKind> {
    match s {
        "log" => Ok(StatKind::LogPerim),
        "sides" => Ok(StatKind::Sides),
        "iso" => Ok(StatKind::IsoRatio),
        _ => {
            let a = s
                .strip_prefix('p')
                .and_then(|t| t.parse::<f64>().ok())
                .ok_or_else(|| CliError::Parse(format!("unknown stat {s:?}; use p<alpha>, log, sides or iso")))?;
            if !(a > 0.0 && a <= 2.0 * ALPHA_MAX) {
                return Err(CliError::Parse(format!("stat exponent {a} outside (0, {}]", 2.0 * ALPHA_MAX)));
            }
            Ok(StatKind::PoweredPerim(a))
        }
    }
}

fn parse_schedule(s: &str) -> Res<Vec<Step>> {
    s.chars()
        .map(|c| match c.to_ascii_uppercase() {
            'A' => Ok(Step::A),
            'B' => Ok(Step::B),
            _ => Err(CliError::Parse(format!("schedule {s:?}: steps are A or B"))),
        })
        .collect()
}

fn tiling(ctx: &Ctx, a: &TilingArgs) -> Res<u8> {
    check_r(a.r)?;
    let kind = parse_stat(&a.stat)?;
    if a.points == 0 || a.points > 32 {
        return Err(CliError::Parse(format!("points = {} outside 1..=32", a.points)));
    }
    let m = match &a.norm {
        Some(p) => norm(ctx, p)?,
        None => NormDisk::euclidean(SMOOTH_DISK_VERTICES)?,
    };
    let patch: TilingPatch = match a.proto {
        ProtoArg::Hex => build_hex_tiling(&m, a.r, ctx.tol)?,
        ProtoArg::Square => build_lattice_patch(&Prototype::Square, a.r)?,
        ProtoArg::Triangle => build_lattice_patch(&Prototype::Triangle, a.r)?,
        ProtoArg::Voronoi => build_voronoi_patch(a.jitter, a.r, ctx.seed)?,
        ProtoArg::Steinhaus => steinhaus_example_patch(&parse_schedule(&a.schedule)?)?,
    };
    let top = a.r.min(patch.window_r);
    // windows narrower than a cell diameter may hold no whole cell
    let floor = 2.0 * patch.meta.big_r_hat;
    let mut r_list: Vec<f64> = (0..a.points)
        .map(|i| top / 2f64.powi(i as i32))
        .filter(|&r| r == top || r >= floor)
        .collect();
    r_list.reverse();
    let series = match a.proto {
        ProtoArg::Steinhaus => window_average_square(&patch, &m, kind, &r_list)?,
        _ => window_average(&patch, &m, kind, &r_list)?,
    };
    let nc = normality_constants(&patch)?;
    let rows: Vec<Vec<String>> = (0..r_list.len())
        .map(|i| vec![num(series.r_values[i]), series.counts[i].to_string(), num(series.stat_values[i])])
        .collect();
    let text = csv_text(
        &ctx.config,
        &[
            ("cells", patch.cells.len().to_string()),
            ("r_hat", num(nc.r_hat)),
            ("big_r_hat", num(nc.big_r_hat)),
            ("max_neighbors", nc.max_neighbors.to_string()),
        ],
        &["R", "count", "value"],
        &rows,
    )?;
    emit(a.csv.as_deref(), &text)?;
    let overlay = match a.proto {
        ProtoArg::Steinhaus => Overlay::Square(top),
        _ => Overlay::Circle(top),
    };
    svg(
        ctx,
        a.svg.as_deref(),
        &[Layer { polygons: &patch.cells, stroke: "#333333", fill: "#f4f1e8" }],
        Some(overlay),
    )?;
    Ok(0)
}

fn steinhaus(ctx: &Ctx, a: &SteinhausArgs) -> Res<u8> {
    if a.milestones == 0 || a.milestones > 16 {
        return Err(CliError::Parse(format!("milestones = {} outside 1..=16", a.milestones)));
    }
    if !(a.nu > 0.0 && a.nu <= 64.0) {
        return Err(CliError::Parse(format!("nu = {} outside (0, 64]", a.nu)));
    }
    let run = steinhaus_greedy(a.nu, a.milestones)?;
    let rows: Vec<Vec<String>> = run
        .milestones
        .iter()
        .map(|m| vec![m.step.to_string(), m.half_side.to_string(), num(m.r), num(m.value)])
        .collect();
    let schedule: String = run.schedule.iter().map(|s| format!("{s:?}")).collect();
    let text = csv_text(&ctx.config, &[("schedule", schedule)], &["step", "half_side", "R", "value"], &rows)?;
    emit(a.csv.as_deref(), &text)?;
    let last = run.milestones.last().map(|m| m.r).unwrap_or(run.patch.window_r);
    svg(
        ctx,
        a.svg.as_deref(),
        &[Layer { polygons: &run.patch.cells, stroke: "#333333", fill: "#f4f1e8" }],
        Some(Overlay::Square(last)),
    )?;
    Ok(0)
}

fn sweep(ctx: &Ctx, a: &SweepArgs) -> Res<u8> {
    check_alpha(a.alpha)?;
    if a.k_min < 2 || a.k_max > 64 || a.k_min > a.k_max {
        return Err(CliError::Parse(format!("k range {}..={} outside 2..=64", a.k_min, a.k_max)));
    }
    let rows = (a.k_min..=a.k_max)
        .into_par_iter()
        .map(|k| regular_gon_row(k, a.alpha, ctx.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let failing: Vec<String> = rows.iter().filter(|r| !r.verdict).map(|r| r.k.to_string()).collect();
    let records: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.verdict.to_string(),
                num(r.worst_margin),
                r.witness.0.to_string(),
                r.witness.1.to_string(),
            ]
        })
        .collect();
    let text = csv_text(
        &ctx.config,
        &[("failing", failing.join(" "))],
        &["k", "verdict", "worst_margin", "m", "n"],
        &records,
    )?;
    emit(a.csv.as_deref(), &text)?;
    Ok(0)
}
