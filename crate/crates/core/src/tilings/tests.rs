use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn euclid() -> NormDisk {
    NormDisk::euclidean(crate::norms::SMOOTH_DISK_VERTICES).unwrap()
}

fn regularity(c: &ConvexPolygon) -> f64 {
    let ctr = c.centroid();
    let d: Vec<f64> = c.vertices().iter().map(|v| v.dist(ctr)).collect();
    let (lo, hi) = d.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    (hi - lo) / hi
}

#[test]
fn euclidean_hex_tiling_is_regular() {
    let m = euclid();
    let p = build_hex_tiling(&m, 20.0, tol()).unwrap();
    assert!(p.cells.len() > 1000);
    let target = 8.0 * 3f64.sqrt();
    for c in &p.cells {
        assert_eq!(c.len(), 6);
        assert!((c.area() - 1.0).abs() < 1e-10);
        assert!(regularity(c) < 2e-3);
    }
    // normals at every multiple of 60 degrees give an exactly regular cell
    let exact = build_hex_tiling(&NormDisk::euclidean(4098).unwrap(), 3.0, tol()).unwrap();
    assert!(exact.cells.iter().all(|c| regularity(c) < 1e-9));
    let s = window_average(&p, &m, StatKind::PoweredPerim(2.0), &[10.0, 20.0]).unwrap();
    for v in &s.stat_values {
        assert!((v - target).abs() < 1e-5 * target, "{v}");
    }
    let sides = window_average(&p, &m, StatKind::Sides, &[20.0]).unwrap();
    assert_eq!(sides.stat_values[0], 6.0);
    let cov = coverage_check(&p, 15.0, 2000, 3);
    assert_eq!(cov.uncovered + cov.overlapping, 0, "{cov:?}");
}

#[test]
fn hex_bound_euclidean_and_square_norm() {
    let b = honeycomb_bound(&euclid(), 1.0, tol()).unwrap();
    assert!((b - 8.0 * 3f64.sqrt()).abs() < 1e-4);
    let lb = honeycomb_bound(&euclid(), 0.0, tol()).unwrap();
    assert!((lb - 0.5 * b.ln()).abs() < 1e-6);

    let sq = NormDisk::regular(2).unwrap();
    assert!((honeycomb_bound(&sq, 1.0, tol()).unwrap() - 8.0).abs() < 1e-12);
    let p = build_hex_tiling(&sq, 10.0, tol()).unwrap();
    assert!(p.cells.iter().all(|c| c.len() == 4));
    let s = window_average(&p, &sq, StatKind::PoweredPerim(2.0), &[10.0]).unwrap();
    assert!((s.stat_values[0] - 8.0).abs() < 1e-9);
}

#[test]
fn lattice_patches() {
    let m = euclid();
    let sq = build_lattice_patch(&Prototype::Square, 20.0).unwrap();
    let n = sq.cells.len() as f64;
    assert!((n / (PI * 400.0) - 1.0).abs() < 0.1, "{n}");
    assert!(sq.cells.iter().all(|c| c.len() == 4 && (c.area() - 1.0).abs() < 1e-12));
    let s = window_average(&sq, &m, StatKind::PoweredPerim(2.0), &[5.0, 20.0]).unwrap();
    assert!(s.stat_values.iter().all(|v| (v - 16.0).abs() < 1e-5));
    let s = window_average_square(&sq, &m, StatKind::Sides, &[3.0, 10.0]).unwrap();
    assert_eq!(s.stat_values, vec![4.0, 4.0]);
    assert!(s.counts[0] < s.counts[1]);

    let tri = build_lattice_patch(&Prototype::Triangle, 20.0).unwrap();
    assert!(tri.cells.iter().all(|c| c.len() == 3 && (c.area() - 1.0).abs() < 1e-12));
    let s = window_average(&tri, &m, StatKind::PoweredPerim(2.0), &[20.0]).unwrap();
    assert!((s.stat_values[0] - 12.0 * 3f64.sqrt()).abs() < 1e-4);
    let cov = coverage_check(&tri, 15.0, 2000, 5);
    assert_eq!(cov.uncovered + cov.overlapping, 0, "{cov:?}");

    let hex = build_lattice_patch(&Prototype::Hexagon, 20.0).unwrap();
    assert!(hex.cells.iter().all(|c| c.len() == 6 && (c.area() - 1.0).abs() < 1e-12));
}

#[test]
fn window_errors() {
    let m = euclid();
    let sq = build_lattice_patch(&Prototype::Square, 5.0).unwrap();
    assert_eq!(
        window_average(&sq, &m, StatKind::Sides, &[0.5]),
        Err(Error::EmptyWindow(0.5))
    );
    assert!(window_average(&sq, &m, StatKind::Sides, &[6.0]).is_err());
    assert!(window_average(&sq, &m, StatKind::Sides, &[3.0, 2.0]).is_err());
    assert!(window_average(&sq, &m, StatKind::PoweredPerim(0.0), &[3.0]).is_err());
}

#[test]
fn chakerian_examples() {
    let m = euclid();
    let sq = ConvexPolygon::regular_about_unit_disk(4).unwrap();
    let g = chakerian_gap(&m, &sq, tol()).unwrap();
    assert!((g.l - 8.0).abs() < 1e-5 && (g.big_f - 4.0).abs() < 1e-12);
    assert!((g.f - 4.0).abs() < 1e-5);
    assert!(g.gap.abs() < 1e-5 * g.l * g.l);

    let rect = ConvexPolygon::canonicalize(
        &[(0.0, 0.0), (1.0, 0.0), (1.0, 2.0), (0.0, 2.0)].map(Point2::from),
        tol(),
    )
    .unwrap();
    let g = chakerian_gap(&m, &rect, tol()).unwrap();
    assert!((g.l - 6.0).abs() < 1e-5 && (g.f - 4.0).abs() < 1e-5);
    assert!((g.gap - 4.0).abs() < 1e-4);
}

fn random_norm(rng: &mut ChaCha8Rng) -> NormDisk {
    loop {
        let h = rng.gen_range(2..8);
        let mut pts: Vec<Point2> = (0..h)
            .map(|_| Point2::polar(rng.gen_range(0.0..PI)) * rng.gen_range(0.5..2.0))
            .collect();
        let neg: Vec<Point2> = pts.iter().map(|&p| -p).collect();
        pts.extend(neg);
        if let Ok(p) = ConvexPolygon::canonicalize(&pts, tol()) {
            if let Ok(m) = NormDisk::new(p, tol()) {
                if m.disk().area() > 0.1 {
                    return m;
                }
            }
        }
    }
}

#[test]
fn chakerian_inequality_and_equality() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let m = random_norm(&mut rng);
        let pts: Vec<Point2> = (0..rng.gen_range(3..12))
            .map(|_| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let Ok(k) = ConvexPolygon::canonicalize(&pts, tol()) else { continue };
        let g = chakerian_gap(&m, &k, tol()).unwrap();
        assert!(g.gap >= -1e-9 * g.l * g.l, "{g:?}");
    }
    for _ in 0..20 {
        let m = random_norm(&mut rng);
        let iso = m.isoperimetrix(tol()).unwrap();
        let mut normals: Vec<f64> = (0..rng.gen_range(3..9)).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        normals.sort_by(f64::total_cmp);
        let Ok(star) = support_polygon(iso.disk(), &normals) else { continue };
        let Ok(star) = ConvexPolygon::canonicalize(&star, tol()) else { continue };
        let k = star.scaled(rng.gen_range(0.2..5.0)).translated(Point2::new(0.3, -0.7));
        let g = chakerian_gap(&m, &k, tol()).unwrap();
        assert!(g.gap.abs() <= 1e-8 * g.l * g.l, "{g:?}");
    }
}

#[test]
fn normality() {
    let sq = build_lattice_patch(&Prototype::Square, 8.0).unwrap();
    let n = normality_constants(&sq).unwrap();
    assert!((n.r_hat - 0.5).abs() < 1e-9 && (n.big_r_hat - 0.5f64.sqrt()).abs() < 1e-9);
    assert!((n.max_neighbors_bound - 17.0).abs() < 1e-6);
    assert_eq!(n.max_neighbors, 8);
    assert!(n.bound_holds);
    let hex = build_lattice_patch(&Prototype::Hexagon, 8.0).unwrap();
    assert_eq!(normality_constants(&hex).unwrap().max_neighbors, 6);
    let mut one = sq.clone();
    one.cells.truncate(1);
    one.sides.truncate(1);
    assert_eq!(normality_constants(&one).unwrap().max_neighbors, 0);
}

#[test]
fn boundary_counts_grow_linearly() {
    let sq = build_lattice_patch(&Prototype::Square, 80.0).unwrap();
    let (a, b) = (boundary_cell_count(&sq, 30.0), boundary_cell_count(&sq, 60.0));
    let ratio = b as f64 / a as f64;
    assert!((1.5..=2.5).contains(&ratio), "{a} {b}");
    assert!(boundary_cell_count(&sq, 0.1) >= 1);
    let hex = build_lattice_patch(&Prototype::Hexagon, 120.0).unwrap();
    let per_r: Vec<f64> = [25.0, 50.0, 100.0].iter().map(|&r| boundary_cell_count(&hex, r) as f64 / r).collect();
    let (lo, hi) = per_r.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &v| (l.min(v), h.max(v)));
    assert!(hi / lo < 1.3, "{per_r:?}");
}

#[test]
fn power_means_are_ordered() {
    let m = random_norm(&mut ChaCha8Rng::seed_from_u64(4));
    let rs = [5.0, 10.0, 15.0];
    let patches = [
        build_lattice_patch(&Prototype::Square, 15.0).unwrap(),
        build_voronoi_patch(0.3, 15.0, 9).unwrap(),
        build_hex_tiling(&m, 15.0, tol()).unwrap(),
    ];
    for (pi, p) in patches.iter().enumerate() {
        let lg = window_average(p, &m, StatKind::LogPerim, &rs).unwrap();
        let means: Vec<Vec<f64>> = (1..=3)
            .map(|a| {
                window_average(p, &m, StatKind::PoweredPerim(a as f64), &rs)
                    .unwrap()
                    .stat_values
                    .iter()
                    .map(|v| v.powf(1.0 / a as f64))
                    .collect()
            })
            .collect();
        for i in 0..rs.len() {
            let chain = [lg.stat_values[i].exp(), means[0][i], means[1][i], means[2][i]];
            for w in chain.windows(2) {
                assert!(w[0] <= w[1] * (1.0 + 1e-9), "patch {pi}: {chain:?}");
            }
            if pi != 1 {
                // single-shape patches
                for w in chain.windows(2) {
                    assert!((w[1] - w[0]).abs() <= 1e-9 * w[1], "patch {pi}: {chain:?}");
                }
            }
        }
    }
}

#[test]
fn voronoi_patch_statistics() {
    let p = build_voronoi_patch(0.3, 40.0, 1).unwrap();
    let m = euclid();
    let s = window_average(&p, &m, StatKind::Sides, &[10.0, 20.0, 40.0]).unwrap();
    assert!(s.stat_values.iter().all(|&v| v <= 6.5 && v > 5.0), "{:?}", s.stat_values);
    let cov = coverage_check(&p, 35.0, 3000, 2);
    assert_eq!(cov.uncovered + cov.overlapping, 0, "{cov:?}");
    let n = normality_constants(&p).unwrap();
    assert!(n.bound_holds && n.r_hat > 0.0);
}

#[test]
fn steinhaus_square_window() {
    let p = steinhaus_example_patch(&[Step::A, Step::A, Step::B]).unwrap();
    let s = window_average_square(&p, &euclid(), StatKind::Sides, &[9.5]).unwrap();
    assert_eq!(s.stat_values[0], 76.0 / 9.0);
    assert_eq!(s.counts[0], 9);
    let run = steinhaus_greedy(8.0, 3).unwrap();
    let rs: Vec<f64> = run.milestones.iter().map(|m| m.r).collect();
    let s = window_average_square(&run.patch, &euclid(), StatKind::Sides, &rs).unwrap();
    for (v, m) in s.stat_values.iter().zip(&run.milestones) {
        assert_eq!(*v, m.value);
    }
}
