//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line
//! straight to stdout so the summary shows up without `--nocapture`.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use hullbound::c2_lab::{geometric_hull_witness, knot_degree_experiment, knot_samples, KnotSpec, SurfaceFamily};
use hullbound::cheb::{grid_hull, membership_numeric, minimax, BBox, Constraint, MembershipOptions};
use hullbound::exact_hull::{alignment_values, hull_point_search, membership_exact, PointConfiguration};
use hullbound::experiments::{
    chebyshev_symmetry_check, jacobian_constant_check, pathological_membership, quadratic_arc_separation,
    sequential_circle_witness, ArcSpec, PathologicalCurveSpec,
};
use hullbound::geometry::orthocenter;
use hullbound::{monomial_basis, AnyPoly, Complex64 as C, Dim, Generator, MembershipStatus, Query, SampledSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, pass: bool, detail: &str, elapsed: Duration, budget: Duration) {
    let pass = pass && elapsed <= budget;
    let line = format!(
        "{} criterion {id:>2} {title}: {detail} [{:.2}s / budget {}s]\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(pass, "{line}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn finite(points: Vec<C>) -> SampledSet<f64> {
    SampledSet::from_points(points, "points").unwrap()
}

#[test]
fn criterion_01_equally_spaced_hull() {
    let start = Instant::now();
    let mut pass = true;
    let mut worst_residual: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    for n in 3..=8 {
        let cfg = PointConfiguration::<f64>::roots_of_unity(n + 1).unwrap();
        let v = membership_exact(&cfg, C::new(0.0, 0.0), 1e-9).unwrap();
        let r = v.residual.unwrap();
        worst_residual = worst_residual.max(r);
        pass &= v.is_member() && r < 1e-10;

        let k = finite(cfg.points().to_vec());
        let grid = grid_hull(&k, n, BBox::square(-1.2, 1.2), 201, 201, &MembershipOptions::grid()).unwrap();
        for m in grid.members() {
            let d = cfg.points().iter().map(|&z| (z - m).norm()).fold(m.norm(), f64::min);
            worst_dist = worst_dist.max(d);
        }
        pass &= grid.status[100 * 201 + 100] == MembershipStatus::Member;
    }
    pass &= worst_dist <= 0.1;
    report(
        1,
        "equally spaced hull",
        pass,
        &format!("max residual {worst_residual:.2e}, farthest member cell {worst_dist:.4} from K ∪ {{0}}"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_02_orthocenter() {
    let start = Instant::now();
    let mut r = rng(2);
    let (mut acute, mut other) = (0, 0);
    let mut worst: f64 = 0.0;
    let mut wrong = 0;
    while acute < 100 || other < 100 {
        let pts: Vec<C> = (0..3).map(|_| C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let Ok((h, is_acute)) = orthocenter(pts[0], pts[1], pts[2]) else { continue };
        // stay clear of nearly right triangles, where the hull point runs into a vertex
        let max_angle = (0..3)
            .map(|i| {
                let (a, b, c) = (pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]);
                ((b - a) / (c - a)).arg().abs()
            })
            .fold(0.0, f64::max);
        if (max_angle - PI / 2.0).abs() < 1e-2 || max_angle > PI - 1e-2 {
            continue;
        }
        let cfg = PointConfiguration::new(pts.clone()).unwrap();
        let found = hull_point_search(&cfg, 1e-9).unwrap().point;
        if is_acute && acute < 100 {
            acute += 1;
            match found {
                Some(p) => worst = worst.max((p - h).norm()),
                None => wrong += 1,
            }
        } else if !is_acute && other < 100 {
            other += 1;
            wrong += found.is_some() as usize;
        }
    }
    // right triangles: Thales construction on random diameters
    let mut right_wrong = 0;
    for _ in 0..20 {
        let c = C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        let rad = r.gen_range(0.2..1.0);
        let t: f64 = r.gen_range(0.3..2.8);
        let pts = vec![c + rad, c - rad, c + C::from_polar(rad, t)];
        let cfg = PointConfiguration::new(pts).unwrap();
        right_wrong += hull_point_search(&cfg, 1e-9).unwrap().point.is_some() as usize;
    }
    report(
        2,
        "orthocenter",
        wrong == 0 && right_wrong == 0 && worst <= 1e-8,
        &format!("max |w - H| {worst:.2e} over 100 acute; {wrong} misclassified, {right_wrong} of 20 right triangles with a point"),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_03_torus_knots() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (p, q) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
        let spec = KnotSpec::new(p, q).unwrap();
        let d = (p + q) as usize;
        let below = knot_degree_experiment::<f64>(spec, d - 1, 2000, 128).unwrap().value;
        let at = knot_degree_experiment::<f64>(spec, d, 2000, 128).unwrap().value;
        pass &= below >= 0.999 && at <= 0.05;
        detail.push(format!("({p},{q}): d={} {below:.4}, d={d} {at:.4}", d - 1));
    }
    report(3, "torus knots", pass, &detail.join("; "), start.elapsed(), Duration::from_secs(180));
}

#[test]
fn criterion_04_surface_families() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for (spec, fam) in SurfaceFamily::<f64>::examples() {
        let base = fam.polynomial.eval(fam.base_point.0, fam.base_point.1);
        let k = knot_samples::<f64>(spec, 2000).unwrap();
        let a = geometric_hull_witness(&fam, &k).unwrap();
        let b = geometric_hull_witness(&fam, &knot_samples::<f64>(spec, 2000).unwrap()).unwrap();
        pass &= base == C::new(0.0, 0.0) && (a - b).abs() <= 1e-6 && a >= 0.1;
        detail.push(format!("K{}: {a:.4}", spec.p()));
    }
    report(4, "surface family clearance >= 0.1", pass, &detail.join(", "), start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_05_jacobian() {
    let start = Instant::now();
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let fact = (1..=n).product::<usize>() as f64;
        for _ in 0..100 {
            let pts: Vec<C> = (0..n).map(|_| C::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))).collect();
            let d = jacobian_constant_check(&pts).unwrap();
            worst = worst.max((d - fact).norm() / fact);
        }
    }
    report(
        5,
        "Jacobian determinant n!",
        worst <= 1e-6,
        &format!("max relative error {worst:.2e}"),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

/// Random `n + 1` points paired with a query: half are built hull points,
/// the rest uniform queries kept 0.05 away from the points.
fn cross_oracle_instance(r: &mut ChaCha8Rng) -> (Vec<C>, C) {
    let n = r.gen_range(3..=7);
    if r.gen_bool(0.5) {
        loop {
            let g0 = r.gen_range(0.05..0.6);
            let t = r.gen_range(0.2..0.8);
            if let Some(c) = sequential_circle_witness::<f64>(n, g0, t) {
                let a = C::from_polar(r.gen_range(0.5..2.0), r.gen_range(0.0..2.0 * PI));
                let b = C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
                let pts = c.angles.iter().map(|&th| a * C::from_polar(1.0, th) + b).collect();
                return (pts, a * c.w + b);
            }
        }
    }
    let pts: Vec<C> = (0..=n).map(|_| C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
    loop {
        let w = C::new(r.gen_range(-1.2..1.2), r.gen_range(-1.2..1.2));
        if pts.iter().all(|&z| (z - w).norm() >= 0.05) {
            return (pts, w);
        }
    }
}

#[test]
fn criterion_06_cross_oracle() {
    let start = Instant::now();
    let mut r = rng(6);
    let opts = MembershipOptions::default();
    let (mut compared, mut disagree, mut members) = (0, 0, 0);
    for _ in 0..500 {
        let (pts, w) = cross_oracle_instance(&mut r);
        let n = pts.len() - 1;
        let Ok(cfg) = PointConfiguration::new(pts.clone()) else { continue };
        let residual = alignment_values(&cfg, w).unwrap().relative_residual();
        if (1e-9..=0.05).contains(&residual) {
            continue;
        }
        let numeric = membership_numeric(&finite(pts), Query::C1(w), n, &opts).unwrap();
        compared += 1;
        let exact_member = residual < 1e-9;
        members += exact_member as usize;
        let clash = match numeric.status {
            MembershipStatus::Member => !exact_member,
            MembershipStatus::NonMember => exact_member,
            MembershipStatus::Borderline => false,
        };
        disagree += clash as usize;
    }
    report(
        6,
        "cross-oracle agreement",
        disagree == 0 && compared >= 250,
        &format!("{compared} compared ({members} exact members), {disagree} disagreements"),
        start.elapsed(),
        Duration::from_secs(300),
    );
}

fn random_generator(r: &mut ChaCha8Rng) -> Generator<f64> {
    match r.gen_range(0..3) {
        0 => Generator::Circle {
            center: C::new(r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5)),
            radius: r.gen_range(0.3..1.0),
        },
        1 => Generator::Arc { alpha: r.gen_range(0.3..3.0) },
        _ => Generator::Segment {
            a: C::new(r.gen_range(-1.0..0.0), r.gen_range(-1.0..1.0)),
            b: C::new(r.gen_range(0.0..1.0), r.gen_range(-1.0..1.0)),
        },
    }
}

/// Horner evaluation of a certificate, kept independent of the library's.
fn horner(coeffs: &[C], z: C) -> C {
    coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

#[test]
fn criterion_07_monotone_and_sound() {
    let start = Instant::now();
    let mut r = rng(7);
    let opts = MembershipOptions::default();
    let (mut violations, mut certificates, mut bad_certificates, mut exit2) = (0, 0, 0, 0);
    for _ in 0..200 {
        let g = random_generator(&mut r);
        let k = g.sample(120).unwrap();
        let pts = k.points1().unwrap().to_vec();
        let w = loop {
            let w = C::new(r.gen_range(-1.5..1.5), r.gen_range(-1.5..1.5));
            if pts.iter().all(|&z| (z - w).norm() >= 0.02) {
                break w;
            }
        };
        let mut prev = f64::INFINITY;
        for d in 1..=6 {
            let basis = monomial_basis(Dim::One, d).unwrap();
            let v = minimax(&k, &basis, &Constraint::PointValue(Query::C1(w)), 128).unwrap().value;
            if v > prev + 1e-7 {
                violations += 1;
            }
            prev = v;
        }
        for d in [2, 4, 6] {
            let verdict = membership_numeric(&k, Query::C1(w), d, &opts).unwrap();
            if verdict.verification_failed() {
                exit2 += 1;
                eprintln!("verification failed: {g:?}, w = {w}, d = {d}, value = {:?}", verdict.value);
            }
            if let Some(AnyPoly::One(p)) = verdict.certificate {
                certificates += 1;
                let dense = g.sample(1200).unwrap();
                let sup = dense.points1().unwrap().iter().map(|&z| horner(p.coeffs(), z).norm()).fold(0.0, f64::max);
                let sup = pts.iter().map(|&z| horner(p.coeffs(), z).norm()).fold(sup, f64::max);
                if !(horner(p.coeffs(), w).norm() >= 1.0 && sup < 1.0) {
                    bad_certificates += 1;
                }
            }
        }
    }
    report(
        7,
        "degree monotonicity and certificate soundness",
        violations == 0 && bad_certificates == 0 && exit2 == 0 && certificates > 0,
        &format!("{violations} monotonicity violations; {certificates} certificates, {bad_certificates} failed re-check; {exit2} verification failures"),
        start.elapsed(),
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_08_quadratic_arc_separation() {
    let start = Instant::now();
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    for alpha in [PI / 6.0, PI / 5.0, PI / 4.5] {
        let arc = ArcSpec::new(alpha, 2000).unwrap();
        for rad in [0.3, 0.6, 0.9] {
            for phi in [0.0, alpha / 2.0, -alpha / 2.0] {
                match quadratic_arc_separation(&arc, rad, phi) {
                    Ok(s) => worst = worst.min(s.ratio),
                    Err(_) => failures += 1,
                }
            }
        }
    }
    report(
        8,
        "quadratic arc separation",
        failures == 0 && worst > 1.005,
        &format!("min ratio {worst:.5}, {failures} searches exhausted"),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_pathological_curve() {
    let start = Instant::now();
    let spec = PathologicalCurveSpec::new(6).unwrap();
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for n in 1..=6 {
        let v = pathological_membership::<f64>(&spec, n).unwrap();
        let r = v.residual.unwrap();
        worst = worst.max(r);
        pass &= v.is_member() && r < 1e-10 && v.degree_bound == 2 * n + 1;
    }
    report(
        9,
        "pathological curve",
        pass,
        &format!("all rings member at degree 2n+1, max residual {worst:.2e}"),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_10_chebyshev_property() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let k = finite(PointConfiguration::<f64>::roots_of_unity(n + 1).unwrap().points().to_vec());
        let rep = chebyshev_symmetry_check(&k, n, 128).unwrap();
        worst = worst.max((rep.value - 1.0).abs());
    }
    report(
        10,
        "Chebyshev property",
        worst <= 5e-3,
        &format!("max |value - 1| {worst:.2e}"),
        start.elapsed(),
        Duration::from_secs(30),
    );
}

/// Andrew's monotone chain; counterclockwise hull without collinear points.
fn convex_hull(mut pts: Vec<C>) -> Vec<C> {
    pts.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    let cross = |o: C, a: C, b: C| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut hull: Vec<C> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &C>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Signed distance to a convex polygon: negative inside.
fn polygon_distance(hull: &[C], p: C) -> f64 {
    let m = hull.len();
    let mut inside = true;
    let mut dist = f64::INFINITY;
    for i in 0..m {
        let (a, b) = (hull[i], hull[(i + 1) % m]);
        let e = b - a;
        if e.re * (p - a).im - e.im * (p - a).re < 0.0 {
            inside = false;
        }
        let t = (((p - a).re * e.re + (p - a).im * e.im) / e.norm_sqr()).clamp(0.0, 1.0);
        dist = dist.min((p - (a + e * t)).norm());
    }
    if inside {
        -dist
    } else {
        dist
    }
}

#[test]
fn criterion_11_degree_one_is_convex_hull() {
    let start = Instant::now();
    let mut r = rng(11);
    let res = 61;
    let bbox = BBox::square(-1.2, 1.2);
    let cell = 2.4 / (res - 1) as f64 * 2f64.sqrt();
    let mut mismatches = 0;
    let mut cells = 0;
    for _ in 0..20 {
        let m = r.gen_range(3..=20);
        let pts: Vec<C> = (0..m).map(|_| C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let hull = convex_hull(pts.clone());
        let grid = grid_hull(&finite(pts), 1, bbox, res, res, &MembershipOptions::grid()).unwrap();
        for (p, _, status) in grid.cells() {
            let d = polygon_distance(&hull, p);
            if d.abs() <= cell {
                continue;
            }
            cells += 1;
            let member = status == MembershipStatus::Member;
            if member != (d < 0.0) {
                mismatches += 1;
            }
        }
    }
    report(
        11,
        "degree 1 equals convex hull",
        mismatches == 0,
        &format!("{mismatches} mismatches over {cells} cells farther than one cell from the hull boundary"),
        start.elapsed(),
        Duration::from_secs(120),
    );
}
