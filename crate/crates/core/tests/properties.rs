use std::f64::consts::PI;

use hullbound::c2_lab::{geometric_hull_witness, totally_real_separator, SurfaceFamily};
use hullbound::cheb::{membership_numeric, minimax, verify_certificate, Constraint, MembershipOptions};
use hullbound::exact_hull::{alignment_values, hull_point_search, membership_exact, PointConfiguration};
use hullbound::experiments::{arc_nonconvexity_witness, jacobian_constant_check, sequential_circle_witness};
use hullbound::geometry::{angle_table, circle_for_gap, hull_point_unit_circle, segment_condition};
use hullbound::{
    monomial_basis, AnyPoly, Complex64 as C, Dim, Exponent, Generator, MembershipStatus, Poly1, Poly2, Query,
    SampledSet,
};
use proptest::prelude::*;

fn unit_disk() -> impl Strategy<Value = C> {
    (0.0..1.0f64, 0.0..2.0 * PI).prop_map(|(r, t)| C::from_polar(r.sqrt(), t))
}

fn point(scale: f64) -> impl Strategy<Value = C> {
    (-scale..scale, -scale..scale).prop_map(|(x, y)| C::new(x, y))
}

fn naive1(coeffs: &[C], z: C) -> C {
    coeffs.iter().enumerate().map(|(k, &c)| c * z.powu(k as u32)).sum()
}

fn finite(points: Vec<C>) -> SampledSet<f64> {
    SampledSet::from_points(points, "points").unwrap()
}

fn value(k: &SampledSet<f64>, w: C, d: i64, l: usize) -> f64 {
    let basis = monomial_basis(Dim::One, d).unwrap();
    minimax(k, &basis, &Constraint::PointValue(Query::C1(w)), l).unwrap().value
}

/// Hull-point configuration: built unit-circle witness pushed through a random affine map.
fn witness() -> impl Strategy<Value = (Vec<C>, C)> {
    (2usize..=6, 0.05..0.6f64, 0.2..0.8f64, point(1.0), 0.3..2.0f64, 0.0..2.0 * PI).prop_filter_map(
        "construction failed",
        |(n, g0, t, b, r, th)| {
            let c = sequential_circle_witness::<f64>(n, g0, t)?;
            let a = C::from_polar(r, th);
            Some((c.angles.iter().map(|&p| a * C::from_polar(1.0, p) + b).collect(), a * c.w + b))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn horner_matches_power_expansion(coeffs in prop::collection::vec(unit_disk(), 1..=13), z in point(1.5)) {
        let p = Poly1::new(coeffs.clone());
        let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| c.norm() * z.norm().powi(k as i32)).sum();
        prop_assert!((p.eval(z) - naive1(&coeffs, z)).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn bivariate_eval_matches_expansion(coeffs in prop::collection::vec(unit_disk(), 1..=28), z in point(1.2), w in point(1.2)) {
        // largest graded degree fitting the coefficient count
        let mut d = 0;
        while (d + 2) * (d + 3) / 2 <= coeffs.len() { d += 1; }
        let coeffs = &coeffs[..(d + 1) * (d + 2) / 2];
        let p = Poly2::from_graded(d, coeffs).unwrap();
        let mut naive = C::new(0.0, 0.0);
        let mut scale = 0.0;
        for (e, c) in p.terms() {
            naive += c * z.powu(e.z as u32) * w.powu(e.w as u32);
            scale += c.norm() * z.norm().powi(e.z as i32) * w.norm().powi(e.w as i32);
        }
        prop_assert!((p.eval(z, w) - naive).norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn sup_norm_is_a_seminorm(
        a in prop::collection::vec(unit_disk(), 1..8),
        b in prop::collection::vec(unit_disk(), 1..8),
        alpha in point(3.0),
        pts in prop::collection::vec(point(1.0), 1..30),
    ) {
        let k = finite(pts);
        let (p, q) = (Poly1::new(a), Poly1::new(b));
        let (sp, sq) = (k.sup_norm(&p).unwrap(), k.sup_norm(&q).unwrap());
        let scaled = k.sup_norm(&p.scale(alpha)).unwrap();
        prop_assert!((scaled - alpha.norm() * sp).abs() <= 1e-12 * (1.0 + alpha.norm() * sp));
        prop_assert!(k.sup_norm(&(&p + &q)).unwrap() <= sp + sq + 1e-12);
    }

    #[test]
    fn polynomial_json_round_trip(coeffs in prop::collection::vec(unit_disk(), 1..10), two in any::<bool>()) {
        let p = if two {
            AnyPoly::Two(Poly2::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (Exponent::new(k % 3, k / 3), c))))
        } else {
            AnyPoly::One(Poly1::new(coeffs))
        };
        let back: AnyPoly<f64> = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn exact_oracle_affine_equivariant(pts in prop::collection::vec(point(1.0), 3..8), w in point(1.0), a in point(2.0), b in point(2.0)) {
        prop_assume!(a.norm() > 0.1);
        let Ok(cfg) = PointConfiguration::new(pts) else { return Ok(()) };
        prop_assume!(cfg.points().iter().all(|&z| (z - w).norm() > 1e-3));
        let r0 = alignment_values(&cfg, w).unwrap().relative_residual();
        let moved = cfg.affine(a, b).unwrap();
        let r1 = alignment_values(&moved, a * w + b).unwrap().relative_residual();
        prop_assert!((r0 - r1).abs() <= 1e-10, "{} vs {}", r0, r1);
    }

    #[test]
    fn exact_oracle_permutation_invariant(pts in prop::collection::vec(point(1.0), 3..8), w in point(1.0), seed in any::<u64>()) {
        let Ok(cfg) = PointConfiguration::new(pts) else { return Ok(()) };
        prop_assume!(cfg.points().iter().all(|&z| (z - w).norm() > 1e-3));
        let mut perm: Vec<usize> = (0..cfg.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = membership_exact(&cfg, w, 1e-9).unwrap();
        let b = membership_exact(&cfg.permuted(&perm).unwrap(), w, 1e-9).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert!((a.residual.unwrap() - b.residual.unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn exact_members_have_value_one((pts, w) in witness()) {
        let cfg = PointConfiguration::new(pts.clone()).unwrap();
        prop_assert!(membership_exact(&cfg, w, 1e-9).unwrap().is_member());
        let v = value(&finite(pts.clone()), w, (pts.len() - 1) as i64, 128);
        prop_assert!(v >= 1.0 - 1e-3, "value {}", v);
    }

    #[test]
    fn clear_non_members_have_value_below_one(pts in prop::collection::vec(point(1.0), 3..8), w in point(1.2)) {
        let Ok(cfg) = PointConfiguration::new(pts.clone()) else { return Ok(()) };
        prop_assume!(cfg.points().iter().all(|&z| (z - w).norm() > 1e-2));
        let r = alignment_values(&cfg, w).unwrap().relative_residual();
        prop_assume!(r >= 0.1);
        let v = value(&finite(pts.clone()), w, (pts.len() - 1) as i64, 128);
        prop_assert!(v < 1.0 - 1e-3, "residual {} value {}", r, v);
    }

    #[test]
    fn circle_for_gap_passes_through_endpoints(n in 2usize..9, phi in 0.0..2.0 * PI, frac in 0.01..0.99f64) {
        let gap = frac * 2.0 * PI / (n as f64 - 1.0);
        let c = circle_for_gap(phi, phi + gap, n).unwrap();
        for t in [phi, phi + gap] {
            let d = (C::from_polar(1.0, t) - c.center).norm();
            prop_assert!((d - c.radius).abs() <= 1e-12 * c.radius.max(1.0));
        }
    }

    #[test]
    fn unit_circle_rotation_equivariant(n in 3usize..8, g0 in 0.05..0.5f64, t in 0.2..0.8f64, theta in 0.0..2.0 * PI) {
        let Some(c) = sequential_circle_witness::<f64>(n, g0, t) else { return Ok(()) };
        let w0 = hull_point_unit_circle(&c.angles).unwrap();
        let mut rotated: Vec<f64> = c.angles.iter().map(|&a| (a + theta).rem_euclid(2.0 * PI)).collect();
        rotated.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let w1 = hull_point_unit_circle(&rotated).unwrap();
        prop_assert!((w1 - w0 * C::from_polar(1.0, theta)).norm() <= 1e-10 * (1.0 + w0.norm()));
    }

    #[test]
    fn convex_witness_satisfies_angle_sums((pts, w) in witness()) {
        let cfg = PointConfiguration::new(pts).unwrap();
        let table = angle_table(&cfg, w).unwrap();
        prop_assert!(table.satisfied(1e-8), "{:?}", table.sums);
        // a polygon edge has every other point on the interior side
        let (i, j) = (table.order[0], table.order[1]);
        let s = segment_condition(&cfg, i, j, w).unwrap();
        prop_assert!((s - table.sums[0]).abs() <= 1e-12);
    }

    #[test]
    fn monotone_in_degree_and_bounded(pts in prop::collection::vec(point(1.0), 4..40), w in point(1.5)) {
        let k = finite(pts);
        let mut prev = f64::INFINITY;
        for d in 1..=5 {
            let v = value(&k, w, d, 64);
            prop_assert!((0.0..=1.0 + 1e-9).contains(&v));
            prop_assert!(v <= prev + 1e-7);
            prev = v;
        }
    }

    #[test]
    fn finer_polygons_tighten_the_value(pts in prop::collection::vec(point(1.0), 4..30), w in point(1.5), d in 1i64..5) {
        let k = finite(pts);
        let (coarse, fine) = (value(&k, w, d, 64), value(&k, w, d, 256));
        prop_assert!(fine >= coarse - 1e-7);
        prop_assert!(coarse >= fine * (PI / 64.0).cos() - 1e-7);
    }

    #[test]
    fn more_samples_never_lower_the_value(pts in prop::collection::vec(point(1.0), 4..30), extra in prop::collection::vec(point(1.0), 1..10), w in point(1.5), d in 1i64..5) {
        let before = value(&finite(pts.clone()), w, d, 64);
        let mut all = pts;
        all.extend(extra);
        let after = value(&finite(all), w, d, 64);
        prop_assert!(after >= before - 1e-7);
    }

    #[test]
    fn certificates_hold_on_dense_resamples(c in point(0.5), r in 0.2..1.0f64, w in point(1.6), d in 1usize..6) {
        let g = Generator::Circle { center: c, radius: r };
        let k = g.sample(150).unwrap();
        prop_assume!((w - c).norm() > r + 0.05 || (w - c).norm() < r - 0.05);
        let v = membership_numeric(&k, Query::C1(w), d, &MembershipOptions::default()).unwrap();
        prop_assert!(!v.verification_failed());
        if let Some(AnyPoly::One(p)) = v.certificate {
            let dense = g.sample(1500).unwrap();
            let sup = dense.sup_norm(&p).unwrap().max(k.sup_norm(&p).unwrap());
            prop_assert!(sup < p.eval(w).norm());
        }
    }

    #[test]
    fn clearance_ignores_sample_order(p in 2u32..5, seed in any::<u64>()) {
        let (_, fam) = SurfaceFamily::<f64>::examples().into_iter().find(|(s, _)| s.p() == p).unwrap();
        let k = Generator::Knot { p, q: 1 }.sample(400).unwrap();
        let mut pairs = k.pairs();
        let mut s = seed;
        for i in (1..pairs.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pairs.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = SampledSet::from_pairs(pairs, "shuffled").unwrap();
        prop_assert_eq!(geometric_hull_witness(&fam, &k).unwrap(), geometric_hull_witness(&fam, &shuffled).unwrap());
    }

    #[test]
    fn jacobian_is_factorial(pts in prop::collection::vec(point(2.0), 2..7)) {
        let n = pts.len();
        prop_assume!(pts.iter().all(|&z| z.norm() > 1e-2 && (z - 1.0).norm() > 1e-2));
        prop_assume!((0..n).all(|i| (0..i).all(|j| (pts[i] - pts[j]).norm() > 1e-2)));
        let fact = (1..=n).product::<usize>() as f64;
        let d = jacobian_constant_check(&pts).unwrap();
        prop_assert!((d - fact).norm() <= 1e-6 * fact, "{}", d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interior_point_blocks_hull_points(a in point(1.0), b in point(1.0), c in point(1.0), wts in (0.1..1.0f64, 0.1..1.0f64, 0.1..1.0f64)) {
        let area = ((b - a) * (c - a).conj()).im.abs();
        prop_assume!(area > 0.1);
        let s = wts.0 + wts.1 + wts.2;
        let inner = (a * wts.0 + b * wts.1 + c * wts.2) / s;
        let cfg = PointConfiguration::new(vec![a, b, c, inner]).unwrap();
        prop_assert!(hull_point_search(&cfg, 1e-9).unwrap().point.is_none());
    }

    #[test]
    fn unit_circle_construction_matches_exact_oracle(n in 3usize..8, raw in prop::collection::vec(0.0..2.0 * PI, 8), built in any::<bool>(), g0 in 0.05..0.5f64, t in 0.2..0.8f64) {
        let angles = if built {
            match sequential_circle_witness::<f64>(n, g0, t) { Some(c) => c.angles, None => return Ok(()) }
        } else {
            let mut a: Vec<f64> = raw[..=n].to_vec();
            a.sort_by(|x, y| x.partial_cmp(y).unwrap());
            a
        };
        prop_assume!(angles.windows(2).all(|p| p[1] - p[0] > 1e-3));
        let cfg = PointConfiguration::new(angles.iter().map(|&p| C::from_polar(1.0, p)).collect()).unwrap();
        let from_circles = hull_point_unit_circle(&angles);
        let searched = hull_point_search(&cfg, 1e-9).unwrap().point;
        match (from_circles, searched) {
            (Some(w), Some(v)) => prop_assert!((w - v).norm() <= 1e-8),
            (Some(w), None) => prop_assert!(false, "circle point {} not confirmed", w),
            (None, Some(v)) => prop_assert!(false, "search point {} not reproduced", v),
            (None, None) => {}
        }
        if let Some(w) = from_circles {
            prop_assert!(membership_exact(&cfg, w, 1e-9).unwrap().is_member());
        }
    }

    #[test]
    fn arc_witnesses_pass_both_oracles(n in 2usize..=6, excess in 0.02..0.9f64) {
        let lo = (n as f64 - 1.0) * PI / n as f64;
        let alpha = lo + excess * (PI - lo);
        let wit = arc_nonconvexity_witness::<f64>(n, alpha).unwrap();
        prop_assert!(wit.is_some(), "no witness for n = {}, α = {}", n, alpha);
        let wit = wit.unwrap();
        prop_assert!(wit.residual < 1e-9 && wit.numeric_value >= 1.0 - 5e-3);
        prop_assert!(wit.points.iter().all(|z| z.arg().abs() <= alpha + 1e-12));
    }

    #[test]
    fn totally_real_separators_verify(radius in 0.3..1.5f64, z0 in point(2.0), w0 in point(2.0), in_plane in any::<bool>()) {
        let k = Generator::TotallyRealCircle { radius }.sample(120).unwrap();
        let w0 = if in_plane { z0.conj() } else { w0 };
        prop_assume!((z0.norm() - radius).abs() > 0.05 || (w0 - z0.conj()).norm() > 0.05);
        let s = totally_real_separator((z0, w0), &k).unwrap();
        let dense = k.resample(10).unwrap().unwrap();
        let sup = dense.sup_norm(&s.polynomial).unwrap().max(k.sup_norm(&s.polynomial).unwrap());
        prop_assert!(verify_certificate(s.polynomial.eval(z0, w0).norm(), sup));
        prop_assert!(s.polynomial.degree().unwrap_or(0) <= 2);
    }
}

#[test]
fn borderline_band_is_reported() {
    let k = finite(PointConfiguration::<f64>::roots_of_unity(4).unwrap().points().to_vec());
    let opts = MembershipOptions { eps_member: 1e-6, eps_sep: 0.9, ..MembershipOptions::default() };
    let v = membership_numeric(&k, Query::C1(C::new(0.5, 0.5)), 2, &opts).unwrap();
    assert_eq!(v.status, MembershipStatus::Borderline);
}
