use std::f64::consts::{FRAC_PI_4, PI, TAU};

use anyhow::{anyhow, bail, ensure, Context, Result};
use hullbound::c2_lab::{
    geometric_hull_witness, knot_report, totally_real_separator, KnotSpec, Separator, SurfaceFamily,
};
use hullbound::cheb::{grid_hull, verify_certificate, BBox, MembershipOptions};
use hullbound::exact_hull::{
    alignment_values, convex_position, hull_point_search, interpolation_value, membership_exact, ConvexPosition,
    HullPointSearch, PointConfiguration, DEFAULT_TOL,
};
use hullbound::experiments::{
    arc_nonconvexity_witness, chebyshev_symmetry_check, jacobian_constant_check, pathological_membership,
    quadratic_arc_separation, sequential_circle_witness, ArcSpec, ArcWitness, PathologicalCurveSpec,
    QuadraticSeparation,
};
use hullbound::geometry::{circle_for_gap, circle_gaps, hull_point_unit_circle, CircleSpec};
use hullbound::{Complex64 as C, Generator, HullError, MembershipStatus, MembershipVerdict, SampledSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Command, RunConfig};
use crate::svg::Svg;

/// Result of one subcommand before anything is written.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<String>,
    pub svg: Svg,
    /// False when an emitted certificate or construction failed re-checking.
    pub verified: bool,
}

impl Outcome {
    fn new<T: Serialize>(result: &T, svg: Svg, verified: bool) -> Result<Self> {
        Ok(Self { result: serde_json::to_value(result)?, csv: None, svg, verified })
    }
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Points => points(cfg),
        Command::CirclePoints => circle_points(cfg),
        Command::Grid => grid(cfg),
        Command::Arc => arc(cfg),
        Command::Knot => knot(cfg),
        Command::Separate2 => separate2(cfg),
        Command::Family => family(cfg),
        Command::Cheb => cheb(cfg),
        Command::Pathological => pathological(cfg),
        Command::Jacobian => jacobian(cfg),
    }
}

fn options(cfg: &RunConfig, base: MembershipOptions<f64>) -> MembershipOptions<f64> {
    MembershipOptions {
        directions: cfg.directions.unwrap_or(base.directions),
        eps_member: cfg.eps_member.unwrap_or(base.eps_member),
        eps_sep: cfg.eps_sep.unwrap_or(base.eps_sep),
        ..base
    }
}

fn degree(cfg: &RunConfig) -> Result<usize> {
    cfg.degree.ok_or_else(|| anyhow!("--degree is required"))
}

/// One-variable compact set from the point list or the generator.
fn sample_set(cfg: &RunConfig, default_samples: usize) -> Result<SampledSet<f64>> {
    match (cfg.point_list()?, &cfg.generator) {
        (Some(_), Some(_)) => bail!("give either points or a generator, not both"),
        (Some(p), None) => Ok(SampledSet::from_points(p, "points")?),
        (None, Some(g)) => Ok(g.0.sample(cfg.samples.unwrap_or(default_samples))?),
        (None, None) => bail!("a point set (--points, --points-file) or --generator is required"),
    }
}

fn hull_outline(svg: &mut Svg, pts: &[C], order: &[usize]) {
    let poly: Vec<C> = order.iter().map(|&i| pts[i]).collect();
    svg.polyline(&poly, true, "#888888");
}

/// True when the points are the vertices of a regular polygon.
fn regular_polygon(pts: &[C]) -> bool {
    let m = pts.len() as f64;
    let c: C = pts.iter().sum::<C>() / m;
    let r = (pts[0] - c).norm();
    if !(r > 0.0) || pts.iter().any(|&z| ((z - c).norm() - r).abs() > 1e-6 * r) {
        return false;
    }
    let mut angles: Vec<f64> = pts.iter().map(|&z| (z - c).arg().rem_euclid(TAU)).collect();
    angles.sort_by(f64::total_cmp);
    circle_gaps(&angles).iter().all(|g| (g - TAU / m).abs() <= 1e-6)
}

#[derive(Serialize, Deserialize)]
pub struct QueryResult {
    pub verdict: MembershipVerdict<f64>,
    pub relative_residual: f64,
    pub interpolation_value: f64,
}

#[derive(Serialize, Deserialize)]
pub struct PointsReport {
    pub points: Vec<C>,
    pub degree: usize,
    pub convex_position: ConvexPosition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QueryResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<HullPointSearch<f64>>,
    pub notes: Vec<String>,
}

fn points(cfg: &RunConfig) -> Result<Outcome> {
    let pts = cfg.point_list()?.ok_or_else(|| anyhow!("--points or --points-file is required"))?;
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    let conf = PointConfiguration::new(pts.clone())?;
    let cp = convex_position(&conf);
    let mut notes = Vec::new();
    if !regular_polygon(&pts) {
        notes.push(format!("the {} points are not the vertices of a regular polygon", pts.len()));
    }
    let mut svg = Svg::new();
    hull_outline(&mut svg, &pts, &cp.order);
    svg.points(&pts, "black");
    let mut verified = true;
    let (query, search) = match cfg.w {
        Some(w) => {
            let w = w.0;
            svg.marker(w, "red");
            let query = match membership_exact(&conf, w, tol) {
                Ok(verdict) => QueryResult {
                    relative_residual: alignment_values(&conf, w)?.relative_residual(),
                    interpolation_value: interpolation_value(&conf, w)?,
                    verdict,
                },
                Err(HullError::CoincidentQuery { index }) => {
                    notes.push(format!("query coincides with point {index}"));
                    QueryResult {
                        verdict: MembershipVerdict {
                            status: MembershipStatus::Member,
                            residual: Some(0.0),
                            value: None,
                            w: hullbound::Query::C1(w),
                            degree_bound: conf.n(),
                            certificate: None,
                            certificate_verified: None,
                        },
                        relative_residual: 0.0,
                        interpolation_value: 1.0,
                    }
                }
                Err(e) => return Err(e.into()),
            };
            (Some(query), None)
        }
        None => {
            let search = hull_point_search(&conf, tol)?;
            if let Some(w) = search.point {
                svg.marker(w, "red");
                verified = membership_exact(&conf, w, tol)?.is_member();
            }
            (None, Some(search))
        }
    };
    let report = PointsReport { points: pts, degree: conf.n(), convex_position: cp, query, search, notes };
    Outcome::new(&report, svg, verified)
}

#[derive(Serialize, Deserialize)]
pub struct CirclePointsReport {
    pub degree: usize,
    pub angles: Vec<f64>,
    pub gaps: Vec<f64>,
    /// Gap circle for each gap, wrap-around last; null when the gap admits none.
    pub circles: Vec<Option<CircleSpec<f64>>>,
    pub w: Option<C>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<MembershipVerdict<f64>>,
}

fn circle_points(cfg: &RunConfig) -> Result<Outcome> {
    let angles = match (&cfg.angles, cfg.n) {
        (Some(a), _) => a.0.clone(),
        (None, Some(n)) => {
            let (g0, t) = (cfg.g0.unwrap_or(0.3), cfg.t.unwrap_or(0.5));
            sequential_circle_witness::<f64>(n, g0, t)
                .ok_or_else(|| anyhow!("no sequential construction for n = {n}, g0 = {g0}, t = {t}"))?
                .angles
        }
        (None, None) => bail!("--angles or --n is required"),
    };
    ensure!(angles.len() >= 3, "need at least 3 angles");
    ensure!(
        angles.windows(2).all(|p| p[1] > p[0]) && angles[0] >= 0.0 && angles[angles.len() - 1] < TAU,
        "angles must increase strictly within [0, 2π)"
    );
    let n = angles.len() - 1;
    let gaps = circle_gaps(&angles);
    let circles: Vec<Option<CircleSpec<f64>>> =
        (0..=n).map(|j| circle_for_gap(angles[j], angles[j] + gaps[j], n).ok()).collect();
    let pts: Vec<C> = angles.iter().map(|&a| C::from_polar(1.0, a)).collect();

    let mut svg = Svg::new();
    svg.circle(C::new(0.0, 0.0), 1.0, "#bbbbbb");
    for c in circles.iter().flatten() {
        svg.circle(c.center, c.radius, "#4477aa");
    }
    svg.points(&pts, "black");
    let w = hull_point_unit_circle(&angles);
    let mut verified = true;
    let exact = match w {
        Some(w) => {
            svg.marker(w, "red");
            let v = membership_exact(&PointConfiguration::new(pts)?, w, cfg.tol.unwrap_or(DEFAULT_TOL))?;
            verified = v.is_member();
            Some(v)
        }
        None => None,
    };
    let report = CirclePointsReport { degree: n, angles, gaps, circles, w, exact };
    Outcome::new(&report, svg, verified)
}

#[derive(Serialize, Deserialize)]
pub struct GridCounts {
    pub member: usize,
    pub non_member: usize,
    pub borderline: usize,
}

#[derive(Serialize, Deserialize)]
pub struct GridReport {
    pub samples: usize,
    pub options: MembershipOptions<f64>,
    pub counts: GridCounts,
    pub grid: hullbound::cheb::HullGrid<f64>,
}

fn bbox(cfg: &RunConfig, k: &SampledSet<f64>) -> Result<BBox<f64>> {
    match cfg.bbox.as_deref() {
        Some(&[lo, hi]) => Ok(BBox::square(lo, hi)),
        Some(&[x_min, x_max, y_min, y_max]) => Ok(BBox { x_min, x_max, y_min, y_max }),
        Some(other) => bail!("--bbox takes 2 or 4 numbers, got {}", other.len()),
        None => {
            let pts = k.points1().unwrap_or(&[]);
            let (mut lo, mut hi) = (C::new(f64::INFINITY, f64::INFINITY), C::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
            for z in pts {
                lo = C::new(lo.re.min(z.re), lo.im.min(z.im));
                hi = C::new(hi.re.max(z.re), hi.im.max(z.im));
            }
            let pad = 0.1 * (hi.re - lo.re).max(hi.im - lo.im).max(1e-3);
            Ok(BBox { x_min: lo.re - pad, x_max: hi.re + pad, y_min: lo.im - pad, y_max: hi.im + pad })
        }
    }
}

fn grid(cfg: &RunConfig) -> Result<Outcome> {
    let k = sample_set(cfg, 200)?;
    let d = degree(cfg)?;
    let opts = options(cfg, MembershipOptions::grid());
    let bb = bbox(cfg, &k)?;
    let res = cfg.res.unwrap_or(101);
    let g = grid_hull(&k, d, bb, res, res, &opts)?;
    let count = |s: MembershipStatus| g.status.iter().filter(|&&x| x == s).count();
    let counts = GridCounts {
        member: count(MembershipStatus::Member),
        non_member: count(MembershipStatus::NonMember),
        borderline: count(MembershipStatus::Borderline),
    };
    let mut svg = Svg::new();
    svg.heatmap(&g);
    if let Some(pts) = k.points1() {
        svg.points(pts, "white");
    }
    let csv = g.to_csv();
    let report = GridReport { samples: k.len(), options: opts, counts, grid: g };
    let mut out = Outcome::new(&report, svg, true)?;
    out.csv = Some(csv);
    Ok(out)
}

#[derive(Serialize, Deserialize)]
pub struct SeparationTrial {
    pub r: f64,
    pub phi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<QuadraticSeparation<f64>>,
    /// Sup over a 10× denser arc sample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense_sup: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize)]
pub struct ArcReport {
    pub n: usize,
    pub alpha: f64,
    /// Threshold `(n - 1)π/n` above which a witness is sought.
    pub threshold: f64,
    pub witness: Option<ArcWitness<f64>>,
    pub separations: Vec<SeparationTrial>,
}

fn arc(cfg: &RunConfig) -> Result<Outcome> {
    let alpha = cfg.alpha.ok_or_else(|| anyhow!("--alpha is required"))?;
    let n = cfg.n.unwrap_or(2);
    let samples = cfg.samples.unwrap_or(400);
    let spec = ArcSpec::new(alpha, samples)?;
    let witness = arc_nonconvexity_witness::<f64>(n, alpha)?;
    let mut svg = Svg::new();
    svg.polyline(spec.sample()?.points1().unwrap_or(&[]), false, "black");

    let mut verified = true;
    let mut separations = Vec::new();
    if alpha < FRAC_PI_4 {
        let dense = ArcSpec::new(alpha, 10 * samples)?.sample()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
        for _ in 0..cfg.trials.unwrap_or(16) {
            let r = rng.gen_range(0.05..0.95);
            let phi = rng.gen_range(-alpha..=alpha);
            let trial = match quadratic_arc_separation(&spec, r, phi) {
                Ok(s) => {
                    let dense_sup = dense.sup_norm(&s.polynomial)?;
                    verified &= dense_sup.max(s.sup) < s.at_point;
                    svg.marker(C::from_polar(r, phi), "#4477aa");
                    SeparationTrial { r, phi, separation: Some(s), dense_sup: Some(dense_sup), error: None }
                }
                Err(e) => SeparationTrial { r, phi, separation: None, dense_sup: None, error: Some(e.to_string()) },
            };
            separations.push(trial);
        }
    }
    if let Some(wit) = &witness {
        svg.points(&wit.points, "black");
        svg.marker(wit.w, "red");
        let conf = PointConfiguration::new(wit.points.clone())?;
        verified &= membership_exact(&conf, wit.w, DEFAULT_TOL)?.is_member();
    }
    let report = ArcReport { n, alpha, threshold: (n as f64 - 1.0) * PI / n as f64, witness, separations };
    Outcome::new(&report, svg, verified)
}

fn knot(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.p.ok_or_else(|| anyhow!("--p is required"))?;
    let spec = KnotSpec::new(p, cfg.q.unwrap_or(1))?;
    let report = knot_report::<f64>(
        spec,
        degree(cfg)?,
        cfg.samples.unwrap_or(400),
        &options(cfg, MembershipOptions::default()),
    )?;
    let verified = report.certificate_verified != Some(false);
    Outcome::new(&report, Svg::new(), verified)
}

#[derive(Serialize, Deserialize)]
pub struct SeparateReport {
    pub point: (C, C),
    pub set: Generator<f64>,
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separator: Option<Separator<f64>>,
    /// Sup over a fresh 20× resample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_sup: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn separate2(cfg: &RunConfig) -> Result<Outcome> {
    let z = cfg.z.ok_or_else(|| anyhow!("--z is required"))?.0;
    let w = cfg.w.ok_or_else(|| anyhow!("--w is required"))?.0;
    let set = match &cfg.generator {
        Some(g) => g.0.clone(),
        None => Generator::TotallyRealCircle { radius: cfg.radius.unwrap_or(1.0) },
    };
    let samples = cfg.samples.unwrap_or(200);
    let k = set.sample(samples)?;
    let mut report =
        SeparateReport { point: (z, w), set: set.clone(), samples, separator: None, check_sup: None, error: None };
    let verified = match totally_real_separator((z, w), &k) {
        Ok(s) => {
            let check = set.sample(20 * samples)?.sup_norm(&s.polynomial)?;
            let ok = verify_certificate(s.polynomial.eval(z, w).norm(), check.max(s.sup));
            report.check_sup = Some(check);
            report.separator = Some(s);
            ok
        }
        Err(HullError::Verification(msg)) => {
            report.error = Some(msg);
            false
        }
        Err(e) => return Err(e.into()),
    };
    let mut svg = Svg::new();
    svg.points(&k.pairs().iter().map(|p| p.0).collect::<Vec<_>>(), "black");
    svg.marker(z, "red");
    Outcome::new(&report, svg, verified)
}

#[derive(Serialize, Deserialize)]
pub struct FamilyReport {
    pub knot: KnotSpec,
    pub family: SurfaceFamily<f64>,
    pub samples: usize,
    /// Distance of `F(K)` from the ray `[0, ∞)`.
    pub clearance: f64,
    pub separated: bool,
}

fn family(cfg: &RunConfig) -> Result<Outcome> {
    let (knot, fam) = match &cfg.bilinear {
        Some(c) => {
            let p = cfg.p.ok_or_else(|| anyhow!("--p is required with --bilinear"))?;
            (KnotSpec::new(p, cfg.q.unwrap_or(1))?, SurfaceFamily::bilinear(c[0], c[1], c[2]))
        }
        None => {
            let p = cfg.p.unwrap_or(2);
            SurfaceFamily::examples()
                .into_iter()
                .find(|(k, _)| k.p() == p)
                .ok_or_else(|| anyhow!("built-in families cover p = 2, 3, 4; use --bilinear for others"))?
        }
    };
    let samples = cfg.samples.unwrap_or(2000);
    let k = Generator::Knot { p: knot.p(), q: knot.q() }.sample(samples)?;
    let clearance = geometric_hull_witness(&fam, &k)?;
    let values: Vec<C> = k.pairs().iter().map(|&(z, w)| fam.polynomial.eval(z, w)).collect();
    let mut svg = Svg::new();
    svg.polyline(&values, true, "black");
    svg.polyline(&[C::new(0.0, 0.0), C::new(values.iter().map(|v| v.re).fold(1.0, f64::max), 0.0)], false, "red");
    let report = FamilyReport { knot, family: fam, samples, clearance, separated: clearance > 0.0 };
    Outcome::new(&report, svg, true)
}

fn cheb(cfg: &RunConfig) -> Result<Outcome> {
    let k = sample_set(cfg, 400)?;
    let report = chebyshev_symmetry_check(&k, degree(cfg)?, cfg.directions.unwrap_or(128))?;
    let mut svg = Svg::new();
    svg.points(k.points1().unwrap_or(&[]), "black");
    Outcome::new(&report, svg, true)
}

#[derive(Serialize, Deserialize)]
pub struct RingReport {
    pub n: usize,
    pub center: f64,
    pub radius: f64,
    pub removed_half_angle: f64,
    pub points: Vec<C>,
    pub verdict: MembershipVerdict<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct PathologicalReport {
    pub n_max: usize,
    pub rings: Vec<RingReport>,
    pub all_members: bool,
}

fn pathological(cfg: &RunConfig) -> Result<Outcome> {
    let spec = PathologicalCurveSpec::new(cfg.n_max.unwrap_or(6))?;
    let mut rings = Vec::new();
    let mut svg = Svg::new();
    for line in spec.polylines::<f64>(32) {
        svg.polyline(&line, false, "black");
    }
    for n in 1..=spec.n_max {
        let points = PathologicalCurveSpec::ring_points::<f64>(n);
        svg.points(&points, "#4477aa");
        svg.marker(C::new(PathologicalCurveSpec::center::<f64>(n), 0.0), "red");
        rings.push(RingReport {
            n,
            center: PathologicalCurveSpec::center(n),
            radius: PathologicalCurveSpec::radius(n),
            removed_half_angle: PathologicalCurveSpec::removed_half_angle(n),
            points,
            verdict: pathological_membership(&spec, n)?,
        });
    }
    let all_members = rings.iter().all(|r| r.verdict.is_member());
    let report = PathologicalReport { n_max: spec.n_max, rings, all_members };
    Outcome::new(&report, svg, true)
}

#[derive(Serialize, Deserialize)]
pub struct JacobianReport {
    pub points: Vec<C>,
    pub determinant: C,
    pub expected: f64,
    pub relative_error: f64,
    pub passes: bool,
}

fn jacobian(cfg: &RunConfig) -> Result<Outcome> {
    let points = match cfg.point_list()? {
        Some(p) => p,
        None => {
            let n = cfg.n.unwrap_or(5);
            ensure!(n >= 1, "--n must be positive");
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
            let mut pts: Vec<C> = Vec::with_capacity(n);
            while pts.len() < n {
                let z = C::from_polar(2.0 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
                let clear = |a: C| (z - a).norm() > 0.05;
                if clear(C::new(0.0, 0.0)) && clear(C::new(1.0, 0.0)) && pts.iter().all(|&q| clear(q)) {
                    pts.push(z);
                }
            }
            pts
        }
    };
    let determinant = jacobian_constant_check(&points).context("jacobian check")?;
    let expected: f64 = (1..=points.len()).map(|k| k as f64).product();
    let relative_error = (determinant - expected).norm() / expected;
    let mut svg = Svg::new();
    svg.points(&points, "black");
    svg.marker(C::new(1.0, 0.0), "red");
    let report = JacobianReport { points, determinant, expected, relative_error, passes: relative_error <= 1e-6 };
    let passes = report.passes;
    Outcome::new(&report, svg, passes)
}
