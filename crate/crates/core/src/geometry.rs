//! Angle criteria and inscribed-angle constructions for hull points of finite
//! planar sets, with the specializations for points on the unit circle.
//!
//! For vertices `z_0, …, z_n` of a convex polygon (counterclockwise), let
//! `α_{i,j}` be the angle at `z_j` in the triangle `z_i z_{i+1} z_j` and `β_i`
//! the angle at `w` in `z_i z_{i+1} w`. An interior `w` is the extra hull
//! point exactly when `β_i + Σ_j α_{i,j} = π` for every edge, so `w` lies on
//! the circle through `z_i, z_{i+1}` seeing that chord at angle
//! `β_i = π - Σ_j α_{i,j}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};
use crate::exact_hull::{convex_position, inside_convex, PointConfiguration};
use crate::scalar::{cis, is_finite_c, lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct CircleSpec<S> {
    pub center: Complex<S>,
    pub radius: S,
}

impl<S: Real> CircleSpec<S> {
    pub fn new(center: Complex<S>, radius: S) -> Result<Self> {
        if !is_finite_c(center) || !radius.is_finite() || radius <= S::zero() {
            return Err(HullError::InvalidInput("circle needs a finite center and positive radius".into()));
        }
        Ok(Self { center, radius })
    }

    /// `| |z - center| - radius |`.
    pub fn distance(&self, z: Complex<S>) -> S {
        ((z - self.center).norm() - self.radius).abs()
    }
}

/// Unsigned angle at `p` between the rays to `a` and `b`, in `[0, π]`.
pub fn angle_at<S: Real>(p: Complex<S>, a: Complex<S>, b: Complex<S>) -> S {
    ((a - p) / (b - p)).arg().abs()
}

/// Angles of the hull-point criterion for a convex polygon and a query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct AngleTable<S> {
    /// Input indices in counterclockwise order; edge `i` joins positions `i` and `i + 1`.
    pub order: Vec<usize>,
    /// `alpha[i][j]`: angle at vertex `j` over edge `i`; zero for `j ∈ {i, i+1}`.
    pub alpha: Vec<Vec<S>>,
    pub beta: Vec<S>,
    /// `beta[i] + Σ_j alpha[i][j]`.
    pub sums: Vec<S>,
}

impl<S: Real> AngleTable<S> {
    /// Whether every edge sum equals π within `tol`.
    pub fn satisfied(&self, tol: S) -> bool {
        self.sums.iter().all(|&s| (s - S::PI()).abs() <= tol)
    }

    pub fn total(&self) -> S {
        self.sums.iter().copied().sum()
    }
}

/// `α_{i,j}` over edge `(v_i, v_{i+1})` for every other vertex `j`.
fn edge_alphas<S: Real>(poly: &[Complex<S>], i: usize) -> Vec<S> {
    let m = poly.len();
    let (a, b) = (poly[i], poly[(i + 1) % m]);
    (0..m).map(|j| if j == i || j == (i + 1) % m { S::zero() } else { angle_at(poly[j], a, b) }).collect()
}

/// Angle table of `w` against the points of `cfg`, which must be in convex position.
pub fn angle_table<S: Real>(cfg: &PointConfiguration<S>, w: Complex<S>) -> Result<AngleTable<S>> {
    let cp = convex_position(cfg);
    if !cp.convex {
        return Err(HullError::InvalidInput("points are not in convex position".into()));
    }
    let poly: Vec<Complex<S>> = cp.order.iter().map(|&i| cfg.points()[i]).collect();
    if !inside_convex(&poly, w, lit::<S>(1e-12) * cfg.diameter()) {
        return Err(HullError::QueryNotInterior);
    }
    let m = poly.len();
    let alpha: Vec<Vec<S>> = (0..m).map(|i| edge_alphas(&poly, i)).collect();
    let beta: Vec<S> = (0..m).map(|i| angle_at(w, poly[i], poly[(i + 1) % m])).collect();
    let sums = (0..m).map(|i| beta[i] + alpha[i].iter().copied().sum::<S>()).collect();
    Ok(AngleTable { order: cp.order, alpha, beta, sums })
}

/// `β + Σ_k ε_k α_k` for the segment `z_i z_j`, with `ε_k = +1` when `z_k`
/// lies on the same side of the line as `w`.
///
/// When `w` itself is on the line, the side of the lowest-indexed remaining
/// point is taken as `w`'s side.
pub fn segment_condition<S: Real>(cfg: &PointConfiguration<S>, i: usize, j: usize, w: Complex<S>) -> Result<S> {
    let z = cfg.points();
    if i >= z.len() || j >= z.len() || i == j {
        return Err(HullError::InvalidInput(format!("invalid segment ({i}, {j})")));
    }
    let (a, b) = (z[i], z[j]);
    if (w - a).norm() == S::zero() || (w - b).norm() == S::zero() {
        return Err(HullError::CoincidentQuery { index: if w == a { i } else { j } });
    }
    let e = b - a;
    let slack = lit::<S>(1e-12) * e.norm() * cfg.diameter();
    let side = |p: Complex<S>| {
        let c = e.re * (p - a).im - e.im * (p - a).re;
        if c > slack {
            1i8
        } else if c < -slack {
            -1
        } else {
            0
        }
    };
    let others: Vec<usize> = (0..z.len()).filter(|&k| k != i && k != j).collect();
    if let Some(&k) = others.iter().find(|&&k| side(z[k]) == 0) {
        return Err(HullError::CollinearWitness(k));
    }
    let w_side = match side(w) {
        0 => others.first().map_or(1, |&k| side(z[k])),
        s => s,
    };
    let mut total = angle_at(w, a, b);
    for &k in &others {
        let alpha = angle_at(z[k], a, b);
        total = if side(z[k]) == w_side { total + alpha } else { total - alpha };
    }
    Ok(total)
}

/// Inscribed-angle circle over edge `i` of a counterclockwise convex polygon.
fn edge_circle<S: Real>(poly: &[Complex<S>], i: usize) -> Option<CircleSpec<S>> {
    let m = poly.len();
    let (a, b) = (poly[i], poly[(i + 1) % m]);
    let beta = S::PI() - edge_alphas(poly, i).into_iter().sum::<S>();
    if !(beta > S::zero() && beta < S::PI()) {
        return None;
    }
    let e = b - a;
    let len = e.norm();
    let inward = Complex::new(-e.im, e.re) / len;
    let radius = len / (lit::<S>(2.0) * beta.sin());
    let center = (a + b) * lit::<S>(0.5) + inward * (radius * beta.cos());
    CircleSpec::new(center, radius).ok()
}

/// Reflection of `p` across the line through `c0` and `c1`.
fn reflect<S: Real>(p: Complex<S>, c0: Complex<S>, c1: Complex<S>) -> Option<Complex<S>> {
    let d = c1 - c0;
    let len2 = d.norm_sqr();
    if len2 <= S::epsilon() * S::epsilon() * (c0.norm_sqr() + c1.norm_sqr() + S::one()) {
        return None;
    }
    let t = ((p - c0) * d.conj()).re / len2;
    let foot = c0 + d * t;
    Some(foot * lit::<S>(2.0) - p)
}

/// Candidate hull point of a counterclockwise convex polygon: the second
/// intersection of the circles over edges `(v_0, v_1)` and `(v_1, v_2)`.
/// The caller verifies the remaining conditions.
pub fn circle_construction<S: Real>(poly: &[Complex<S>]) -> Option<Complex<S>> {
    if poly.len() < 3 {
        return None;
    }
    let c0 = edge_circle(poly, 0)?;
    let c1 = edge_circle(poly, 1)?;
    let w = reflect(poly[1], c0.center, c1.center)?;
    let scale = c0.radius.max(c1.radius);
    if (w - poly[1]).norm() <= lit::<S>(1e-12) * scale {
        return None;
    }
    Some(w)
}

/// Circle through `e^{iφ_j}`, `e^{iφ_{j+1}}` on which `n + 1` points of the
/// unit circle with this gap would place their hull point.
pub fn circle_for_gap<S: Real>(phi_j: S, phi_j1: S, n: usize) -> Result<CircleSpec<S>> {
    if n < 2 {
        return Err(HullError::InvalidInput("n must be at least 2".into()));
    }
    let gap = phi_j1 - phi_j;
    if !(gap > S::zero()) {
        return Err(HullError::InvalidInput("gap must be positive".into()));
    }
    let nf = S::from_usize_lossy(n);
    let half = lit::<S>(0.5);
    if gap >= S::TAU() / (nf - S::one()) {
        return Err(HullError::NoInteriorLocus { gap: gap.as_f64() });
    }
    let den = ((nf - S::one()) * gap * half).sin();
    let center = cis((phi_j + phi_j1) * half) * ((nf * gap * half).sin() / den);
    let radius = (gap * half).sin() / den;
    let circle = CircleSpec::new(center, radius)?;
    let tol = lit::<S>(1e-12).max(S::epsilon() * lit(64.0)) * (S::one() + center.norm());
    for phi in [phi_j, phi_j1] {
        if circle.distance(cis(phi)) > tol * (S::one() + radius) {
            return Err(HullError::Verification(format!("gap circle misses e^(i*{})", phi.as_f64())));
        }
    }
    Ok(circle)
}

/// Gaps `φ_{j+1} - φ_j` with the wrap-around gap last.
pub fn circle_gaps<S: Real>(angles: &[S]) -> Vec<S> {
    let m = angles.len();
    (0..m).map(|j| if j + 1 < m { angles[j + 1] - angles[j] } else { angles[0] + S::TAU() - angles[j] }).collect()
}

/// Extra hull point of `n + 1` points `e^{iφ_j}` at degree `n`, if any.
///
/// `angles` must be strictly increasing in `[0, 2π)`.
pub fn hull_point_unit_circle<S: Real>(angles: &[S]) -> Option<Complex<S>> {
    let m = angles.len();
    if m < 3 || angles.windows(2).any(|p| !(p[1] > p[0])) || angles[0] < S::zero() || angles[m - 1] >= S::TAU() {
        return None;
    }
    let n = m - 1;
    let limit = S::TAU() / S::from_usize_lossy(n);
    let gaps = circle_gaps(angles);
    if gaps.iter().any(|&g| g >= limit) {
        return None;
    }
    for i in 0..m {
        for j in i + 1..m {
            if gaps[i] + gaps[j] <= limit {
                return None;
            }
        }
    }
    let s = (0..m).fold(0, |best, j| if gaps[j] < gaps[best] { j } else { best });
    let start = |j: usize| if j < m { angles[j] } else { angles[j - m] + S::TAU() };
    let circle = |j: usize| circle_for_gap(start(j), start(j) + gaps[j], n).ok();
    let c0 = circle(s)?;
    let c1 = circle((s + 1) % m)?;
    let shared = cis(start(s + 1));
    let w = reflect(shared, c0.center, c1.center)?;

    // inside the triangle (z_s, 0, z_{s+1})
    let slack = lit::<S>(1e-12);
    let tri = [cis(angles[s]), Complex::new(S::zero(), S::zero()), shared];
    let cross = |a: Complex<S>, b: Complex<S>, p: Complex<S>| (b - a).re * (p - a).im - (b - a).im * (p - a).re;
    let orient = cross(tri[0], tri[1], tri[2]).signum();
    if !(0..3).all(|k| orient * cross(tri[k], tri[(k + 1) % 3], w) > -slack) {
        return None;
    }
    let tol = lit::<S>(1e-9).max(S::epsilon().sqrt());
    for j in 0..m {
        let cj = circle(j)?;
        if cj.distance(w) > tol * (S::one() + cj.radius) {
            return None;
        }
    }
    Some(w)
}

/// Orthocenter of a triangle and whether the triangle is acute.
pub fn orthocenter<S: Real>(a: Complex<S>, b: Complex<S>, c: Complex<S>) -> Result<(Complex<S>, bool)> {
    let (u, v) = (b - a, c - a);
    let den = u.conj() * v - u * v.conj();
    let scale = u.norm_sqr().max(v.norm_sqr()).max((c - b).norm_sqr());
    if den.norm() <= lit::<S>(1e-14).max(S::epsilon() * lit(8.0)) * scale {
        return Err(HullError::Collinear);
    }
    let circumcenter = a + (v * u.norm_sqr() - u * v.norm_sqr()) / den;
    let h = a + b + c - circumcenter * lit::<S>(2.0);
    let (x, y, z) = ((b - c).norm_sqr(), v.norm_sqr(), u.norm_sqr());
    let acute = x < y + z && y < x + z && z < x + y;
    Ok((h, acute))
}
