//! Exact degree-`n` hull membership for `n + 1` points.
//!
//! For distinct `z_0, …, z_n` and `w` off the set, `w` lies in the degree-`n`
//! hull exactly when the numbers
//!
//! ```text
//! t_i = (z_i - w) * prod_{j != i} (z_i - z_j)
//! ```
//!
//! all lie on one open ray from the origin. The products are accumulated as
//! sums of log-moduli and arguments so that large configurations do not
//! overflow; only directions and relative sizes survive normalization.

use std::cmp::Ordering;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};
use crate::geometry;
use crate::optimize::nelder_mead;
use crate::scalar::{cis, is_finite_c, lit, Real};
use crate::verdict::{MembershipStatus, MembershipVerdict, Query};

/// Default relative alignment tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Distinct points `z_0, …, z_n` in ℂ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex<S>>", into = "Vec<Complex<S>>", bound = "S: Real")]
pub struct PointConfiguration<S: Real> {
    points: Vec<Complex<S>>,
}

impl<S: Real> PointConfiguration<S> {
    pub fn new(points: Vec<Complex<S>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(HullError::InvalidInput(format!("need at least 2 points, got {}", points.len())));
        }
        if let Some(i) = points.iter().position(|&z| !is_finite_c(z)) {
            return Err(HullError::InvalidInput(format!("point {i} is not finite")));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(HullError::DuplicatePoints(i, j));
                }
            }
        }
        Ok(Self { points })
    }

    /// `n + 1` equally spaced points `e^{2πik/(n+1)}` on the unit circle.
    pub fn roots_of_unity(count: usize) -> Result<Self> {
        let m = S::from_usize_lossy(count.max(1));
        Self::new((0..count).map(|k| cis(S::TAU() * S::from_usize_lossy(k) / m)).collect())
    }

    pub fn points(&self) -> &[Complex<S>] {
        &self.points
    }

    /// Degree bound `n` (point count minus one).
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn diameter(&self) -> S {
        let mut d = S::zero();
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn centroid(&self) -> Complex<S> {
        self.points.iter().fold(Complex::new(S::zero(), S::zero()), |a, &z| a + z)
            / S::from_usize_lossy(self.points.len())
    }

    /// Image under `z ↦ a z + b`.
    pub fn affine(&self, a: Complex<S>, b: Complex<S>) -> Result<Self> {
        Self::new(self.points.iter().map(|&z| a * z + b).collect())
    }

    /// Points reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new(perm.iter().map(|&i| self.points[i]).collect())
    }

    /// Index of a point within `rel * max(diameter, max |z|)` of `w`.
    fn coincident(&self, w: Complex<S>, rel: S) -> Option<usize> {
        let scale = self.points.iter().fold(self.diameter(), |m, z| m.max(z.norm()));
        self.points.iter().position(|&z| (z - w).norm() <= rel * scale)
    }
}

impl<S: Real> TryFrom<Vec<Complex<S>>> for PointConfiguration<S> {
    type Error = HullError;
    fn try_from(points: Vec<Complex<S>>) -> Result<Self> {
        Self::new(points)
    }
}

impl<S: Real> From<PointConfiguration<S>> for Vec<Complex<S>> {
    fn from(cfg: PointConfiguration<S>) -> Self {
        cfg.points
    }
}

/// Normalized alignment numbers for a query point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct AlignmentReport<S> {
    /// `t_i / e^{log_scale}`, largest modulus exactly 1.
    pub values: Vec<Complex<S>>,
    /// `Σ|t̂_i| - |Σ t̂_i|`.
    pub residual: S,
    /// `max_i ln |t_i|`.
    pub log_scale: S,
}

impl<S: Real> AlignmentReport<S> {
    pub fn total_modulus(&self) -> S {
        self.values.iter().map(|t| t.norm()).sum()
    }

    /// Residual divided by `Σ|t̂_i|`.
    pub fn relative_residual(&self) -> S {
        self.residual / self.total_modulus()
    }
}

fn coincidence_tol<S: Real>() -> S {
    lit::<S>(1e-14).max(S::epsilon() * lit(4.0))
}

/// Log-modulus and argument of each `t_i`.
fn log_alignment<S: Real>(cfg: &PointConfiguration<S>, w: Complex<S>) -> Vec<(S, S)> {
    let z = cfg.points();
    z.iter()
        .enumerate()
        .map(|(i, &zi)| {
            let d = zi - w;
            let (mut lm, mut arg) = (d.norm().ln(), d.arg());
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let e = zi - zj;
                    lm = lm + e.norm().ln();
                    arg = arg + e.arg();
                }
            }
            (lm, arg)
        })
        .collect()
}

/// Normalized `t_i` for the query `w`.
pub fn alignment_values<S: Real>(cfg: &PointConfiguration<S>, w: Complex<S>) -> Result<AlignmentReport<S>> {
    if !is_finite_c(w) {
        return Err(HullError::InvalidInput("query point is not finite".into()));
    }
    if let Some(index) = cfg.coincident(w, coincidence_tol()) {
        return Err(HullError::CoincidentQuery { index });
    }
    let logs = log_alignment(cfg, w);
    let log_scale = logs.iter().map(|&(l, _)| l).fold(S::neg_infinity(), S::max);
    let values: Vec<Complex<S>> = logs.iter().map(|&(l, a)| cis(a) * (l - log_scale).exp()).collect();
    let sum = values.iter().fold(Complex::new(S::zero(), S::zero()), |acc, &t| acc + t);
    let total: S = values.iter().map(|t| t.norm()).sum();
    let residual = (total - sum.norm()).max(S::zero());
    Ok(AlignmentReport { values, residual, log_scale })
}

/// Exact value of `min { max_i |P(z_i)| : P(w) = 1, deg P <= n }`.
///
/// Writing `P` through Lagrange interpolation gives `1 / Σ_i |ℓ_i(w)|`, and
/// `ℓ_i(w)` is proportional to `1 / t_i`, so the value is
/// `|Σ 1/t_i| / Σ |1/t_i|`. It equals 1 exactly on the hull.
pub fn interpolation_value<S: Real>(cfg: &PointConfiguration<S>, w: Complex<S>) -> Result<S> {
    if let Some(index) = cfg.coincident(w, coincidence_tol()) {
        return Err(HullError::CoincidentQuery { index });
    }
    let logs = log_alignment(cfg, w);
    let min_log = logs.iter().map(|&(l, _)| l).fold(S::infinity(), S::min);
    let inv: Vec<Complex<S>> = logs.iter().map(|&(l, a)| cis(-a) * (min_log - l).exp()).collect();
    let sum = inv.iter().fold(Complex::new(S::zero(), S::zero()), |acc, &t| acc + t);
    let total: S = inv.iter().map(|t| t.norm()).sum();
    Ok(sum.norm() / total)
}

/// Exact membership of `w` in the degree-`n` hull, `n = cfg.n()`.
///
/// Member when the relative residual is at most `tol`, borderline up to
/// `100 * tol`, non-member beyond.
pub fn membership_exact<S: Real>(cfg: &PointConfiguration<S>, w: Complex<S>, tol: S) -> Result<MembershipVerdict<S>> {
    if !(tol > S::zero()) {
        return Err(HullError::InvalidInput("tolerance must be positive".into()));
    }
    let report = alignment_values(cfg, w)?;
    let rel = report.relative_residual();
    let status = if rel <= tol {
        MembershipStatus::Member
    } else if rel <= tol * lit(100.0) {
        MembershipStatus::Borderline
    } else {
        MembershipStatus::NonMember
    };
    Ok(MembershipVerdict {
        status,
        residual: Some(report.residual),
        value: None,
        w: Query::C1(w),
        degree_bound: cfg.n(),
        certificate: None,
        certificate_verified: None,
    })
}

/// Convex-position test and counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexPosition {
    pub convex: bool,
    /// Indices of the strict convex hull vertices, counterclockwise, starting
    /// from the smallest index. Lists every point when `convex` is true.
    pub order: Vec<usize>,
}

/// Strict convex hull (collinear boundary points dropped) by monotone chain.
pub fn convex_position<S: Real>(cfg: &PointConfiguration<S>) -> ConvexPosition {
    let z = cfg.points();
    let diam = cfg.diameter();
    let eps = lit::<S>(1e-12) * diam * diam;
    let cross = |o: Complex<S>, a: Complex<S>, b: Complex<S>| (a - o).re * (b - o).im - (a - o).im * (b - o).re;

    let mut idx: Vec<usize> = (0..z.len()).collect();
    idx.sort_by(|&a, &b| {
        z[a].re
            .partial_cmp(&z[b].re)
            .unwrap_or(Ordering::Equal)
            .then(z[a].im.partial_cmp(&z[b].im).unwrap_or(Ordering::Equal))
    });
    let mut hull: Vec<usize> = Vec::with_capacity(2 * z.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(idx.iter()) } else { Box::new(idx.iter().rev()) };
        for &i in iter {
            while hull.len() >= start + 2 && cross(z[hull[hull.len() - 2]], z[hull[hull.len() - 1]], z[i]) <= eps {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if let Some(k) = hull.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(k, _)| k) {
        hull.rotate_left(k);
    }
    ConvexPosition { convex: hull.len() == z.len(), order: hull }
}

/// Strict interior test for a counterclockwise convex polygon.
pub(crate) fn inside_convex<S: Real>(poly: &[Complex<S>], w: Complex<S>, slack: S) -> bool {
    let m = poly.len();
    (0..m).all(|k| {
        let a = poly[k];
        let b = poly[(k + 1) % m];
        let e = b - a;
        let c = e.re * (w - a).im - e.im * (w - a).re;
        c > slack * e.norm()
    })
}

/// Distance from `w` to a counterclockwise convex polygon (0 inside).
fn distance_outside<S: Real>(poly: &[Complex<S>], w: Complex<S>) -> S {
    let m = poly.len();
    if m >= 3 && inside_convex(poly, w, S::zero()) {
        return S::zero();
    }
    let mut best = S::infinity();
    for k in 0..m {
        let a = poly[k];
        let b = poly[(k + 1) % m];
        let e = b - a;
        let len2 = e.norm_sqr();
        let t =
            if len2 > S::zero() { (((w - a) * e.conj()).re / len2).max(S::zero()).min(S::one()) } else { S::zero() };
        best = best.min((w - (a + e * t)).norm());
    }
    best
}

/// How a hull point was located.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    /// Intersection of two inscribed-angle circles.
    Circles,
    /// Multi-start Nelder–Mead on the relative residual.
    Descent,
}

/// Outcome of [`hull_point_search`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct HullPointSearch<S> {
    /// Best sub-tolerance point, if any.
    pub point: Option<Complex<S>>,
    /// Relative residual at `point`, or the smallest relative residual seen.
    pub residual: S,
    /// Every distinct sub-tolerance point found, best first.
    pub candidates: Vec<(Complex<S>, S)>,
    pub method: Option<SearchMethod>,
    pub convex_position: bool,
}

/// Searches for a point of the degree-`n` hull outside the configuration.
///
/// Points in convex position are handled by the circle construction; other
/// configurations, or a construction that fails verification, fall back to
/// minimizing the relative residual over the convex hull. Candidates closer
/// than `1e-7 * diameter` to a configuration point are discarded: the
/// residual can vanish in the limit toward a vertex without a hull point there.
pub fn hull_point_search<S: Real>(cfg: &PointConfiguration<S>, tol: S) -> Result<HullPointSearch<S>> {
    if cfg.n() < 2 {
        return Err(HullError::InvalidInput("hull point search needs at least 3 points".into()));
    }
    let diam = cfg.diameter();
    let near_k = |w: Complex<S>| cfg.points().iter().any(|&z| (z - w).norm() <= lit::<S>(1e-7) * diam);
    let rel_residual = |w: Complex<S>| alignment_values(cfg, w).map(|r| r.relative_residual()).unwrap_or(S::infinity());

    let cp = convex_position(cfg);
    let hull_poly: Vec<Complex<S>> = cp.order.iter().map(|&i| cfg.points()[i]).collect();
    let mut best_seen = S::infinity();

    if cp.convex {
        if let Some(w) = geometry::circle_construction(&hull_poly) {
            if !near_k(w) && inside_convex(&hull_poly, w, lit::<S>(1e-12) * diam) {
                let r = rel_residual(w);
                best_seen = best_seen.min(r);
                if r <= tol {
                    return Ok(HullPointSearch {
                        point: Some(w),
                        residual: r,
                        candidates: vec![(w, r)],
                        method: Some(SearchMethod::Circles),
                        convex_position: true,
                    });
                }
            }
        }
    }

    // multi-start descent over the convex hull
    let objective = |w: Complex<S>| {
        let out = distance_outside(&hull_poly, w);
        if out > S::zero() {
            return S::one() + out / diam;
        }
        rel_residual(w)
    };
    let c = cfg.centroid();
    let mut starts = vec![c];
    for k in 0..8 {
        let theta = S::TAU() * S::from_usize_lossy(k) / lit(8.0);
        starts.push(c + cis(theta) * (diam * lit(0.2)));
    }
    let step = diam * lit(0.1);
    let mut found: Vec<(Complex<S>, S)> = Vec::new();
    for s in starts {
        let mut m = nelder_mead(objective, s, step, 200, diam * lit(1e-13));
        // restart from the best vertex to shake off a collapsed simplex
        let m2 = nelder_mead(objective, m.at, step * lit(0.01), 200, diam * lit(1e-14));
        if m2.value < m.value {
            m = m2;
        }
        if near_k(m.at) {
            continue;
        }
        best_seen = best_seen.min(m.value);
        if m.value <= tol && !found.iter().any(|&(p, _)| (p - m.at).norm() <= lit::<S>(1e-6) * diam) {
            found.push((m.at, m.value));
        }
    }
    found.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(Ordering::Equal)
            .then(a.0.re.partial_cmp(&b.0.re).unwrap_or(Ordering::Equal))
            .then(a.0.im.partial_cmp(&b.0.im).unwrap_or(Ordering::Equal))
    });
    let point = found.first().map(|&(p, _)| p);
    let residual = found.first().map_or(best_seen, |&(_, r)| r);
    Ok(HullPointSearch {
        point,
        residual,
        method: point.map(|_| SearchMethod::Descent),
        candidates: found,
        convex_position: cp.convex,
    })
}
