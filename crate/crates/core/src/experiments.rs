//! Unit-circle arcs, the ring curve, Chebyshev symmetry, and the Jacobian check.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::cheb::{membership_numeric, minimax, Constraint, MembershipOptions};
use crate::error::{HullError, Result};
use crate::exact_hull::{membership_exact, PointConfiguration};
use crate::geometry::{circle_for_gap, hull_point_unit_circle};
use crate::linalg::det_complex;
use crate::optimize::bisect;
use crate::poly::{monomial_basis, Dim, Poly1};
use crate::sampled::{Generator, SampledSet};
use crate::scalar::{cis, lit, Real};
use crate::verdict::{MembershipVerdict, Query};

/// Arc `A_α = {e^{iθ} : |θ| <= α}` sampled at `samples` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct ArcSpec<S> {
    pub alpha: S,
    pub samples: usize,
}

impl<S: Real> ArcSpec<S> {
    pub fn new(alpha: S, samples: usize) -> Result<Self> {
        if !(alpha > S::zero() && alpha < S::PI()) {
            return Err(HullError::InvalidInput(format!("arc half-angle must be in (0, π), got {}", alpha.as_f64())));
        }
        if samples < 2 {
            return Err(HullError::InvalidInput("arc needs at least 2 samples".into()));
        }
        Ok(Self { alpha, samples })
    }

    pub fn sample(&self) -> Result<SampledSet<S>> {
        Generator::Arc { alpha: self.alpha }.sample(self.samples)
    }
}

/// Reduces an angle to `[0, 2π)`.
fn wrap<S: Real>(x: S) -> S {
    let r = x - S::TAU() * (x / S::TAU()).floor();
    if r >= S::TAU() {
        S::zero()
    } else {
        r
    }
}

/// `n + 1` unit-circle points, listed counterclockwise, whose degree-`n`
/// hull contains the extra point `w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct CircleWitness<S> {
    pub n: usize,
    /// Angles of the points; `gaps[j]` separates `angles[j]` and `angles[j + 1]`.
    pub angles: Vec<S>,
    /// Gaps with the wrap-around gap last.
    pub gaps: Vec<S>,
    pub w: Complex<S>,
}

/// Second point of each gap circle is solved in turn so that every circle
/// passes through `w`. `t ∈ (0, 1)` places `w` along the inner arc of the
/// first circle.
///
/// Starts at angle 0 with first gap `g0`. As `g0 -> 0` every other gap is
/// pinned within `g0` of `2π/n`.
pub fn sequential_circle_witness<S: Real>(n: usize, g0: S, t: S) -> Option<CircleWitness<S>> {
    if n < 2 || !(g0 > S::zero()) || !(t > S::zero() && t < S::one()) {
        return None;
    }
    let limit = S::TAU() / S::from_usize_lossy(n);
    let c0 = circle_for_gap(S::zero(), g0, n).ok()?;
    let a0 = (Complex::new(S::one(), S::zero()) - c0.center).arg();
    let a1 = (cis(g0) - c0.center).arg();
    let mut sweep = wrap(a1 - a0);
    let half = lit::<S>(0.5);
    if (c0.center + cis(a0 + sweep * half) * c0.radius).norm() > S::one() {
        sweep = sweep - S::TAU();
    }
    let w = c0.center + cis(a0 + t * sweep) * c0.radius;

    let mut gaps = vec![g0];
    let mut phi = g0;
    let lo = lit::<S>(1e-9).min(g0 * lit(1e-3));
    let hi = limit * (S::one() - lit(1e-12));
    for _ in 1..n {
        let signed = |g: S| match circle_for_gap(phi, phi + g, n) {
            Ok(c) => (w - c.center).norm() - c.radius,
            Err(_) => S::nan(),
        };
        let g = bisect(signed, lo, hi, 200)?;
        gaps.push(g);
        phi = phi + g;
    }
    if phi >= S::TAU() {
        return None;
    }
    gaps.push(S::TAU() - phi);
    let mut angles = Vec::with_capacity(n + 1);
    let mut a = S::zero();
    for &g in &gaps[..n] {
        angles.push(a);
        a = a + g;
    }
    angles.push(a);
    Some(CircleWitness { n, angles, gaps, w })
}

/// Verified witness that `A_α` is not `n`-polynomially convex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct ArcWitness<S> {
    pub n: usize,
    pub alpha: S,
    pub points: Vec<Complex<S>>,
    pub w: Complex<S>,
    /// Gaps between consecutive points, wrap-around (outside the arc) last.
    pub gaps: Vec<S>,
    /// Construction metadata: first gap and position of `w` on its circle.
    pub small_gap: S,
    pub position: S,
    /// Relative residual of the exact oracle.
    pub residual: S,
    /// Degree-`n` minimax value at `w` over the points.
    pub numeric_value: S,
}

/// `n + 1` points inside `A_α` with a degree-`n` hull point `w` off the
/// circle, or `None` when the construction finds none.
///
/// The first gap starts at `2α/(10n)` and is halved until the wrap-around gap
/// exceeds `2π - 2α`. The remaining gaps come from
/// [`sequential_circle_witness`] with `w` midway along the first circle. The
/// points are centered on the arc, `w` is recomputed by
/// [`hull_point_unit_circle`], and both oracles must confirm it.
pub fn arc_nonconvexity_witness<S: Real>(n: usize, alpha: S) -> Result<Option<ArcWitness<S>>> {
    if n < 2 {
        return Err(HullError::InvalidInput("n must be at least 2".into()));
    }
    let nf = S::from_usize_lossy(n);
    if !(alpha > S::zero() && alpha < S::PI()) {
        return Err(HullError::InvalidInput("arc half-angle must be in (0, π)".into()));
    }
    if alpha <= (nf - S::one()) * S::PI() / nf {
        return Ok(None);
    }
    let outside = S::TAU() - lit::<S>(2.0) * alpha;
    let position = lit::<S>(0.5);
    let mut g0 = lit::<S>(2.0) * alpha / (lit::<S>(10.0) * nf);
    let mut found = None;
    while g0 > lit(1e-10) {
        if let Some(c) = sequential_circle_witness(n, g0, position) {
            if c.gaps[n] >= outside {
                found = Some(c);
                break;
            }
        }
        g0 = g0 * lit(0.5);
    }
    let Some(c) = found else { return Ok(None) };

    // center the points on the arc
    let shift = -(S::TAU() - c.gaps[n]) * lit(0.5);
    let mut angles: Vec<S> = c.angles.iter().map(|&a| wrap(a + shift)).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let Some(w) = hull_point_unit_circle(&angles) else { return Ok(None) };
    if (w - c.w * cis(shift)).norm() > lit(1e-6) {
        return Ok(None);
    }
    let points: Vec<Complex<S>> = c.angles.iter().map(|&a| cis(a + shift)).collect();
    let cfg = PointConfiguration::new(points.clone())?;
    let exact = membership_exact(&cfg, w, lit(1e-9))?;
    let residual = exact.residual.unwrap_or_else(S::nan);
    if !exact.is_member() {
        return Ok(None);
    }
    let k = SampledSet::from_points(points.clone(), format!("{} witness points", n + 1))?;
    let numeric = membership_numeric(&k, Query::C1(w), n, &MembershipOptions::default())?;
    let numeric_value = numeric.value.unwrap_or_else(S::nan);
    if !(numeric_value >= S::one() - lit(5e-3)) {
        return Ok(None);
    }
    Ok(Some(ArcWitness { n, alpha, points, w, small_gap: c.gaps[0], gaps: c.gaps, position, residual, numeric_value }))
}

/// Quadratic separating `r e^{iφ}` from `A_α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct QuadraticSeparation<S> {
    pub a: S,
    pub polynomial: Poly1<S>,
    pub at_point: S,
    pub sup: S,
    /// `|p(r e^{iφ})| / sup_A |p|`.
    pub ratio: S,
}

/// `p = z² - 2e^{iφ} z + e^{2iφ}(a² + 1)` for the first `a` in `1, 2, 4, …, 2^15`
/// with `sup_A |p| < |p(r e^{iφ})|` on the samples of `arc`.
pub fn quadratic_arc_separation<S: Real>(arc: &ArcSpec<S>, r: S, phi: S) -> Result<QuadraticSeparation<S>> {
    if !(arc.alpha < S::FRAC_PI_4()) {
        return Err(HullError::InvalidInput("quadratic separation needs α < π/4".into()));
    }
    if !(r > S::zero() && r < S::one()) || !(phi.abs() <= arc.alpha) {
        return Err(HullError::InvalidInput("need 0 < r < 1 and |φ| <= α".into()));
    }
    let k = arc.sample()?;
    let w = cis(phi) * r;
    let e = cis(phi);
    let two = lit::<S>(2.0);
    let mut best = S::zero();
    let mut a = S::one();
    for _ in 0..16 {
        let p = Poly1::new(vec![e * e * (a * a + S::one()), -e * two, Complex::new(S::one(), S::zero())]);
        let at_point = p.eval(w).norm();
        let sup = k.sup_norm(&p)?;
        let ratio = at_point / sup;
        if sup < at_point {
            return Ok(QuadraticSeparation { a, polynomial: p, at_point, sup, ratio });
        }
        best = best.max(ratio);
        a = a * two;
    }
    Err(HullError::SearchExhausted(format!("no a <= 2^15 separates; best ratio {}", best.as_f64())))
}

/// Curve of shrinking rings accumulating at the origin.
///
/// Ring `n` has center `1/n` and radius `1/(2n²)`; open arcs of half-angle
/// `π/(2(n+1))` around angles 0 and π are removed and joined to the
/// neighbouring rings by straight connectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathologicalCurveSpec {
    pub n_max: usize,
}

impl PathologicalCurveSpec {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 2 {
            return Err(HullError::InvalidInput("n_max must be at least 2".into()));
        }
        Ok(Self { n_max })
    }

    pub fn center<S: Real>(n: usize) -> S {
        S::one() / S::from_usize_lossy(n)
    }

    pub fn radius<S: Real>(n: usize) -> S {
        let nf = S::from_usize_lossy(n);
        S::one() / (lit::<S>(2.0) * nf * nf)
    }

    /// Half-angle of each removed arc on ring `n`.
    pub fn removed_half_angle<S: Real>(n: usize) -> S {
        S::PI() / (lit::<S>(2.0) * S::from_usize_lossy(n + 1))
    }

    /// The `2n + 2` equally spread points of ring `n`, at angles `(k + 1/2)π/(n + 1)`.
    pub fn ring_points<S: Real>(n: usize) -> Vec<Complex<S>> {
        let m = 2 * n + 2;
        let c = Complex::new(Self::center::<S>(n), S::zero());
        let r = Self::radius::<S>(n);
        (0..m)
            .map(|k| {
                let th = (S::from_usize_lossy(k) + lit(0.5)) * S::PI() / S::from_usize_lossy(n + 1);
                c + cis(th) * r
            })
            .collect()
    }

    /// Polylines for rendering: two arcs per ring, then the connectors.
    pub fn polylines<S: Real>(&self, per_arc: usize) -> Vec<Vec<Complex<S>>> {
        let per_arc = per_arc.max(2);
        let mut lines = Vec::new();
        let mut ends = Vec::new();
        for n in 1..=self.n_max {
            let c = Complex::new(Self::center::<S>(n), S::zero());
            let r = Self::radius::<S>(n);
            let h = Self::removed_half_angle::<S>(n);
            let arc = |from: S, to: S| -> Vec<Complex<S>> {
                (0..per_arc)
                    .map(|k| {
                        let t = S::from_usize_lossy(k) / S::from_usize_lossy(per_arc - 1);
                        c + cis(from + (to - from) * t) * r
                    })
                    .collect()
            };
            let upper = arc(h, S::PI() - h);
            let lower = arc(S::PI() + h, S::TAU() - h);
            ends.push((upper[0], upper[per_arc - 1], lower[0], lower[per_arc - 1]));
            lines.push(upper);
            lines.push(lower);
        }
        // left ends of ring n meet right ends of ring n + 1
        for pair in ends.windows(2) {
            let (_, up_left, low_left, _) = pair[0];
            let (up_right, _, _, low_right) = pair[1];
            lines.push(vec![up_left, up_right]);
            lines.push(vec![low_left, low_right]);
        }
        lines
    }
}

/// Exact membership of `1/n` in the degree-`(2n + 1)` hull of the spread points of ring `n`.
pub fn pathological_membership<S: Real>(spec: &PathologicalCurveSpec, n: usize) -> Result<MembershipVerdict<S>> {
    if n < 1 || n > spec.n_max {
        return Err(HullError::InvalidInput(format!("ring index must be in 1..={}, got {n}", spec.n_max)));
    }
    let cfg = PointConfiguration::new(PathologicalCurveSpec::ring_points(n))?;
    membership_exact(&cfg, Complex::new(PathologicalCurveSpec::center::<S>(n), S::zero()), lit(1e-10))
}

/// Monic Chebyshev check on a conjugation-symmetric subset of the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct ChebyshevReport<S> {
    pub degree: usize,
    /// LP optimum of `min sup_A |z^n + …|`.
    pub value: S,
    pub achieved: S,
    pub coefficients: Vec<Complex<S>>,
    /// Max modulus of the non-leading coefficients.
    pub distance_from_monomial: S,
    /// `|value - 1| <= 5e-3`.
    pub passes: bool,
}

pub fn chebyshev_symmetry_check<S: Real>(a: &SampledSet<S>, n: usize, directions: usize) -> Result<ChebyshevReport<S>> {
    let pts = a.points1().ok_or(HullError::DimensionMismatch { expected: 1, found: 2 })?;
    let tol = lit::<S>(1e-12);
    for (i, &z) in pts.iter().enumerate() {
        if !pts.iter().any(|&y| (y - z.conj()).norm() <= tol) {
            return Err(HullError::Asymmetric(i));
        }
    }
    if n < 1 {
        return Err(HullError::InvalidInput("degree must be at least 1".into()));
    }
    let basis = monomial_basis(Dim::One, n as i64)?;
    let sol = minimax(a, &basis, &Constraint::Monic, directions)?;
    let distance_from_monomial = sol.coefficients[..n].iter().map(|c| c.norm()).fold(S::zero(), S::max);
    Ok(ChebyshevReport {
        degree: n,
        value: sol.value,
        achieved: sol.achieved,
        passes: (sol.value - S::one()).abs() <= lit(5e-3),
        coefficients: sol.coefficients,
        distance_from_monomial,
    })
}

/// Determinant of the `n × n` matrix with diagonal `1 + Σ_{j≠k} z_k/(z_k - z_j)`
/// and off-diagonal `z_k/(z_k - z_j) - z_k/(z_k - 1)`; it equals `n!`.
pub fn jacobian_constant_check<S: Real>(points: &[Complex<S>]) -> Result<Complex<S>> {
    let n = points.len();
    if n < 2 {
        return Err(HullError::InvalidInput("need at least 2 points".into()));
    }
    let one = Complex::new(S::one(), S::zero());
    let tol = lit::<S>(1e-14);
    for (k, &z) in points.iter().enumerate() {
        if z.norm() <= tol || (z - one).norm() <= tol {
            return Err(HullError::Degenerate(format!("point {k} coincides with 0 or 1")));
        }
        if let Some(j) = points[..k].iter().position(|&y| (y - z).norm() <= tol * (S::one() + z.norm())) {
            return Err(HullError::DuplicatePoints(j, k));
        }
    }
    let m = (0..n)
        .map(|k| {
            let zk = points[k];
            (0..n)
                .map(|j| {
                    if j == k {
                        one + (0..n).filter(|&i| i != k).map(|i| zk / (zk - points[i])).sum::<Complex<S>>()
                    } else {
                        zk / (zk - points[j]) - zk / (zk - one)
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_complex(m))
}
