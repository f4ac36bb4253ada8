//! Experiments in ℂ²: torus knots, totally real sets, and level-set witnesses.

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cheb::{membership_numeric, minimax, verify_certificate, Constraint, MembershipOptions, MinimaxSolution};
use crate::error::{HullError, Result};
use crate::poly::{monomial_basis, AnyPoly, Dim, Exponent, Poly2};
use crate::sampled::{Generator, SampledSet};
use crate::scalar::{lit, Real};
use crate::verdict::{MembershipStatus, Query};

/// Torus knot `{(e^{ipθ}, e^{-iqθ})}` with coprime `p, q >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "KnotWire", into = "KnotWire")]
pub struct KnotSpec {
    p: u32,
    q: u32,
}

#[derive(Serialize, Deserialize)]
struct KnotWire {
    p: u32,
    q: u32,
}

impl TryFrom<KnotWire> for KnotSpec {
    type Error = HullError;
    fn try_from(w: KnotWire) -> Result<Self> {
        KnotSpec::new(w.p, w.q)
    }
}

impl From<KnotSpec> for KnotWire {
    fn from(k: KnotSpec) -> Self {
        KnotWire { p: k.p, q: k.q }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl KnotSpec {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(HullError::InvalidInput("knot parameters must be positive".into()));
        }
        if gcd(p, q) != 1 {
            return Err(HullError::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `z^q w^p - 1`, which vanishes on the knot.
    pub fn vanishing_polynomial<S: Real>(&self) -> Poly2<S> {
        Poly2::from_terms([
            (Exponent::new(self.q as usize, self.p as usize), Complex::new(S::one(), S::zero())),
            (Exponent::new(0, 0), Complex::new(-S::one(), S::zero())),
        ])
    }
}

/// `n` samples of the knot, uniform in the parameter.
pub fn knot_samples<S: Real>(spec: KnotSpec, n: usize) -> Result<SampledSet<S>> {
    if n < 16 {
        return Err(HullError::InvalidInput(format!("knot needs at least 16 samples, got {n}")));
    }
    Generator::Knot { p: spec.p, q: spec.q }.sample(n)
}

/// Chebyshev problem `min sup_K |P|` with `P(0, 0) = 1` over bivariate
/// polynomials of total degree `<= degree` on `n` knot samples.
pub fn knot_degree_experiment<S: Real>(
    spec: KnotSpec,
    degree: usize,
    n: usize,
    directions: usize,
) -> Result<MinimaxSolution<S>> {
    if degree < 1 {
        return Err(HullError::InvalidInput("degree must be at least 1".into()));
    }
    let k = knot_samples(spec, n)?;
    let basis = monomial_basis(Dim::Two, degree as i64)?;
    let zero = Complex::zero();
    minimax(&k, &basis, &Constraint::PointValue(Query::C2(zero, zero)), directions)
}

/// Knot experiment outcome with a verified certificate when `(0, 0)` is separated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct KnotReport<S> {
    pub p: u32,
    pub q: u32,
    pub degree: usize,
    pub samples: usize,
    #[serde(rename = "L")]
    pub directions: usize,
    pub value: S,
    pub status: MembershipStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<AnyPoly<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
}

pub fn knot_report<S: Real>(
    spec: KnotSpec,
    degree: usize,
    n: usize,
    opts: &MembershipOptions<S>,
) -> Result<KnotReport<S>> {
    let k = knot_samples(spec, n)?;
    let zero = Complex::zero();
    let v = membership_numeric(&k, Query::C2(zero, zero), degree, opts)?;
    Ok(KnotReport {
        p: spec.p,
        q: spec.q,
        degree,
        samples: n,
        directions: opts.directions,
        value: v.value.unwrap_or_else(S::nan),
        status: v.status,
        certificate: v.certificate,
        certificate_verified: v.certificate_verified,
    })
}

/// Route that produced a totally-real separator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeparatorMethod {
    /// Point in the plane: `1 - (z - z0)(w - w0) / (2M)`.
    InPlane,
    /// `z0 w0` not real: `1 + (i/m)(zw - z0 w0)`.
    ImaginaryProduct,
    /// `z0 w0` real: `1 + (i/m)(zw - i z0 w0)`, kept only if it verifies.
    RealProduct,
    /// Chebyshev LP over all polynomials of degree <= 2.
    LinearProgram,
}

/// Verified degree-2 separator of a point from a totally real set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct Separator<S> {
    pub polynomial: Poly2<S>,
    pub method: SeparatorMethod,
    /// `|P(point)|`.
    pub at_point: S,
    /// `sup |P|` over the samples and, when available, a 10× resample.
    pub sup: S,
}

fn sup_over<S: Real>(p: &Poly2<S>, k: &SampledSet<S>, dense: Option<&SampledSet<S>>) -> Result<S> {
    let mut s = k.sup_norm(p)?;
    if let Some(d) = dense {
        s = s.max(d.sup_norm(p)?);
    }
    Ok(s)
}

/// Degree-≤2 polynomial with `|P(point)| >= 1 > sup_K |P|` for `K` in the
/// totally real plane `{(ζ, ζ̄)}`.
///
/// Closed forms are tried first; every candidate is checked on the samples
/// and on a 10× resample of the generator before it is returned, and the LP
/// over the full degree-2 space is the fallback.
pub fn totally_real_separator<S: Real>(point: (Complex<S>, Complex<S>), k: &SampledSet<S>) -> Result<Separator<S>> {
    let pts = k.points2().ok_or(HullError::DimensionMismatch { expected: 2, found: 1 })?;
    let plane_tol = lit::<S>(1e-12);
    for (i, &(z, w)) in pts.iter().enumerate() {
        if (w - z.conj()).norm() > plane_tol * (S::one() + z.norm()) {
            return Err(HullError::InvalidInput(format!("sample {i} is not of the form (ζ, conj ζ)")));
        }
    }
    let (z0, w0) = point;
    if pts.iter().any(|&(z, w)| (z - z0).norm() + (w - w0).norm() <= plane_tol) {
        return Err(HullError::InvalidInput("point lies on the sample set".into()));
    }
    let dense = k.resample(10).transpose()?;
    let one = Complex::new(S::one(), S::zero());
    let i = Complex::new(S::zero(), S::one());
    let check = |p: Poly2<S>, method| -> Result<Option<Separator<S>>> {
        let at_point = p.eval(z0, w0).norm();
        let sup = sup_over(&p, k, dense.as_ref())?;
        let ok = verify_certificate(at_point, sup);
        Ok(ok.then_some(Separator { polynomial: p, method, at_point, sup }))
    };

    let candidate = if (w0 - z0.conj()).norm() <= plane_tol * (S::one() + z0.norm()) {
        // M = max |(z - z0)(w - w0)| over the samples
        let m = pts.iter().map(|&(z, w)| ((z - z0) * (w - w0)).norm()).fold(S::zero(), S::max);
        let c = -one / (m * lit(2.0));
        // 1 + c (zw - w0 z - z0 w + z0 w0)
        let p = Poly2::from_terms([
            (Exponent::new(0, 0), one + c * z0 * w0),
            (Exponent::new(1, 0), -c * w0),
            (Exponent::new(0, 1), -c * z0),
            (Exponent::new(1, 1), c),
        ]);
        check(p, SeparatorMethod::InPlane)?
    } else {
        let prod = z0 * w0;
        let (a, b) = (prod.re, prod.im);
        if b != S::zero() {
            // (|ζ|² - a)² bounded by its maximum over the samples; margin 1 in -2bm > M + b²
            let m_case = pts.iter().map(|&(z, _)| (z.norm_sqr() - a).powi(2)).fold(S::zero(), S::max);
            let m = -b.signum() * (m_case + b * b + S::one()) / (lit::<S>(2.0) * b.abs());
            let c = i / m;
            let p = Poly2::from_terms([(Exponent::new(0, 0), one - c * prod), (Exponent::new(1, 1), c)]);
            check(p, SeparatorMethod::ImaginaryProduct)?
        } else if a != S::zero() {
            let m_case = pts.iter().map(|&(z, _)| z.norm_sqr().powi(2)).fold(S::zero(), S::max);
            let m = -a.signum() * (a * a + m_case + S::one()) / (lit::<S>(2.0) * a.abs());
            let c = i / m;
            let p = Poly2::from_terms([(Exponent::new(0, 0), one - c * i * prod), (Exponent::new(1, 1), c)]);
            check(p, SeparatorMethod::RealProduct)?
        } else {
            None
        }
    };
    if let Some(s) = candidate {
        return Ok(s);
    }

    let opts = MembershipOptions::<S>::default();
    let v = membership_numeric(k, Query::C2(z0, w0), 2, &opts)?;
    match v.certificate {
        Some(AnyPoly::Two(p)) if v.certificate_verified == Some(true) => {
            let at_point = p.eval(z0, w0).norm();
            let sup = sup_over(&p, k, dense.as_ref())?;
            Ok(Separator { polynomial: p, method: SeparatorMethod::LinearProgram, at_point, sup })
        }
        _ => Err(HullError::Verification(format!(
            "no verified degree-2 separator: LP optimum {:?}, status {}",
            v.value.map(|x| x.as_f64()),
            v.status.as_str()
        ))),
    }
}

/// Level-set family `{F = λ}`, `λ >= 0`, through a base point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct SurfaceFamily<S> {
    pub polynomial: Poly2<S>,
    pub base_point: (Complex<S>, Complex<S>),
}

impl<S: Real> SurfaceFamily<S> {
    pub fn new(polynomial: Poly2<S>, base_point: (Complex<S>, Complex<S>)) -> Result<Self> {
        let v = polynomial.eval(base_point.0, base_point.1).norm();
        if v > lit(1e-12) {
            return Err(HullError::InvalidInput(format!("F(base_point) = {} is not zero", v.as_f64())));
        }
        Ok(Self { polynomial, base_point })
    }

    /// Real-coefficient family `a zw + b z + c w` through the origin.
    pub fn bilinear(a: i32, b: i32, c: i32) -> Self {
        let r = |x: i32| Complex::new(S::lit(x as f64), S::zero());
        let p =
            Poly2::from_terms([(Exponent::new(1, 1), r(a)), (Exponent::new(1, 0), r(b)), (Exponent::new(0, 1), r(c))]);
        Self { polynomial: p, base_point: (Complex::zero(), Complex::zero()) }
    }

    /// The three families paired with the knot `{(e^{ipθ}, e^{-iθ})}` they
    /// are meant to keep away from the origin, for `p = 2, 3, 4`.
    pub fn examples() -> Vec<(KnotSpec, Self)> {
        vec![
            (KnotSpec { p: 2, q: 1 }, Self::bilinear(1, -1, -1)),
            (KnotSpec { p: 3, q: 1 }, Self::bilinear(-2, 1, -2)),
            (KnotSpec { p: 4, q: 1 }, Self::bilinear(3, -3, -5)),
        ]
    }
}

/// Distance from `u` to the ray `[0, ∞)`.
pub fn ray_distance<S: Real>(u: Complex<S>) -> S {
    if u.re < S::zero() {
        u.norm()
    } else {
        u.im.abs()
    }
}

/// `min_k dist(F(sample_k), [0, ∞))`: positive clearance means no level set
/// `{F = λ}`, `λ >= 0`, meets the samples.
pub fn geometric_hull_witness<S: Real>(family: &SurfaceFamily<S>, k: &SampledSet<S>) -> Result<S> {
    let pts = k.points2().ok_or(HullError::DimensionMismatch { expected: 2, found: 1 })?;
    Ok(pts.iter().map(|&(z, w)| ray_distance(family.polynomial.eval(z, w))).fold(S::infinity(), S::min))
}
