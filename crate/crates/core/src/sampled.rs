//! Finite samples of compact sets in ℂ and ℂ², with the generator that
//! produced them so certificates can be re-checked on denser samples.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};
use crate::poly::{Dim, Polynomial};
use crate::scalar::{cis, is_finite_c, lit, Real};

/// Parametric description of a compact set that can be sampled at any density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "S: Real")]
pub enum Generator<S> {
    /// Circle `|z - center| = radius`, sampled uniformly in angle.
    Circle { center: Complex<S>, radius: S },
    /// Arc `{e^{iθ} : -alpha <= θ <= alpha}` of the unit circle, endpoints included.
    Arc { alpha: S },
    /// Segment from `a` to `b`, endpoints included.
    Segment { a: Complex<S>, b: Complex<S> },
    /// Torus knot `{(e^{ipθ}, e^{-iqθ})}` in ℂ².
    Knot { p: u32, q: u32 },
    /// `{(ζ, ζ̄) : |ζ| = radius}` in the totally real plane.
    TotallyRealCircle { radius: S },
    /// `{(ζ, ζ̄) : |ζ| <= radius}` in the totally real plane.
    TotallyRealDisk { radius: S },
}

impl<S: Real> Generator<S> {
    pub fn dim(&self) -> Dim {
        match self {
            Generator::Circle { .. } | Generator::Arc { .. } | Generator::Segment { .. } => Dim::One,
            Generator::Knot { .. } | Generator::TotallyRealCircle { .. } | Generator::TotallyRealDisk { .. } => {
                Dim::Two
            }
        }
    }

    /// Draws about `n` samples (exactly `n` for curves).
    pub fn sample(&self, n: usize) -> Result<SampledSet<S>> {
        if n == 0 {
            return Err(HullError::InvalidInput("sample count must be positive".into()));
        }
        let tau = S::TAU();
        let frac = |k: usize, m: usize| S::from_usize_lossy(k) / S::from_usize_lossy(m);
        let points = match *self {
            Generator::Circle { center, radius } => {
                SamplePoints::One((0..n).map(|k| center + cis(tau * frac(k, n)) * radius).collect())
            }
            Generator::Arc { alpha } => {
                let m = n.max(2) - 1;
                SamplePoints::One((0..=m).map(|k| cis(-alpha + lit::<S>(2.0) * alpha * frac(k, m))).collect())
            }
            Generator::Segment { a, b } => {
                let m = n.max(2) - 1;
                SamplePoints::One((0..=m).map(|k| a + (b - a) * frac(k, m)).collect())
            }
            Generator::Knot { p, q } => {
                let (p, q) = (S::from_u32(p).unwrap(), S::from_u32(q).unwrap());
                SamplePoints::Two(
                    (0..n)
                        .map(|k| {
                            let th = tau * frac(k, n);
                            (cis(p * th), cis(-q * th))
                        })
                        .collect(),
                )
            }
            Generator::TotallyRealCircle { radius } => SamplePoints::Two(
                (0..n)
                    .map(|k| {
                        let z = cis(tau * frac(k, n)) * radius;
                        (z, z.conj())
                    })
                    .collect(),
            ),
            Generator::TotallyRealDisk { radius } => {
                // concentric rings with 6i points on ring i: 1 + 3m(m+1) points total
                let m = ((n as f64 / 3.0).sqrt().ceil() as usize).max(1);
                let mut pts = vec![(Complex::zero(), Complex::zero())];
                for i in 1..=m {
                    let r = radius * frac(i, m);
                    for k in 0..6 * i {
                        let z = cis(tau * frac(k, 6 * i)) * r;
                        pts.push((z, z.conj()));
                    }
                }
                SamplePoints::Two(pts)
            }
        };
        let count = match &points {
            SamplePoints::One(p) => p.len(),
            SamplePoints::Two(p) => p.len(),
        };
        Ok(SampledSet {
            points,
            descriptor: self.describe(count),
            density: S::from_usize_lossy(count),
            generator: Some(self.clone()),
        })
    }

    fn describe(&self, n: usize) -> String {
        let f = |x: S| format!("{:.4}", x.as_f64());
        let c = |z: Complex<S>| format!("({:.4},{:.4})", z.re.as_f64(), z.im.as_f64());
        match self {
            Generator::Circle { center, radius } => format!("circle center={} r={} N={n}", c(*center), f(*radius)),
            Generator::Arc { alpha } => format!("arc alpha={} N={n}", f(*alpha)),
            Generator::Segment { a, b } => format!("segment {}..{} N={n}", c(*a), c(*b)),
            Generator::Knot { p, q } => format!("knot p={p} q={q} N={n}"),
            Generator::TotallyRealCircle { radius } => format!("totally-real circle r={} N={n}", f(*radius)),
            Generator::TotallyRealDisk { radius } => format!("totally-real disk r={} N={n}", f(*radius)),
        }
    }
}

/// Sample coordinates: points in ℂ or pairs in ℂ².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, bound = "S: Real")]
pub enum SamplePoints<S> {
    One(Vec<Complex<S>>),
    Two(Vec<(Complex<S>, Complex<S>)>),
}

/// Finite sample of a compact set `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct SampledSet<S> {
    points: SamplePoints<S>,
    descriptor: String,
    density: S,
    generator: Option<Generator<S>>,
}

impl<S: Real> SampledSet<S> {
    pub fn from_points(points: Vec<Complex<S>>, descriptor: impl Into<String>) -> Result<Self> {
        Self::validate(points.iter().copied())?;
        let density = S::from_usize_lossy(points.len());
        Ok(Self { points: SamplePoints::One(points), descriptor: descriptor.into(), density, generator: None })
    }

    pub fn from_pairs(points: Vec<(Complex<S>, Complex<S>)>, descriptor: impl Into<String>) -> Result<Self> {
        Self::validate(points.iter().flat_map(|&(z, w)| [z, w]))?;
        let density = S::from_usize_lossy(points.len());
        Ok(Self { points: SamplePoints::Two(points), descriptor: descriptor.into(), density, generator: None })
    }

    fn validate(mut it: impl Iterator<Item = Complex<S>>) -> Result<()> {
        let mut any = false;
        for z in it.by_ref() {
            any = true;
            if !is_finite_c(z) {
                return Err(HullError::InvalidInput("non-finite sample".into()));
            }
        }
        if !any {
            return Err(HullError::InvalidInput("empty sample set".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> Dim {
        match self.points {
            SamplePoints::One(_) => Dim::One,
            SamplePoints::Two(_) => Dim::Two,
        }
    }

    pub fn len(&self) -> usize {
        match &self.points {
            SamplePoints::One(p) => p.len(),
            SamplePoints::Two(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> &SamplePoints<S> {
        &self.points
    }

    /// Points of a one-variable sample (`None` in ℂ²).
    pub fn points1(&self) -> Option<&[Complex<S>]> {
        match &self.points {
            SamplePoints::One(p) => Some(p),
            SamplePoints::Two(_) => None,
        }
    }

    pub fn points2(&self) -> Option<&[(Complex<S>, Complex<S>)]> {
        match &self.points {
            SamplePoints::Two(p) => Some(p),
            SamplePoints::One(_) => None,
        }
    }

    /// Uniform view as `(z, w)` pairs; `w = 0` for one-variable samples.
    pub fn pairs(&self) -> Vec<(Complex<S>, Complex<S>)> {
        match &self.points {
            SamplePoints::One(p) => p.iter().map(|&z| (z, Complex::zero())).collect(),
            SamplePoints::Two(p) => p.clone(),
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn density(&self) -> S {
        self.density
    }

    pub fn generator(&self) -> Option<&Generator<S>> {
        self.generator.as_ref()
    }

    /// Re-samples the generator at `factor` times the current density, when a
    /// generator is attached.
    pub fn resample(&self, factor: usize) -> Option<Result<Self>> {
        self.generator.as_ref().map(|g| g.sample(self.len() * factor.max(1)))
    }

    /// `max_k |p(sample_k)|`.
    pub fn sup_norm<P: Polynomial<S> + ?Sized>(&self, p: &P) -> Result<S> {
        if p.dim() != self.dim() {
            return Err(HullError::DimensionMismatch { expected: self.dim().as_usize(), found: p.dim().as_usize() });
        }
        let z0 = Complex::zero();
        let norm = match &self.points {
            SamplePoints::One(pts) => pts.iter().map(|&z| p.eval_at(z, z0).norm()).fold(S::zero(), S::max),
            SamplePoints::Two(pts) => pts.iter().map(|&(z, w)| p.eval_at(z, w).norm()).fold(S::zero(), S::max),
        };
        Ok(norm)
    }
}

impl<S: Real> fmt::Display for SampledSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor)
    }
}

/// `‖p‖_K` over the samples of `k`.
pub fn sup_norm<S: Real, P: Polynomial<S> + ?Sized>(p: &P, k: &SampledSet<S>) -> Result<S> {
    k.sup_norm(p)
}
