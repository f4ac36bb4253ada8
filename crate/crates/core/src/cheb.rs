//! Constrained Chebyshev problems on sampled sets, solved as linear programs.
//!
//! The modulus `|P(z_k)| <= t` is relaxed to the `L` half-planes
//! `Re(e^{-iθ_l} P(z_k)) <= t`, `θ_l = 2πl/L`, which brackets the true
//! minimax value `μ` as `t <= μ <= t·sec(π/L)`. The LP is solved through its
//! dual with [`crate::lp::revised_simplex`]; the `N·L` half-plane columns are
//! priced implicitly, since for each sample only the direction closest to
//! `arg P(z_k)` can have the most negative reduced cost.
//!
//! Coefficients are carried in the shifted and scaled variable
//! `u = (z - c) / R` so the sample powers stay bounded by one, and expanded
//! back to plain monomials afterwards.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};
use crate::lp::{revised_simplex, ColumnOracle, PricingRule, SimplexOptions};
use crate::poly::{monomial_basis, AnyPoly, Dim, Exponent, Poly1, Poly2, Polynomial};
use crate::sampled::SampledSet;
use crate::scalar::{cis, is_finite_c, lit, Real};
use crate::verdict::{MembershipStatus, MembershipVerdict, Query};

/// Scale of the right-hand-side perturbation in the coefficient rows.
const PERTURBATION: f64 = 1e-9;

/// Bound on the real and imaginary parts of the scaled coefficients.
pub const COEFFICIENT_BOX: f64 = 1e6;

/// Linear normalization of the Chebyshev problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", bound = "S: Real")]
pub enum Constraint<S> {
    /// `P(w) = 1`.
    PointValue(Query<S>),
    /// Leading coefficient equal to 1 (one variable only).
    Monic,
}

/// Optimum of a constrained Chebyshev problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct MinimaxSolution<S> {
    /// LP optimum: a lower bound for the minimax value over the samples, up to the
    /// `1e-9` right-hand-side perturbation used to break degeneracy.
    pub value: S,
    /// `max_k |P(z_k)|` for the returned polynomial; at most `value·sec(π/L)`.
    pub achieved: S,
    pub dim: usize,
    pub exponents: Vec<Exponent>,
    /// Coefficients of `P` in plain monomials, aligned with `exponents`.
    pub coefficients: Vec<Complex<S>>,
    /// Samples with `|P(z_k)|` within `1e-6` (relative) of `achieved`.
    pub active_points: Vec<usize>,
    #[serde(rename = "L")]
    pub directions_used: usize,
    pub iterations: usize,
    /// Shift `c` and scale `R` of the working variables.
    pub center: (Complex<S>, Complex<S>),
    pub scale: S,
    /// Coefficients in the working variables `(z - c_z)/R`, `(w - c_w)/R`.
    pub scaled_coefficients: Vec<Complex<S>>,
}

impl<S: Real> MinimaxSolution<S> {
    pub fn polynomial(&self) -> AnyPoly<S> {
        let terms = self.exponents.iter().copied().zip(self.coefficients.iter().copied());
        if self.dim == 1 {
            let deg = self.exponents.iter().map(|e| e.z).max().unwrap_or(0);
            let mut c = vec![Complex::zero(); deg + 1];
            for (e, a) in terms {
                c[e.z] = c[e.z] + a;
            }
            AnyPoly::One(Poly1::new(c))
        } else {
            AnyPoly::Two(Poly2::from_terms(terms))
        }
    }

    /// Evaluates `P` through the working variables; better conditioned than
    /// the expanded monomial form away from the origin.
    pub fn eval_scaled(&self, z: Complex<S>, w: Complex<S>) -> Complex<S> {
        let u = (z - self.center.0) / self.scale;
        let v = (w - self.center.1) / self.scale;
        self.exponents
            .iter()
            .zip(&self.scaled_coefficients)
            .fold(Complex::zero(), |acc, (e, &a)| acc + a * cpow(u, e.z) * cpow(v, e.w))
    }
}

fn cpow<S: Real>(z: Complex<S>, k: usize) -> Complex<S> {
    let mut r = Complex::new(S::one(), S::zero());
    for _ in 0..k {
        r = r * z;
    }
    r
}

fn binomial<S: Real>(n: usize, k: usize) -> S {
    let mut r = S::one();
    for i in 0..k {
        r = r * S::from_usize_lossy(n - i) / S::from_usize_lossy(i + 1);
    }
    r
}

/// Whether `e ∈ E` implies every `e' <= e` (componentwise) is in `E`.
fn downward_closed(exps: &[Exponent]) -> bool {
    exps.iter().all(|e| {
        (e.z == 0 || exps.contains(&Exponent::new(e.z - 1, e.w)))
            && (e.w == 0 || exps.contains(&Exponent::new(e.z, e.w - 1)))
    })
}

/// Expands `Σ a_e ((z-c_z)/R)^{e.z} ((w-c_w)/R)^{e.w}` into plain monomials.
fn expand_shifted<S: Real>(
    exps: &[Exponent],
    scaled: &[Complex<S>],
    center: (Complex<S>, Complex<S>),
    r: S,
) -> Vec<Complex<S>> {
    let mut out = vec![Complex::zero(); exps.len()];
    let pos = |e: Exponent| exps.iter().position(|&x| x == e).expect("downward closed basis");
    for (e, &a) in exps.iter().zip(scaled) {
        if a.is_zero() {
            continue;
        }
        let coef = a / cpow(Complex::new(r, S::zero()), e.total());
        for i in 0..=e.z {
            let fz = cpow(-center.0, e.z - i) * binomial::<S>(e.z, i);
            for j in 0..=e.w {
                let fw = cpow(-center.1, e.w - j) * binomial::<S>(e.w, j);
                let k = pos(Exponent::new(i, j));
                out[k] = out[k] + coef * fz * fw;
            }
        }
    }
    out
}

struct ChebLp<S> {
    /// Number of free real variables (two per free complex coefficient).
    m: usize,
    n_free: usize,
    dirs: Vec<Complex<S>>,
    /// Row-major `N × n_free` table of free monomials at the samples.
    phi: Vec<Complex<S>>,
    /// Fixed monomial at each sample.
    p0: Vec<Complex<S>>,
    bound: S,
    /// Right-hand side of the coefficient rows. Zero in the exact problem; a
    /// tiny fixed perturbation removes the degeneracy that makes the simplex
    /// stall, at the price of tilting the objective by `perturbation · x`.
    perturbation: Vec<S>,
}

impl<S: Real> ChebLp<S> {
    fn samples(&self) -> usize {
        self.p0.len()
    }

    fn l(&self) -> usize {
        self.dirs.len()
    }

    fn value_at(&self, k: usize, x: &[S]) -> Complex<S> {
        let row = &self.phi[k * self.n_free..(k + 1) * self.n_free];
        row.iter().enumerate().fold(self.p0[k], |acc, (j, &f)| acc + f * Complex::new(x[2 * j], x[2 * j + 1]))
    }

    fn nearest_direction(&self, q: Complex<S>) -> usize {
        let l = self.l();
        let lf = S::from_usize_lossy(l);
        let a = q.arg() / S::TAU() * lf;
        let idx = a.round().to_i64().unwrap_or(0);
        idx.rem_euclid(l as i64) as usize
    }
}

impl<S: Real> ColumnOracle<S> for ChebLp<S> {
    fn rows(&self) -> usize {
        self.m + 1
    }

    fn rhs(&self) -> Vec<S> {
        let mut r = self.perturbation.clone();
        r.push(S::one());
        r
    }

    fn column(&self, id: usize, out: &mut [S]) -> S {
        out.iter_mut().for_each(|o| *o = S::zero());
        if id < 2 * self.m {
            out[id / 2] = if id.is_multiple_of(2) { S::one() } else { -S::one() };
            return self.bound;
        }
        let s = id - 2 * self.m;
        let (k, l) = (s / self.l(), s % self.l());
        let rot = self.dirs[l].conj();
        for j in 0..self.n_free {
            let psi = rot * self.phi[k * self.n_free + j];
            out[2 * j] = psi.re;
            out[2 * j + 1] = -psi.im;
        }
        out[self.m] = S::one();
        -(rot * self.p0[k]).re
    }

    fn price(&self, duals: &[S], rule: PricingRule, tol: S) -> Option<(usize, S)> {
        let x = &duals[..self.m];
        let t = -duals[self.m];
        let mut best: Option<(usize, S)> = None;
        let mut consider = |id: usize, rc: S, tol: S| -> bool {
            if rc < -tol {
                match rule {
                    PricingRule::Bland => {
                        if best.is_none_or(|(b, _)| id < b) {
                            best = Some((id, rc));
                        }
                        return true;
                    }
                    PricingRule::Dantzig => {
                        if best.is_none_or(|(_, b)| rc < b) {
                            best = Some((id, rc));
                        }
                    }
                }
            }
            false
        };
        // reduced costs carry rounding proportional to the terms summed into them
        let box_tol = tol * (S::one() + self.bound);
        for (j, &xj) in x.iter().enumerate() {
            if consider(2 * j, self.bound - xj, box_tol) || consider(2 * j + 1, self.bound + xj, box_tol) {
                return best;
            }
        }
        let l = self.l();
        for k in 0..self.samples() {
            let q = self.value_at(k, x);
            let row = &self.phi[k * self.n_free..(k + 1) * self.n_free];
            let mag = row.iter().enumerate().fold(self.p0[k].norm() + t.abs(), |acc, (j, f)| {
                acc + f.norm() * (x[2 * j].abs() + x[2 * j + 1].abs())
            });
            let tol_k = tol * (S::one() + mag);
            match rule {
                PricingRule::Dantzig => {
                    let li = self.nearest_direction(q);
                    let rc = t - (self.dirs[li].conj() * q).re;
                    consider(2 * self.m + k * l + li, rc, tol_k);
                }
                PricingRule::Bland => {
                    for li in 0..l {
                        let rc = t - (self.dirs[li].conj() * q).re;
                        if consider(2 * self.m + k * l + li, rc, tol_k) {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }
}

/// Solves `min { max_k |P(z_k)| : P ∈ span(basis), constraint }` over the
/// samples of `k`, relaxing the modulus to `directions` half-planes.
///
/// `basis` must be downward closed (as every [`monomial_basis`] is). Monic
/// mode needs a one-variable basis `1, z, …, z^n` and fixes the `z^n` coefficient.
pub fn minimax<S: Real>(
    k: &SampledSet<S>,
    basis: &[Exponent],
    constraint: &Constraint<S>,
    directions: usize,
) -> Result<MinimaxSolution<S>> {
    if directions < 8 || !directions.is_multiple_of(2) {
        return Err(HullError::InvalidInput(format!("direction count must be even and >= 8, got {directions}")));
    }
    if basis.is_empty() {
        return Err(HullError::InvalidInput("empty basis".into()));
    }
    if !downward_closed(basis) {
        return Err(HullError::InvalidInput("basis must be closed under lowering exponents".into()));
    }
    let dim = k.dim();
    if dim == Dim::One && basis.iter().any(|e| e.w > 0) {
        return Err(HullError::DimensionMismatch { expected: 1, found: 2 });
    }
    let pts = k.pairs();
    let nf = S::from_usize_lossy(pts.len());

    let (center, fixed) = match constraint {
        Constraint::PointValue(q) => {
            let found = match q {
                Query::C1(_) => 1,
                Query::C2(..) => 2,
            };
            if found != dim.as_usize() {
                return Err(HullError::DimensionMismatch { expected: dim.as_usize(), found });
            }
            let (z, w) = q.pair();
            if !is_finite_c(z) || !is_finite_c(w) {
                return Err(HullError::InvalidInput("query point is not finite".into()));
            }
            (q.pair(), Exponent::new(0, 0))
        }
        Constraint::Monic => {
            if dim != Dim::One {
                return Err(HullError::InvalidInput("monic mode needs one variable".into()));
            }
            let top = basis.iter().map(|e| e.z).max().unwrap_or(0);
            let mean = pts.iter().fold(Complex::zero(), |a, &(z, _)| a + z) / nf;
            ((mean, Complex::zero()), Exponent::new(top, 0))
        }
    };
    let mut r = pts.iter().map(|&(z, w)| (z - center.0).norm().max((w - center.1).norm())).fold(S::zero(), S::max);
    if !(r > S::zero()) || !r.is_finite() {
        r = S::one();
    }

    let free: Vec<Exponent> = basis.iter().copied().filter(|&e| e != fixed).collect();
    let n_free = free.len();
    let mut phi = Vec::with_capacity(pts.len() * n_free);
    let mut p0 = Vec::with_capacity(pts.len());
    for &(z, w) in &pts {
        let (u, v) = ((z - center.0) / r, (w - center.1) / r);
        p0.push(cpow(u, fixed.z) * cpow(v, fixed.w));
        for e in &free {
            phi.push(cpow(u, e.z) * cpow(v, e.w));
        }
    }
    let l = directions;
    let dirs: Vec<Complex<S>> =
        (0..l).map(|i| cis(S::TAU() * S::from_usize_lossy(i) / S::from_usize_lossy(l))).collect();
    let m = 2 * n_free;
    let perturbation = (0..m)
        .map(|j| lit::<S>(PERTURBATION) * (S::one() + lit::<S>(0.618_033_988_749_895 * j as f64).fract()))
        .collect();
    let lp = ChebLp { m, n_free, dirs, phi, p0, bound: lit(COEFFICIENT_BOX), perturbation };

    // Start: sample 0 in direction 0, plus one box column per free variable
    // absorbing that sample's coefficients.
    let mut col = vec![S::zero(); m + 1];
    lp.column(2 * m, &mut col);
    let mut start: Vec<usize> =
        (0..m).map(|j| if lp.perturbation[j] - col[j] >= S::zero() { 2 * j } else { 2 * j + 1 }).collect();
    start.push(2 * m);

    let sol = revised_simplex(&lp, start, &SimplexOptions::default())?;
    let x = &sol.duals[..m];
    let t = (-sol.duals[m]).max(S::zero());

    let mut scaled = Vec::with_capacity(basis.len());
    for e in basis {
        if *e == fixed {
            scaled.push(Complex::new(S::one(), S::zero()));
        } else {
            let j = free.iter().position(|f| f == e).expect("free exponent");
            scaled.push(Complex::new(x[2 * j], x[2 * j + 1]));
        }
    }
    let moduli: Vec<S> = (0..pts.len()).map(|i| lp.value_at(i, x).norm()).collect();
    let achieved_scaled = moduli.iter().copied().fold(S::zero(), S::max);
    let cut = achieved_scaled - lit::<S>(1e-6) * achieved_scaled.max(S::min_positive_value());
    let active_points = (0..pts.len()).filter(|&i| moduli[i] >= cut).collect();

    // Monic: P(z) = R^n Q((z - c)/R).
    let factor = match constraint {
        Constraint::Monic => r.powi(fixed.z as i32),
        Constraint::PointValue(_) => S::one(),
    };
    let scaled: Vec<Complex<S>> = scaled.into_iter().map(|a| a * factor).collect();
    let coefficients = expand_shifted(basis, &scaled, center, r);
    Ok(MinimaxSolution {
        value: t * factor,
        achieved: achieved_scaled * factor,
        dim: dim.as_usize(),
        exponents: basis.to_vec(),
        coefficients,
        active_points,
        directions_used: l,
        iterations: sol.iterations,
        center,
        scale: r,
        scaled_coefficients: scaled,
    })
}

/// Thresholds for [`membership_numeric`] and [`grid_hull`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct MembershipOptions<S> {
    /// Half-plane count `L`.
    pub directions: usize,
    /// Member when the optimum is at least `1 - eps_member`.
    pub eps_member: S,
    /// Non-member when the optimum is at most `1 - eps_sep`.
    pub eps_sep: S,
    /// Density multiplier for certificate re-verification.
    pub resample_factor: usize,
}

impl<S: Real> Default for MembershipOptions<S> {
    fn default() -> Self {
        Self { directions: 128, eps_member: lit(5e-3), eps_sep: lit(5e-2), resample_factor: 10 }
    }
}

impl<S: Real> MembershipOptions<S> {
    /// Defaults for grids: a tighter member threshold, since a cell flagged
    /// member at `1 - 5e-3` can sit a visible distance away from the hull.
    pub fn grid() -> Self {
        Self { eps_member: lit(1e-3), ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps_member > S::zero()) || !(self.eps_sep > S::zero()) {
            return Err(HullError::InvalidInput("tolerances must be positive".into()));
        }
        if self.eps_member > self.eps_sep {
            return Err(HullError::InvalidInput("eps_member must not exceed eps_sep".into()));
        }
        if self.resample_factor == 0 {
            return Err(HullError::InvalidInput("resample factor must be positive".into()));
        }
        Ok(())
    }

    pub fn classify(&self, value: S) -> MembershipStatus {
        if value >= S::one() - self.eps_member {
            MembershipStatus::Member
        } else if value <= S::one() - self.eps_sep {
            MembershipStatus::NonMember
        } else {
            MembershipStatus::Borderline
        }
    }
}

/// Separation test `|P(w)| >= 1 > sup |P|`, allowing `|P(w)|` to fall short of
/// 1 by a few ulps of rounding.
pub fn verify_certificate<S: Real>(at_w: S, sup: S) -> bool {
    at_w >= S::one() - lit::<S>(64.0) * S::epsilon() && sup < S::one() && sup < at_w
}

/// Checks [`verify_certificate`] on `k` and on `dense`, evaluating the
/// plain-monomial form.
fn certificate_holds<S: Real>(
    p: &AnyPoly<S>,
    w: Query<S>,
    k: &SampledSet<S>,
    dense: Option<&SampledSet<S>>,
) -> Result<bool> {
    let (z, v) = w.pair();
    let at_w = p.eval_at(z, v).norm();
    let mut sup = k.sup_norm(p)?;
    if let Some(d) = dense {
        sup = sup.max(d.sup_norm(p)?);
    }
    Ok(verify_certificate(at_w, sup))
}

/// Numeric membership of `w` in the degree-`degree` hull of the samples.
///
/// Non-members carry a certificate `P` with `|P(w)| >= 1 > sup |P|` on the
/// samples and on a denser resample of the generator (when one is attached).
/// If that check fails the verdict is borderline with
/// `certificate_verified = Some(false)`.
pub fn membership_numeric<S: Real>(
    k: &SampledSet<S>,
    w: Query<S>,
    degree: usize,
    opts: &MembershipOptions<S>,
) -> Result<MembershipVerdict<S>> {
    if degree < 1 {
        return Err(HullError::InvalidInput("degree must be at least 1".into()));
    }
    opts.validate()?;
    let basis = monomial_basis(k.dim(), degree as i64)?;
    let sol = minimax(k, &basis, &Constraint::PointValue(w), opts.directions)?;
    let mut verdict = MembershipVerdict {
        status: opts.classify(sol.value),
        residual: None,
        value: Some(sol.value),
        w,
        degree_bound: degree,
        certificate: None,
        certificate_verified: None,
    };
    if verdict.status != MembershipStatus::NonMember {
        return Ok(verdict);
    }

    let dense = k.resample(opts.resample_factor).transpose()?;
    let p = sol.polynomial();
    let s = match &dense {
        Some(d) => d.sup_norm(&p)?.max(k.sup_norm(&p)?),
        None => k.sup_norm(&p)?,
    };
    // Spread the gap evenly: |P(w)| = s^{-1/2} > 1 > s^{1/2} = sup |P|.
    let cert = if s < S::one() { p.scale(Complex::new(S::one() / s.max(lit(1e-6)).sqrt(), S::zero())) } else { p };
    let verified = s < S::one() && certificate_holds(&cert, w, k, dense.as_ref())?;
    if verified {
        verdict.certificate = Some(cert);
        verdict.certificate_verified = Some(true);
    } else {
        verdict.status = MembershipStatus::Borderline;
        verdict.certificate_verified = Some(false);
    }
    Ok(verdict)
}

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct BBox<S> {
    pub x_min: S,
    pub x_max: S,
    pub y_min: S,
    pub y_max: S,
}

impl<S: Real> BBox<S> {
    pub fn square(lo: S, hi: S) -> Self {
        Self { x_min: lo, x_max: hi, y_min: lo, y_max: hi }
    }

    pub fn contains(&self, z: Complex<S>) -> bool {
        z.re >= self.x_min && z.re <= self.x_max && z.im >= self.y_min && z.im <= self.y_max
    }
}

/// Minimax values and membership flags on a regular grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct HullGrid<S> {
    pub degree: usize,
    pub bbox: BBox<S>,
    pub nx: usize,
    pub ny: usize,
    /// Row-major by `y`: cell `(ix, iy)` is at `iy * nx + ix`.
    pub values: Vec<S>,
    pub status: Vec<MembershipStatus>,
}

impl<S: Real> HullGrid<S> {
    pub fn x(&self, ix: usize) -> S {
        self.bbox.x_min
            + (self.bbox.x_max - self.bbox.x_min) * S::from_usize_lossy(ix) / S::from_usize_lossy(self.nx - 1)
    }

    pub fn y(&self, iy: usize) -> S {
        self.bbox.y_min
            + (self.bbox.y_max - self.bbox.y_min) * S::from_usize_lossy(iy) / S::from_usize_lossy(self.ny - 1)
    }

    pub fn point(&self, ix: usize, iy: usize) -> Complex<S> {
        Complex::new(self.x(ix), self.y(iy))
    }

    /// Grid spacing `(h_x, h_y)`.
    pub fn spacing(&self) -> (S, S) {
        (
            (self.bbox.x_max - self.bbox.x_min) / S::from_usize_lossy(self.nx - 1),
            (self.bbox.y_max - self.bbox.y_min) / S::from_usize_lossy(self.ny - 1),
        )
    }

    pub fn cells(&self) -> impl Iterator<Item = (Complex<S>, S, MembershipStatus)> + '_ {
        (0..self.ny).flat_map(move |iy| {
            (0..self.nx).map(move |ix| {
                let i = iy * self.nx + ix;
                (self.point(ix, iy), self.values[i], self.status[i])
            })
        })
    }

    pub fn members(&self) -> impl Iterator<Item = Complex<S>> + '_ {
        self.cells().filter(|c| c.2 == MembershipStatus::Member).map(|c| c.0)
    }

    /// CSV with header `x,y,value,status`; numbers with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,value,status\n");
        for (p, v, s) in self.cells() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{}\n",
                p.re.as_f64(),
                p.im.as_f64(),
                v.as_f64(),
                s.as_str()
            ));
        }
        out
    }
}

/// Evaluates the degree-`degree` minimax value at every node of an
/// `nx × ny` grid over `bbox`. Nodes within `1e-9` of a sample are members
/// with value 1. Cells run in parallel; the result order is fixed.
pub fn grid_hull<S: Real>(
    k: &SampledSet<S>,
    degree: usize,
    bbox: BBox<S>,
    nx: usize,
    ny: usize,
    opts: &MembershipOptions<S>,
) -> Result<HullGrid<S>> {
    if nx <= 1 || ny <= 1 {
        return Err(HullError::InvalidInput(format!("grid resolution must exceed 1, got {nx}x{ny}")));
    }
    if degree < 1 {
        return Err(HullError::InvalidInput("degree must be at least 1".into()));
    }
    opts.validate()?;
    let pts = k.points1().ok_or_else(|| HullError::InvalidInput("grid hull needs a one-variable sample".into()))?;
    if !(bbox.x_min < bbox.x_max && bbox.y_min < bbox.y_max) {
        return Err(HullError::InvalidInput("empty bounding box".into()));
    }
    if let Some(i) = pts.iter().position(|&z| !bbox.contains(z)) {
        return Err(HullError::InvalidInput(format!("sample {i} lies outside the bounding box")));
    }
    let basis = monomial_basis(Dim::One, degree as i64)?;
    let mut grid = HullGrid { degree, bbox, nx, ny, values: Vec::new(), status: Vec::new() };
    let near = lit::<S>(1e-9);
    let results: Result<Vec<S>> = (0..nx * ny)
        .into_par_iter()
        .map(|i| {
            let w = grid.point(i % nx, i / nx);
            if pts.iter().any(|&z| (z - w).norm() <= near) {
                return Ok(S::one());
            }
            Ok(minimax(k, &basis, &Constraint::PointValue(Query::C1(w)), opts.directions)?.value)
        })
        .collect();
    grid.values = results?;
    grid.status = grid
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let w = grid.point(i % nx, i / nx);
            if pts.iter().any(|&z| (z - w).norm() <= near) {
                MembershipStatus::Member
            } else {
                opts.classify(v)
            }
        })
        .collect();
    Ok(grid)
}
