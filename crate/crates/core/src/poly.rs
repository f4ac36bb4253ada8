//! Dense complex polynomials in one and two variables.
//!
//! Coefficients are stored densely; degrees in this crate stay small (at most
//! a dozen or so), so there is nothing to gain from sparse storage. Trailing
//! coefficients are trimmed only when they are exactly zero: the degree of a
//! polynomial decides which hull it can test, so it must never be changed by a
//! rounding threshold.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HullError, Result};
use crate::scalar::Real;

/// Number of complex variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn as_usize(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    pub fn from_usize(d: usize) -> Result<Self> {
        match d {
            1 => Ok(Dim::One),
            2 => Ok(Dim::Two),
            other => Err(HullError::InvalidInput(format!("dimension must be 1 or 2, got {other}"))),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_usize())
    }
}

/// Exponent pair of the monomial `z^z w^w` (`w == 0` in one variable).
/// Serialized as `[z, w]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Exponent {
    pub z: usize,
    pub w: usize,
}

impl Exponent {
    pub const fn new(z: usize, w: usize) -> Self {
        Self { z, w }
    }

    pub const fn total(self) -> usize {
        self.z + self.w
    }
}

impl From<(usize, usize)> for Exponent {
    fn from((z, w): (usize, usize)) -> Self {
        Self { z, w }
    }
}

impl From<Exponent> for (usize, usize) {
    fn from(e: Exponent) -> Self {
        (e.z, e.w)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.z, self.w) {
            (0, 0) => write!(f, "1"),
            (z, 0) => write!(f, "z^{z}"),
            (0, w) => write!(f, "w^{w}"),
            (z, w) => write!(f, "z^{z} w^{w}"),
        }
    }
}

/// Number of monomials of total degree `<= degree`.
pub fn basis_len(dim: Dim, degree: usize) -> usize {
    match dim {
        Dim::One => degree + 1,
        Dim::Two => (degree + 1) * (degree + 2) / 2,
    }
}

/// Position of `e` in the graded-lexicographic order produced by [`monomial_basis`].
pub fn graded_index(dim: Dim, e: Exponent) -> usize {
    match dim {
        Dim::One => e.z,
        Dim::Two => {
            let t = e.total();
            t * (t + 1) / 2 + e.w
        }
    }
}

/// All exponents of total degree `<= degree`, graded by total degree and, within
/// one degree, by decreasing power of `z`: `1, z, w, z², zw, w², …`.
pub fn monomial_basis(dim: Dim, degree: i64) -> Result<Vec<Exponent>> {
    if degree < 0 {
        return Err(HullError::NegativeDegree(degree));
    }
    let d = degree as usize;
    Ok(match dim {
        Dim::One => (0..=d).map(|k| Exponent::new(k, 0)).collect(),
        Dim::Two => (0..=d).flat_map(|t| (0..=t).rev().map(move |i| Exponent::new(i, t - i))).collect(),
    })
}

/// Common evaluation interface for [`Poly1`], [`Poly2`] and [`AnyPoly`].
pub trait Polynomial<S: Real> {
    fn dim(&self) -> Dim;

    /// `None` for the zero polynomial.
    fn degree(&self) -> Option<usize>;

    /// Evaluates at `(z, w)`; one-variable polynomials ignore `w`.
    fn eval_at(&self, z: Complex<S>, w: Complex<S>) -> Complex<S>;
}

/// Polynomial in one complex variable; `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly1<S> {
    coeffs: Vec<Complex<S>>,
}

impl<S: Real> Poly1<S> {
    pub fn new(mut coeffs: Vec<Complex<S>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[S]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, S::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex<S>) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(k: usize, c: Complex<S>) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `z - a`.
    pub fn linear_root(a: Complex<S>) -> Self {
        Self::new(vec![-a, Complex::one()])
    }

    pub fn coeffs(&self) -> &[Complex<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex<S> {
        self.coeffs.get(k).copied().unwrap_or_else(Complex::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<S>) -> Complex<S> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    pub fn scale(&self, a: Complex<S>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * a).collect())
    }

    /// `self^k`.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(Complex::one()), |acc, _| &acc * self)
    }
}

impl<S: Real> Polynomial<S> for Poly1<S> {
    fn dim(&self) -> Dim {
        Dim::One
    }
    fn degree(&self) -> Option<usize> {
        Poly1::degree(self)
    }
    fn eval_at(&self, z: Complex<S>, _w: Complex<S>) -> Complex<S> {
        self.eval(z)
    }
}

impl<S: Real> Add for &Poly1<S> {
    type Output = Poly1<S>;
    fn add(self, rhs: Self) -> Poly1<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Real> Sub for &Poly1<S> {
    type Output = Poly1<S>;
    fn sub(self, rhs: Self) -> Poly1<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Real> Mul for &Poly1<S> {
    type Output = Poly1<S>;
    fn mul(self, rhs: Self) -> Poly1<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly1::new(out)
    }
}

impl<S: Real> Neg for &Poly1<S> {
    type Output = Poly1<S>;
    fn neg(self) -> Poly1<S> {
        Poly1::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// Polynomial in two complex variables `(z, w)`.
///
/// `rows[i][j]` multiplies `z^i w^j`; row `i` has `degree - i + 1` entries so
/// the stored exponents always satisfy `i + j <= degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<S> {
    rows: Vec<Vec<Complex<S>>>,
}

impl<S: Real> Poly2<S> {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    /// Builds from `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Complex<S>)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(max_total) = terms.iter().map(|(e, _)| e.total()).max() else {
            return Self::zero();
        };
        let mut rows: Vec<Vec<Complex<S>>> =
            (0..=max_total).map(|i| vec![Complex::zero(); max_total - i + 1]).collect();
        for (e, c) in terms {
            rows[e.z][e.w] = rows[e.z][e.w] + c;
        }
        Self::trimmed(rows)
    }

    /// Builds from coefficients listed in graded-lex order for total degree `degree`.
    pub fn from_graded(degree: usize, coeffs: &[Complex<S>]) -> Result<Self> {
        let basis = monomial_basis(Dim::Two, degree as i64)?;
        if basis.len() != coeffs.len() {
            return Err(HullError::InvalidInput(format!(
                "degree {degree} needs {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        Ok(Self::from_terms(basis.into_iter().zip(coeffs.iter().copied())))
    }

    fn trimmed(mut rows: Vec<Vec<Complex<S>>>) -> Self {
        let top = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, _)| i + j))
            .max();
        match top {
            None => Self::zero(),
            Some(d) => {
                rows.truncate(d + 1);
                for (i, row) in rows.iter_mut().enumerate() {
                    row.resize(d - i + 1, Complex::zero());
                }
                Self { rows }
            }
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> Complex<S> {
        self.rows.get(e.z).and_then(|r| r.get(e.w)).copied().unwrap_or_else(Complex::zero)
    }

    /// Nonzero-or-not coefficients in graded-lex order up to the polynomial's degree.
    pub fn graded_coeffs(&self) -> Vec<Complex<S>> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => {
                monomial_basis(Dim::Two, d as i64).expect("nonnegative").into_iter().map(|e| self.coeff(e)).collect()
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, Complex<S>)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &c)| (Exponent::new(i, j), c)))
    }

    /// Nested Horner: over `w` inside each row, then over `z`.
    pub fn eval(&self, z: Complex<S>, w: Complex<S>) -> Complex<S> {
        self.rows.iter().rev().fold(Complex::zero(), |acc, row| {
            let inner = row.iter().rev().fold(Complex::zero(), |a, &c| a * w + c);
            acc * z + inner
        })
    }

    pub fn scale(&self, a: Complex<S>) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * a)))
    }
}

impl<S: Real> Polynomial<S> for Poly2<S> {
    fn dim(&self) -> Dim {
        Dim::Two
    }
    fn degree(&self) -> Option<usize> {
        Poly2::degree(self)
    }
    fn eval_at(&self, z: Complex<S>, w: Complex<S>) -> Complex<S> {
        self.eval(z, w)
    }
}

impl<S: Real> Add for &Poly2<S> {
    type Output = Poly2<S>;
    fn add(self, rhs: Self) -> Poly2<S> {
        Poly2::from_terms(self.terms().chain(rhs.terms()))
    }
}

/// Either a one- or a two-variable polynomial (certificates, JSON payloads).
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly<S> {
    One(Poly1<S>),
    Two(Poly2<S>),
}

impl<S: Real> AnyPoly<S> {
    pub fn scale(&self, a: Complex<S>) -> Self {
        match self {
            AnyPoly::One(p) => AnyPoly::One(p.scale(a)),
            AnyPoly::Two(p) => AnyPoly::Two(p.scale(a)),
        }
    }

    /// Coefficients in graded-lex order, up to the degree.
    pub fn graded_coeffs(&self) -> Vec<Complex<S>> {
        match self {
            AnyPoly::One(p) => p.coeffs().to_vec(),
            AnyPoly::Two(p) => p.graded_coeffs(),
        }
    }

    /// Builds from graded-lex coefficients over the basis of `dim` and `degree`.
    pub fn from_graded(dim: Dim, coeffs: &[Complex<S>]) -> Result<Self> {
        match dim {
            Dim::One => Ok(AnyPoly::One(Poly1::new(coeffs.to_vec()))),
            Dim::Two => {
                // invert (d+1)(d+2)/2 = len
                let len = coeffs.len();
                let d = (0..=len).find(|&d| basis_len(Dim::Two, d) >= len).unwrap_or(0);
                if basis_len(Dim::Two, d) != len {
                    return Err(HullError::InvalidInput(format!("{len} coefficients is not a triangular count")));
                }
                Ok(AnyPoly::Two(Poly2::from_graded(d, coeffs)?))
            }
        }
    }
}

impl<S: Real> Polynomial<S> for AnyPoly<S> {
    fn dim(&self) -> Dim {
        match self {
            AnyPoly::One(_) => Dim::One,
            AnyPoly::Two(_) => Dim::Two,
        }
    }
    fn degree(&self) -> Option<usize> {
        match self {
            AnyPoly::One(p) => p.degree(),
            AnyPoly::Two(p) => p.degree(),
        }
    }
    fn eval_at(&self, z: Complex<S>, w: Complex<S>) -> Complex<S> {
        match self {
            AnyPoly::One(p) => p.eval(z),
            AnyPoly::Two(p) => p.eval(z, w),
        }
    }
}

impl<S: Real> From<Poly1<S>> for AnyPoly<S> {
    fn from(p: Poly1<S>) -> Self {
        AnyPoly::One(p)
    }
}

impl<S: Real> From<Poly2<S>> for AnyPoly<S> {
    fn from(p: Poly2<S>) -> Self {
        AnyPoly::Two(p)
    }
}

// JSON wire format: {"dim":1|2,"degree":d|null,"coeffs":[[re,im],…]} in graded-lex order.
#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Real")]
struct PolyWire<S> {
    dim: usize,
    degree: Option<usize>,
    coeffs: Vec<Complex<S>>,
}

impl<S: Real> PolyWire<S> {
    fn into_poly(self) -> Result<AnyPoly<S>> {
        let dim = Dim::from_usize(self.dim)?;
        let expected = self.degree.map_or(0, |d| basis_len(dim, d));
        if self.coeffs.len() != expected {
            return Err(HullError::InvalidInput(format!(
                "degree {:?} in {} variable(s) needs {expected} coefficients, got {}",
                self.degree,
                self.dim,
                self.coeffs.len()
            )));
        }
        let p = match (dim, self.degree) {
            (_, None) if dim == Dim::One => AnyPoly::One(Poly1::zero()),
            (_, None) => AnyPoly::Two(Poly2::zero()),
            (Dim::One, Some(_)) => AnyPoly::One(Poly1::new(self.coeffs)),
            (Dim::Two, Some(d)) => AnyPoly::Two(Poly2::from_graded(d, &self.coeffs)?),
        };
        if p.degree() != self.degree {
            return Err(HullError::InvalidInput(format!(
                "declared degree {:?} but coefficients give {:?}",
                self.degree,
                p.degree()
            )));
        }
        Ok(p)
    }
}

impl<S: Real> Serialize for AnyPoly<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        PolyWire { dim: self.dim().as_usize(), degree: self.degree(), coeffs: self.graded_coeffs() }
            .serialize(serializer)
    }
}

impl<'de, S: Real> Deserialize<'de> for AnyPoly<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        PolyWire::<S>::deserialize(deserializer)?.into_poly().map_err(D::Error::custom)
    }
}

impl<S: Real> Serialize for Poly1<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        AnyPoly::One(self.clone()).serialize(serializer)
    }
}

impl<'de, S: Real> Deserialize<'de> for Poly1<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match AnyPoly::<S>::deserialize(deserializer)? {
            AnyPoly::One(p) => Ok(p),
            AnyPoly::Two(_) => Err(D::Error::custom("expected dim 1")),
        }
    }
}

impl<S: Real> Serialize for Poly2<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        AnyPoly::Two(self.clone()).serialize(serializer)
    }
}

impl<'de, S: Real> Deserialize<'de> for Poly2<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match AnyPoly::<S>::deserialize(deserializer)? {
            AnyPoly::Two(p) => Ok(p),
            AnyPoly::One(_) => Err(D::Error::custom("expected dim 2")),
        }
    }
}
