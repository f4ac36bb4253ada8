//! Degree-bounded polynomial hulls of compact sets in ℂ and ℂ².
//!
//! The crate decides whether a point lies in the hull
//! `P_d(K) = { z : |P(z)| <= sup_K |P| for every polynomial P with deg P <= d }`
//! for finite and sampled sets `K`:
//!
//! * [`exact_hull`] settles membership exactly for `n + 1` points at degree `n`
//!   through the ray-alignment criterion on `(z_i - w) * prod_{j != i} (z_i - z_j)`.
//! * [`cheb`] solves the constrained Chebyshev problem
//!   `min { sup_K |P| : P(w) = 1, deg P <= d }` as a linear program, and turns
//!   optimal polynomials into re-verified separating certificates.
//! * [`geometry`] holds the inscribed-angle constructions for points in convex
//!   position and on the unit circle.
//! * [`c2_lab`] and [`experiments`] run the two-variable and unit-circle studies.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`, which is what the CLI uses.

// `!(x > 0)` style tests are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod c2_lab;
pub mod cheb;
pub mod error;
pub mod exact_hull;
pub mod experiments;
pub mod geometry;
pub mod linalg;
pub mod lp;
pub mod optimize;
pub mod poly;
pub mod sampled;
pub mod scalar;
pub mod verdict;

pub use error::{HullError, Result};
pub use num_complex::Complex;
pub use poly::{monomial_basis, AnyPoly, Dim, Exponent, Poly1, Poly2, Polynomial};
pub use sampled::{Generator, SampledSet};
pub use scalar::Real;
pub use verdict::{MembershipStatus, MembershipVerdict, Query};

pub type Complex64 = Complex<f64>;
pub type Poly1f64 = Poly1<f64>;
pub type Poly2f64 = Poly2<f64>;
pub type AnyPolyf64 = AnyPoly<f64>;
pub type SampledSet64 = SampledSet<f64>;
pub type PointConfiguration64 = exact_hull::PointConfiguration<f64>;
pub type MembershipVerdict64 = MembershipVerdict<f64>;
pub type MinimaxSolution64 = cheb::MinimaxSolution<f64>;
pub type HullGrid64 = cheb::HullGrid<f64>;
pub type CircleSpec64 = geometry::CircleSpec<f64>;
