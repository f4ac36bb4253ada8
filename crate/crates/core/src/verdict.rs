use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::poly::AnyPoly;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipStatus {
    Member,
    NonMember,
    /// The numbers sit in the ambiguity band between the two thresholds.
    Borderline,
}

impl MembershipStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MembershipStatus::Member => "member",
            MembershipStatus::NonMember => "non-member",
            MembershipStatus::Borderline => "borderline",
        }
    }
}

/// Query point: `[re, im]` in ℂ, `[[re, im], [re, im]]` in ℂ².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, bound = "S: Real")]
pub enum Query<S> {
    C1(Complex<S>),
    C2(Complex<S>, Complex<S>),
}

impl<S: Real> Query<S> {
    pub fn pair(self) -> (Complex<S>, Complex<S>) {
        match self {
            Query::C1(z) => (z, Complex::new(S::zero(), S::zero())),
            Query::C2(z, w) => (z, w),
        }
    }
}

/// Outcome of an exact or numeric membership test.
///
/// Exact verdicts carry `residual`; numeric verdicts carry `value` (the
/// Chebyshev optimum) and, for non-members, a separating `certificate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Real")]
pub struct MembershipVerdict<S> {
    pub status: MembershipStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<S>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<S>,
    pub w: Query<S>,
    pub degree_bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<AnyPoly<S>>,
    /// `Some(false)` when an optimal polynomial failed independent re-verification
    /// and was withheld; callers must surface this (CLI exit code 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
}

impl<S: Real> MembershipVerdict<S> {
    pub fn is_member(&self) -> bool {
        self.status == MembershipStatus::Member
    }

    pub fn verification_failed(&self) -> bool {
        self.certificate_verified == Some(false)
    }
}
