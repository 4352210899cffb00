use alloc::string::String;
use core::fmt;

use crate::group::{GroupPresentation, PresentationError};
use crate::linalg::{abelian_invariants, AbelianInvariants};

/// Whether a block is known to be minimal, and on whose authority.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Minimality {
    Yes(String),
    No,
    Unknown,
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimality::Yes(p) => write!(f, "yes ({p})"),
            Minimality::No => f.write_str("no"),
            Minimality::Unknown => f.write_str("unknown"),
        }
    }
}

/// Symplectic Kodaira dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    NegInfinity,
    Zero,
    One,
    Two,
    Unknown,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kodaira::NegInfinity => "-inf",
            Kodaira::Zero => "0",
            Kodaira::One => "1",
            Kodaira::Two => "2",
            Kodaira::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryError {
    /// `b₁` changed by more than one under a Luttinger surgery.
    BettiJump { before: usize, after: usize },
    GenusMismatch { left: usize, right: usize },
    SelfIntersectionSum(i64),
    WrongImageCount { expected: usize, found: usize },
    MissingCertificate,
    NontrivialFundamentalGroup,
    /// `(0, +)` sign data cannot come from a minimal model.
    InconsistentSigns,
    InvalidParameter(String),
    /// A derived invariant failed a consistency check.
    Inconsistent(String),
    Presentation(PresentationError),
}

impl fmt::Display for SurgeryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryError::BettiJump { before, after } => write!(
                f,
                "b1 changed from {before} to {after}; inconsistent gluing data"
            ),
            SurgeryError::GenusMismatch { left, right } => {
                write!(f, "surface genera differ ({left} vs {right})")
            }
            SurgeryError::SelfIntersectionSum(s) => {
                write!(f, "self-intersections sum to {s}, expected 0")
            }
            SurgeryError::WrongImageCount { expected, found } => {
                write!(f, "expected {expected} surface generator images, found {found}")
            }
            SurgeryError::MissingCertificate => f.write_str(
                "rational blowdown needs a meridian certificate; the general fundamental group transform is not modeled",
            ),
            SurgeryError::NontrivialFundamentalGroup => {
                f.write_str("sphere summing requires a simply connected block")
            }
            SurgeryError::InconsistentSigns => f.write_str("inconsistent sign data"),
            SurgeryError::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            SurgeryError::Inconsistent(m) => write!(f, "internal consistency check failed: {m}"),
            SurgeryError::Presentation(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SurgeryError {}

impl From<PresentationError> for SurgeryError {
    fn from(e: PresentationError) -> Self {
        SurgeryError::Presentation(e)
    }
}

/// A closed 4-manifold described by `(e, σ, π₁)` and declared metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldBlock {
    pub label: String,
    pub e: i64,
    pub sigma: i64,
    pub pi1: GroupPresentation,
    pub minimal: Minimality,
    pub kodaira: Kodaira,
}

/// Characteristic numbers derived from `(e, σ, b₁)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub e: i64,
    pub sigma: i64,
    pub b1: i64,
    pub b2: i64,
    pub b_plus: i64,
    pub b_minus: i64,
    pub c1_squared: i64,
    pub chi_h: i64,
}

impl Invariants {
    /// Derives all numbers from `(e, σ, b₁)`, checking integrality and
    /// the two expressions for `χ_h`.
    pub fn from_numbers(e: i64, sigma: i64, b1: i64) -> Result<Self, SurgeryError> {
        let b2 = e - 2 + 2 * b1;
        if (b2 + sigma) % 2 != 0 {
            return Err(SurgeryError::Inconsistent(alloc::format!(
                "b2 + sigma = {} is odd",
                b2 + sigma
            )));
        }
        let b_plus = (b2 + sigma) / 2;
        let b_minus = (b2 - sigma) / 2;
        if b_plus < 0 || b_minus < 0 {
            return Err(SurgeryError::Inconsistent(alloc::format!(
                "negative b+ or b- ({b_plus}, {b_minus})"
            )));
        }
        if (e + sigma) % 4 != 0 {
            return Err(SurgeryError::Inconsistent(alloc::format!(
                "e + sigma = {} is not divisible by 4",
                e + sigma
            )));
        }
        let chi_h = (e + sigma) / 4;
        if 2 * chi_h != b_plus - b1 + 1 {
            return Err(SurgeryError::Inconsistent(alloc::format!(
                "chi_h = {chi_h} disagrees with (b+ - b1 + 1)/2"
            )));
        }
        Ok(Invariants {
            e,
            sigma,
            b1,
            b2,
            b_plus,
            b_minus,
            c1_squared: 2 * e + 3 * sigma,
            chi_h,
        })
    }
}

impl ManifoldBlock {
    pub fn new(label: impl Into<String>, e: i64, sigma: i64, pi1: GroupPresentation) -> Self {
        ManifoldBlock {
            label: label.into(),
            e,
            sigma,
            pi1,
            minimal: Minimality::Unknown,
            kodaira: Kodaira::Unknown,
        }
    }

    pub fn with_minimal(mut self, m: Minimality) -> Self {
        self.minimal = m;
        self
    }

    pub fn with_kodaira(mut self, k: Kodaira) -> Self {
        self.kodaira = k;
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn h1(&self) -> AbelianInvariants {
        abelian_invariants(&self.pi1)
    }

    pub fn b1(&self) -> i64 {
        self.h1().free_rank as i64
    }

    pub fn c1_squared(&self) -> i64 {
        2 * self.e + 3 * self.sigma
    }

    /// `(e + σ)/4` when integral.
    pub fn chi_h(&self) -> Option<i64> {
        ((self.e + self.sigma) % 4 == 0).then_some((self.e + self.sigma) / 4)
    }

    pub fn invariants(&self) -> Result<Invariants, SurgeryError> {
        Invariants::from_numbers(self.e, self.sigma, self.b1())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_numbers() {
        let inv = Invariants::from_numbers(12, -8, 0).unwrap();
        assert_eq!((inv.b2, inv.b_plus, inv.b_minus, inv.c1_squared, inv.chi_h), (10, 1, 9, 0, 1));
        let inv = Invariants::from_numbers(11, -7, 0).unwrap();
        assert_eq!((inv.b_plus, inv.b_minus, inv.c1_squared), (1, 8, 1));
    }

    #[test]
    fn rejects_non_integral() {
        assert!(Invariants::from_numbers(12, -7, 0).is_err());
        assert!(Invariants::from_numbers(10, -8, 0).is_err());
        assert_eq!(Invariants::from_numbers(12, -8, 1).unwrap().b_plus, 2);
    }
}
