use super::block::{Invariants, Kodaira, ManifoldBlock, SurgeryError};
use crate::group::GroupPresentation;
use crate::linalg::abelian_invariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        match x.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }
}

/// Kodaira dimension from the signs of `K·[ω]` and `K·K` on a minimal model.
pub fn kodaira_dimension(k_omega: Sign, k_squared: Sign) -> Result<Kodaira, SurgeryError> {
    use Sign::*;
    match (k_omega, k_squared) {
        (Neg, _) | (_, Neg) => Ok(Kodaira::NegInfinity),
        (Zero, Zero) => Ok(Kodaira::Zero),
        (Pos, Zero) => Ok(Kodaira::One),
        (Pos, Pos) => Ok(Kodaira::Two),
        (Zero, Pos) => Err(SurgeryError::InconsistentSigns),
    }
}

/// Geography constraints for minimal symplectic manifolds with `κ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeographyReport {
    pub e: i64,
    pub sigma: i64,
    pub b1: i64,
    /// `None` when `(e, σ, b₁)` do not give integral `b±` and `χ_h`.
    pub invariants: Option<Invariants>,
    pub c1_squared_nonnegative: bool,
    pub chi_h_integral: bool,
    /// `4b₁ + b⁻ ≤ 9`, checked only when `b⁺ = 1`.
    pub b_plus_one_bound: Option<bool>,
    /// `b₁ ∈ {0, 2}`, checked only when `b⁺ = 1`.
    pub b_plus_one_b1: Option<bool>,
}

impl GeographyReport {
    pub fn passed(&self) -> bool {
        self.c1_squared_nonnegative
            && self.chi_h_integral
            && self.b_plus_one_bound != Some(false)
            && self.b_plus_one_b1 != Some(false)
    }
}

pub fn geography_check_numbers(e: i64, sigma: i64, b1: i64) -> GeographyReport {
    let invariants = Invariants::from_numbers(e, sigma, b1).ok();
    let (bound, b1_ok) = match invariants {
        Some(inv) if inv.b_plus == 1 => (Some(4 * b1 + inv.b_minus <= 9), Some(b1 == 0 || b1 == 2)),
        _ => (None, None),
    };
    GeographyReport {
        e,
        sigma,
        b1,
        invariants,
        c1_squared_nonnegative: 2 * e + 3 * sigma >= 0,
        chi_h_integral: invariants.is_some(),
        b_plus_one_bound: bound,
        b_plus_one_b1: b1_ok,
    }
}

pub fn geography_check(block: &ManifoldBlock) -> GeographyReport {
    geography_check_numbers(block.e, block.sigma, block.b1())
}

/// Upper bounds on `(b⁺, b₂)` for the free group of rank `n` from the
/// elliptic-surface construction.
pub fn free_group_table(n: u32) -> (i64, i64) {
    let n = i64::from(n);
    if n == 4 {
        (11, 54)
    } else if n % 2 == 0 {
        (2 * n + 1, 8 * n + 10)
    } else {
        (2 * n + 2, 8 * n + 16)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub generators: usize,
    pub relators: usize,
    pub b1: i64,
    /// Smallest `b⁺` allowed by `c₁² ≥ 0` and integrality of `χ_h`.
    pub lower: i64,
    /// `2(k+m) + b₁ + 1`.
    pub gompf_upper: i64,
    /// `b₁ + 1`, achieved when the presentation has dual finite torsion.
    pub construction: i64,
    /// Table values `(b⁺, b₂)` when the presentation has no relators.
    pub free_table: Option<(i64, i64)>,
}

pub fn group_size_bounds(p: &GroupPresentation) -> BoundsReport {
    let k = p.generator_count() as i64;
    let m = p.relator_count() as i64;
    let b1 = abelian_invariants(p).free_rank as i64;
    let floor = (4 * b1 - 4 + 4).div_euclid(5).max(1);
    // b⁺ − b₁ + 1 must be even.
    let lower = if (floor - b1 + 1) % 2 == 0 { floor } else { floor + 1 };
    BoundsReport {
        generators: k as usize,
        relators: m as usize,
        b1,
        lower,
        gompf_upper: 2 * (k + m) + b1 + 1,
        construction: b1 + 1,
        free_table: (m == 0).then(|| free_group_table(k as u32)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_presentation;

    #[test]
    fn kodaira_cases() {
        use Sign::*;
        assert_eq!(kodaira_dimension(Neg, Pos), Ok(Kodaira::NegInfinity));
        assert_eq!(kodaira_dimension(Pos, Neg), Ok(Kodaira::NegInfinity));
        assert_eq!(kodaira_dimension(Zero, Zero), Ok(Kodaira::Zero));
        assert_eq!(kodaira_dimension(Pos, Zero), Ok(Kodaira::One));
        assert_eq!(kodaira_dimension(Pos, Pos), Ok(Kodaira::Two));
        assert_eq!(kodaira_dimension(Zero, Pos), Err(SurgeryError::InconsistentSigns));
    }

    #[test]
    fn geography_examples() {
        let r = geography_check_numbers(12, -8, 0);
        assert!(r.passed());
        assert_eq!(r.invariants.unwrap().b_minus, 9);
        let r = geography_check_numbers(11, -7, 0);
        assert!(r.passed());
        assert_eq!(r.invariants.unwrap().c1_squared, 1);
        // b₁ = 2 gives b⁺ = 3, so the b⁺ = 1 clauses do not apply.
        let r = geography_check_numbers(12, -8, 2);
        assert_eq!(r.invariants.unwrap().b_plus, 3);
        assert_eq!(r.invariants.unwrap().b_minus, 11);
        assert_eq!(r.b_plus_one_bound, None);
        assert!(r.passed());
        // b⁺ = 1 and b₁ = 4 violates b₁ ∈ {0, 2}.
        let r = geography_check_numbers(0, -4, 4);
        assert_eq!(r.b_plus_one_b1, Some(false));
        assert!(!r.passed());
        assert!(!geography_check_numbers(12, -7, 0).passed());
        assert!(!geography_check_numbers(4, -4, 0).passed());
    }

    #[test]
    fn bounds() {
        let f2 = group_size_bounds(&parse_presentation("<x, y | >").unwrap());
        assert_eq!((f2.construction, f2.free_table), (3, Some((5, 26))));
        assert_eq!(f2.gompf_upper, 7);
        let f3 = group_size_bounds(&parse_presentation("<x, y, z | >").unwrap());
        assert_eq!((f3.construction, f3.free_table.unwrap().0), (4, 8));
        assert_eq!(free_group_table(4), (11, 54));
        let z5 = group_size_bounds(&parse_presentation("<x | x^5>").unwrap());
        assert_eq!((z5.lower, z5.construction, z5.free_table), (1, 1, None));
    }

    #[test]
    fn lower_bound_parity() {
        for n in 0..40u32 {
            let names: alloc::vec::Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("x{i}")).collect();
            let r = group_size_bounds(&GroupPresentation::free(names).unwrap());
            assert!(5 * r.lower >= 4 * r.b1 - 4);
            assert!(r.lower >= 1);
            assert_eq!((r.lower - r.b1 + 1).rem_euclid(2), 0);
            assert!(r.lower <= r.construction);
        }
    }
}
