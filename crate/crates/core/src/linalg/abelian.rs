use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::smith::invariant_factors;
use super::IntMatrix;
use crate::group::GroupPresentation;

/// `ℤ^free_rank ⊕ ℤ/t₁ ⊕ ⋯ ⊕ ℤ/t_r` with `t₁ | t₂ | ⋯` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Cokernel of a relation matrix whose rows index generators.
    pub fn of_relation_matrix(m: &IntMatrix) -> Self {
        let factors = invariant_factors(m);
        let rank = factors.iter().filter(|f| !f.is_zero()).count();
        AbelianInvariants {
            free_rank: m.rows() - rank,
            torsion: factors.into_iter().filter(|f| *f > BigInt::one()).collect(),
        }
    }

    /// `ℤ/n₁ ⊕ ⋯ ⊕ ℤ/n_k` in invariant-factor form (an entry 0 contributes ℤ).
    pub fn of_cyclics(orders: &[i64]) -> Self {
        AbelianInvariants::of_relation_matrix(&IntMatrix::diagonal(orders))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion
            .iter()
            .map(|t| i64::try_from(t).unwrap_or(i64::MAX))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Abelianization of a presentation.
pub fn abelian_invariants(p: &GroupPresentation) -> AbelianInvariants {
    AbelianInvariants::of_relation_matrix(&p.exponent_matrix())
}

/// Whether the exponent matrix has rank equal to the number of relators.
pub fn is_dual_finite_torsion(p: &GroupPresentation) -> bool {
    super::rank(&p.exponent_matrix()) == p.relator_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::group::{orbifold_group, parse_presentation};

    fn inv(text: &str) -> AbelianInvariants {
        abelian_invariants(&parse_presentation(text).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(inv("<x, y | x^2, y^3>"), AbelianInvariants::of_cyclics(&[6]));
        assert_eq!(inv("<x, y | x^2, y^3>").torsion_i64(), [6]);
        assert_eq!(inv("<a, b | [a, b]>"), AbelianInvariants { free_rank: 2, torsion: Vec::new() });
        let e22 = abelian_invariants(&orbifold_group(&[2, 2]));
        assert_eq!(e22.free_rank, 0);
        assert_eq!(e22.torsion_i64(), [2]);
    }

    #[test]
    fn quotient_two_ways() {
        let p = parse_presentation("<a, b | [a, b]>").unwrap();
        let q = p.quotient_by(&[crate::group::Word::generator(0)]).unwrap();
        assert_eq!(abelian_invariants(&q).free_rank, 1);
        let augmented = p.exponent_matrix().hcat(&IntMatrix::from_i64(2, 1, &[1, 0]));
        assert_eq!(abelian_invariants(&q), AbelianInvariants::of_relation_matrix(&augmented));
    }

    #[test]
    fn free_product_block_diagonal() {
        let a = parse_presentation("<x | x^2>").unwrap();
        let b = parse_presentation("<y | y^3>").unwrap();
        let ab = a.free_product(&b);
        assert_eq!(ab.exponent_matrix(), a.exponent_matrix().block_diag(&b.exponent_matrix()));
        assert_eq!(abelian_invariants(&ab).torsion_i64(), [6]);
    }

    #[test]
    fn dual_finite_torsion_examples() {
        assert!(is_dual_finite_torsion(&parse_presentation("<x, y | x^2, y^3>").unwrap()));
        assert!(!is_dual_finite_torsion(&parse_presentation("<a, b | [a, b]>").unwrap()));
        assert!(is_dual_finite_torsion(&parse_presentation("<x | >").unwrap()));
    }

    #[test]
    fn display() {
        assert_eq!(inv("<x, y, z | x^2, y^4>").to_string(), "Z + Z/2 + Z/4");
        assert_eq!(inv("<x | x>").to_string(), "0");
    }
}
