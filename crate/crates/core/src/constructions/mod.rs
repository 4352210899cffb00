//! End-to-end pipelines: each builds a block from catalog pieces and
//! surgeries, then records every checkable claim in a dossier.

#![allow(non_snake_case)]

mod bridge;
mod free;
mod plus;
mod pq;
mod rbd;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coset::{enumerate, EnumBudget};
use crate::group::{tietze_simplify, GroupPresentation, Word};
use crate::linalg::{abelian_invariants, in_column_lattice, rank, AbelianInvariants, IntMatrix};
use crate::surgery::{geography_check, Invariants, ManifoldBlock};

pub use bridge::{bridge_moves, intersection_count, BridgePlan, RelatorBridges};
pub use free::{build_XG, build_XG_moregen, build_Xg, build_Yg, yg_fiber_torus};
pub use plus::{build_XplusG, build_XplusG_free};
pub use pq::{build_Xpq_c1, build_Xpq_c23, gluing_relators, solve_gluing, TorusMode};
pub use rbd::{
    build_rbd_example, recipe, run_recipe, Certificate, RbdBlowdown, RbdExpected, RbdRecipe, RBD_RECIPES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClaimStatus {
    Pass,
    Fail,
    Unchecked,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Unchecked => "unchecked",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionDossier {
    pub name: String,
    pub block: ManifoldBlock,
    /// Tietze-simplified form of `block.pi1`.
    pub simplified: GroupPresentation,
    pub claims: Vec<Claim>,
    /// Order of `π₁` when a coset enumeration completed.
    pub pi1_order: Option<u64>,
    pub notes: Vec<String>,
}

impl ConstructionDossier {
    fn new(name: impl Into<String>, block: ManifoldBlock) -> Self {
        let simplified = tietze_simplify(&block.pi1, 20_000).presentation;
        ConstructionDossier {
            name: name.into(),
            block,
            simplified,
            claims: Vec::new(),
            pi1_order: None,
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, id: &str, ok: bool, evidence: impl Into<String>) {
        self.claims.push(Claim {
            id: id.into(),
            status: if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
            evidence: evidence.into(),
        });
    }

    pub fn unchecked(&mut self, id: &str, evidence: impl Into<String>) {
        self.claims.push(Claim {
            id: id.into(),
            status: ClaimStatus::Unchecked,
            evidence: evidence.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// No claim failed.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn h1(&self) -> AbelianInvariants {
        abelian_invariants(&self.simplified)
    }

    pub fn invariants(&self) -> Option<Invariants> {
        Invariants::from_numbers(self.block.e, self.block.sigma, self.block.b1()).ok()
    }

    /// Claims `(e, σ)` and, when given, `c₁²`.
    fn check_numbers(&mut self, e: i64, sigma: i64, c1sq: Option<i64>) {
        let (be, bs) = (self.block.e, self.block.sigma);
        self.check(
            "numbers",
            (be, bs) == (e, sigma),
            format!("(e, sigma) = ({be}, {bs}), expected ({e}, {sigma})"),
        );
        if let Some(c) = c1sq {
            let got = self.block.c1_squared();
            self.check("c1sq", got == c, format!("c1^2 = {got}, expected {c}"));
        }
    }

    fn check_b_plus(&mut self, expected: i64) {
        match self.invariants() {
            Some(inv) => self.check(
                "b-plus",
                inv.b_plus == expected,
                format!("b+ = {}, expected {expected}", inv.b_plus),
            ),
            None => self.check("b-plus", false, "invariants are not integral"),
        }
    }

    /// Geography constraints, claimed when `b⁺ = 1`.
    fn check_geography(&mut self) {
        if self.invariants().is_some_and(|i| i.b_plus == 1) {
            let r = geography_check(&self.block);
            self.check(
                "geography",
                r.passed(),
                format!("b+ = 1, b1 = {}, b- = {}", r.b1, r.invariants.map_or(-1, |i| i.b_minus)),
            );
        }
    }

    /// Enumerates the simplified group and records its order.
    fn enumerate_order(&mut self, max_cosets: usize) -> Option<u64> {
        if self.h1().free_rank > 0 {
            return None;
        }
        let order = enumerate(&self.simplified, EnumBudget::cosets(max_cosets))
            .order()
            .map(|n| n as u64);
        self.pi1_order = order;
        order
    }

    fn check_h1(&mut self, id: &str, expected: &AbelianInvariants) {
        let h1 = self.h1();
        self.check(id, &h1 == expected, format!("H1 = {h1}, expected {expected}"));
    }
}

/// Whether `v` has finite order in the cokernel of `m`.
pub fn is_torsion_vector(m: &IntMatrix, v: &[i64]) -> bool {
    let col = IntMatrix::from_i64(v.len(), 1, v);
    rank(&m.hcat(&col)) == rank(m)
}

/// Whether `w` is trivial in the abelianization of `p`.
pub fn trivial_in_h1(p: &GroupPresentation, w: &Word) -> bool {
    in_column_lattice(&p.exponent_matrix(), &p.exponent_vector(w))
}

/// `b₁` of a presentation, as the free rank of its abelianization.
pub fn betti_one(p: &GroupPresentation) -> i64 {
    abelian_invariants(p).free_rank as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_presentation;

    #[test]
    fn torsion_vectors() {
        let p = parse_presentation("<x, y | x^3>").unwrap();
        let m = p.exponent_matrix();
        assert!(is_torsion_vector(&m, &[1, 0]));
        assert!(!is_torsion_vector(&m, &[0, 1]));
        assert!(trivial_in_h1(&p, &Word::power_of(0, 6)));
        assert!(!trivial_in_h1(&p, &Word::power_of(0, 2)));
        assert_eq!(betti_one(&p), 1);
    }
}
