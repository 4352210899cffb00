//! Bridge moves resolving self-intersections of relator curves.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::group::Word;
use crate::surgery::SurgeryError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorBridges {
    pub intersections: usize,
    pub bridges: usize,
    /// Handle index `g_i` of the first bridge, counted from 1.
    pub first_bridge: usize,
    pub parity_fixed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgePlan {
    pub base_genus: usize,
    pub relators: Vec<RelatorBridges>,
    pub total_genus: usize,
}

impl BridgePlan {
    /// Handles added for relator `i`.
    pub fn bridges_of(&self, i: usize) -> RangeInclusive<usize> {
        let r = &self.relators[i];
        r.first_bridge..=r.first_bridge + r.bridges - 1
    }

    /// The relator whose curve passes over bridge `g`.
    pub fn relator_of(&self, g: usize) -> Option<usize> {
        (0..self.relators.len()).find(|&i| self.bridges_of(i).contains(&g))
    }

    /// `c(g) = min{g − g_i + 1 : g ≥ g_i}`.
    pub fn c(&self, g: usize) -> Option<usize> {
        self.relators
            .iter()
            .filter(|r| g >= r.first_bridge)
            .map(|r| g - r.first_bridge + 1)
            .min()
    }
}

/// Self-intersections of the curve of `w`: consecutive occurrences of each
/// generator bound a chord, and every chord needs one bridge.
pub fn intersection_count(w: &Word) -> usize {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut chords = 0;
    for (pos, l) in w.letters().iter().enumerate() {
        if seen.insert(l.generator(), pos).is_some() {
            chords += 1;
        }
    }
    chords
}

/// Plans the bridges for relators over `b₁, …, b_k`; bridge handles are
/// numbered from `k+1` in relator order.
pub fn bridge_moves(relators: &[Word], k: usize) -> Result<BridgePlan, SurgeryError> {
    let mut next = k + 1;
    let mut out = Vec::with_capacity(relators.len());
    for (i, w) in relators.iter().enumerate() {
        if w.is_identity() {
            return Err(SurgeryError::InvalidParameter(alloc::format!("relator {i} is empty")));
        }
        if w.max_generator().is_some_and(|g| g >= k) {
            return Err(SurgeryError::InvalidParameter(alloc::format!(
                "relator {i} uses a generator beyond b{k}"
            )));
        }
        let intersections = intersection_count(w);
        let parity_fixed = intersections % 2 == 0;
        let bridges = intersections + usize::from(parity_fixed);
        out.push(RelatorBridges {
            intersections,
            bridges,
            first_bridge: next,
            parity_fixed,
        });
        next += bridges;
    }
    Ok(BridgePlan {
        base_genus: k,
        relators: out,
        total_genus: next - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_word;
    use alloc::string::String;
    use alloc::vec;

    fn words(texts: &[&str], k: usize) -> Vec<Word> {
        let names: Vec<String> = (1..=k).map(|i| alloc::format!("b{i}")).collect();
        texts.iter().map(|t| parse_word(t, &names).unwrap()).collect()
    }

    #[test]
    fn palindrome_needs_three_bridges() {
        let plan = bridge_moves(&words(&["b1 b2 b3 b2 b1"], 3), 3).unwrap();
        let r = &plan.relators[0];
        assert_eq!((r.intersections, r.bridges, r.parity_fixed), (2, 3, true));
        assert_eq!((r.first_bridge, plan.total_genus), (4, 6));
    }

    #[test]
    fn single_letter() {
        let plan = bridge_moves(&words(&["b1"], 1), 1).unwrap();
        assert_eq!(plan.relators[0], RelatorBridges { intersections: 0, bridges: 1, first_bridge: 2, parity_fixed: true });
    }

    #[test]
    fn ordering_and_c() {
        let plan = bridge_moves(&words(&["b1^3", "b2 b1 b2"], 2), 2).unwrap();
        // b1^3: two chords, three bridges 3..=5; b2 b1 b2: one chord, bridge 6.
        assert_eq!(plan.relators[1].first_bridge, 2 + plan.relators[0].bridges + 1);
        assert_eq!(plan.bridges_of(0), 3..=5);
        assert_eq!(plan.bridges_of(1), 6..=6);
        assert_eq!(plan.total_genus, 6);
        assert_eq!(vec![plan.c(3), plan.c(4), plan.c(5), plan.c(6)], vec![Some(1), Some(2), Some(3), Some(1)]);
        assert_eq!(plan.c(2), None);
        assert_eq!(plan.relator_of(5), Some(0));
        for r in &plan.relators {
            assert_eq!(r.bridges % 2, 1);
        }
    }

    #[test]
    fn rejects_empty_relator() {
        assert!(bridge_moves(&[Word::identity()], 1).is_err());
    }
}
