//! Deterministic Tietze simplification.
//!
//! Each step is one of
//! - shortening a relator by cancelling a pair `x … x⁻¹` whose interior
//!   commutes with `x`, where commutation is read off literal commutator
//!   relators `[x^±1, y^±1]` elsewhere in the presentation;
//! - eliminating a generator that occurs exactly once in some relator.
//!
//! Duplicate relators (up to rotation and inversion) are dropped between
//! steps and do not count against the budget.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::presentation::GroupPresentation;
use super::word::{Letter, Word};

/// Relators longer than this are never produced by elimination.
const MAX_RELATOR_LEN: usize = 4096;

/// Unordered pairs of generators known to commute.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutationGraph {
    edges: BTreeSet<(usize, usize)>,
}

impl CommutationGraph {
    pub fn new() -> Self {
        CommutationGraph::default()
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        if x != y {
            self.edges.insert((x.min(y), x.max(y)));
        }
    }

    pub fn commute(&self, x: usize, y: usize) -> bool {
        x == y || self.edges.contains(&(x.min(y), x.max(y)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn from_relators<'a>(relators: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut g = CommutationGraph::new();
        for r in relators {
            if let Some((x, y)) = literal_commutator(r) {
                g.insert(x, y);
            }
        }
        g
    }
}

/// `Some((x, y))` when `r` is cyclically `x^e y^f x^-e y^-f` with `|e| = |f| = 1`.
fn literal_commutator(r: &Word) -> Option<(usize, usize)> {
    let l = r.letters();
    if l.len() == 4
        && l[0] == l[2].inverse()
        && l[1] == l[3].inverse()
        && l[0].generator() != l[1].generator()
    {
        Some((l[0].generator(), l[1].generator()))
    } else {
        None
    }
}

/// Commutation graph of all literal commutator relators of `p`.
pub fn commutation_graph(p: &GroupPresentation) -> CommutationGraph {
    CommutationGraph::from_relators(p.relators())
}

/// Cancels pairs `x … x⁻¹` whose interior commutes with `x`.
///
/// With `cyclic` the word is treated as a relator, so pairs may wrap around
/// the end and the result is cyclically reduced.
pub fn reduce_with_commutations(w: &Word, graph: &CommutationGraph, cyclic: bool) -> Word {
    let mut v: Vec<Letter> = w.letters().to_vec();
    loop {
        let n = v.len();
        let mut found = None;
        'scan: for i in 0..n {
            let x = v[i];
            let reach = if cyclic { n } else { n - i };
            for step in 1..reach {
                let j = (i + step) % n;
                if v[j] == x.inverse() {
                    found = Some((i, j));
                    break 'scan;
                }
                if !graph.commute(x.generator(), v[j].generator()) {
                    break;
                }
            }
        }
        match found {
            Some((i, j)) => {
                v.remove(i.max(j));
                v.remove(i.min(j));
            }
            None => break,
        }
    }
    let out = Word::from_letters(v);
    if cyclic {
        out.cyclically_reduced()
    } else {
        out
    }
}

/// Result of [`tietze_simplify`].
#[derive(Clone, Debug)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    /// Image of each original generator, as a word in the new generators.
    pub images: Vec<Word>,
    pub steps: usize,
    /// The step budget ran out before a fixpoint was reached.
    pub exhausted: bool,
}

struct State {
    names: Vec<String>,
    rels: Vec<Word>,
    images: Vec<Word>,
}

impl State {
    fn new(p: &GroupPresentation) -> Self {
        State {
            names: p.generators().to_vec(),
            rels: p.relators().to_vec(),
            images: (0..p.generator_count()).map(Word::generator).collect(),
        }
    }

    fn normalize(&mut self) {
        let mut seen = BTreeSet::new();
        self.rels.retain(|r| !r.is_identity() && seen.insert(r.cyclic_canonical()));
    }

    fn commutation_step(&mut self) -> bool {
        for i in 0..self.rels.len() {
            if self.rels[i].len() < 2 {
                continue;
            }
            let graph = CommutationGraph::from_relators(
                self.rels.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r),
            );
            if graph.is_empty() {
                continue;
            }
            let reduced = reduce_with_commutations(&self.rels[i], &graph, true);
            if reduced.len() < self.rels[i].len() {
                self.rels[i] = reduced;
                return true;
            }
        }
        false
    }

    fn elimination_step(&mut self) -> bool {
        let mut order: Vec<usize> = (0..self.rels.len()).collect();
        order.sort_by_key(|&i| (self.rels[i].len(), i));
        for ri in order {
            let r = &self.rels[ri];
            let mut candidates: Vec<usize> =
                (0..self.names.len()).filter(|&g| r.occurrences(g) == 1).collect();
            candidates.reverse();
            for g in candidates {
                if let Some(map) = substitution(&self.rels[ri], g, self.names.len()) {
                    let new_rels: Vec<Word> = self
                        .rels
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != ri)
                        .map(|(_, r)| r.substitute(&map).cyclically_reduced())
                        .collect();
                    if new_rels.iter().any(|r| r.len() > MAX_RELATOR_LEN) {
                        continue;
                    }
                    self.rels = new_rels;
                    self.images = self.images.iter().map(|w| w.substitute(&map)).collect();
                    self.names.remove(g);
                    return true;
                }
            }
        }
        false
    }
}

/// Substitution eliminating `g` using relator `r` (where `g` occurs once),
/// mapping old generator indices to words over the remaining generators.
fn substitution(r: &Word, g: usize, generator_count: usize) -> Option<Vec<Word>> {
    let pos = r.letters().iter().position(|l| l.generator() == g)?;
    let rot = r.rotated(pos);
    let head = rot.letters()[0];
    let rest = Word::from_letters(rot.letters()[1..].iter().copied());
    // g^s · rest = 1
    let def_old = if head.is_inverse() { rest } else { rest.inverse() };
    let mut map: Vec<Word> = (0..generator_count)
        .map(|h| {
            if h == g {
                Word::identity()
            } else {
                Word::generator(h - usize::from(h > g))
            }
        })
        .collect();
    let def_new = def_old.substitute(&map);
    map[g] = def_new;
    Some(map)
}

/// Eliminates generator `g` using relator `relator`, where `g` must occur
/// exactly once. Returns the new presentation and the image of every old
/// generator.
pub fn eliminate_generator(
    p: &GroupPresentation,
    relator: usize,
    g: usize,
) -> Option<(GroupPresentation, Vec<Word>)> {
    let r = p.relators().get(relator)?;
    if r.occurrences(g) != 1 {
        return None;
    }
    let map = substitution(r, g, p.generator_count())?;
    let mut names = p.generators().to_vec();
    names.remove(g);
    let rels: Vec<Word> = p
        .relators()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != relator)
        .map(|(_, r)| r.substitute(&map))
        .collect();
    let out = GroupPresentation::new(names, rels).expect("substitution stays in range");
    Some((out, map))
}

/// Greedy simplification with at most `budget` steps.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> TietzeOutcome {
    let mut st = State::new(p);
    let mut steps = 0;
    let mut exhausted = false;
    loop {
        st.normalize();
        if steps >= budget {
            // Only report exhaustion when another step was actually available.
            let mut probe = State {
                names: st.names.clone(),
                rels: st.rels.clone(),
                images: Vec::new(),
            };
            exhausted = probe.commutation_step() || probe.elimination_step();
            break;
        }
        if st.commutation_step() || st.elimination_step() {
            steps += 1;
        } else {
            break;
        }
    }
    let mut seen = BTreeSet::new();
    let rels: Vec<Word> = st
        .rels
        .iter()
        .map(Word::cyclic_canonical)
        .filter(|r| seen.insert(r.clone()))
        .collect();
    TietzeOutcome {
        presentation: GroupPresentation::from_parts_unchecked(st.names, rels),
        images: st.images,
        steps,
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::group::parse_presentation;
    use crate::linalg::abelian_invariants;

    fn simplify(text: &str) -> GroupPresentation {
        tietze_simplify(&parse_presentation(text).unwrap(), 1000).presentation
    }

    #[test]
    fn cascade_to_trivial() {
        assert_eq!(simplify("<a, c | c, a c>"), GroupPresentation::trivial());
    }

    #[test]
    fn free_case_g1() {
        // Σ₁×T² after surgeries p=1, q=0, summed with E(1): c = d = 1.
        let p = simplify(
            "<a1, b1, c, d | [b1^-1, d^-1] = a1, [a1^-1, d] = 1, [a1, c], [b1, c], [c, d], [a1, b1], c, d>",
        );
        assert_eq!(p.generators(), &["b1"]);
        assert_eq!(p.relator_count(), 0);
    }

    #[test]
    fn idempotent() {
        for text in [
            "<x, y | x^2, y^3, x y x^-1 y^-1>",
            "<a, b, c | a b a^-1 b^-1, c^5, a c a^-1 c^-1 b>",
            "<x | x^5, x^-2>",
        ] {
            let once = simplify(text);
            let twice = tietze_simplify(&once, 1000).presentation;
            assert_eq!(once, twice, "{text}");
        }
    }

    #[test]
    fn commutation_cancellation() {
        let p = simplify("<x, y, z | [x, y], x y x^-1 z^3>");
        // x y x⁻¹ reduces to y, then y is eliminated.
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relator_count(), 1);
        assert_eq!(p.relators()[0].cyclic_canonical(), p.relators()[0].clone());
    }

    #[test]
    fn images_are_consistent() {
        let p = parse_presentation("<a, b, c | a b^-1, c a^2>").unwrap();
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.generator_count(), 1);
        // every original relator maps to the identity or a relator consequence
        for r in p.relators() {
            assert!(r.substitute(&out.images).is_identity());
        }
    }

    #[test]
    fn preserves_abelian_invariants() {
        for text in [
            "<x, y | x^2, y^3>",
            "<x, y, z | x y^2 z, y^4 z^-1, [x, z]>",
            "<a, b | a^6 b^-4, a^3 b>",
        ] {
            let p = parse_presentation(text).unwrap();
            let s = tietze_simplify(&p, 1000).presentation;
            assert_eq!(abelian_invariants(&p), abelian_invariants(&s), "{text}");
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = parse_presentation("<a, b, c | a, b, c>").unwrap();
        let out = tietze_simplify(&p, 1);
        assert!(out.exhausted);
        assert_eq!(out.steps, 1);
        assert!(!tietze_simplify(&p, 10).exhausted);
    }

    #[test]
    fn explicit_elimination() {
        let p = parse_presentation("<x, y | y x^-2, y^3>").unwrap();
        let (q, map) = eliminate_generator(&p, 0, 1).unwrap();
        assert_eq!(q.to_string(), "<x | x^6>");
        assert_eq!(map[1], Word::power_of(0, 2));
    }
}
