use alloc::vec::Vec;
use core::fmt;

use super::presentation::GroupPresentation;
use super::word::Word;
use crate::coset::{enumerate, EnumBudget, EnumOutcome};
use crate::linalg::in_column_lattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomError {
    WrongImageCount { expected: usize, found: usize },
    ImageOutOfRange { generator: usize },
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::WrongImageCount { expected, found } => {
                write!(f, "expected {expected} generator images, found {found}")
            }
            HomError::ImageOutOfRange { generator } => {
                write!(f, "image of generator {generator} uses an unknown target generator")
            }
        }
    }
}

impl core::error::Error for HomError {}

/// A map on generators, to be checked against the source relators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: GroupPresentation,
    target: GroupPresentation,
    images: Vec<Word>,
}

impl GroupHom {
    pub fn new(
        source: GroupPresentation,
        target: GroupPresentation,
        images: Vec<Word>,
    ) -> Result<Self, HomError> {
        if images.len() != source.generator_count() {
            return Err(HomError::WrongImageCount {
                expected: source.generator_count(),
                found: images.len(),
            });
        }
        for (i, w) in images.iter().enumerate() {
            if w.max_generator().is_some_and(|g| g >= target.generator_count()) {
                return Err(HomError::ImageOutOfRange { generator: i });
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &GroupPresentation {
        &self.source
    }

    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

/// Outcome of [`check_hom`], strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HomCheck {
    Failed,
    AbelianOnly,
    Certified,
}

impl fmt::Display for HomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomCheck::Failed => "failed",
            HomCheck::AbelianOnly => "abelian-only",
            HomCheck::Certified => "certified",
        })
    }
}

/// Deletes subwords that are rotations of target relators (or inverses)
/// until the word is empty or no deletion applies.
fn trivial_by_relator_deletion(w: &Word, target: &GroupPresentation, max_rounds: usize) -> bool {
    let mut pieces: Vec<Word> = Vec::new();
    for r in target.relators() {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len() {
                let rot = base.rotated(k);
                if !pieces.contains(&rot) {
                    pieces.push(rot);
                }
            }
        }
    }
    pieces.sort_by_key(|p| core::cmp::Reverse(p.len()));
    let mut cur = w.cyclically_reduced();
    for _ in 0..max_rounds {
        if cur.is_identity() {
            return true;
        }
        let hit = pieces.iter().find_map(|p| cur.find(p).map(|at| (at, p.len())));
        match hit {
            Some((at, len)) => cur = cur.splice(at, len, &Word::identity()).cyclically_reduced(),
            None => return false,
        }
    }
    cur.is_identity()
}

/// Checks that every source relator maps to the identity of the target.
///
/// The abelianized check runs first; a failure there is conclusive. Each
/// relator image is then certified either by relator deletion or by tracing
/// it through a complete coset table of the target.
pub fn check_hom(h: &GroupHom, budget: EnumBudget) -> HomCheck {
    let target = &h.target;
    let relations = target.exponent_matrix();
    let images: Vec<Word> = h.source.relators().iter().map(|r| h.apply(r)).collect();
    for w in &images {
        let v = target.exponent_vector(w);
        if !in_column_lattice(&relations, &v) {
            return HomCheck::Failed;
        }
    }
    let mut pending: Vec<&Word> = images
        .iter()
        .filter(|w| !trivial_by_relator_deletion(w, target, 256))
        .collect();
    if pending.is_empty() {
        return HomCheck::Certified;
    }
    if let EnumOutcome::Finite { table, .. } = enumerate(target, budget) {
        pending.retain(|w| !table.is_trivial(w));
    }
    if pending.is_empty() {
        HomCheck::Certified
    } else {
        HomCheck::AbelianOnly
    }
}
