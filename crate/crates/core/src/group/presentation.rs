use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::word::{Letter, Word};
use crate::linalg::IntMatrix;

/// Structural problems with a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    DuplicateGenerator(String),
    InvalidName(String),
    GeneratorOutOfRange { relator: usize, generator: usize },
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::DuplicateGenerator(n) => write!(f, "duplicate generator `{n}`"),
            PresentationError::InvalidName(n) => write!(f, "invalid generator name `{n}`"),
            PresentationError::GeneratorOutOfRange {
                relator,
                generator,
            } => write!(
                f,
                "relator {relator} uses generator index {generator} beyond the generator list"
            ),
        }
    }
}

impl core::error::Error for PresentationError {}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite presentation `⟨generators | relators⟩`.
///
/// Relators are stored freely and cyclically reduced, and empty relators are
/// dropped on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, PresentationError> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !is_valid_name(g) {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let mut out = GroupPresentation {
            generators,
            relators: Vec::new(),
        };
        out.push_relators(relators)?;
        Ok(out)
    }

    /// Free group on the given names.
    pub fn free<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
    ) -> Result<Self, PresentationError> {
        GroupPresentation::new(generators, core::iter::empty())
    }

    /// The empty presentation `⟨ | ⟩`.
    pub fn trivial() -> Self {
        GroupPresentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    /// Builds with generator names `prefix1, prefix2, ...`.
    pub fn indexed(prefix: &str, count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        GroupPresentation::new((1..=count).map(|i| format!("{prefix}{i}")), relators)
    }

    fn push_relators(
        &mut self,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<(), PresentationError> {
        for r in relators {
            if let Some(g) = r.max_generator() {
                if g >= self.generators.len() {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: self.relators.len(),
                        generator: g,
                    });
                }
            }
            let r = r.cyclically_reduced();
            if !r.is_identity() {
                self.relators.push(r);
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Single-generator word by name. Panics on unknown names.
    pub fn gen(&self, name: &str) -> Word {
        match self.index_of(name) {
            Some(i) => Word::generator(i),
            None => panic!("unknown generator `{name}`"),
        }
    }

    /// Appends relators, i.e. passes to the quotient by their normal closure.
    pub fn quotient_by(&self, extra: &[Word]) -> Result<Self, PresentationError> {
        let mut out = self.clone();
        out.push_relators(extra.iter().cloned())?;
        Ok(out)
    }

    /// Free product. Generators of `other` are shifted by
    /// `self.generator_count()`; colliding names receive the first free
    /// suffix `_2`, `_3`, ...
    pub fn free_product(&self, other: &GroupPresentation) -> GroupPresentation {
        let offset = self.generators.len();
        let mut names: Vec<String> = self.generators.clone();
        let mut taken: BTreeSet<String> = names.iter().cloned().collect();
        for g in &other.generators {
            let mut candidate = g.clone();
            let mut n = 2;
            while taken.contains(&candidate) || other_contains_later(other, &candidate, g) {
                candidate = format!("{g}_{n}");
                n += 1;
            }
            taken.insert(candidate.clone());
            names.push(candidate);
        }
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|r| r.shifted(offset)));
        GroupPresentation {
            generators: names,
            relators,
        }
    }

    /// Exponent-sum matrix: row `i` is generator `i`, column `j` is relator `j`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let k = self.generators.len();
        let m = self.relators.len();
        let mut a = IntMatrix::zeros(k, m);
        for (j, r) in self.relators.iter().enumerate() {
            for l in r.letters() {
                a.add_i64(l.generator(), j, i64::from(l.sign()));
            }
        }
        a
    }

    /// Abelianized image of a word as an exponent vector.
    pub fn exponent_vector(&self, w: &Word) -> Vec<i64> {
        let mut v = alloc::vec![0i64; self.generators.len()];
        for l in w.letters() {
            v[l.generator()] += i64::from(l.sign());
        }
        v
    }

    /// Whether both relator lists agree up to order, rotation and inversion
    /// (and generator names match).
    pub fn same_up_to_relator_form(&self, other: &GroupPresentation) -> bool {
        if self.generators != other.generators {
            return false;
        }
        let a: BTreeSet<Word> = self.relators.iter().map(Word::cyclic_canonical).collect();
        let b: BTreeSet<Word> = other.relators.iter().map(Word::cyclic_canonical).collect();
        a == b
    }

    /// Formats a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        format_word_with(&self.generators, w)
    }

    pub(crate) fn from_parts_unchecked(generators: Vec<String>, relators: Vec<Word>) -> Self {
        debug_assert!(relators.iter().all(|r| !r.is_identity() && r.is_cyclically_reduced()));
        GroupPresentation {
            generators,
            relators,
        }
    }

    /// Same presentation with generators renamed.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self, PresentationError> {
        assert_eq!(names.len(), self.generators.len());
        GroupPresentation::new(names, self.relators.iter().cloned())
    }
}

// Keep a renamed `x` from colliding with a literal `x_2` appearing later in `other`.
fn other_contains_later(other: &GroupPresentation, candidate: &str, original: &str) -> bool {
    candidate != original && other.generators.iter().any(|g| g == candidate)
}

pub(crate) fn format_word_with(names: &[String], w: &Word) -> String {
    let letters = w.letters();
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < letters.len() {
        let l: Letter = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let run = (j - i) as i64 * i64::from(l.sign());
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&names[l.generator()]);
        if run != 1 {
            out.push_str(&format!("^{run}"));
        }
        i = j;
    }
    out
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        f.write_str(&self.generators.join(", "))?;
        f.write_str(" | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.format_word(r))?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `E_{p1..pk} = ⟨x1..xk | x1^p1, ..., xk^pk, x1⋯xk⟩`.
pub fn orbifold_group(orders: &[u32]) -> GroupPresentation {
    let k = orders.len();
    let mut relators: Vec<Word> = orders
        .iter()
        .enumerate()
        .map(|(i, &p)| Word::power_of(i, i64::from(p)))
        .collect();
    relators.push(Word::from_letters((0..k).map(|i| Letter::new(i, false))));
    GroupPresentation::indexed("x", k, relators).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_presentation;

    #[test]
    fn quotient_examples() {
        let free = GroupPresentation::free(["x"]).unwrap();
        let q = free.quotient_by(&[Word::power_of(0, 5)]).unwrap();
        assert_eq!(q.relators(), &[Word::power_of(0, 5)]);
        let q2 = q.quotient_by(&[Word::identity()]).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn free_product_renames_collisions() {
        let p = parse_presentation("<x | x^2>").unwrap();
        let q = parse_presentation("<x, x_2 | x^3, x_2>").unwrap();
        let r = p.free_product(&q);
        assert_eq!(r.generators(), &["x", "x_3", "x_2"]);
        assert_eq!(r.relators()[1], Word::power_of(1, 3));
        assert_eq!(r.relators()[2], Word::generator(2));
    }

    #[test]
    fn free_product_with_trivial_is_identity() {
        let p = parse_presentation("<a, b | [a,b]>").unwrap();
        assert_eq!(GroupPresentation::trivial().free_product(&p), p);
    }

    #[test]
    fn exponent_matrix_examples() {
        let p = parse_presentation("<x | x^5, x^-2>").unwrap();
        assert_eq!(p.exponent_matrix(), IntMatrix::from_i64(1, 2, &[5, -2]));
        let c = parse_presentation("<a,b | [a,b]>").unwrap();
        assert_eq!(c.exponent_matrix(), IntMatrix::from_i64(2, 1, &[0, 0]));
        let xy = parse_presentation("<x,y | x^2, y^3>").unwrap();
        assert_eq!(xy.exponent_matrix(), IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
    }

    #[test]
    fn rejects_out_of_range() {
        let err = GroupPresentation::new(["x"], [Word::generator(1)]).unwrap_err();
        assert!(matches!(err, PresentationError::GeneratorOutOfRange { .. }));
    }

    #[test]
    fn orbifold_shape() {
        let e = orbifold_group(&[2, 3, 5]);
        assert_eq!(e.to_string(), "<x1, x2, x3 | x1^2, x2^3, x3^5, x1 x2 x3>");
    }
}
