//! Freely reduced words over an indexed alphabet.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    /// Letter from a generator index and an exponent sign (`+1` or `-1`).
    pub fn from_sign(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter::new(generator, sign < 0)
    }

    #[inline]
    pub const fn generator(self) -> usize {
        self.generator
    }

    #[inline]
    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    #[inline]
    pub const fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub(crate) fn shifted(self, offset: usize) -> Self {
        Letter::new(self.generator + offset, self.inverse)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.generator, self.inverse).cmp(&(other.generator, other.inverse))
    }
}

/// Free reduction of a raw `(generator, sign)` sequence.
pub fn free_reduce(raw: &[(usize, i8)]) -> Word {
    Word::from_letters(raw.iter().map(|&(g, s)| Letter::from_sign(g, s)))
}

/// An element of a free group, always stored freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub const fn identity() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: alloc::vec![Letter::new(g, false)],
        }
    }

    /// `g^exponent`.
    pub fn power_of(g: usize, exponent: i64) -> Self {
        let letter = Letter::new(g, exponent < 0);
        Word {
            letters: core::iter::repeat(letter)
                .take(exponent.unsigned_abs() as usize)
                .collect(),
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        if base.is_identity() || exponent == 0 {
            return Word::identity();
        }
        // base = u c u⁻¹ with c cyclically reduced, so base^n = u c^n u⁻¹ without cancellation.
        let core = base.cyclically_reduced();
        let t = (base.len() - core.len()) / 2;
        let n = exponent.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(2 * t + n * core.len());
        letters.extend_from_slice(&base.letters[..t]);
        for _ in 0..n {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend_from_slice(&base.letters[base.len() - t..]);
        Word { letters }
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        Word::from_letters(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }

    /// Removes matching letters from both ends.
    pub fn cyclically_reduced(&self) -> Word {
        let l = &self.letters;
        let (mut i, mut j) = (0usize, l.len());
        while j > i + 1 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) if self.letters.len() > 1 => a != b.inverse(),
            _ => true,
        }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| i64::from(l.sign()))
            .sum()
    }

    /// Number of letters (either sign) on generator `g`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters.iter().filter(|l| l.generator == g).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn involves(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.generator == g)
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    ///
    /// Panics if some generator has no image.
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::from_letters(self.letters.iter().flat_map(|l| {
            let img = &images[l.generator].letters;
            let inverse = l.inverse;
            (0..img.len()).map(move |i| {
                if inverse {
                    img[img.len() - 1 - i].inverse()
                } else {
                    img[i]
                }
            })
        }))
    }

    pub(crate) fn shifted(&self, offset: usize) -> Word {
        Word {
            letters: self.letters.iter().map(|l| l.shifted(offset)).collect(),
        }
    }

    /// Rotation starting at letter `k` (the word is assumed cyclically reduced).
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.letters.len();
        if n == 0 {
            return Word::identity();
        }
        let k = k % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Minimal representative among all rotations of the word and of its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let base = self.cyclically_reduced();
        let inv = base.inverse();
        let n = base.len();
        let mut best = base.clone();
        for k in 0..n {
            for cand in [base.rotated(k), inv.rotated(k)] {
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    /// Whether `needle` occurs as a contiguous subword; returns its position.
    pub fn find(&self, needle: &Word) -> Option<usize> {
        let n = needle.len();
        if n == 0 {
            return Some(0);
        }
        self.letters.windows(n).position(|w| w == needle.letters.as_slice())
    }

    pub(crate) fn splice(&self, at: usize, remove: usize, insert: &Word) -> Word {
        Word::from_letters(
            self.letters[..at]
                .iter()
                .chain(insert.letters.iter())
                .chain(self.letters[at + remove..].iter())
                .copied(),
        )
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}{}", l.generator, if l.inverse { "'" } else { "" })?;
        }
        Ok(())
    }
}
