//! Dehn-twist words in the torus mapping class group `SL(2, ℤ)`.
//!
//! Matrices: `t_a = [[1, 1], [0, 1]]`, `t_b = [[1, 0], [-1, 1]]`. With these,
//! `t_a t_b t_a = t_b t_a t_b` and `(t_a t_b)^6 = 1`.

mod parse;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use parse::{parse_factorization, parse_monodromy, MonodromyParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    A,
    B,
}

impl Twist {
    pub fn other(self) -> Twist {
        match self {
            Twist::A => Twist::B,
            Twist::B => Twist::A,
        }
    }

    pub fn name(self) -> char {
        match self {
            Twist::A => 'a',
            Twist::B => 'b',
        }
    }
}

/// A word in `t_a`, `t_b` with adjacent equal twists merged and no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MonodromyWord {
    letters: Vec<(Twist, i64)>,
}

impl MonodromyWord {
    pub fn identity() -> Self {
        MonodromyWord::default()
    }

    pub fn twist(t: Twist, exponent: i64) -> Self {
        MonodromyWord::from_letters([(t, exponent)])
    }

    pub fn a(exponent: i64) -> Self {
        MonodromyWord::twist(Twist::A, exponent)
    }

    pub fn b(exponent: i64) -> Self {
        MonodromyWord::twist(Twist::B, exponent)
    }

    /// Merges runs and drops zero exponents.
    pub fn from_letters<I: IntoIterator<Item = (Twist, i64)>>(letters: I) -> Self {
        let mut out: Vec<(Twist, i64)> = Vec::new();
        for (t, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((lt, le)) if *lt == t => {
                    *le += e;
                    if *le == 0 {
                        out.pop();
                    }
                }
                _ => out.push((t, e)),
            }
        }
        MonodromyWord { letters: out }
    }

    /// Parses a string of `a`/`b` characters, e.g. `"abab"`.
    pub fn from_positive(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                'a' => Some((Twist::A, 1)),
                'b' => Some((Twist::B, 1)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(MonodromyWord::from_letters)
    }

    pub fn letters(&self) -> &[(Twist, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn twist_count(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn mul(&self, other: &MonodromyWord) -> MonodromyWord {
        MonodromyWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> MonodromyWord {
        MonodromyWord {
            letters: self.letters.iter().rev().map(|&(t, e)| (t, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> MonodromyWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = MonodromyWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u · self · u⁻¹`.
    pub fn conjugate(&self, u: &MonodromyWord) -> MonodromyWord {
        u.mul(self).mul(&u.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MonodromyWord>>(words: I) -> MonodromyWord {
        MonodromyWord::from_letters(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, &(t, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", t.name())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixOverflow;

impl fmt::Display for MatrixOverflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("matrix entry overflow")
    }
}

impl core::error::Error for MatrixOverflow {}

/// `[[a, b], [c, d]]` with determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl SL2Matrix {
    pub const IDENTITY: SL2Matrix = SL2Matrix { a: 1, b: 0, c: 0, d: 1 };
    pub const T_A: SL2Matrix = SL2Matrix { a: 1, b: 1, c: 0, d: 1 };
    pub const T_B: SL2Matrix = SL2Matrix { a: 1, b: 0, c: -1, d: 1 };

    pub fn twist(t: Twist) -> SL2Matrix {
        match t {
            Twist::A => SL2Matrix::T_A,
            Twist::B => SL2Matrix::T_B,
        }
    }

    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == SL2Matrix::IDENTITY
    }

    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn checked_mul(&self, o: &SL2Matrix) -> Result<SL2Matrix, MatrixOverflow> {
        let dot = |x: i128, y: i128, z: i128, w: i128| -> Result<i128, MatrixOverflow> {
            x.checked_mul(y)
                .and_then(|p| z.checked_mul(w).and_then(|q| p.checked_add(q)))
                .ok_or(MatrixOverflow)
        };
        Ok(SL2Matrix {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    /// `t^e` in closed form.
    pub fn twist_power(t: Twist, e: i64) -> SL2Matrix {
        let e = i128::from(e);
        match t {
            Twist::A => SL2Matrix { a: 1, b: e, c: 0, d: 1 },
            Twist::B => SL2Matrix { a: 1, b: 0, c: -e, d: 1 },
        }
    }
}

/// Product of the letter matrices, left to right.
pub fn to_matrix(w: &MonodromyWord) -> Result<SL2Matrix, MatrixOverflow> {
    w.letters
        .iter()
        .try_fold(SL2Matrix::IDENTITY, |m, &(t, e)| {
            m.checked_mul(&SL2Matrix::twist_power(t, e))
        })
}

/// Whether the word is the identity of the mapping class group.
pub fn is_identity_factorization(w: &MonodromyWord) -> Result<bool, MatrixOverflow> {
    to_matrix(w).map(|m| m.is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberType {
    Fishtail,
    Necklace(u32),
    NotRecognized,
}

impl FiberType {
    /// Euler number of the singular fiber, when recognized.
    pub fn euler(self) -> Option<u64> {
        match self {
            FiberType::Fishtail => Some(1),
            FiberType::Necklace(k) => Some(u64::from(k)),
            FiberType::NotRecognized => None,
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::Fishtail => f.write_str("I1 (fishtail)"),
            FiberType::Necklace(k) => write!(f, "I{k} (necklace)"),
            FiberType::NotRecognized => f.write_str("not recognized"),
        }
    }
}

/// Recognizes `u · t^k · u⁻¹` syntactically, with a matrix cross-check.
pub fn recognize_fiber(segment: &MonodromyWord) -> FiberType {
    let l = &segment.letters;
    let n = l.len();
    if n % 2 == 0 {
        return FiberType::NotRecognized;
    }
    let m = n / 2;
    let palindromic = (0..m).all(|i| l[i].0 == l[n - 1 - i].0 && l[i].1 == -l[n - 1 - i].1);
    if !palindromic {
        return FiberType::NotRecognized;
    }
    let k = l[m].1;
    let kind = match k {
        1 | -1 => FiberType::Fishtail,
        k if k >= 2 => match u32::try_from(k) {
            Ok(k) => FiberType::Necklace(k),
            Err(_) => return FiberType::NotRecognized,
        },
        _ => return FiberType::NotRecognized,
    };
    match to_matrix(segment) {
        Ok(mat) if mat.trace() == 2 && !mat.is_identity() => kind,
        _ => FiberType::NotRecognized,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonodromyError {
    NotGlobalMonodromy,
    Overflow,
}

impl fmt::Display for MonodromyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyError::NotGlobalMonodromy => f.write_str("not a global monodromy"),
            MonodromyError::Overflow => f.write_str("matrix entry overflow"),
        }
    }
}

impl core::error::Error for MonodromyError {}

impl From<MatrixOverflow> for MonodromyError {
    fn from(_: MatrixOverflow) -> Self {
        MonodromyError::Overflow
    }
}

/// A monodromy word cut into fiber segments.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    pub segments: Vec<MonodromyWord>,
}

impl Factorization {
    pub fn new(segments: Vec<MonodromyWord>) -> Self {
        Factorization { segments }
    }

    pub fn word(&self) -> MonodromyWord {
        MonodromyWord::product(&self.segments)
    }

    pub fn fibers(&self) -> Vec<FiberType> {
        self.segments.iter().map(recognize_fiber).collect()
    }

    /// Counts of each recognized fiber kind, keyed by Euler number.
    pub fn fiber_census(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for f in self.fibers() {
            match f {
                FiberType::Fishtail => *out.entry(1).or_insert(0) += 1,
                FiberType::Necklace(k) => *out.entry(k).or_insert(0) += 1,
                FiberType::NotRecognized => {}
            }
        }
        out
    }

    /// Euler number of the total space: recognized segments contribute
    /// their fiber's Euler number, other segments their twist count.
    pub fn euler_number(&self) -> Result<u64, MonodromyError> {
        if !is_identity_factorization(&self.word())? {
            return Err(MonodromyError::NotGlobalMonodromy);
        }
        Ok(self
            .segments
            .iter()
            .map(|s| recognize_fiber(s).euler().unwrap_or_else(|| s.twist_count()))
            .sum())
    }
}

/// `(t_a t_b)^{6n}`.
pub fn elliptic_monodromy(n: u32) -> MonodromyWord {
    MonodromyWord::from_positive("ab").unwrap().pow(6 * i64::from(n))
}

/// The rewrite of `(t_a t_b)^6` with one `I_5` and seven fishtails.
pub fn i5_lemma_word() -> MonodromyWord {
    MonodromyWord::from_positive("ababaaabaabb").unwrap()
}

/// The same word cut into fibers: `t_a`, `t_b`, three conjugated fishtails,
/// `t_a^5`, and two more `t_b`.
pub fn i5_lemma_factorization() -> Factorization {
    use MonodromyWord as W;
    let (a, b) = (W::a(1), W::b(1));
    Factorization::new(alloc::vec![
        a.clone(),
        b.clone(),
        b.conjugate(&a),
        W::a(5),
        b.conjugate(&W::a(-1)),
        b.clone(),
        a.conjugate(&W::b(-1)),
        b,
    ])
}

/// Shortest chain of positive words from `from` to `to` using the braid
/// relation `aba ↔ bab` on cyclic words (cyclic rotation conjugates by a
/// twist, so it preserves being a factorization of the identity).
///
/// Words are given as strings over `{a, b}`. Returns `None` when `to` is
/// unreachable.
pub fn braid_chain(from: &str, to: &str) -> Option<Vec<String>> {
    if from.len() != to.len() {
        return None;
    }
    let mut prev: BTreeMap<String, Option<String>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    prev.insert(from.into(), None);
    queue.push_back(String::from(from));
    while let Some(cur) = queue.pop_front() {
        if cur == to {
            let mut chain = alloc::vec![cur.clone()];
            let mut at = cur;
            while let Some(Some(p)) = prev.get(&at) {
                chain.push(p.clone());
                at = p.clone();
            }
            chain.reverse();
            return Some(chain);
        }
        for next in braid_neighbours(&cur) {
            if !prev.contains_key(&next) {
                prev.insert(next.clone(), Some(cur.clone()));
                queue.push_back(next);
            }
        }
    }
    None
}

fn braid_neighbours(w: &str) -> Vec<String> {
    let mut out = Vec::new();
    let bytes = w.as_bytes();
    let n = bytes.len();
    if n > 1 {
        let mut rot = String::from(&w[1..]);
        rot.push(bytes[0] as char);
        out.push(rot);
    }
    for i in 0..n.saturating_sub(2) {
        let tri = &w[i..i + 3];
        let rep = match tri {
            "aba" => "bab",
            "bab" => "aba",
            _ => continue,
        };
        let mut s = String::from(&w[..i]);
        s.push_str(rep);
        s.push_str(&w[i + 3..]);
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        let aba = MonodromyWord::from_positive("aba").unwrap();
        let bab = MonodromyWord::from_positive("bab").unwrap();
        assert_eq!(to_matrix(&aba).unwrap(), to_matrix(&bab).unwrap());
        assert!(is_identity_factorization(&elliptic_monodromy(1)).unwrap());
        assert!(is_identity_factorization(&MonodromyWord::identity()).unwrap());
        assert!(!is_identity_factorization(&MonodromyWord::a(1)).unwrap());
        let ab = to_matrix(&MonodromyWord::from_positive("ab").unwrap()).unwrap();
        assert_eq!(ab, SL2Matrix { a: 0, b: 1, c: -1, d: 1 });
    }

    #[test]
    fn lemma_word_and_its_fibers() {
        assert!(is_identity_factorization(&i5_lemma_word()).unwrap());
        let f = i5_lemma_factorization();
        assert_eq!(f.word(), i5_lemma_word());
        assert_eq!(f.euler_number().unwrap(), 12);
        let census = f.fiber_census();
        assert_eq!(census.get(&1), Some(&7));
        assert_eq!(census.get(&5), Some(&1));
    }

    #[test]
    fn braid_chain_reaches_lemma_word() {
        let chain = braid_chain("abababababab", "ababaaabaabb").unwrap();
        for w in &chain {
            let word = MonodromyWord::from_positive(w).unwrap();
            assert!(is_identity_factorization(&word).unwrap(), "{w}");
        }
    }

    #[test]
    fn homomorphism_properties() {
        let u = MonodromyWord::from_letters([(Twist::A, 3), (Twist::B, -2), (Twist::A, 1)]);
        let v = MonodromyWord::from_letters([(Twist::B, 5), (Twist::A, -1)]);
        let mu = to_matrix(&u).unwrap();
        let mv = to_matrix(&v).unwrap();
        assert_eq!(to_matrix(&u.mul(&v)).unwrap(), mu.checked_mul(&mv).unwrap());
        assert_eq!(to_matrix(&u.inverse()).unwrap(), mu.inverse());
        assert_eq!(mu.det(), 1);
    }

    #[test]
    fn fiber_recognition() {
        assert_eq!(recognize_fiber(&MonodromyWord::a(1)), FiberType::Fishtail);
        let ab = MonodromyWord::from_positive("ab").unwrap();
        assert_eq!(recognize_fiber(&MonodromyWord::a(5).conjugate(&ab)), FiberType::Necklace(5));
        assert_eq!(recognize_fiber(&ab), FiberType::NotRecognized);
        let c = MonodromyWord::a(5).conjugate(&ab);
        assert_eq!(to_matrix(&c).unwrap().trace(), 2);
        assert_eq!(MonodromyWord::a(1).conjugate(&MonodromyWord::identity()), MonodromyWord::a(1));
    }

    #[test]
    fn euler_counts() {
        let e1 = Factorization::new(alloc::vec![elliptic_monodromy(1)]);
        assert_eq!(e1.euler_number().unwrap(), 12);
        let e2 = Factorization::new(alloc::vec![elliptic_monodromy(2)]);
        assert_eq!(e2.euler_number().unwrap(), 24);
        let bad = Factorization::new(alloc::vec![MonodromyWord::a(1)]);
        assert_eq!(bad.euler_number(), Err(MonodromyError::NotGlobalMonodromy));
    }
}
