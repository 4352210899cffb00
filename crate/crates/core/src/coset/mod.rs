//! Coset enumeration over the trivial subgroup.
//!
//! The strategy is HLT: every live coset has every relator scanned and
//! filled in order, then its row is completed. Deductions found along the
//! way are propagated by scanning the relator conjugates that start with the
//! deduced column, without defining new cosets. Coincidences are merged via
//! a forwarding array.

use alloc::vec::Vec;
use core::fmt;

use crate::group::{GroupPresentation, Word};
use crate::linalg::{abelian_invariants, AbelianInvariants};

const NONE: u32 = u32::MAX;
const MAX_DEDUCTIONS: usize = 1 << 16;

/// Hard limits for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    /// Largest number of simultaneously live cosets.
    pub max_cosets: usize,
    /// Largest number of coset definitions overall.
    pub max_definitions: usize,
}

impl EnumBudget {
    /// Panics if either bound is zero.
    pub fn new(max_cosets: usize, max_definitions: usize) -> Self {
        assert!(max_cosets > 0 && max_definitions > 0, "budget bounds must be positive");
        EnumBudget {
            max_cosets,
            max_definitions,
        }
    }

    pub fn cosets(max_cosets: usize) -> Self {
        EnumBudget::new(max_cosets, max_cosets.saturating_mul(10))
    }
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget::cosets(200_000)
    }
}

/// A complete coset table: `2k` columns, generator `g` at `2g` and its
/// inverse at `2g + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetTable({} cosets, {} columns)", self.order(), self.columns)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableDefect {
    Undefined { coset: usize, column: usize },
    InverseMismatch { coset: usize, column: usize },
    RelatorOpen { coset: usize, relator: usize },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDefect::Undefined { coset, column } => {
                write!(f, "entry ({coset}, {column}) undefined")
            }
            TableDefect::InverseMismatch { coset, column } => {
                write!(f, "entry ({coset}, {column}) has no matching inverse entry")
            }
            TableDefect::RelatorOpen { coset, relator } => {
                write!(f, "relator {relator} does not close at coset {coset}")
            }
        }
    }
}

#[inline]
fn column_of(l: crate::group::Letter) -> usize {
    2 * l.generator() + usize::from(l.is_inverse())
}

#[inline]
fn inverse_column(c: usize) -> usize {
    c ^ 1
}

impl CosetTable {
    pub fn order(&self) -> usize {
        if self.columns == 0 {
            1
        } else {
            self.entries.len() / self.columns
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn image(&self, coset: usize, column: usize) -> usize {
        self.entries[coset * self.columns + column] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(coset, |c, &l| self.image(c, column_of(l)))
    }

    /// Whether `w` is the identity of the enumerated group.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.columns == 0 || self.trace(0, w) == 0
    }

    /// Independent check of closure, inverse consistency and relator closure.
    pub fn verify(&self, p: &GroupPresentation) -> Result<(), TableDefect> {
        if p.generator_count() * 2 != self.columns {
            return Err(TableDefect::Undefined {
                coset: 0,
                column: self.columns,
            });
        }
        let n = self.order();
        for c in 0..n {
            for col in 0..self.columns {
                let t = self.entries[c * self.columns + col];
                if t == NONE || t as usize >= n {
                    return Err(TableDefect::Undefined { coset: c, column: col });
                }
                if self.image(t as usize, inverse_column(col)) != c {
                    return Err(TableDefect::InverseMismatch { coset: c, column: col });
                }
            }
        }
        for (ri, r) in p.relators().iter().enumerate() {
            for c in 0..n {
                if self.trace(c, r) != c {
                    return Err(TableDefect::RelatorOpen {
                        coset: c,
                        relator: ri,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Result of [`enumerate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumOutcome {
    Finite { order: usize, table: CosetTable },
    BudgetExceeded,
}

impl EnumOutcome {
    pub fn order(&self) -> Option<usize> {
        match self {
            EnumOutcome::Finite { order, .. } => Some(*order),
            EnumOutcome::BudgetExceeded => None,
        }
    }
}

struct Overflow;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    definitions: usize,
    budget: EnumBudget,
    relators: Vec<Vec<usize>>,
    /// For each column, the relator conjugates that begin with it.
    conjugates: Vec<Vec<Vec<usize>>>,
    deductions: Vec<(u32, usize)>,
    deductions_lost: bool,
}

impl Enumerator {
    fn new(p: &GroupPresentation, budget: EnumBudget) -> Self {
        let cols = 2 * p.generator_count();
        let relators: Vec<Vec<usize>> = p
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|&l| column_of(l)).collect())
            .collect();
        let mut conjugates: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new(); cols];
        for r in &relators {
            let inv: Vec<usize> = r.iter().rev().map(|&c| inverse_column(c)).collect();
            for base in [r, &inv] {
                for k in 0..base.len() {
                    let mut rot = base[k..].to_vec();
                    rot.extend_from_slice(&base[..k]);
                    let slot = &mut conjugates[rot[0]];
                    if !slot.contains(&rot) {
                        slot.push(rot);
                    }
                }
            }
        }
        let mut e = Enumerator {
            cols,
            table: alloc::vec![NONE; cols],
            forward: alloc::vec![0],
            live: 1,
            definitions: 0,
            budget,
            relators,
            conjugates,
            deductions: Vec::new(),
            deductions_lost: false,
        };
        e.forward[0] = 0;
        e
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < MAX_DEDUCTIONS {
            self.deductions.push((c, x));
        } else {
            self.deductions_lost = true;
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflow> {
        if self.live >= self.budget.max_cosets || self.definitions >= self.budget.max_definitions {
            return Err(Overflow);
        }
        let n = self.forward.len() as u32;
        self.forward.push(n);
        self.table.extend(core::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.definitions += 1;
        self.set(c, x, n);
        self.set(n, inverse_column(x), c);
        self.push_deduction(c, x);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut cur = c;
        while self.forward[cur as usize] != root {
            let next = self.forward[cur as usize];
            self.forward[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.forward[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let xi = inverse_column(x);
                if self.get(f, xi) == e {
                    self.set(f, xi, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != NONE {
                    self.merge(f1, t, &mut queue);
                } else {
                    let s = self.get(f1, xi);
                    if s != NONE {
                        self.merge(e1, s, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                        self.push_deduction(e1, x);
                    }
                }
            }
        }
    }

    /// Traces `w` at `c` from both ends. With `fill`, gaps are closed by
    /// defining new cosets.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Overflow> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inverse_column(w[j as usize])) != NONE {
                b = self.get(b, inverse_column(w[j as usize]));
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, inverse_column(w[i]), f);
                self.push_deduction(f, w[i]);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[x].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = core::mem::take(&mut self.conjugates[x][k]);
                let _ = self.scan(c, &w, false);
                self.conjugates[x][k] = w;
            }
        }
    }

    fn pass(&mut self) -> Result<(), Overflow> {
        let mut c = 0u32;
        while (c as usize) < self.forward.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = core::mem::take(&mut self.relators[r]);
                let res = self.scan(c, &w, true);
                self.relators[r] = w;
                res?;
                self.process_deductions();
            }
            for x in 0..self.cols {
                if !self.is_live(c) {
                    break;
                }
                if self.get(c, x) == NONE {
                    self.define(c, x)?;
                    self.process_deductions();
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(&self) -> CosetTable {
        let n = self.forward.len();
        let mut index = alloc::vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.forward[c] == c as u32 {
                index[c] = next;
                next += 1;
            }
        }
        let mut entries = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if self.forward[c] != c as u32 {
                continue;
            }
            for x in 0..self.cols {
                let t = self.table[c * self.cols + x];
                entries.push(if t == NONE { NONE } else { index[t as usize] });
            }
        }
        CosetTable {
            columns: self.cols,
            entries,
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of the group presented by `p`.
pub fn enumerate(p: &GroupPresentation, budget: EnumBudget) -> EnumOutcome {
    if p.generator_count() == 0 {
        return EnumOutcome::Finite {
            order: 1,
            table: CosetTable {
                columns: 0,
                entries: Vec::new(),
            },
        };
    }
    let mut e = Enumerator::new(p, budget);
    // A pass that leaves a table failing verification is repeated; each
    // repeat only adds information, and the budget bounds the total work.
    for _ in 0..64 {
        if e.pass().is_err() {
            return EnumOutcome::BudgetExceeded;
        }
        let table = e.compact();
        if table.verify(p).is_ok() {
            return EnumOutcome::Finite {
                order: table.order(),
                table,
            };
        }
    }
    EnumOutcome::BudgetExceeded
}

/// Certifies that `p` presents `ℤ/p × ℤ/q`.
///
/// A group of order `pq` whose abelianization also has order `pq` equals its
/// abelianization, so an enumerated order plus matching invariants suffices.
pub fn certify_product_of_cyclics(
    pres: &GroupPresentation,
    p: u64,
    q: u64,
    budget: EnumBudget,
) -> bool {
    assert!(p >= 1 && q >= 1, "cyclic orders must be positive");
    let expected = AbelianInvariants::of_cyclics(&[p as i64, q as i64]);
    if abelian_invariants(pres) != expected {
        return false;
    }
    matches!(enumerate(pres, budget).order(), Some(n) if n as u64 == p * q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{orbifold_group, parse_presentation};

    fn order(text: &str) -> Option<usize> {
        enumerate(&parse_presentation(text).unwrap(), EnumBudget::default()).order()
    }

    #[test]
    fn small_examples() {
        assert_eq!(order("<x | x^5>"), Some(5));
        assert_eq!(order("< | >"), Some(1));
        assert_eq!(order("<x, y | x^2, y^3, [x, y]>"), Some(6));
        assert_eq!(order("<x, y | x^3, y^2, x y x y^-1>"), Some(6));
        assert_eq!(order("<a, c | c, a c>"), Some(1));
    }

    #[test]
    fn orbifold_orders() {
        let b = EnumBudget::default();
        assert_eq!(enumerate(&orbifold_group(&[2, 3, 3]), b).order(), Some(12));
        assert_eq!(enumerate(&orbifold_group(&[2, 3, 4]), b).order(), Some(24));
        assert_eq!(enumerate(&orbifold_group(&[2, 3, 5]), b).order(), Some(60));
        for m in 2..=10 {
            assert_eq!(enumerate(&orbifold_group(&[2, 2, m]), b).order(), Some(2 * m as usize));
        }
    }

    #[test]
    fn infinite_group_hits_budget() {
        let p = parse_presentation("<x, y | [x, y]>").unwrap();
        assert_eq!(enumerate(&p, EnumBudget::cosets(500)), EnumOutcome::BudgetExceeded);
    }

    #[test]
    fn table_verifies_and_is_deterministic() {
        let p = orbifold_group(&[2, 3, 4]);
        let a = enumerate(&p, EnumBudget::default());
        let b = enumerate(&p, EnumBudget::default());
        assert_eq!(a, b);
        if let EnumOutcome::Finite { table, .. } = a {
            assert!(table.verify(&p).is_ok());
        }
    }

    #[test]
    fn product_of_cyclics() {
        let b = EnumBudget::default();
        let p = parse_presentation("<x, y | x^3, y^2, [x, y]>").unwrap();
        assert!(certify_product_of_cyclics(&p, 3, 2, b));
        let p = parse_presentation("<x, y | x^3, y^3, [x, y]>").unwrap();
        assert!(!certify_product_of_cyclics(&p, 9, 1, b));
        assert!(certify_product_of_cyclics(&GroupPresentation::trivial(), 1, 1, b));
    }
}
