//! Building blocks with their embedded surfaces, Lagrangian tori and
//! elliptic fibration data.
//!
//! Homology classes of rational elliptic surfaces are written in the basis
//! `H, E₁, …, E₉` with intersection form `diag(1, −1, …, −1)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::block::{Invariants, Kodaira, ManifoldBlock, Minimality};
use super::data::{EmbeddedSurfaceData, LagrangianTorusData};
use crate::group::{parse_presentation, parse_word, GroupPresentation, Word};

pub type Class = [i64; 10];

/// `H` coefficient and `(i, c)` pairs meaning `c·E_i`.
pub fn class(h: i64, exceptional: &[(usize, i64)]) -> Class {
    let mut c = [0; 10];
    c[0] = h;
    for &(i, k) in exceptional {
        assert!((1..=9).contains(&i), "exceptional index out of range");
        c[i] += k;
    }
    c
}

pub fn pairing(a: &Class, b: &Class) -> i64 {
    a[0] * b[0] - (1..10).map(|i| a[i] * b[i]).sum::<i64>()
}

/// The fiber class `3H − E₁ − … − E₉` of `E(1)`.
pub fn fiber_class() -> Class {
    let mut c = [-1; 10];
    c[0] = 3;
    c
}

/// An `I_k` fiber: a cycle of `k` spheres, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Necklace {
    pub components: usize,
    pub classes: Option<Vec<Class>>,
}

impl Necklace {
    /// Whether components `i` and `j` are neighbours in the cycle.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let k = self.components;
        i != j && ((i + 1) % k == j || (j + 1) % k == i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub square: i64,
    pub class: Option<Class>,
    /// For each necklace, the component this section meets.
    pub meets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationData {
    pub name: String,
    /// The fibration lives on `E(n)`.
    pub n: u32,
    pub necklaces: Vec<Necklace>,
    pub sections: Vec<Section>,
    /// Euler numbers of all singular fibers.
    pub singular_fibers: Vec<u32>,
    /// Fishtails whose vanishing cycle is the class `a`.
    pub class_a_fishtails: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogDefect {
    pub entry: String,
    pub message: String,
}

impl fmt::Display for CatalogDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.entry, self.message)
    }
}

impl core::error::Error for CatalogDefect {}

impl FibrationData {
    pub fn self_check(&self) -> Result<(), String> {
        let total: u64 = self.singular_fibers.iter().map(|&e| u64::from(e)).sum();
        if total != 12 * u64::from(self.n) {
            return Err(format!("singular fibers have Euler number {total}, expected {}", 12 * self.n));
        }
        let fishtails = self.singular_fibers.iter().filter(|&&e| e == 1).count();
        if self.class_a_fishtails > fishtails {
            return Err("more class-a fishtails than fishtails".into());
        }
        let mut pool: BTreeMap<u32, usize> = BTreeMap::new();
        for &e in &self.singular_fibers {
            *pool.entry(e).or_default() += 1;
        }
        for (k, nk) in self.necklaces.iter().enumerate() {
            let slot = pool.get_mut(&(nk.components as u32)).filter(|c| **c > 0);
            match slot {
                Some(c) => *c -= 1,
                None => return Err(format!("necklace {k} has no matching singular fiber")),
            }
            if nk.components < 2 {
                return Err(format!("necklace {k} has fewer than two components"));
            }
            if let Some(classes) = &nk.classes {
                check_necklace_classes(k, nk, classes)?;
            }
        }
        for (s, sec) in self.sections.iter().enumerate() {
            if sec.square != -i64::from(self.n) {
                return Err(format!("section {s} has square {}, expected {}", sec.square, -i64::from(self.n)));
            }
            if sec.meets.len() != self.necklaces.len() {
                return Err(format!("section {s} lists {} incidences", sec.meets.len()));
            }
            for (k, nk) in self.necklaces.iter().enumerate() {
                if sec.meets[k] >= nk.components {
                    return Err(format!("section {s} meets a missing component of necklace {k}"));
                }
            }
            if let Some(c) = &sec.class {
                if pairing(c, c) != sec.square {
                    return Err(format!("section {s} class has square {}", pairing(c, c)));
                }
                if pairing(c, &fiber_class()) != 1 {
                    return Err(format!("section {s} does not meet the fiber once"));
                }
                for (k, nk) in self.necklaces.iter().enumerate() {
                    if let Some(classes) = &nk.classes {
                        for (j, comp) in classes.iter().enumerate() {
                            let expected = i64::from(sec.meets[k] == j);
                            if pairing(c, comp) != expected {
                                return Err(format!(
                                    "section {s} pairs {} with component {j} of necklace {k}",
                                    pairing(c, comp)
                                ));
                            }
                        }
                    }
                }
            }
        }
        for i in 0..self.sections.len() {
            for j in i + 1..self.sections.len() {
                if let (Some(a), Some(b)) = (&self.sections[i].class, &self.sections[j].class) {
                    if pairing(a, b) != 0 {
                        return Err(format!("sections {i} and {j} intersect"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_necklace_classes(k: usize, nk: &Necklace, classes: &[Class]) -> Result<(), String> {
    if classes.len() != nk.components {
        return Err(format!("necklace {k} lists {} classes", classes.len()));
    }
    for (i, c) in classes.iter().enumerate() {
        if pairing(c, c) != -2 {
            return Err(format!("component {i} of necklace {k} has square {}", pairing(c, c)));
        }
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let expected = if nk.components == 2 {
                2
            } else {
                i64::from(nk.adjacent(i, j))
            };
            let got = pairing(&classes[i], &classes[j]);
            if got != expected {
                return Err(format!(
                    "components {i} and {j} of necklace {k} pair to {got}, expected {expected}"
                ));
            }
        }
    }
    let mut sum = [0i64; 10];
    for c in classes {
        for (s, x) in sum.iter_mut().zip(c) {
            *s += x;
        }
    }
    if sum != fiber_class() {
        return Err(format!("components of necklace {k} do not sum to the fiber class"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub block: ManifoldBlock,
    pub surfaces: Vec<(String, EmbeddedSurfaceData)>,
    pub tori: Vec<(String, LagrangianTorusData)>,
    pub fibrations: Vec<FibrationData>,
}

impl CatalogEntry {
    pub fn surface(&self, name: &str) -> Option<&EmbeddedSurfaceData> {
        self.surfaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn torus(&self, name: &str) -> Option<&LagrangianTorusData> {
        self.tori.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn fibration(&self, name: &str) -> Option<&FibrationData> {
        self.fibrations.iter().find(|f| f.name == name)
    }

    pub fn self_check(&self) -> Result<(), CatalogDefect> {
        let defect = |message: String| CatalogDefect {
            entry: self.block.label.clone(),
            message,
        };
        let b = &self.block;
        Invariants::from_numbers(b.e, b.sigma, b.b1()).map_err(|e| defect(e.to_string()))?;
        for f in &self.fibrations {
            let n = i64::from(f.n);
            if (b.e, b.sigma) != (12 * n, -8 * n) {
                return Err(defect(format!(
                    "fibration {} needs (e, sigma) = ({}, {})",
                    f.name,
                    12 * n,
                    -8 * n
                )));
            }
            f.self_check().map_err(|m| defect(format!("{}: {m}", f.name)))?;
        }
        for (name, s) in &self.surfaces {
            if s.images.len() != 2 * s.genus {
                return Err(defect(format!("surface {name} has the wrong number of images")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.block.label == label)
    }

    pub fn self_check(&self) -> Result<(), CatalogDefect> {
        let mut seen = BTreeMap::new();
        for e in &self.entries {
            if seen.insert(e.block.label.clone(), ()).is_some() {
                return Err(CatalogDefect {
                    entry: e.block.label.clone(),
                    message: "duplicate label".into(),
                });
            }
            e.self_check()?;
        }
        Ok(())
    }

    pub fn builtin() -> Catalog {
        let mut entries = vec![elliptic_entry(1), elliptic_entry(2), t2_s2_entry()];
        for g in 1..=3 {
            entries.push(surface_times_torus_entry(g));
        }
        entries.push(t4_two_blowups_entry());
        entries.push(z_double_prime_entry());
        entries.push(t2_s2_blowups_entry(4));
        entries.push(t2_s2_blowups_entry(3));
        Catalog { entries }
    }
}

fn pres(text: &str) -> GroupPresentation {
    parse_presentation(text).expect("catalog presentation")
}

fn word(p: &GroupPresentation, text: &str) -> Word {
    parse_word(text, p.generators()).expect("catalog word")
}

fn surface(p: &GroupPresentation, genus: usize, self_int: i64, images: &[&str], meridian: &str) -> EmbeddedSurfaceData {
    let images = images.iter().map(|w| word(p, w)).collect();
    EmbeddedSurfaceData::new(genus, self_int, p.clone(), images, word(p, meridian))
        .expect("catalog surface")
}

pub fn elliptic_surface(n: u32) -> ManifoldBlock {
    let n64 = i64::from(n);
    let (minimal, kodaira) = match n {
        1 => (Minimality::No, Kodaira::NegInfinity),
        2 => (Minimality::Yes("K3 surface".into()), Kodaira::Zero),
        _ => (Minimality::Yes("elliptic surface without multiple fibers".into()), Kodaira::One),
    };
    ManifoldBlock::new(format!("E({n})"), 12 * n64, -8 * n64, GroupPresentation::trivial())
        .with_minimal(minimal)
        .with_kodaira(kodaira)
}

fn elliptic_entry(n: u32) -> CatalogEntry {
    let fibrations = match n {
        1 => vec![e1_i5_first(), e1_i5_second(), e1_i4(), generic(1)],
        2 => vec![e2_i6(), generic(2)],
        _ => vec![generic(n)],
    };
    CatalogEntry {
        block: elliptic_surface(n),
        surfaces: vec![("fiber".into(), EmbeddedSurfaceData::simply_connected_torus())],
        tori: Vec::new(),
        fibrations,
    }
}

fn sections_from_classes(classes: &[Class], necklace: &[Class]) -> Vec<Section> {
    classes
        .iter()
        .map(|c| Section {
            square: pairing(c, c),
            class: Some(*c),
            meets: vec![necklace.iter().position(|k| pairing(c, k) == 1).unwrap_or(usize::MAX)],
        })
        .collect()
}

fn exceptional(i: usize) -> Class {
    class(0, &[(i, 1)])
}

fn with_fishtails(necklaces: &[u32], fishtails: usize) -> Vec<u32> {
    let mut v = necklaces.to_vec();
    v.extend(core::iter::repeat_n(1, fishtails));
    v
}

/// `E(1)` with an `I₅` fiber from a pencil through a triangle of lines.
fn e1_i5_first() -> FibrationData {
    let comps = vec![
        class(1, &[(1, -1), (6, -1), (7, -1)]),
        class(1, &[(2, -1), (8, -1), (9, -1)]),
        class(0, &[(2, 1), (5, -1)]),
        class(1, &[(1, -1), (2, -1), (3, -1)]),
        class(0, &[(1, 1), (4, -1)]),
    ];
    let secs: Vec<Class> = (3..=9).map(exceptional).collect();
    FibrationData {
        name: "I5-first".into(),
        n: 1,
        sections: sections_from_classes(&secs, &comps),
        necklaces: vec![Necklace {
            components: 5,
            classes: Some(comps),
        }],
        singular_fibers: with_fishtails(&[5], 7),
        class_a_fishtails: 0,
    }
}

/// `E(1)` with an `I₅` fiber from a nodal cubic with a fivefold tangency.
fn e1_i5_second() -> FibrationData {
    let comps = vec![
        class(0, &[(1, 1), (2, -1)]),
        class(0, &[(2, 1), (3, -1)]),
        class(0, &[(3, 1), (4, -1)]),
        class(0, &[(4, 1), (5, -1)]),
        class(3, &[(1, -2), (2, -1), (3, -1), (4, -1), (6, -1), (7, -1), (8, -1), (9, -1)]),
    ];
    let secs: Vec<Class> = (5..=9).map(exceptional).collect();
    FibrationData {
        name: "I5-second".into(),
        n: 1,
        sections: sections_from_classes(&secs, &comps),
        necklaces: vec![Necklace {
            components: 5,
            classes: Some(comps),
        }],
        singular_fibers: with_fishtails(&[5], 7),
        class_a_fishtails: 0,
    }
}

/// `E(1)` with an `I₄` fiber from a fourfold tangency; one section meets the
/// first component and five meet the fourth.
fn e1_i4() -> FibrationData {
    let comps = vec![
        class(0, &[(3, 1), (4, -1)]),
        class(0, &[(2, 1), (3, -1)]),
        class(0, &[(1, 1), (2, -1)]),
        class(3, &[(1, -2), (2, -1), (3, -1), (5, -1), (6, -1), (7, -1), (8, -1), (9, -1)]),
    ];
    let secs: Vec<Class> = (4..=9).map(exceptional).collect();
    FibrationData {
        name: "I4".into(),
        n: 1,
        sections: sections_from_classes(&secs, &comps),
        necklaces: vec![Necklace {
            components: 4,
            classes: Some(comps),
        }],
        singular_fibers: with_fishtails(&[4], 8),
        class_a_fishtails: 0,
    }
}

/// `E(2)` as the fiber sum of two `E(1)`s carrying `I₆ + 2I₂ + 2I₁`; the six
/// sections each meet a different component of each `I₆`.
fn e2_i6() -> FibrationData {
    FibrationData {
        name: "2I6".into(),
        n: 2,
        necklaces: vec![
            Necklace {
                components: 6,
                classes: None,
            },
            Necklace {
                components: 6,
                classes: None,
            },
        ],
        sections: (0..6)
            .map(|j| Section {
                square: -2,
                class: None,
                meets: vec![j, j],
            })
            .collect(),
        singular_fibers: with_fishtails(&[6, 6, 2, 2, 2, 2], 4),
        class_a_fishtails: 0,
    }
}

/// Generic fibration: only fishtails, half of them with vanishing cycle `a`.
fn generic(n: u32) -> FibrationData {
    let fishtails = 12 * n as usize;
    let sections = if n == 1 { 9 } else { 8 };
    FibrationData {
        name: "generic".into(),
        n,
        necklaces: Vec::new(),
        sections: (0..sections)
            .map(|_| Section {
                square: -i64::from(n),
                class: None,
                meets: Vec::new(),
            })
            .collect(),
        singular_fibers: vec![1; fishtails],
        class_a_fishtails: fishtails / 2,
    }
}

/// Braided torus `T_p` in `T²×S²` in the class `p[T²×pt]`; its two circles
/// map to `b^p` and `c`.
pub fn braided_torus(p: u32) -> EmbeddedSurfaceData {
    let g = pres("<b, c | [b, c]>");
    EmbeddedSurfaceData::new(
        1,
        0,
        g,
        vec![Word::power_of(0, i64::from(p)), Word::generator(1)],
        Word::identity(),
    )
    .expect("braided torus")
}

fn t2_s2_entry() -> CatalogEntry {
    CatalogEntry {
        block: ManifoldBlock::new("T2xS2", 0, 0, pres("<x, y | [x, y]>"))
            .with_minimal(Minimality::Yes("ruled surface".into()))
            .with_kodaira(Kodaira::NegInfinity),
        surfaces: (2..=6).map(|p| (format!("T_{p}"), braided_torus(p))).collect(),
        tori: Vec::new(),
        fibrations: Vec::new(),
    }
}

/// Relators of `π₁(Σ_g × T²)` on `a1, b1, …, ag, bg, c, d`.
pub fn surface_times_torus_group(g: usize) -> GroupPresentation {
    let mut names: Vec<String> = Vec::new();
    for i in 1..=g {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    names.push("c".into());
    names.push("d".into());
    let c = Word::generator(2 * g);
    let d = Word::generator(2 * g + 1);
    let mut rels = Vec::new();
    let mut surface = Word::identity();
    for i in 0..g {
        let (a, b) = (Word::generator(2 * i), Word::generator(2 * i + 1));
        surface = surface.mul(&Word::commutator(&a, &b));
        for x in [&a, &b] {
            rels.push(Word::commutator(x, &c));
            rels.push(Word::commutator(x, &d));
        }
    }
    rels.push(surface);
    rels.push(Word::commutator(&c, &d));
    GroupPresentation::new(names, rels).expect("surface group")
}

pub fn surface_times_torus(g: usize) -> ManifoldBlock {
    let label = if g == 1 { "T4".to_string() } else { format!("Sigma{g}xT2") };
    let kodaira = match g {
        0 => Kodaira::NegInfinity,
        1 => Kodaira::Zero,
        _ => Kodaira::One,
    };
    ManifoldBlock::new(label, 0, 0, surface_times_torus_group(g))
        .with_minimal(Minimality::Yes("product of a surface and a torus".into()))
        .with_kodaira(kodaira)
}

fn surface_times_torus_entry(g: usize) -> CatalogEntry {
    let block = surface_times_torus(g);
    let p = &block.pi1;
    // The torus pt × T² has complement with the surface relator as meridian.
    let surface_rel = p.relators()[4 * g].clone();
    let complement = GroupPresentation::new(
        p.generators().to_vec(),
        p.relators().iter().filter(|r| **r != surface_rel).cloned(),
    )
    .expect("complement");
    let t = EmbeddedSurfaceData::new(
        1,
        0,
        complement,
        vec![Word::generator(2 * g), Word::generator(2 * g + 1)],
        surface_rel,
    )
    .expect("fiber torus");
    CatalogEntry {
        block,
        surfaces: vec![("pt x T2".into(), t)],
        tori: Vec::new(),
        fibrations: Vec::new(),
    }
}

fn t4_two_blowups_entry() -> CatalogEntry {
    let p = pres("<a, b, c, d | [a, b], [a, c], [a, d], [b, c], [b, d], [c, d]>");
    let block = ManifoldBlock::new("T4#2CP2bar", 2, -2, p.clone())
        .with_minimal(Minimality::No)
        .with_kodaira(Kodaira::Zero);
    // Tori a'×c' and b'×c'': their meridians [d, b^-1] and [a^-1, d] are
    // no longer relators of the complement.
    let complement = pres("<a, b, c, d | [a, b], [a, c], [b, c], [c, d]>");
    let tori = vec![
        (
            "a'xc'".to_string(),
            LagrangianTorusData::new(complement.clone(), word(&complement, "d a d^-1"), word(&complement, "[d, b^-1]"))
                .expect("torus"),
        ),
        (
            "b'xc''".to_string(),
            LagrangianTorusData::new(complement.clone(), word(&complement, "b"), word(&complement, "[a^-1, d]"))
                .expect("torus"),
        ),
    ];
    CatalogEntry {
        surfaces: vec![("Sigma2hat".into(), surface(&p, 2, 0, &["a", "b", "c", "d"], "1"))],
        block,
        tori,
        fibrations: Vec::new(),
    }
}

/// Complement of `Σ̄₂` in `Z''(1,1)`, with no extra generators and the
/// meridian kept as the free generator `m`.
pub fn z_double_prime_complement() -> GroupPresentation {
    pres("<al1, al2, al3, al4, m | al3 = [al1^-1, al4^-1], al4 = [al1, al3^-1], [al2, al3], [al2, al4]>")
}

fn z_double_prime_entry() -> CatalogEntry {
    let closed = pres(
        "<al1, al2, al3, al4 | al3 = [al1^-1, al4^-1], al4 = [al1, al3^-1], [al2, al3], [al2, al4], [al1, al2] [al3^2, al4]>",
    );
    let block = ManifoldBlock::new("Z''(1,1)", 1, -1, closed)
        .with_minimal(Minimality::Unknown)
        .with_kodaira(Kodaira::Unknown);
    let c = z_double_prime_complement();
    CatalogEntry {
        block,
        surfaces: vec![("Sigma2bar".into(), surface(&c, 2, 0, &["al1", "al2", "al3^2", "al4"], "m"))],
        tori: Vec::new(),
        fibrations: Vec::new(),
    }
}

/// `(T²×S²)#kCP̄²` for `k = 4` or `3`, each with a genus-2 surface of square
/// zero whose complement group is `ℤ²`.
fn t2_s2_blowups_entry(k: i64) -> CatalogEntry {
    let (label, text, images): (&str, &str, [&str; 4]) = if k == 4 {
        ("T2xS2#4CP2bar", "<xp, yp | [xp, yp]>", ["xp", "yp", "xp^-1", "yp^-1"])
    } else {
        // Images of a2, b2, c2, d2.
        ("T2xS2#3CP2bar", "<x, y | [x, y]>", ["x^-2", "y^-1", "x", "y"])
    };
    let p = pres(text);
    let block = ManifoldBlock::new(label, k, -k, p.clone())
        .with_minimal(Minimality::No)
        .with_kodaira(Kodaira::NegInfinity);
    CatalogEntry {
        surfaces: vec![("Sigma2".into(), surface(&p, 2, 0, &images, "1"))],
        block,
        tori: Vec::new(),
        fibrations: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_passes_self_check() {
        let c = Catalog::builtin();
        c.self_check().unwrap();
        for n in 1..=2 {
            let e = c.get(&format!("E({n})")).unwrap();
            assert_eq!((e.block.e, e.block.sigma), (12 * n as i64, -8 * n as i64));
        }
    }

    #[test]
    fn i5_incidences() {
        let f = e1_i5_first();
        let meets: Vec<usize> = f.sections.iter().map(|s| s.meets[0]).collect();
        // E3..E9
        assert_eq!(meets, [3, 4, 2, 0, 0, 1, 1]);
        let f = e1_i5_second();
        let meets: Vec<usize> = f.sections.iter().map(|s| s.meets[0]).collect();
        assert_eq!(meets, [3, 4, 4, 4, 4]);
        let f = e1_i4();
        let meets: Vec<usize> = f.sections.iter().map(|s| s.meets[0]).collect();
        assert_eq!(meets, [0, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn self_check_catches_defects() {
        let mut f = e1_i5_first();
        f.necklaces[0].classes.as_mut().unwrap().swap(0, 2);
        assert!(f.self_check().is_err());

        let mut f = e1_i5_second();
        f.sections[0].meets[0] = 2;
        assert!(f.self_check().is_err());

        let mut f = e2_i6();
        f.singular_fibers.pop();
        assert!(f.self_check().is_err());

        let mut f = e1_i4();
        f.sections[1].square = -2;
        assert!(f.self_check().is_err());
    }

    #[test]
    fn elliptic_numbers_enforced() {
        let mut e = elliptic_entry(1);
        e.block.e = 13;
        e.block.sigma = -9;
        assert!(e.self_check().is_err());
    }

    #[test]
    fn z_double_prime_numbers() {
        let c = Catalog::builtin();
        let z = c.get("Z''(1,1)").unwrap();
        let inv = z.block.invariants().unwrap();
        assert_eq!((inv.b1, inv.b_plus, inv.b_minus), (2, 1, 2));
        let s = z.surface("Sigma2bar").unwrap();
        assert_eq!(s.genus, 2);
    }
}
