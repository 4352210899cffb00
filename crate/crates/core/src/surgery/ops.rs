//! The four surgery operations plus blow-up.
//!
//! Every operation returns a new block; inputs are never modified.

use alloc::format;
use alloc::vec::Vec;

use super::block::{Invariants, ManifoldBlock, Minimality, SurgeryError};
use super::data::{EmbeddedSurfaceData, LagrangianTorusData, MeridianCertificate};
use crate::coset::{enumerate, EnumBudget};
use crate::group::{tietze_simplify, GroupPresentation, Word};
use crate::linalg::abelian_invariants;

/// `(Λ, λ, 1/m)` Luttinger surgery: `π₁` becomes the complement group
/// modulo `μ·λ′^m`, while `e`, `σ`, minimality and `κ` are unchanged.
pub fn luttinger_surgery(
    block: &ManifoldBlock,
    torus: &LagrangianTorusData,
    m: i64,
) -> Result<ManifoldBlock, SurgeryError> {
    let relator = torus.meridian.mul(&torus.lambda.pow(m));
    let pi1 = torus.complement.quotient_by(&[relator])?;
    let before = abelian_invariants(&block.pi1).free_rank;
    let after = abelian_invariants(&pi1).free_rank;
    if before.abs_diff(after) > 1 {
        return Err(SurgeryError::BettiJump { before, after });
    }
    Ok(ManifoldBlock {
        label: format!("{}(1/{m})", block.label),
        e: block.e,
        sigma: block.sigma,
        pi1,
        minimal: block.minimal.clone(),
        kodaira: block.kodaira,
    })
}

/// Successive Luttinger surgeries on tori `(λ′, μ, m)`.
///
/// `base` is the complement of all the tori. Before surgery `j`, the earlier
/// tori carry their surgered relators and the later ones their meridians.
pub fn luttinger_sequence(
    block: &ManifoldBlock,
    base: &GroupPresentation,
    tori: &[(Word, Word, i64)],
) -> Result<ManifoldBlock, SurgeryError> {
    let mut current = block.clone();
    for j in 0..tori.len() {
        let mut rels: Vec<Word> = tori[..j]
            .iter()
            .map(|(l, mu, m)| mu.mul(&l.pow(*m)))
            .collect();
        rels.extend(tori[j + 1..].iter().map(|(_, mu, _)| mu.clone()));
        let complement = base.quotient_by(&rels)?;
        let (l, mu, m) = &tori[j];
        let torus = LagrangianTorusData::new(complement, l.clone(), mu.clone())?;
        let label = current.label.clone();
        current = luttinger_surgery(&current, &torus, *m)?;
        current.label = label;
    }
    Ok(current)
}

/// Symplectic fiber sum along surfaces of equal genus and opposite square.
///
/// `gluing[i]` is the image, in the second complement, of the `i`-th surface
/// generator of the first surface. The meridians are identified with
/// opposite orientations.
pub fn fiber_sum(
    s1: (&ManifoldBlock, &EmbeddedSurfaceData),
    s2: (&ManifoldBlock, &EmbeddedSurfaceData),
    gluing: &[Word],
    minimal_provenance: Option<&str>,
) -> Result<ManifoldBlock, SurgeryError> {
    let ((b1, f1), (b2, f2)) = (s1, s2);
    if f1.genus != f2.genus {
        return Err(SurgeryError::GenusMismatch {
            left: f1.genus,
            right: f2.genus,
        });
    }
    if f1.self_int + f2.self_int != 0 {
        return Err(SurgeryError::SelfIntersectionSum(f1.self_int + f2.self_int));
    }
    if gluing.len() != 2 * f1.genus {
        return Err(SurgeryError::WrongImageCount {
            expected: 2 * f1.genus,
            found: gluing.len(),
        });
    }
    let offset = f1.complement.generator_count();
    if gluing
        .iter()
        .any(|w| w.max_generator().is_some_and(|g| g >= f2.complement.generator_count()))
    {
        return Err(SurgeryError::InvalidParameter(
            "gluing word outside the second complement".into(),
        ));
    }
    let product = f1.complement.free_product(&f2.complement);
    let mut extra: Vec<Word> = f1
        .images
        .iter()
        .zip(gluing)
        .map(|(a, b)| a.mul(&b.shifted(offset).inverse()))
        .collect();
    extra.push(f1.meridian.mul(&f2.meridian.shifted(offset)));
    let pi1 = product.quotient_by(&extra)?;
    let g = f1.genus as i64;
    Ok(ManifoldBlock {
        label: format!("{} # {}", b1.label, b2.label),
        e: b1.e + b2.e + 4 * g - 4,
        sigma: b1.sigma + b2.sigma,
        pi1,
        minimal: match minimal_provenance {
            Some(p) => Minimality::Yes(p.into()),
            None => Minimality::Unknown,
        },
        kodaira: super::Kodaira::Unknown,
    })
}

pub fn blow_up(block: &ManifoldBlock) -> ManifoldBlock {
    ManifoldBlock {
        label: format!("{} # CP2bar", block.label),
        e: block.e + 1,
        sigma: block.sigma - 1,
        pi1: block.pi1.clone(),
        minimal: Minimality::No,
        kodaira: block.kodaira,
    }
}

/// Replaces an embedded `C_p` by the rational ball `B_p`.
///
/// Only the case where the meridian of `C_p` dies in the complement is
/// modeled; there `π₁` is unchanged. Without a certificate the operation
/// is refused.
pub fn rational_blowdown(
    block: &ManifoldBlock,
    p: u32,
    certificate: Option<&MeridianCertificate>,
) -> Result<ManifoldBlock, SurgeryError> {
    if p < 2 {
        return Err(SurgeryError::InvalidParameter(format!("C_p needs p >= 2, got {p}")));
    }
    if certificate.is_none() {
        return Err(SurgeryError::MissingCertificate);
    }
    let d = i64::from(p) - 1;
    let out = ManifoldBlock {
        label: format!("{} - C{p}", block.label),
        e: block.e - d,
        sigma: block.sigma + d,
        pi1: block.pi1.clone(),
        minimal: Minimality::Unknown,
        kodaira: block.kodaira,
    };
    if out.chi_h() != block.chi_h() {
        return Err(SurgeryError::Inconsistent("chi_h changed".into()));
    }
    if out.c1_squared() != block.c1_squared() + d {
        return Err(SurgeryError::Inconsistent("c1^2 did not rise by p - 1".into()));
    }
    let b1 = block.b1();
    if let (Ok(a), Ok(b)) = (
        Invariants::from_numbers(block.e, block.sigma, b1),
        Invariants::from_numbers(out.e, out.sigma, b1),
    ) {
        if a.b_plus != b.b_plus {
            return Err(SurgeryError::Inconsistent("b+ changed".into()));
        }
    }
    Ok(out)
}

/// A block carrying the squares of the spheres produced by sphere summing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummedBlock {
    pub block: ManifoldBlock,
    pub spheres: Vec<i64>,
}

impl SummedBlock {
    /// Blow up at a point of sphere `index`, lowering its square by one.
    pub fn blow_up_on_sphere(&self, index: usize) -> Result<SummedBlock, SurgeryError> {
        if index >= self.spheres.len() {
            return Err(SurgeryError::InvalidParameter(format!("no sphere {index}")));
        }
        let mut spheres = self.spheres.clone();
        spheres[index] -= 1;
        Ok(SummedBlock {
            block: blow_up(&self.block),
            spheres,
        })
    }
}

fn is_trivial_group(p: &GroupPresentation) -> bool {
    if !abelian_invariants(p).is_trivial() {
        return false;
    }
    let s = tietze_simplify(p, 10_000).presentation;
    s.generator_count() == 0 || enumerate(&s, EnumBudget::cosets(10_000)).order() == Some(1)
}

/// Fiber sum with `T²×S²` along the braided torus `T_p`, gluing each group
/// of `p` sphere sections (squares given) into one sphere. `π₁` becomes
/// `ℤ/p`.
pub fn sum_sphere_groups(
    block: &ManifoldBlock,
    p: u32,
    groups: &[Vec<i64>],
) -> Result<SummedBlock, SurgeryError> {
    if p == 0 {
        return Err(SurgeryError::InvalidParameter("p must be positive".into()));
    }
    if groups.is_empty() {
        return Err(SurgeryError::InvalidParameter("no sphere groups".into()));
    }
    for g in groups {
        if g.len() != p as usize {
            return Err(SurgeryError::InvalidParameter(format!(
                "each group needs {p} spheres, got {}",
                g.len()
            )));
        }
        if g.iter().any(|&n| n > 0) {
            return Err(SurgeryError::InvalidParameter("sphere squares must be <= 0".into()));
        }
    }
    if !is_trivial_group(&block.pi1) {
        return Err(SurgeryError::NontrivialFundamentalGroup);
    }
    // Fiber sum along a fiber of the block with T_p in T²×S²; each group of
    // sections meets T_p in p points and closes up into one sphere.
    let t2s2 = ManifoldBlock::new("T2xS2", 0, 0, GroupPresentation::new(
        ["b", "c"],
        [Word::commutator(&Word::generator(0), &Word::generator(1))],
    )?);
    let tp = super::catalog::braided_torus(p);
    let fiber = EmbeddedSurfaceData::simply_connected_torus();
    let glued = fiber_sum((block, &fiber), (&t2s2, &tp), &tp.images, None)?;
    let pi1 = tietze_simplify(&glued.pi1, 100).presentation;
    Ok(SummedBlock {
        block: ManifoldBlock {
            label: format!("{} #_T{p} T2xS2", block.label),
            e: glued.e,
            sigma: glued.sigma,
            pi1,
            minimal: Minimality::Unknown,
            kodaira: block.kodaira,
        },
        spheres: groups.iter().map(|g| g.iter().sum()).collect(),
    })
}

/// Single-group form of [`sum_sphere_groups`].
pub fn sum_spheres(block: &ManifoldBlock, p: u32, squares: &[i64]) -> Result<SummedBlock, SurgeryError> {
    sum_sphere_groups(block, p, &[squares.to_vec()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_presentation;
    use crate::surgery::Kodaira;

    fn e1() -> ManifoldBlock {
        ManifoldBlock::new("E(1)", 12, -8, GroupPresentation::trivial())
    }

    #[test]
    fn luttinger_on_t4() {
        let t4 = parse_presentation("<x, y, z, w | [x,y], [x,z], [x,w], [y,z], [y,w], [z,w]>").unwrap();
        let block = ManifoldBlock::new("T4", 0, 0, t4).with_kodaira(Kodaira::Zero);
        let complement =
            parse_presentation("<x, y, z, w | [x,y], [x,z], [y,z], [y,w], [z,w]>").unwrap();
        let torus = LagrangianTorusData::new(
            complement.clone(),
            complement.gen("y"),
            Word::commutator(&complement.gen("x"), &complement.gen("w")),
        )
        .unwrap();
        let out = luttinger_surgery(&block, &torus, 1).unwrap();
        assert_eq!((out.e, out.sigma, out.kodaira), (0, 0, Kodaira::Zero));
        assert_eq!(block.b1() - out.b1(), 1);
        // m = 0 leaves the closed group unchanged.
        let same = luttinger_surgery(&block, &torus, 0).unwrap();
        assert_eq!(same.h1(), block.h1());
    }

    #[test]
    fn luttinger_rejects_jump() {
        let block = ManifoldBlock::new("Z2", 0, 0, parse_presentation("<x, y | [x,y]>").unwrap());
        let complement = parse_presentation("<x, y | >").unwrap();
        let torus = LagrangianTorusData::new(complement, Word::generator(1), Word::generator(0)).unwrap();
        assert!(luttinger_surgery(&block, &torus, 0).is_ok());
        let free = parse_presentation("<x, y, z | [x,y]>").unwrap();
        let torus = LagrangianTorusData::new(free, Word::identity(), Word::identity()).unwrap();
        let small = ManifoldBlock::new("pt", 0, 0, GroupPresentation::trivial());
        assert_eq!(
            luttinger_surgery(&small, &torus, 1),
            Err(SurgeryError::BettiJump { before: 0, after: 3 })
        );
    }

    #[test]
    fn fiber_sum_elliptic() {
        let t = EmbeddedSurfaceData::simply_connected_torus();
        let e2 = fiber_sum((&e1(), &t), (&e1(), &t), &[Word::identity(), Word::identity()], None).unwrap();
        assert_eq!((e2.e, e2.sigma), (24, -16));
        assert!(e2.h1().is_trivial());
    }

    #[test]
    fn fiber_sum_errors() {
        let t = EmbeddedSurfaceData::simply_connected_torus();
        let mut t1 = t.clone();
        t1.self_int = 1;
        assert_eq!(
            fiber_sum((&e1(), &t1), (&e1(), &t), &[Word::identity(), Word::identity()], None),
            Err(SurgeryError::SelfIntersectionSum(1))
        );
        let s2 = EmbeddedSurfaceData::new(2, 0, GroupPresentation::trivial(), alloc::vec![Word::identity(); 4], Word::identity()).unwrap();
        assert!(matches!(
            fiber_sum((&e1(), &t), (&e1(), &s2), &[Word::identity(), Word::identity()], None),
            Err(SurgeryError::GenusMismatch { .. })
        ));
    }

    #[test]
    fn genus_two_sum_adds_four() {
        let s = EmbeddedSurfaceData::new(2, 0, GroupPresentation::trivial(), alloc::vec![Word::identity(); 4], Word::identity()).unwrap();
        let a = ManifoldBlock::new("A", 3, -1, GroupPresentation::trivial());
        let b = ManifoldBlock::new("B", 5, -3, GroupPresentation::trivial());
        let ab = fiber_sum((&a, &s), (&b, &s), &alloc::vec![Word::identity(); 4], Some("Usher")).unwrap();
        let ba = fiber_sum((&b, &s), (&a, &s), &alloc::vec![Word::identity(); 4], None).unwrap();
        assert_eq!((ab.e, ab.sigma), (12, -4));
        assert_eq!((ab.e, ab.sigma), (ba.e, ba.sigma));
        assert_eq!(ab.minimal, Minimality::Yes("Usher".into()));
    }

    #[test]
    fn blow_ups() {
        let mut b = ManifoldBlock::new("T2xS2", 0, 0, parse_presentation("<x, y | [x,y]>").unwrap());
        for _ in 0..4 {
            let next = blow_up(&b);
            assert_eq!(next.c1_squared(), b.c1_squared() - 1);
            assert_eq!(next.pi1, b.pi1);
            b = next;
        }
        assert_eq!((b.e, b.sigma, b.minimal.clone()), (4, -4, Minimality::No));
    }

    #[test]
    fn blowdowns() {
        let cert = MeridianCertificate::TrivialInComplement("dual sphere".into());
        let x = rational_blowdown(&e1(), 2, Some(&cert)).unwrap();
        assert_eq!((x.e, x.sigma, x.c1_squared()), (11, -7, 1));
        let y = rational_blowdown(&e1(), 3, Some(&cert)).unwrap();
        assert_eq!((y.e, y.sigma, y.c1_squared()), (10, -6, 2));
        assert_eq!(rational_blowdown(&e1(), 3, None), Err(SurgeryError::MissingCertificate));
        assert!(rational_blowdown(&e1(), 1, Some(&cert)).is_err());
    }

    #[test]
    fn sphere_sums() {
        let s = sum_spheres(&e1(), 5, &[-1; 5]).unwrap();
        assert_eq!(s.spheres, [-5]);
        assert_eq!((s.block.e, s.block.sigma), (12, -8));
        assert_eq!(s.block.h1().torsion_i64(), [5]);
        assert_eq!(s.block.pi1.generator_count(), 1);

        let one = sum_spheres(&e1(), 1, &[-3]).unwrap();
        assert!(one.block.h1().is_trivial());
        assert_eq!(one.spheres, [-3]);

        let four = sum_spheres(&e1(), 4, &[-1; 4]).unwrap().blow_up_on_sphere(0).unwrap();
        assert_eq!((four.spheres[0], four.block.e, four.block.sigma), (-5, 13, -9));

        let t2 = ManifoldBlock::new("T2xS2", 0, 0, parse_presentation("<x, y | [x,y]>").unwrap());
        assert_eq!(sum_spheres(&t2, 2, &[-1, -1]), Err(SurgeryError::NontrivialFundamentalGroup));
        assert!(sum_spheres(&e1(), 2, &[-1]).is_err());
    }
}
