//! `c₁² = 0` pipelines: Luttinger surgeries on `Σ × T²` summed with `E(1)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bridge::{bridge_moves, BridgePlan};
use super::{betti_one, is_torsion_vector, trivial_in_h1, ConstructionDossier};
use crate::coset::{enumerate, EnumBudget};
use crate::group::{check_hom, GroupHom, GroupPresentation, HomCheck, Word};
use crate::linalg::{abelian_invariants, is_dual_finite_torsion, AbelianInvariants};
use crate::surgery::catalog::{elliptic_surface, surface_times_torus, surface_times_torus_group};
use crate::surgery::{
    fiber_sum, luttinger_sequence, EmbeddedSurfaceData, Kodaira, ManifoldBlock, Minimality,
    SurgeryError,
};

fn a(g: usize) -> Word {
    Word::generator(2 * (g - 1))
}

fn b(g: usize) -> Word {
    Word::generator(2 * (g - 1) + 1)
}

fn handle_names(genus: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * genus + 2);
    for g in 1..=genus {
        names.push(format!("a{g}"));
        names.push(format!("b{g}"));
    }
    names.push("c".into());
    names.push("d".into());
    names
}

fn surface_relator(genus: usize) -> Word {
    let parts: Vec<Word> = (1..=genus).map(|g| Word::commutator(&a(g), &b(g))).collect();
    Word::product(&parts)
}

/// `[b_g⁻¹, d⁻¹]·a_g^{-p}`.
fn a_relator(g: usize, d: &Word, p: i64) -> Word {
    Word::commutator(&b(g).inverse(), &d.inverse()).mul(&a(g).pow(-p))
}

/// `[a_g⁻¹, d]·rhs⁻¹`.
fn b_relator(g: usize, d: &Word, rhs: &Word) -> Word {
    Word::commutator(&a(g).inverse(), d).mul(&rhs.inverse())
}

/// The torus `pt × T²` left over after surgery: its complement drops the
/// surface relator, which becomes the meridian.
fn fiber_torus(pi1: &GroupPresentation, genus: usize) -> EmbeddedSurfaceData {
    let surface = surface_relator(genus);
    let complement = GroupPresentation::new(
        pi1.generators().to_vec(),
        pi1.relators().iter().filter(|r| **r != surface).cloned(),
    )
    .expect("complement of the fiber torus");
    EmbeddedSurfaceData::new(
        1,
        0,
        complement,
        vec![Word::generator(2 * genus), Word::generator(2 * genus + 1)],
        surface,
    )
    .expect("fiber torus")
}

/// Closed group of `Y` from its surgered relators plus `[a_g,c]`, `[b_g,c]`,
/// the surface relator and `[c,d]`.
fn y_group(genus: usize, surgered: Vec<Word>) -> GroupPresentation {
    let c = Word::generator(2 * genus);
    let d = Word::generator(2 * genus + 1);
    let mut rels = surgered;
    for g in 1..=genus {
        rels.push(Word::commutator(&a(g), &c));
        rels.push(Word::commutator(&b(g), &c));
    }
    rels.push(surface_relator(genus));
    rels.push(Word::commutator(&c, &d));
    GroupPresentation::new(handle_names(genus), rels).expect("Y group")
}

fn y_block(label: String, genus: usize, surgered: Vec<Word>) -> ManifoldBlock {
    ManifoldBlock::new(label, 0, 0, y_group(genus, surgered))
        .with_minimal(Minimality::Yes("Luttinger surgery on a minimal manifold".into()))
        .with_kodaira(if genus == 1 { Kodaira::Zero } else { Kodaira::One })
}

fn sum_with_e1(y: &ManifoldBlock, genus: usize, label: String) -> Result<ManifoldBlock, SurgeryError> {
    let t = fiber_torus(&y.pi1, genus);
    let e1 = elliptic_surface(1);
    let fiber = EmbeddedSurfaceData::simply_connected_torus();
    let mut x = fiber_sum((y, &t), (&e1, &fiber), &[Word::identity(), Word::identity()], Some("Usher"))?;
    x.label = label;
    Ok(x)
}

fn check_params(g: usize, p: &[u32], q: &[u32]) -> Result<(), SurgeryError> {
    if g == 0 {
        return Err(SurgeryError::InvalidParameter("genus must be at least 1".into()));
    }
    if p.len() != g || q.len() != g {
        return Err(SurgeryError::InvalidParameter(format!(
            "need {g} values of p and q, got {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

fn param_label(p: &[u32], q: &[u32]) -> String {
    let parts: Vec<String> = p.iter().zip(q).map(|(x, y)| format!("1/{x},1/{y}")).collect();
    parts.join(",")
}

/// `Σ_g × T²` after the surgeries `(a_i′×c′, a_i′, −1/p_i)` and
/// `(b_i′×c″, b_i′, −1/q_i)`.
pub fn build_Yg(g: usize, p: &[u32], q: &[u32]) -> Result<ManifoldBlock, SurgeryError> {
    check_params(g, p, q)?;
    let start = surface_times_torus(g);
    let d = Word::generator(2 * g + 1);
    let meridians: Vec<Word> = (1..=g)
        .flat_map(|i| {
            [
                Word::commutator(&b(i).inverse(), &d.inverse()),
                Word::commutator(&a(i).inverse(), &d),
            ]
        })
        .collect();
    // [a_i, d] and [b_i, d] are the relators the meridians replace.
    let full = surface_times_torus_group(g);
    let dropped: Vec<Word> = (1..=g)
        .flat_map(|i| [Word::commutator(&a(i), &d), Word::commutator(&b(i), &d)])
        .collect();
    let base = GroupPresentation::new(
        full.generators().to_vec(),
        full.relators().iter().filter(|r| !dropped.contains(r)).cloned(),
    )?;
    let mut tori = Vec::with_capacity(2 * g);
    for i in 1..=g {
        tori.push((a(i), meridians[2 * (i - 1)].clone(), -i64::from(p[i - 1])));
        tori.push((b(i), meridians[2 * (i - 1) + 1].clone(), -i64::from(q[i - 1])));
    }
    let mut y = luttinger_sequence(&start, &base, &tori)?;
    y.label = format!("Y_{g}({})", param_label(p, q));
    y.minimal = Minimality::Yes("Luttinger surgery on a minimal manifold".into());
    y.kodaira = if g == 1 { Kodaira::Zero } else { Kodaira::One };
    Ok(y)
}

/// The torus `T` descending from `pt × T²` in `Y_g`.
pub fn yg_fiber_torus(y: &ManifoldBlock, g: usize) -> EmbeddedSurfaceData {
    fiber_torus(&y.pi1, g)
}

/// `Y_g(1/p, 1/q) #_T E(1)`.
pub fn build_Xg(g: usize, p: &[u32], q: &[u32]) -> Result<ConstructionDossier, SurgeryError> {
    let y = build_Yg(g, p, q)?;
    let x = sum_with_e1(&y, g, format!("X_{g}({})", param_label(p, q)))?;
    let mut d = ConstructionDossier::new(format!("xg g={g}"), x);
    d.check_numbers(12, -8, Some(0));
    let b1 = d.h1().free_rank as i64;
    d.check_b_plus(b1 + 1);
    let b_minus = d.invariants().map_or(-1, |i| i.b_minus);
    d.check("b-minus", b_minus == b1 + 9, format!("b- = {b_minus}, b1 = {b1}"));
    let orders: Vec<i64> = p.iter().chain(q).map(|&n| i64::from(n)).collect();
    d.check_h1("h1", &AbelianInvariants::of_cyclics(&orders));
    if p.iter().chain(q).all(|&n| n == 1) {
        let order = d.enumerate_order(1_000);
        d.check(
            "trivial-pi1",
            order == Some(1),
            format!("coset enumeration within 1000 cosets: {order:?}"),
        );
    } else if p.iter().all(|&n| n == 1) && q.iter().all(|&n| n == 0) {
        let s = &d.simplified;
        let ok = s.generator_count() == g && s.relator_count() == 0;
        let ev = format!(
            "simplified presentation has {} generators and {} relators",
            s.generator_count(),
            s.relator_count()
        );
        d.check("free-rank", ok, ev);
    } else {
        d.unchecked(
            "free-product",
            "free product of cyclic groups; only the abelianization is verified",
        );
    }
    let minimal = matches!(d.block.minimal, Minimality::Yes(_));
    d.check("minimal", minimal, "fiber sum of minimal pieces along a torus");
    d.check_geography();
    Ok(d)
}

fn relator_images(g: &GroupPresentation, images: &[Word]) -> Vec<Word> {
    g.relators().iter().map(|l| l.substitute(images)).collect()
}

/// `P_g = Π_j γ′_j^{m_gj}` with `m_gj` the exponent sum of `x_g` in `l_j`.
fn monomial(g: &GroupPresentation, gen: usize, gamma: &[Word]) -> Word {
    let parts: Vec<Word> = g
        .relators()
        .iter()
        .zip(gamma)
        .map(|(l, gm)| gm.pow(l.exponent_sum(gen)))
        .collect();
    Word::product(&parts)
}

fn bridge_words(plan: &BridgePlan, i: usize, skip_first: bool) -> Word {
    let gs: Vec<Word> = plan
        .bridges_of(i)
        .filter(|&g| !(skip_first && g == plan.relators[i].first_bridge))
        .map(b)
        .collect();
    Word::product(&gs)
}

fn sign(c: usize) -> i64 {
    if c % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `X(G)` for a dual-finite-torsion presentation: relator curves made
/// embedded by bridges, surgered, and the result summed with `E(1)`.
pub fn build_XG(group: &GroupPresentation) -> Result<ConstructionDossier, SurgeryError> {
    let k = group.generator_count();
    let b_images: Vec<Word> = (1..=k).map(b).collect();
    let gammas = relator_images(group, &b_images);
    let plan = bridge_moves(group.relators(), k)?;
    let kp = plan.total_genus;
    let d = Word::generator(2 * kp + 1);
    let gamma_p: Vec<Word> = (0..gammas.len())
        .map(|i| gammas[i].mul(&bridge_words(&plan, i, false)))
        .collect();
    let mut rels = Vec::new();
    for g in 1..=k {
        rels.push(a_relator(g, &d, 1));
        rels.push(b_relator(g, &d, &monomial(group, g - 1, &gamma_p)));
    }
    for g in k + 1..=kp {
        let i = plan.relator_of(g).expect("bridge belongs to a relator");
        let c = plan.c(g).expect("c(g) defined on bridges");
        rels.push(a_relator(g, &d, 1));
        rels.push(b_relator(g, &d, &gamma_p[i].mul(&b(g).pow(sign(c)))));
    }
    let y = y_block(format!("Y({k}, genus {kp})"), kp, rels);
    let x = sum_with_e1(&y, kp, format!("X(G), genus {kp}"))?;
    let mut dos = ConstructionDossier::new("xG", x);
    dos.note(format!(
        "bridge plan: base genus {k}, total genus {kp}, bridges per relator {:?}",
        plan.relators.iter().map(|r| r.bridges).collect::<Vec<_>>()
    ));
    dos.note("P_g uses m_gj = exponent sum of x_g in l_j (rows generators, columns relators)");
    if is_dual_finite_torsion(group) {
        dos.check("dual-finite-torsion", true, "exponent matrix has full column rank");
    } else {
        dos.unchecked(
            "dual-finite-torsion",
            "warning: the exponent matrix rank is below the relator count, so the hypothesis fails",
        );
    }
    dos.check_numbers(12, -8, Some(0));
    let b1g = betti_one(group);
    let b1x = betti_one(&dos.block.pi1);
    dos.check("b1", b1x == b1g, format!("b1(G') = {b1x}, b1(G) = {b1g}"));
    dos.check_b_plus(b1g + 1);
    let pi1 = &dos.block.pi1.clone();
    let m = pi1.exponent_matrix();
    let torsion = gamma_p.iter().all(|w| is_torsion_vector(&m, &pi1.exponent_vector(w)));
    dos.check("gamma-torsion", torsion, "each gamma' has finite order in H1");
    let killed = gammas.iter().all(|w| trivial_in_h1(pi1, w));
    dos.check("gamma-trivial", killed, "each gamma is trivial in H1");
    let odd = plan.relators.iter().all(|r| r.bridges % 2 == 1);
    dos.check("bridge-parity", odd, "every relator crosses an odd number of bridges");
    let mut images = vec![Word::identity(); pi1.generator_count()];
    for (j, img) in images.iter_mut().enumerate().take(2 * k) {
        if j % 2 == 1 {
            *img = Word::generator(j / 2);
        }
    }
    let level = GroupHom::new(pi1.clone(), group.clone(), images)
        .map(|h| check_hom(&h, EnumBudget::cosets(10_000)))
        .unwrap_or(HomCheck::Failed);
    dos.check("hom", level >= HomCheck::AbelianOnly, format!("G' -> G: {level}"));
    dos.check_geography();
    Ok(dos)
}

/// Variant for `⟨x₁..x_{k+m} | l₁..l_m⟩` with relators over `x₁..x_k`: the
/// first bridge of relator `i` carries `x_{k+i}` and its surgery coefficient
/// is zero, so `π₁` is `G` itself.
pub fn build_XG_moregen(group: &GroupPresentation) -> Result<ConstructionDossier, SurgeryError> {
    let n = group.generator_count();
    let m = group.relator_count();
    let k = group
        .relators()
        .iter()
        .filter_map(Word::max_generator)
        .max()
        .map_or(0, |g| g + 1);
    if n < k + m {
        return Err(SurgeryError::InvalidParameter(format!(
            "need at least {m} generators beyond x{k} not used by relators, found {}",
            n - k
        )));
    }
    let free = n - k - m;
    let base = k + free;
    // Handle h <= k carries x_h; k < h <= base carries x_{k+m+(h-k)}.
    let b_images: Vec<Word> = (1..=k).map(b).collect();
    let gammas = relator_images(group, &{
        let mut v = b_images.clone();
        v.resize(n, Word::identity());
        v
    });
    let plan = bridge_moves(group.relators(), base)?;
    let kp = plan.total_genus;
    let d = Word::generator(2 * kp + 1);
    let gamma_p: Vec<Word> = (0..m)
        .map(|i| gammas[i].mul(&bridge_words(&plan, i, true)))
        .collect();
    let mut rels = Vec::new();
    for g in 1..=base {
        rels.push(a_relator(g, &d, 1));
        let rhs = if g <= k {
            monomial(group, g - 1, &gamma_p)
        } else {
            Word::identity()
        };
        rels.push(b_relator(g, &d, &rhs));
    }
    for g in base + 1..=kp {
        let i = plan.relator_of(g).expect("bridge belongs to a relator");
        rels.push(a_relator(g, &d, 1));
        let rhs = if g == plan.relators[i].first_bridge {
            gamma_p[i].clone()
        } else {
            gamma_p[i].mul(&b(g).pow(sign(plan.c(g).expect("c(g)"))))
        };
        rels.push(b_relator(g, &d, &rhs));
    }
    let y = y_block(format!("Y({n}, genus {kp})"), kp, rels);
    let x = sum_with_e1(&y, kp, format!("X(G), genus {kp}"))?;
    let mut dos = ConstructionDossier::new("xG-moregen", x);
    dos.note(format!("base genus {base}, total genus {kp}"));
    dos.check_numbers(12, -8, Some(0));
    let b1g = betti_one(group);
    dos.check_b_plus(b1g + 1);
    let expected = abelian_invariants(group);
    dos.check_h1("h1", &expected);
    let pi1 = dos.block.pi1.clone();
    let mut images = vec![Word::identity(); pi1.generator_count()];
    for h in 1..=base {
        let x = if h <= k { h - 1 } else { k + m + (h - k) - 1 };
        images[2 * (h - 1) + 1] = Word::generator(x);
    }
    for (i, r) in plan.relators.iter().enumerate() {
        images[2 * (r.first_bridge - 1) + 1] = Word::generator(k + i);
    }
    let level = GroupHom::new(pi1, group.clone(), images)
        .map(|h| check_hom(&h, EnumBudget::cosets(10_000)))
        .unwrap_or(HomCheck::Failed);
    dos.check("hom", level >= HomCheck::AbelianOnly, format!("pi1 -> G: {level}"));
    if expected.free_rank == 0 {
        let ours = dos.enumerate_order(10_000);
        let theirs = enumerate(group, EnumBudget::cosets(10_000)).order().map(|n| n as u64);
        dos.check(
            "order",
            ours.is_some() && ours == theirs,
            format!("|pi1| = {ours:?}, |G| = {theirs:?}"),
        );
    } else {
        dos.unchecked("order", "G is infinite; only the abelianization is compared");
    }
    dos.check_geography();
    Ok(dos)
}
