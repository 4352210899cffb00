//! Rational blowdown recipes on elliptic surfaces with sections summed into
//! spheres.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ConstructionDossier;
use crate::surgery::catalog::FibrationData;
use crate::surgery::{
    rational_blowdown, sum_sphere_groups, Catalog, MeridianCertificate, SphereChain, SurgeryError,
};

pub const RBD_RECIPES: [&str; 10] = [
    "z5_c2",
    "z4_c1_a",
    "z4_c1_b",
    "z4_c1_c",
    "z4_c2",
    "z4_c1_single",
    "z6_c3",
    "z2_c3_b3",
    "z3_c3_b3",
    "z2_c4_b3",
];

/// Why the meridian of a `C_p` configuration dies in its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The configuration is the summed sphere followed by `chain`, a run of
    /// components of an `I_k` fiber; `dual` is a further component meeting
    /// the last sphere once.
    DualSphere {
        necklace: usize,
        chain: Vec<usize>,
        dual: usize,
    },
    /// A `−4` sphere with a matching sphere between two fishtails whose
    /// vanishing cycles agree.
    Matching,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdBlowdown {
    /// Index of the summed sphere heading the configuration.
    pub sphere: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RbdExpected {
    pub e: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub b_plus: i64,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdRecipe {
    pub name: String,
    /// Works on `E(n)`.
    pub n: u32,
    pub fibration: String,
    /// Section indices summed into each sphere; all groups have size `p`.
    pub groups: Vec<Vec<usize>>,
    /// Summed spheres to blow up on, one blow-up per entry.
    pub blowups: Vec<usize>,
    pub blowdowns: Vec<RbdBlowdown>,
    pub expected: RbdExpected,
}

fn dual(necklace: usize, chain: &[usize], d: usize) -> Certificate {
    Certificate::DualSphere {
        necklace,
        chain: chain.to_vec(),
        dual: d,
    }
}

fn bd(sphere: usize, certificate: Certificate) -> RbdBlowdown {
    RbdBlowdown { sphere, certificate }
}

fn expected(e: i64, sigma: i64, c1sq: i64, b_plus: i64, order: u64) -> RbdExpected {
    RbdExpected {
        e,
        sigma,
        c1sq,
        b_plus,
        order,
    }
}

pub fn recipe(name: &str) -> Option<RbdRecipe> {
    let r = |n: u32, fib: &str, groups: Vec<Vec<usize>>, blowups: Vec<usize>, blowdowns, ex| RbdRecipe {
        name: name.into(),
        n,
        fibration: fib.into(),
        groups,
        blowups,
        blowdowns,
        expected: ex,
    };
    // Section indices refer to the fibration's section list: I5-first has
    // E3..E9, I5-second E5..E9, I4 E4..E9.
    Some(match name {
        "z5_c2" => r(1, "I5-second", vec![vec![0, 1, 2, 3, 4]], vec![], vec![bd(0, dual(0, &[3], 2))], expected(10, -6, 2, 1, 5)),
        "z4_c1_a" => r(1, "I5-first", vec![vec![0, 3, 4, 5]], vec![], vec![bd(0, dual(0, &[], 3))], expected(11, -7, 1, 1, 4)),
        "z4_c1_b" => r(1, "I5-first", vec![vec![0, 3, 4, 5]], vec![0], vec![bd(0, dual(0, &[3], 4))], expected(11, -7, 1, 1, 4)),
        "z4_c1_c" => r(1, "I5-second", vec![vec![0, 1, 2, 3]], vec![0, 0], vec![bd(0, dual(0, &[3, 2], 1))], expected(11, -7, 1, 1, 4)),
        "z4_c2" => r(
            1,
            "generic",
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            vec![],
            vec![bd(0, Certificate::Matching), bd(1, Certificate::Matching)],
            expected(10, -6, 2, 1, 4),
        ),
        "z4_c1_single" => r(
            1,
            "generic",
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            vec![],
            vec![bd(0, Certificate::Matching)],
            expected(11, -7, 1, 1, 4),
        ),
        "z6_c3" => r(1, "I4", vec![vec![0, 1, 2, 3, 4, 5]], vec![], vec![bd(0, dual(0, &[0, 1], 2))], expected(9, -5, 3, 1, 6)),
        "z2_c3_b3" => r(
            2,
            "2I6",
            vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            vec![],
            vec![bd(0, dual(0, &[], 0)), bd(1, dual(0, &[], 2)), bd(2, dual(0, &[], 4))],
            expected(21, -13, 3, 3, 2),
        ),
        "z3_c3_b3" => r(2, "2I6", vec![vec![0, 1, 2]], vec![], vec![bd(0, dual(0, &[2, 3], 4))], expected(21, -13, 3, 3, 3)),
        "z2_c4_b3" => r(
            2,
            "generic",
            vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]],
            vec![],
            (0..4).map(|i| bd(i, Certificate::Matching)).collect(),
            expected(20, -12, 4, 3, 2),
        ),
        _ => return None,
    })
}

fn invalid(msg: String) -> SurgeryError {
    SurgeryError::InvalidParameter(msg)
}

/// Checks a dual-sphere certificate and returns the configuration's `p`.
fn check_dual(
    fib: &FibrationData,
    group: &[usize],
    chosen: &BTreeSet<usize>,
    necklace: usize,
    chain: &[usize],
    d: usize,
) -> Result<u32, SurgeryError> {
    let nk = fib
        .necklaces
        .get(necklace)
        .ok_or_else(|| invalid(format!("no necklace {necklace}")))?;
    let k = nk.components;
    if chain.len() + 1 >= k || chain.iter().chain([&d]).any(|&c| c >= k) {
        return Err(invalid("chain does not fit in the necklace".into()));
    }
    let meets = |s: usize| fib.sections[s].meets[necklace];
    let chosen_on = |comp: usize| chosen.iter().filter(|&&s| meets(s) == comp).count();
    if let Some((&first, rest)) = chain.split_first() {
        let hits = group.iter().filter(|&&s| meets(s) == first).count();
        if hits != 1 {
            return Err(invalid(format!("component {first} meets {hits} sections of the group")));
        }
        if rest.iter().any(|&c| chosen_on(c) > 0) {
            return Err(invalid("a later chain component meets a chosen section".into()));
        }
        if chain.windows(2).any(|w| !nk.adjacent(w[0], w[1])) {
            return Err(invalid("chain components are not consecutive".into()));
        }
        let last = *chain.last().expect("nonempty chain");
        if chain.contains(&d) || !nk.adjacent(last, d) {
            return Err(invalid(format!("dual component {d} is not adjacent to {last}")));
        }
        if chosen_on(d) > 0 {
            return Err(invalid(format!("dual component {d} meets a chosen section")));
        }
        if chain[..chain.len() - 1].iter().any(|&c| nk.adjacent(c, d)) {
            return Err(invalid(format!("dual component {d} meets the chain twice")));
        }
    } else {
        let hits = group.iter().filter(|&&s| meets(s) == d).count();
        if hits != 1 || chosen_on(d) != 1 {
            return Err(invalid(format!("dual component {d} must meet exactly one chosen section")));
        }
    }
    Ok(chain.len() as u32 + 2)
}

pub fn run_recipe(r: &RbdRecipe) -> Result<ConstructionDossier, SurgeryError> {
    let catalog = Catalog::builtin();
    let entry = catalog
        .get(&format!("E({})", r.n))
        .ok_or_else(|| invalid(format!("no catalog entry E({})", r.n)))?;
    let fib = entry
        .fibration(&r.fibration)
        .ok_or_else(|| invalid(format!("no fibration {}", r.fibration)))?;
    let p = r.groups.first().map_or(0, Vec::len) as u32;
    let mut chosen = BTreeSet::new();
    for g in &r.groups {
        for &s in g {
            if s >= fib.sections.len() || !chosen.insert(s) {
                return Err(invalid(format!("section {s} missing or reused")));
            }
        }
    }
    let squares: Vec<Vec<i64>> = r
        .groups
        .iter()
        .map(|g| g.iter().map(|&s| fib.sections[s].square).collect())
        .collect();
    let start = entry.block.clone();
    let mut summed = sum_sphere_groups(&start, p, &squares)?;
    for &i in &r.blowups {
        summed = summed.blow_up_on_sphere(i)?;
    }
    let matching = r
        .blowdowns
        .iter()
        .filter(|b| b.certificate == Certificate::Matching)
        .count();
    if 2 * matching > fib.class_a_fishtails {
        return Err(invalid(format!(
            "{matching} matching spheres need {} fishtails with the same vanishing cycle, only {} available",
            2 * matching,
            fib.class_a_fishtails
        )));
    }
    let mut used_spheres = BTreeSet::new();
    let mut used_components = BTreeSet::new();
    let mut block = summed.block.clone();
    let mut gain = 0;
    for b in &r.blowdowns {
        if !used_spheres.insert(b.sphere) || b.sphere >= summed.spheres.len() {
            return Err(invalid(format!("sphere {} missing or reused", b.sphere)));
        }
        let group = &r.groups[b.sphere];
        let (cp, note) = match &b.certificate {
            Certificate::DualSphere { necklace, chain, dual } => {
                for &c in chain.iter().chain([dual]) {
                    if !used_components.insert((*necklace, c)) {
                        return Err(invalid(format!("component {c} used twice")));
                    }
                }
                let cp = check_dual(fib, group, &chosen, *necklace, chain, *dual)?;
                (cp, format!("dual -2 sphere: component {dual} of necklace {necklace}"))
            }
            Certificate::Matching => (2, "matching sphere between two class-a fishtails".into()),
        };
        let mut config = vec![summed.spheres[b.sphere]];
        config.extend(core::iter::repeat_n(-2, cp as usize - 2));
        if SphereChain::from_squares(&config).map(|c| c.p()) != Some(cp) {
            return Err(invalid(format!("configuration {config:?} is not C{cp}")));
        }
        block = rational_blowdown(&block, cp, Some(&MeridianCertificate::TrivialInComplement(note)))?;
        gain += i64::from(cp) - 1;
    }
    block.label = r.name.clone();
    let mut dos = ConstructionDossier::new(format!("rbd {}", r.name), block);
    let ex = r.expected;
    dos.check_numbers(ex.e, ex.sigma, Some(ex.c1sq));
    let before = summed.block.c1_squared();
    let after = dos.block.c1_squared();
    dos.check(
        "c1sq-gain",
        after - before == gain,
        format!("c1^2 rose by {} over blowdowns totalling {gain}", after - before),
    );
    let chi = (start.chi_h(), dos.block.chi_h());
    dos.check("chi-h", chi.0 == chi.1, format!("chi_h {:?} -> {:?}", chi.0, chi.1));
    dos.check_b_plus(ex.b_plus);
    let order = dos.enumerate_order(10_000);
    dos.check(
        "pi1",
        order == Some(ex.order),
        format!("|pi1| = {order:?}, expected {}", ex.order),
    );
    dos.check_geography();
    Ok(dos)
}

pub fn build_rbd_example(name: &str) -> Result<ConstructionDossier, SurgeryError> {
    let r = recipe(name).ok_or_else(|| invalid(format!("unknown recipe {name}")))?;
    run_recipe(&r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_recipes_pass() {
        for name in RBD_RECIPES {
            let d = build_rbd_example(name).unwrap();
            assert!(d.passed(), "{name}: {:?}", d.claims);
        }
    }

    #[test]
    fn named_tuples() {
        let d = build_rbd_example("z5_c2").unwrap();
        assert_eq!((d.block.e, d.block.sigma, d.block.c1_squared(), d.pi1_order), (10, -6, 2, Some(5)));
        let d = build_rbd_example("z2_c4_b3").unwrap();
        assert_eq!(d.invariants().unwrap().b_plus, 3);
        assert_eq!(d.pi1_order, Some(2));
    }

    #[test]
    fn infeasible_requests() {
        assert!(build_rbd_example("z7").is_err());
        let mut r = recipe("z2_c4_b3").unwrap();
        r.fibration = "2I6".into();
        r.groups = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        r.blowdowns.truncate(3);
        // 2I6 has no class-a fishtails recorded.
        assert!(run_recipe(&r).is_err());
        let mut r = recipe("z5_c2").unwrap();
        r.blowdowns[0].certificate = dual(0, &[3], 4);
        assert!(run_recipe(&r).is_err());
        let mut r = recipe("z4_c1_a").unwrap();
        r.blowdowns[0].certificate = dual(0, &[], 0);
        assert!(run_recipe(&r).is_err());
    }
}
