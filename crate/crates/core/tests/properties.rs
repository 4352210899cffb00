use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgcalc_core::constructions::{
    bridge_moves, build_XG, gluing_relators, recipe, run_recipe, solve_gluing, Certificate, ClaimStatus,
    RBD_RECIPES,
};
use surgcalc_core::group::Letter;
use surgcalc_core::linalg::{abelian_invariants, is_dual_finite_torsion};
use surgcalc_core::surgery::{rational_blowdown, Invariants, ManifoldBlock, MeridianCertificate};
use surgcalc_core::{GroupPresentation, Word};

fn certificate() -> MeridianCertificate {
    MeridianCertificate::TrivialInComplement("assumed".into())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn blowdown_lemma(chi in 1i64..30, extra in 0i64..40, p in 2u32..=9) {
        let b_plus = 2 * chi - 1;
        let b_minus = i64::from(p) - 1 + extra;
        let (e, sigma) = (2 + b_plus + b_minus, b_plus - b_minus);
        prop_assert_eq!((e + sigma).rem_euclid(4), 0);
        let before = ManifoldBlock::new("X", e, sigma, GroupPresentation::trivial());
        let after = rational_blowdown(&before, p, Some(&certificate())).unwrap();
        let d = i64::from(p) - 1;
        prop_assert_eq!(after.sigma - before.sigma, d);
        prop_assert_eq!(after.e - before.e, -d);
        prop_assert_eq!(after.c1_squared() - before.c1_squared(), d);
        prop_assert_eq!(after.chi_h(), before.chi_h());
        let (a, b) = (Invariants::from_numbers(e, sigma, 0).unwrap(), after.invariants().unwrap());
        prop_assert_eq!(a.b_plus, b.b_plus);
        prop_assert_eq!(a.b_minus - b.b_minus, d);
    }

    #[test]
    fn xpq_gluing_exponents(half in 0i64..100, q in 1i64..200) {
        let p = 2 * half + 1;
        prop_assume!(num_integer::gcd(p, 2 * q) == 1);
        let (a, d) = solve_gluing(p, q).unwrap();
        prop_assert_eq!(d * p - 2 * a * q, p * q - 1);
        let [r1, r2] = gluing_relators(p, q, a, d);
        prop_assert_eq!((r1.exponent_sum(0), r1.exponent_sum(1)), (p, 0));
        prop_assert_eq!((r2.exponent_sum(0), r2.exponent_sum(1)), (0, -q));
    }

    #[test]
    fn xpq_gluing_identity_in_a_d(p in 1i64..50, q in 1i64..50, a in -50i64..50, d in -50i64..50) {
        // The exponent sums do not depend on (a, d).
        let [r1, r2] = gluing_relators(p, q, a, d);
        prop_assert_eq!((r1.exponent_sum(0), r1.exponent_sum(1)), (p, 0));
        prop_assert_eq!((r2.exponent_sum(0), r2.exponent_sum(1)), (0, -q));
    }

    #[test]
    fn bridge_plans(words in prop::collection::vec(prop::collection::vec((0usize..4, any::<bool>()), 1..8), 1..4)) {
        let relators: Vec<Word> = words
            .iter()
            .map(|w| Word::from_letters(w.iter().map(|&(g, inv)| Letter::new(g, inv))))
            .filter(|w| !w.is_identity())
            .collect();
        prop_assume!(!relators.is_empty());
        let plan = bridge_moves(&relators, 4).unwrap();
        let mut next = 5;
        for (i, r) in plan.relators.iter().enumerate() {
            prop_assert_eq!(r.bridges % 2, 1);
            prop_assert!(r.bridges >= r.intersections);
            prop_assert_eq!(r.first_bridge, next);
            prop_assert_eq!(plan.relator_of(r.first_bridge), Some(i));
            next += r.bridges;
        }
        prop_assert_eq!(plan.total_genus, next - 1);
        for g in 1..=plan.total_genus + 2 {
            let mut best: Option<usize> = None;
            for r in &plan.relators {
                if g >= r.first_bridge {
                    let v = g + 1 - r.first_bridge;
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
            prop_assert_eq!(plan.c(g), best);
        }
    }
}

fn letter(rng: &mut ChaCha8Rng, k: usize) -> Letter {
    Letter::new(rng.gen_range(0..k), rng.gen_bool(0.5))
}

#[test]
fn xg_preserves_b1_on_random_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut tried = 0;
    while tried < 40 {
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let rels: Vec<Word> = (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=6);
                Word::from_letters((0..len).map(|_| letter(&mut rng, k)))
            })
            .collect();
        if rels.iter().any(Word::is_identity) {
            continue;
        }
        let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        let g = GroupPresentation::new(names, rels).unwrap();
        if !is_dual_finite_torsion(&g) {
            continue;
        }
        tried += 1;
        let d = build_XG(&g).unwrap();
        let b1g = abelian_invariants(&g).free_rank;
        assert_eq!(d.h1().free_rank, b1g, "{g}");
        assert_eq!(abelian_invariants(&d.block.pi1).free_rank, b1g, "{g}");
        assert!(d.claims.iter().all(|c| c.status != ClaimStatus::Fail), "{g}: {:?}", d.claims);
    }
}

#[test]
fn recipes_gain_and_chi() {
    for name in RBD_RECIPES {
        let r = recipe(name).unwrap();
        let d = run_recipe(&r).unwrap();
        let gain: i64 = r
            .blowdowns
            .iter()
            .map(|b| match &b.certificate {
                Certificate::DualSphere { chain, .. } => chain.len() as i64 + 1,
                Certificate::Matching => 1,
            })
            .sum();
        let n = i64::from(r.n);
        // c₁²(E(n)) = 0; each blow-up costs one.
        assert_eq!(d.block.c1_squared(), gain - r.blowups.len() as i64, "{name}");
        assert_eq!(d.block.chi_h(), Some(n), "{name}");
    }
}
