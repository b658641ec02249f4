mod common;

use common::graded::{random_graded_complex, random_module};
use patchtower_core::graded::{
    cohomology_modules, ext_module, module_invariants, monomial_minimal_prime_heights, support_height_profile,
    verify_height_amplitude, GradedModule, Verdict,
};
use patchtower_core::rings::{graded_ring, Elem};
use rand::Rng;

#[test]
fn module_identities() {
    for seed in 0..60 {
        let mut rng = common::rng(seed);
        let s = graded_ring([2, 3][seed as usize % 2], 2).unwrap();
        let m = random_module(&mut rng, s);
        let inv = module_invariants(&m).unwrap();
        let Some(pd) = inv.projdim else {
            assert_eq!(inv.dim, -1);
            continue;
        };
        assert_eq!(inv.amplitude, Some(pd), "seed {seed}");
        assert_eq!(inv.depth.unwrap() + pd, s.q, "Auslander-Buchsbaum, seed {seed}");
        assert_eq!(inv.grade.unwrap() as i32 + inv.dim, s.q as i32, "seed {seed}");
        assert!(inv.grade.unwrap() <= pd);
        for i in 0..=s.q {
            let e = ext_module(&m, i as i32).unwrap();
            assert!(e.dim() <= (s.q - i) as i32, "dim Ext^{i}, seed {seed}");
        }
    }
}

#[test]
fn monomial_profiles_match_oracle() {
    let s = graded_ring(2, 3).unwrap();
    for seed in 0..40 {
        let mut rng = common::rng(1000 + seed);
        let count = rng.gen_range(1..=3);
        let exps: Vec<Vec<u32>> = (0..count).map(|_| (0..3).map(|_| rng.gen_range(0..=2)).collect()).collect();
        let gens: Vec<Elem> = exps.iter().map(|e| Elem::monomial(s, e.clone(), 1)).collect();
        let m = GradedModule::cyclic(s, &gens).unwrap();
        assert_eq!(support_height_profile(&m).unwrap(), monomial_minimal_prime_heights(3, &exps), "{exps:?}");
    }
}

#[test]
fn random_complexes_respect_height_bound() {
    let mut monomial_cases = 0;
    for seed in 0..40 {
        let mut rng = common::rng(2000 + seed);
        let s = graded_ring([2, 3][seed as usize % 2], 3).unwrap();
        let c = random_graded_complex(&mut rng, s);
        let r = verify_height_amplitude(&c).unwrap();
        assert_eq!(r.part_i.verdict, Verdict::Pass, "seed {seed}: {r:?}");
        if r.part_iii.applicable && r.part_iii.lower_vanishing {
            assert_eq!(r.part_iii.duality, Some(true), "seed {seed}");
        }
        let total = cohomology_modules(&c)
            .unwrap()
            .into_values()
            .fold(GradedModule::free(s, vec![]).unwrap(), |a, m| a.direct_sum(&m));
        let ann = total.annihilator_ideal();
        if ann.iter().all(|f| f.terms().len() == 1) {
            monomial_cases += 1;
            let exps: Vec<Vec<u32>> = ann.iter().map(|f| f.terms().keys().next().unwrap().clone()).collect();
            assert_eq!(r.height_profile, monomial_minimal_prime_heights(3, &exps), "seed {seed}");
        }
    }
    assert!(monomial_cases > 0);
}
