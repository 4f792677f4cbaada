//! Randomized differential and theorem checks shared by the core tests and
//! the acceptance suite. Each panics on a failure and returns counts of the
//! instances it used.

use desc_core::oracle::random::{
    random_alphabet, random_generator, random_sublanguage, seeded, Shape,
};
use desc_core::oracle::{brute_observer_violation, brute_occ_violation, brute_sup_c_bounded};
use desc_core::{
    is_controllable, is_observer, is_occ, language_subset, language_union, sup_c, sync_product,
    Error, EventSet, Generator, ProjectionSpec,
};
use rand::Rng;

use super::{agrees, another_spec, certified, instance, nontrivial, same};

/// `sup_c` against the fixpoint oracle at word length `n`. Returns the
/// number of pairs and how many had a supremum with more than one word.
pub fn sup_c_matches_fixpoint(runs: u64, n: usize) -> (usize, usize) {
    let names = ["a", "b", "u", "v"];
    let mut nontrivial = 0;
    for seed in 0..runs {
        let mut rng = seeded(20_000 + seed);
        let e = random_alphabet(&mut rng, &names, 0.5);
        let eu = e.uncontrollable();
        let l = random_generator(&mut rng, &e, 4, 0.6);
        let k = if rng.gen_bool(0.5) {
            random_sublanguage(&mut rng, &l, 0.7)
        } else {
            random_generator(&mut rng, &e, 4, 0.6)
        };
        let s = sup_c(&k, &l, &eu).unwrap();
        let o = brute_sup_c_bounded(&k, &l, &eu, n);
        assert!(agrees(&s, &o, n), "seed {seed}");
        nontrivial += usize::from(o.len() > 1);
    }
    (runs as usize, nontrivial)
}

/// Observer and OCC checks against their definitions at word length `n`.
/// Returns the number of generators and the observer and OCC failure counts.
pub fn structural_checks_match_definitions(runs: u64, n: usize) -> (usize, usize, usize) {
    let names = ["a", "b", "c", "u", "v"];
    let (mut obs_fail, mut occ_fail) = (0, 0);
    for seed in 0..runs {
        let mut rng = seeded(30_000 + seed);
        let e = random_alphabet(&mut rng, &names, 0.4);
        let g = random_generator(&mut rng, &e, 5, 0.45);
        let target: EventSet = e.events().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let spec = ProjectionSpec::new(e.clone(), target.clone()).unwrap();

        let r = is_observer(&g, &spec).unwrap();
        let expected = r.counterexample.clone().filter(|w| w.len() <= n + 1);
        assert_eq!(
            brute_observer_violation(&g, &target, n),
            expected,
            "seed {seed}"
        );
        obs_fail += usize::from(!r.holds);

        let eu = e.uncontrollable();
        let r = is_occ(&g, &spec, &eu).unwrap();
        let expected = r.counterexample.clone().filter(|w| w.len() <= n);
        assert_eq!(
            brute_occ_violation(&g, &target, &eu, n),
            expected,
            "seed {seed}"
        );
        occ_fail += usize::from(!r.holds);
    }
    (runs as usize, obs_fail, occ_fail)
}

/// Distributed synthesis on random instances whose preconditions hold: the
/// result is controllable, below the global supremum, conditionally
/// controllable, and equal to the supremum when the optimality conditions
/// hold. Returns the number of instances used and how many had a result of
/// at least three states.
pub fn distributed_synthesis(runs: u64) -> (usize, usize) {
    let (mut used, mut interesting) = (0, 0);
    for seed in 0..runs {
        let mut rng = seeded(40_000 + seed);
        let inst = instance(&mut rng, &Shape::default());
        let (p, k) = (&inst.plant, &inst.k);
        if !certified(p, k) {
            assert!(matches!(
                p.sup_cc(k, false),
                Err(Error::Precondition { .. })
            ));
            continue;
        }
        used += 1;
        let eu = p.scheme().eu();
        let r = p.sup_cc(k, false).unwrap();
        assert!(r.certified);
        assert!(
            is_controllable(&r.composed, p.global(), &eu).unwrap().holds,
            "seed {seed}"
        );
        let global = sup_c(k, p.global(), &eu).unwrap();
        assert!(
            language_subset(&r.composed, &global).unwrap().holds,
            "seed {seed}"
        );
        assert!(
            p.conditionally_controllable(&r.composed).unwrap().holds,
            "seed {seed}"
        );
        if p.check_optimality_conditions().unwrap().holds {
            assert!(same(&r.composed, &global), "seed {seed}");
        }
        interesting += usize::from(nontrivial(&r.composed));
    }
    (used, interesting)
}

pub struct Achievement {
    /// Conditionally controllable specifications whose closed loops compose to K.
    pub achieved: usize,
    /// Distributed results found to be conditionally controllable.
    pub recovered: usize,
    /// Achieved specifications with at least three states.
    pub interesting: usize,
}

/// Supervisors for conditionally controllable specifications achieve them
/// exactly, and every distributed result is conditionally controllable.
pub fn conditionally_controllable_specifications_are_achieved(runs: u64) -> Achievement {
    let mut a = Achievement {
        achieved: 0,
        recovered: 0,
        interesting: 0,
    };
    for seed in 0..runs {
        let mut rng = seeded(50_000 + seed);
        let inst = instance(&mut rng, &Shape::default());
        let p = &inst.plant;
        if !p.conditionally_independent().unwrap().holds {
            continue;
        }
        let within = sync_product(&inst.k, p.global()).unwrap();
        let mut candidates = vec![within];
        if certified(p, &inst.k) {
            let k = p.sup_cc(&inst.k, false).unwrap().composed;
            assert!(
                p.conditionally_controllable(&k).unwrap().holds,
                "seed {seed}"
            );
            a.recovered += 1;
            candidates.push(k);
        }
        for k in candidates {
            if !p.conditionally_decomposable(&k).unwrap().holds
                || !p.conditionally_controllable(&k).unwrap().holds
            {
                assert!(p.synthesize_supervisors(&k).is_err());
                continue;
            }
            let sups = p.synthesize_supervisors(&k).unwrap();
            let loops = p.closed_loops(&sups).unwrap();
            assert!(same(&loops.composed, &k), "seed {seed}");
            a.achieved += 1;
            a.interesting += usize::from(nontrivial(&k));
        }
    }
    a
}

/// The union of two distributed results is conditionally controllable.
/// Returns the number of pairs checked and how many were distinct.
pub fn union_of_conditionally_controllable_languages(runs: u64) -> (usize, usize) {
    let (mut checked, mut distinct) = (0, 0);
    for seed in 0..runs {
        let mut rng = seeded(60_000 + seed);
        let a = instance(&mut rng, &Shape::default());
        let p = &a.plant;
        let other = another_spec(&mut rng, p);
        let ks: Vec<Generator> = [&a.k, &other]
            .into_iter()
            .filter(|k| certified(p, k))
            .map(|k| p.sup_cc(k, false).unwrap().composed)
            .collect();
        if ks.len() < 2 {
            continue;
        }
        let union = language_union(&ks[0], &ks[1]).unwrap();
        let r = p.conditionally_controllable(&union).unwrap();
        assert!(r.holds, "seed {seed}: {r}");
        checked += 1;
        distinct += usize::from(!same(&ks[0], &ks[1]));
    }
    (checked, distinct)
}
