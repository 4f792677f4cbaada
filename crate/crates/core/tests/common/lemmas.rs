//! Randomized identity checks against the oracle at word length 8. Each
//! returns the number of instances checked and panics on a disagreement.

use std::collections::BTreeSet;

use super::{agrees, alphabet};
use desc_core::oracle::random::{
    random_alphabet, random_generator, random_scheme_alphabets, random_sublanguage, seeded, Shape,
};
use desc_core::oracle::{
    bounded_language, brute_controllability_violation, brute_extended_controllability_violation,
    brute_intersection, brute_inverse_project, brute_product, brute_project, erase, exact_project,
    BoundedLanguage,
};
use desc_core::{
    inverse_project, is_controllable, language_equal, language_subset, project_onto, sup_c,
    sync_product, CoordinatedPlant, EventSet, Generator, Word,
};
use rand::Rng;

const N: usize = 8;

pub fn projection_distributes_over_product(runs: u64) -> usize {
    for seed in 0..runs {
        let mut rng = seeded(seed);
        let shape = Shape::default();
        let (e1, e2, ek) = random_scheme_alphabets(&mut rng, &shape, 0.4);
        let g1 = random_generator(&mut rng, &e1, 4, 0.5);
        let g2 = random_generator(&mut rng, &e2, 4, 0.5);
        let k = ek.event_set();
        let k1: EventSet = e1.event_set().intersection(&k).cloned().collect();
        let k2: EventSet = e2.event_set().intersection(&k).cloned().collect();

        let lhs = project_onto(&sync_product(&g1, &g2).unwrap(), &k);
        let rhs = sync_product(&project_onto(&g1, &k1), &project_onto(&g2, &k2)).unwrap();
        assert!(language_equal(&lhs, &rhs).unwrap().holds, "seed {seed}");

        let o_lhs = exact_project(&[&g1, &g2], &k, N);
        let o_rhs = brute_product(
            &exact_project(&[&g1], &k1, N),
            &k1,
            &exact_project(&[&g2], &k2, N),
            &k2,
            N,
        );
        assert_eq!(o_lhs, o_rhs, "seed {seed}");
        assert!(agrees(&lhs, &o_lhs, N), "seed {seed}");
    }
    runs as usize
}

pub fn local_projection_of_product(runs: u64) -> usize {
    for seed in 0..runs {
        let mut rng = seeded(1000 + seed);
        let (e1, e2, _) = random_scheme_alphabets(&mut rng, &Shape::default(), 0.0);
        let g1 = random_generator(&mut rng, &e1, 4, 0.5);
        let g2 = random_generator(&mut rng, &e2, 4, 0.5);
        let k = e1.intersect(&e2);
        let ks = k.event_set();
        for (gi, gj, ei) in [(&g1, &g2, &e1), (&g2, &g1, &e2)] {
            let es = ei.event_set();
            let lhs = project_onto(&sync_product(&g1, &g2).unwrap(), &es);
            let seen = inverse_project(&project_onto(gj, &ks), ei).unwrap();
            let rhs = sync_product(gi, &seen).unwrap();
            assert!(language_equal(&lhs, &rhs).unwrap().holds, "seed {seed}");

            let o_lhs = exact_project(&[&g1, &g2], &es, N);
            let o_rhs = brute_intersection(
                &bounded_language(gi, N),
                &brute_inverse_project(&exact_project(&[gj], &ks, N), &ks, &es, N),
            );
            assert_eq!(o_lhs, o_rhs, "seed {seed}");
            assert!(agrees(&lhs, &o_lhs, N), "seed {seed}");
        }
    }
    runs as usize
}

pub fn product_with_own_projection(runs: u64) -> usize {
    let names = ["a", "b", "c", "u", "v"];
    for seed in 0..runs {
        let mut rng = seeded(2000 + seed);
        let e = random_alphabet(&mut rng, &names, 0.4);
        let g = random_generator(&mut rng, &e, 5, 0.5);
        let k: EventSet = e.events().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let p = project_onto(&g, &k);
        let back = sync_product(&g, &p).unwrap();
        assert!(language_equal(&back, &g).unwrap().holds, "seed {seed}");

        let lw = bounded_language(&g, N);
        let o = brute_product(&lw, &e.event_set(), &exact_project(&[&g], &k, N), &k, N);
        assert_eq!(o, lw, "seed {seed}");
    }
    runs as usize
}

pub fn extended_controllability_is_equivalent(runs: u64) -> usize {
    let names = ["a", "b", "u", "v"];
    let mut checked_failures = 0;
    for seed in 0..runs {
        let mut rng = seeded(3000 + seed);
        let e = random_alphabet(&mut rng, &names, 0.5);
        let eu = e.uncontrollable();
        let l = random_generator(&mut rng, &e, 5, 0.6);
        let k = random_sublanguage(&mut rng, &l, 0.7);
        let r = is_controllable(&k, &l, &eu).unwrap();
        let (kw, lw) = (bounded_language(&k, N), bounded_language(&l, N));
        let extended = brute_extended_controllability_violation(&kw, &lw, &eu);
        let literal = brute_controllability_violation(&kw, &lw, &eu);
        let expected = r.counterexample.clone().filter(|w| w.len() <= N);
        assert_eq!(literal, expected, "seed {seed}");
        assert_eq!(extended, expected, "seed {seed}");
        checked_failures += usize::from(!r.holds);
    }
    assert!(checked_failures > 0);
    runs as usize
}

pub fn controllability_is_transitive(runs: u64) -> usize {
    let names = ["a", "b", "u", "v"];
    for seed in 0..runs {
        let mut rng = seeded(4000 + seed);
        let e = random_alphabet(&mut rng, &names, 0.5);
        let eu = e.uncontrollable();
        let m = random_generator(&mut rng, &e, 5, 0.6);
        let l = sup_c(&random_sublanguage(&mut rng, &m, 0.8), &m, &eu).unwrap();
        let k = sup_c(&random_sublanguage(&mut rng, &l, 0.8), &l, &eu).unwrap();
        assert!(is_controllable(&l, &m, &eu).unwrap().holds);
        assert!(is_controllable(&k, &l, &eu).unwrap().holds);
        assert!(is_controllable(&k, &m, &eu).unwrap().holds, "seed {seed}");
        let (kw, mw) = (bounded_language(&k, N), bounded_language(&m, N));
        assert_eq!(
            brute_controllability_violation(&kw, &mw, &eu),
            None,
            "seed {seed}"
        );
    }
    runs as usize
}

pub fn coordinator_view_is_computed_locally(runs: u64) -> usize {
    for seed in 0..runs {
        let mut rng = seeded(5000 + seed);
        let (e1, e2, ek) = random_scheme_alphabets(&mut rng, &Shape::default(), 0.4);
        let g1 = random_generator(&mut rng, &e1, 4, 0.5);
        let g2 = random_generator(&mut rng, &e2, 4, 0.5);
        let gk = Generator::universal(ek.clone());
        let plant = CoordinatedPlant::new(g1.clone(), g2.clone(), gk).unwrap();
        let k = ek.event_set();
        let local = plant.coordinator_view_of_locals().unwrap();
        let global = project_onto(&sync_product(&g1, &g2).unwrap(), &k);
        assert!(
            language_equal(&local, &global).unwrap().holds,
            "seed {seed}"
        );

        let u1 = Generator::universal(e1.union(&ek).unwrap());
        let u2 = Generator::universal(e2.union(&ek).unwrap());
        let o_local = brute_intersection(
            &exact_project(&[&g1, &u1], &k, N),
            &exact_project(&[&g2, &u2], &k, N),
        );
        assert_eq!(o_local, exact_project(&[&g1, &g2], &k, N), "seed {seed}");
        assert!(agrees(&local, &o_local, N), "seed {seed}");
    }
    runs as usize
}

pub fn projections_bound_imply_product_bound(runs: u64) -> usize {
    let mut premise_held = 0;
    for seed in 0..(3 * runs) {
        let mut rng = seeded(6000 + seed);
        let (e1, e2, _) = random_scheme_alphabets(&mut rng, &Shape::default(), 0.0);
        let g1 = random_generator(&mut rng, &e1, 4, 0.6);
        let g2 = random_generator(&mut rng, &e2, 4, 0.6);
        let e = e1.union(&e2).unwrap();
        let a = if rng.gen_bool(0.5) {
            random_sublanguage(&mut rng, &sync_product(&g1, &g2).unwrap(), 0.7)
        } else {
            random_generator(&mut rng, &e, 3, 0.4)
        };
        let (s1, s2) = (e1.event_set(), e2.event_set());
        let premise = language_subset(&project_onto(&a, &s1), &g1).unwrap().holds
            && language_subset(&project_onto(&a, &s2), &g2).unwrap().holds;
        let aw = bounded_language(&a, N);
        let (l1, l2) = (bounded_language(&g1, N), bounded_language(&g2, N));
        let o_premise =
            brute_project(&aw, &s1).is_subset_of(&l1) && brute_project(&aw, &s2).is_subset_of(&l2);
        assert_eq!(premise, o_premise, "seed {seed}");
        if premise {
            premise_held += 1;
            let product = sync_product(&g1, &g2).unwrap();
            assert!(language_subset(&a, &product).unwrap().holds, "seed {seed}");
            assert!(
                aw.is_subset_of(&brute_product(&l1, &s1, &l2, &s2, N)),
                "seed {seed}"
            );
        }
    }
    premise_held
}

fn inverse_image_words(
    m: &BTreeSet<Word>,
    small: &EventSet,
    big: &EventSet,
    n: usize,
) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![Word::empty()];
    while let Some(w) = frontier.pop() {
        if w.len() < n {
            for e in big {
                frontier.push(w.pushed(e.clone()));
            }
        }
        if m.contains(&erase(&w, small)) {
            out.insert(w);
        }
    }
    out
}

fn prefix_closed(words: &BTreeSet<Word>) -> bool {
    words
        .iter()
        .all(|w| (0..w.len()).all(|i| words.contains(&w.prefix(i))))
}

pub fn prefix_closure_is_reflected_by_inverse_projection(runs: u64) -> usize {
    let big = alphabet(&["a", "b", "c"], &["u"]).event_set();
    let small: EventSet = ["a", "u"].into_iter().map(desc_core::Event::new).collect();
    let letters: Vec<_> = small.iter().cloned().collect();
    let (mut closed, mut open) = (0, 0);
    for seed in 0..(2 * runs) {
        let mut rng = seeded(7000 + seed);
        let mut m = BTreeSet::new();
        for _ in 0..rng.gen_range(1..5) {
            let len = rng.gen_range(0..4);
            let w: Word = (0..len)
                .map(|_| letters[rng.gen_range(0..letters.len())].clone())
                .collect();
            if rng.gen_bool(0.5) {
                for i in 0..=w.len() {
                    m.insert(w.prefix(i));
                }
            } else {
                m.insert(w);
            }
        }
        let inv = inverse_image_words(&m, &small, &big, 5);
        assert_eq!(prefix_closed(&m), prefix_closed(&inv), "seed {seed}");
        if prefix_closed(&m) {
            closed += 1;
            // generator-level inverse projection agrees with the word-level one
            let alpha = alphabet(&["a"], &["u"]);
            let words: Vec<String> = m.iter().map(|w| w.to_string().replace('ε', "")).collect();
            let g = Generator::from_words(alpha, words.iter().map(String::as_str)).unwrap();
            let lifted = inverse_project(&g, &alphabet(&["a", "b", "c"], &["u"])).unwrap();
            let lw = BoundedLanguage::new(5, inv);
            assert!(agrees(&lifted, &lw, 5), "seed {seed}");
        } else {
            open += 1;
        }
    }
    assert!(closed > 0 && open > 0, "closed {closed}, open {open}");
    closed + open
}
