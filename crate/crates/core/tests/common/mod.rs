#![allow(dead_code)]

pub mod lemmas;
pub mod suites;

use desc_core::oracle::random::{random_instance_parts, random_restriction, Shape, TestRng};
use desc_core::oracle::{bounded_language, BoundedLanguage};
use desc_core::{
    default_coordinator, language_equal, minimize, sync_all, sync_product, Alphabet,
    CoordinatedPlant, Generator,
};
use rand::Rng;

pub fn alphabet(ctrl: &[&str], unctrl: &[&str]) -> Alphabet {
    Alphabet::from_sets(ctrl.iter().copied(), unctrl.iter().copied()).unwrap()
}

pub fn same(a: &Generator, b: &Generator) -> bool {
    language_equal(a, b).unwrap().holds
}

/// Production result truncated to `n` must equal the oracle's word set.
pub fn agrees(g: &Generator, oracle: &BoundedLanguage, n: usize) -> bool {
    bounded_language(g, n) == oracle.truncate(n)
}

pub struct Instance {
    pub plant: CoordinatedPlant,
    pub k: Generator,
}

/// Probability that a private event is also a coordinator event.
pub const P_PRIVATE_IN_K: f64 = 0.7;

/// Random plant with a conditionally decomposable specification. With
/// probability one half the coordinator is the default one.
pub fn instance(rng: &mut TestRng, shape: &Shape) -> Instance {
    let (g1, g2, gk, factors) = random_instance_parts(rng, shape, P_PRIVATE_IN_K);
    let gk = if rng.gen_bool(0.5) {
        default_coordinator(&g1, &g2, gk.alphabet()).unwrap()
    } else {
        gk
    };
    let plant = CoordinatedPlant::new(g1, g2, gk).unwrap();
    let k = if rng.gen_bool(0.3) {
        let [m1, m2, mk] = factors;
        sync_all(&[&m1, &m2, &mk]).unwrap()
    } else {
        another_spec(rng, &plant)
    };
    Instance { plant, k }
}

/// `M_1 ∥ M_2 ∥ M_k` with `M_i` a random restriction of `G_i ∥ G_k` and
/// `M_k` one of `G_k`; mostly controllable events are removed.
pub fn another_spec(rng: &mut TestRng, plant: &CoordinatedPlant) -> Generator {
    let gk = plant.gk();
    let m1 = random_restriction(rng, &sync_product(plant.g1(), gk).unwrap(), 0.85, 0.95);
    let m2 = random_restriction(rng, &sync_product(plant.g2(), gk).unwrap(), 0.85, 0.95);
    let mk = random_restriction(rng, gk, 0.85, 0.95);
    sync_all(&[&m1, &m2, &mk]).unwrap()
}

/// Whether every precondition of the distributed synthesis holds.
pub fn certified(p: &CoordinatedPlant, k: &Generator) -> bool {
    p.sup_cc_preconditions(k)
        .unwrap()
        .iter()
        .all(|(_, r)| r.holds)
}

/// At least three states after minimization.
pub fn nontrivial(g: &Generator) -> bool {
    minimize(g).state_count() >= 3
}

pub fn worked_example_alphabet() -> Alphabet {
    alphabet(&["a1", "a2", "c"], &["u", "u1", "u2"])
}

pub fn over(names: &[&str], words: &[&str]) -> Generator {
    let a = worked_example_alphabet().restrict(&desc_core::events(names.iter().copied()));
    Generator::from_words(a, words.iter().copied()).unwrap()
}
