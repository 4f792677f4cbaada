//! Seeded random generators and coordination instances for property tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Event};
use crate::generator::Generator;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each named event is uncontrollable with probability `p_uncontrollable`.
pub fn random_alphabet(rng: &mut TestRng, names: &[&str], p_uncontrollable: f64) -> Alphabet {
    Alphabet::new(names.iter().map(|n| (*n, !rng.gen_bool(p_uncontrollable))))
        .expect("distinct names")
}

/// Between 1 and `max_states` states, all reachable through a random
/// spanning tree; each remaining (state, event) pair gets a transition with
/// probability `density`.
pub fn random_generator(
    rng: &mut TestRng,
    alphabet: &Alphabet,
    max_states: usize,
    density: f64,
) -> Generator {
    let n = rng.gen_range(1..=max_states.max(1));
    let states: Vec<String> = (0..n).map(|q| q.to_string()).collect();
    let events: Vec<&Event> = alphabet.events().collect();
    let mut used = std::collections::BTreeMap::new();
    if !events.is_empty() {
        for q in 1..n {
            let p = rng.gen_range(0..q);
            let e = events[rng.gen_range(0..events.len())];
            used.entry((p, e)).or_insert(q);
        }
    }
    for p in 0..n {
        for &e in &events {
            if !used.contains_key(&(p, e)) && rng.gen_bool(density) {
                used.insert((p, e), rng.gen_range(0..n));
            }
        }
    }
    let transitions: Vec<(String, String, String)> = used
        .into_iter()
        .map(|((p, e), q)| (states[p].clone(), e.name().to_string(), states[q].clone()))
        .collect();
    Generator::new(
        alphabet.clone(),
        &states,
        transitions,
        "0",
        Vec::<String>::new(),
    )
    .expect("well-formed by construction")
    .trim_accessible()
}

/// A sublanguage of `L(G)`: every transition is kept with probability `keep`.
pub fn random_sublanguage(rng: &mut TestRng, g: &Generator, keep: f64) -> Generator {
    random_restriction(rng, g, keep, keep)
}

/// A sublanguage of `L(G)` keeping controllable transitions with probability
/// `keep_controllable` and uncontrollable ones with `keep_uncontrollable`.
pub fn random_restriction(
    rng: &mut TestRng,
    g: &Generator,
    keep_controllable: f64,
    keep_uncontrollable: f64,
) -> Generator {
    if g.is_empty_language() {
        return g.clone();
    }
    let states: Vec<String> = (0..g.state_count()).map(|q| q.to_string()).collect();
    let transitions: Vec<(String, String, String)> = g
        .transitions()
        .filter(|(_, e, _)| {
            let p = match g.alphabet().is_controllable(e) {
                Some(false) => keep_uncontrollable,
                _ => keep_controllable,
            };
            rng.gen_bool(p)
        })
        .map(|(p, e, q)| (p.to_string(), e.name().to_string(), q.to_string()))
        .collect();
    Generator::new(
        g.alphabet().clone(),
        &states,
        transitions,
        &g.initial().to_string(),
        Vec::<String>::new(),
    )
    .expect("sub-automaton of a valid generator")
    .trim_accessible()
}

/// Size parameters for random instances.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: usize,
    /// Transition density of the plant components.
    pub density: f64,
    /// Transition density of the specification factors.
    pub factor_density: f64,
    pub p_uncontrollable: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_states: 5,
            density: 0.7,
            factor_density: 0.85,
            p_uncontrollable: 0.3,
        }
    }
}

/// Event sets of a random two-subsystem architecture: 1–2 shared events,
/// 1–2 private events per subsystem, and a coordinator alphabet containing
/// the shared events plus each private event with probability `p_private_in_k`.
pub fn random_scheme_alphabets(
    rng: &mut TestRng,
    shape: &Shape,
    p_private_in_k: f64,
) -> (Alphabet, Alphabet, Alphabet) {
    let shared_names: &[&str] = if rng.gen_bool(0.5) {
        &["s"]
    } else {
        &["s", "t"]
    };
    let p1: &[&str] = if rng.gen_bool(0.5) {
        &["a1"]
    } else {
        &["a1", "b1"]
    };
    let p2: &[&str] = if rng.gen_bool(0.5) {
        &["a2"]
    } else {
        &["a2", "b2"]
    };
    let all_names: Vec<&str> = shared_names.iter().chain(p1).chain(p2).copied().collect();
    let all = random_alphabet(rng, &all_names, shape.p_uncontrollable);
    let pick = |names: &[&str]| -> Alphabet {
        all.restrict(&names.iter().map(Event::new).collect())
    };
    let e1 = pick(&[shared_names, p1].concat());
    let e2 = pick(&[shared_names, p2].concat());
    let mut k_names: Vec<&str> = shared_names.to_vec();
    for n in p1.iter().chain(p2) {
        if rng.gen_bool(p_private_in_k) {
            k_names.push(n);
        }
    }
    let ek = pick(&k_names);
    (e1, e2, ek)
}

/// A random plant `(G1, G2, Gk)` and factors `[M_1, M_2, M_k]` over
/// `E_{1+k}`, `E_{2+k}`, `E_k`. Their product is a conditionally decomposable
/// specification; the caller composes it, keeping this module free of
/// production operations.
pub fn random_instance_parts(
    rng: &mut TestRng,
    shape: &Shape,
    p_private_in_k: f64,
) -> (Generator, Generator, Generator, [Generator; 3]) {
    let (e1, e2, ek) = random_scheme_alphabets(rng, shape, p_private_in_k);
    let e1k = e1.union(&ek).expect("consistent");
    let e2k = e2.union(&ek).expect("consistent");
    let g1 = random_generator(rng, &e1, shape.max_states, shape.density);
    let g2 = random_generator(rng, &e2, shape.max_states, shape.density);
    let gk = random_generator(rng, &ek, shape.max_states, shape.density.max(0.6));
    let factors = random_factors(rng, shape, [&e1k, &e2k, &ek]);
    (g1, g2, gk, factors)
}

/// Random generators over `E_{1+k}`, `E_{2+k}` and `E_k`, in that order.
pub fn random_factors(
    rng: &mut TestRng,
    shape: &Shape,
    alphabets: [&Alphabet; 3],
) -> [Generator; 3] {
    alphabets.map(|a| random_generator(rng, a, shape.max_states, shape.factor_density))
}
