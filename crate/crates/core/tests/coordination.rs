mod common;

use common::{over, same, suites};
use desc_core::{default_coordinator, sup_c, CoordinatedPlant, Generator, Word};

fn worked_plant(ek: &[&str]) -> (CoordinatedPlant, Generator) {
    let g1 = over(&["a1", "c", "u", "u1"], &["c.u1", "a1.u"]);
    let g2 = over(&["a2", "c", "u", "u2"], &["c.u2", "a2.u"]);
    let k = over(
        &["a1", "a2", "c", "u", "u1", "u2"],
        &["a2.a1", "a1.a2.u", "c.u1.u2", "c.u2.u1"],
    );
    let ek = common::worked_example_alphabet().restrict(&desc_core::events(ek.iter().copied()));
    let gk = default_coordinator(&g1, &g2, &ek).unwrap();
    (CoordinatedPlant::new(g1, g2, gk).unwrap(), k)
}

#[test]
fn worked_example_end_to_end() {
    let (p, k) = worked_plant(&["a1", "a2", "c", "u"]);
    let pk = over(&["a1", "a2", "c", "u"], &["a2.a1", "c", "a1.a2.u"]);
    assert!(same(
        &desc_core::project_onto(&k, &p.scheme().ek().event_set()),
        &pk
    ));
    let p1k = over(&["a1", "a2", "c", "u", "u1"], &["a1.a2.u", "a2.a1", "c.u1"]);
    assert!(same(
        &desc_core::project_onto(&k, &p.scheme().e1k().event_set()),
        &p1k
    ));

    let r = p.sup_cc(&k, false).unwrap();
    let global = sup_c(&k, p.global(), &p.scheme().eu()).unwrap();
    assert!(same(&r.composed, &global));
    assert!(p.check_optimality_conditions().unwrap().holds);
}

#[test]
fn worked_example_preconditions() {
    let (p, k) = worked_plant(&["c", "u"]);
    assert!(!p.conditionally_decomposable(&k).unwrap().holds);
    for missing in ["a1", "a2"] {
        let ek: Vec<&str> = ["a1", "a2", "c", "u"]
            .into_iter()
            .filter(|e| *e != missing)
            .collect();
        let (p, _) = worked_plant(&ek);
        let failing: Vec<Word> = p
            .observer_occ_reports()
            .unwrap()
            .into_iter()
            .filter(|(n, r)| n.starts_with("occ") && !r.holds)
            .map(|(_, r)| r.counterexample.unwrap())
            .collect();
        assert!(!failing.is_empty());
        assert!(failing
            .iter()
            .all(|w| w.last().map(|e| e.name()) == Some("u")));
    }
}

#[test]
fn distributed_result_is_controllable_and_below_global_supremum() {
    let (used, interesting) = suites::distributed_synthesis(150);
    assert!(
        used >= 50 && interesting >= 10,
        "used {used}, interesting {interesting}"
    );
}

#[test]
fn conditionally_controllable_specifications_are_achieved() {
    let a = suites::conditionally_controllable_specifications_are_achieved(120);
    assert!(a.achieved >= 30 && a.recovered >= 30 && a.interesting >= 10);
}

#[test]
fn union_of_conditionally_controllable_languages() {
    let (checked, distinct) = suites::union_of_conditionally_controllable_languages(100);
    assert!(
        checked >= 15 && distinct >= 5,
        "checked {checked}, distinct {distinct}"
    );
}
