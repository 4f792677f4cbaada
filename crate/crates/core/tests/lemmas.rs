mod common;

use common::lemmas;

const RUNS: u64 = 40;

#[test]
fn projection_distributes_over_product() {
    assert!(lemmas::projection_distributes_over_product(RUNS) >= 40);
}

#[test]
fn local_projection_of_product() {
    assert!(lemmas::local_projection_of_product(RUNS) >= 40);
}

#[test]
fn product_with_own_projection() {
    assert!(lemmas::product_with_own_projection(RUNS) >= 40);
}

#[test]
fn extended_controllability_is_equivalent() {
    assert!(lemmas::extended_controllability_is_equivalent(RUNS) >= 40);
}

#[test]
fn controllability_is_transitive() {
    assert!(lemmas::controllability_is_transitive(RUNS) >= 40);
}

#[test]
fn coordinator_view_is_computed_locally() {
    assert!(lemmas::coordinator_view_is_computed_locally(RUNS) >= 40);
}

#[test]
fn projections_bound_imply_product_bound() {
    let held = lemmas::projections_bound_imply_product_bound(RUNS);
    assert!(held >= 30, "only {held} instances met the premise");
}

#[test]
fn prefix_closure_is_reflected_by_inverse_projection() {
    assert!(lemmas::prefix_closure_is_reflected_by_inverse_projection(RUNS) >= 80);
}
