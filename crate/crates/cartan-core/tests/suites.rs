use cartan_core::suites::*;

fn assert_passes(r: Report) {
    assert!(r.passed(), "{r}");
}

#[test]
fn table1_rows() {
    assert_passes(table1());
}

#[test]
fn table2_only_the_reference_count_disagrees() {
    let r = table2();
    for c in &r.checks {
        if c.id == "r4-33-terms" {
            assert!(c.failures > 0, "the r=4 rows now have {TABLE2_COUNT} terms");
        } else {
            assert_eq!(c.failures, 0, "{r}");
        }
    }
}

#[test]
fn contraction_small() {
    assert_passes(contraction(3));
}

#[test]
fn resolution_small() {
    assert_passes(resolution(4, 5));
}

#[test]
fn homotopy_small() {
    assert_passes(homotopy(&[3], 3, &[(3, 3)]));
}

#[test]
fn oracle_small() {
    assert_passes(oracle(4, 5, 3));
}

#[test]
fn cartan_boundary_spheres() {
    assert_passes(cartan(3, 1, 2, 1));
}

#[test]
fn steenrod_mod3() {
    assert_passes(steenrod(3));
}

#[test]
fn structure_sampled() {
    assert_passes(structure(5, 2));
}
