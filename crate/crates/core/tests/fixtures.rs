use contact_pairs::fixtures::{load_fixture, run_expectations, FIXTURE_NAMES};
use contact_pairs::{int, Error};

#[test]
fn every_fixture_meets_its_expectations() {
    for name in FIXTURE_NAMES {
        let fx = load_fixture(name).unwrap();
        let report = run_expectations(&fx);
        assert!(report.passed(), "{name}:\n{report}");
    }
}

#[test]
fn corrupted_fixture_is_caught() {
    // [e1, e2] = e3 is not compatible with the other brackets
    let mut fx = load_fixture("solvable6").unwrap();
    fx.algebra = fx.algebra.with_constant(0, 1, 2, int(1));
    let report = run_expectations(&fx);
    assert!(!report.check("jacobi").unwrap().passed);
    assert!(!report.check("d_squared_zero").unwrap().passed);

    // dropping [e1, e4] = -e3 makes the second form closed
    let mut fx = load_fixture("solvable6").unwrap();
    fx.algebra = fx.algebra.with_constant(0, 3, 2, int(0));
    let report = run_expectations(&fx);
    assert!(report.check("jacobi").unwrap().passed);
    assert!(!report.check("classify_contact_pair").unwrap().passed);
}

#[test]
fn unknown_fixture_name() {
    assert!(matches!(load_fixture("nope"), Err(Error::UnknownFixture(_))));
}
