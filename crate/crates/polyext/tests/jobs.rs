use polyext::format::parse_presentation;
use polyext::report::{export_presentation, run_job, Job, Level, Which};
use polyext_core::catalog::Family;

#[test]
fn square_report_at_every_level() {
    let r = run_job(&Job::new(Family::Polygon(2), 2, Level::Geometry)).unwrap();
    assert!(!r.is_fatal(), "{:?}", r.failures);
    assert_eq!(r.extension.computed_order, "128");
    assert_eq!(r.halving.computed_order, "64");
    let res = r.residues.unwrap();
    assert_eq!(res.extension.shape.as_deref(), Some("(4,0)"));
    assert_eq!(res.halving.shape.as_deref(), Some("(2,2)"));
}

#[test]
fn cell600_orders_and_relations() {
    let r = run_job(&Job::new(Family::Cell600, 2, Level::Relations)).unwrap();
    assert!(!r.is_fatal(), "{:?}", r.failures);
    let want = (num_bigint::BigUint::from(14400u32) * num_bigint::BigUint::from(4u32).pow(60)).to_string();
    assert_eq!(r.extension.computed_order, want);
    assert_eq!(r.extension.expected_order.value, want);
    let l3 = r.extension.layers.iter().find(|l| l.name == "L3").unwrap();
    assert_eq!(l3.status, "skipped");
}

#[test]
fn cube_report_at_every_level() {
    let r = run_job(&Job::new(Family::Cube(3), 2, Level::Geometry)).unwrap();
    assert!(!r.is_fatal(), "{:?}", r.failures);
    assert_eq!(r.extension.computed_order, "12288");
    assert_eq!(r.halving.computed_order, "6144");
    assert!(!r.extension.expected_order.provenance.is_empty());
    assert!(!r.halving.expected_order.provenance.is_empty());
}

#[test]
fn reports_are_byte_identical() {
    for job in [
        Job::new(Family::Polygon(3), 2, Level::Geometry),
        Job::new(Family::Icosahedron, 2, Level::Orders),
    ] {
        assert_eq!(run_job(&job).unwrap().to_json(), run_job(&job).unwrap().to_json());
    }
}

#[test]
fn report_json_round_trips() {
    let r = run_job(&Job::new(Family::Polygon(2), 3, Level::Cgroup)).unwrap();
    let back: polyext::report::Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn exported_presentations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.fp");
    let text = export_presentation(&Job::new(Family::Polygon(3), 2, Level::Orders), Which::Extension, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    assert!(text.lines().any(|l| l == "( r0 r1 ( r2 r1 )^2 )^4"), "{}", text);

    let path = dir.path().join("o4.fp");
    let text = export_presentation(&Job::new(Family::Orthoplex(4), 2, Level::Orders), Which::Halving, &path).unwrap();
    assert!(text.lines().any(|l| l == "( r0~ r2 r3 r4 r3 r2 r1 )^4"), "{}", text);
}

#[test]
fn exports_round_trip_to_the_same_canonical_relators() {
    let dir = tempfile::tempdir().unwrap();
    for (f, s) in [
        (Family::Polygon(3), 2),
        (Family::Cell24, 3),
        (Family::Orthoplex(4), 2),
        (Family::Cube(3), 3),
    ] {
        let job = Job::new(f, s, Level::Orders);
        let b = polyext::report::build(&job).unwrap();
        for (which, pres) in [
            (Which::Extension, &b.extension.presentation),
            (Which::Halving, &b.halving.presentation),
        ] {
            let path = dir.path().join("x.fp");
            let text = export_presentation(&job, which, &path).unwrap();
            let back = parse_presentation(&text).unwrap();
            assert_eq!(
                back.canonical_relators(),
                pres.canonical_relators(),
                "{} s={} {:?}",
                f,
                s,
                which
            );
            assert_eq!(back.labels(), pres.labels());
        }
    }
}

#[test]
fn export_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.fp");
    let err = export_presentation(&Job::new(Family::Polygon(2), 2, Level::Orders), Which::Extension, &path);
    assert!(matches!(err, Err(polyext::report::JobError::Io { .. })));
}
