use polyext_core::catalog::{realize, Family, FamilyDescriptor};
use polyext_core::diagonals::diagonal_classes;
use polyext_core::extend::{build_extension, ExtensionArtifact};
use polyext_core::halve::{realize_halving, HalvingArtifact};
use polyext_core::perm::{PermGroup, Permutation, DEFAULT_INTERSECTION_LIMIT};
use polyext_core::verify::{
    build_geometry, build_geometry_with, classify_torus_44, geometry_properties, intersection_property,
    CertificationReport, IntersectionOutcome, TorusShape, DEFAULT_GEOMETRY_BOUND,
};

fn ext(f: Family, s: usize) -> ExtensionArtifact {
    let p = realize(&FamilyDescriptor::new(f).unwrap()).unwrap();
    let d = diagonal_classes(&p).unwrap();
    build_extension(&p, &d, s).unwrap()
}

fn halve(e: &ExtensionArtifact) -> HalvingArtifact {
    realize_halving(e).unwrap()
}

fn triple(g: &[Permutation], idx: [usize; 3]) -> [Permutation; 3] {
    idx.map(|k| g[k].clone())
}

#[test]
fn extensions_and_halvings_are_c_groups() {
    let jobs = [
        (Family::Polygon(2), 2),
        (Family::Polygon(3), 2),
        (Family::Orthoplex(3), 2),
        (Family::Cube(3), 2),
        (Family::Icosahedron, 2),
    ];
    for (f, s) in jobs {
        let e = ext(f, s);
        let h = halve(&e);
        for gens in [&e.generators, &h.generators] {
            let out = intersection_property(gens, DEFAULT_INTERSECTION_LIMIT).unwrap();
            assert!(out.passed(), "{} s={}: {:?}", f, s, out);
        }
    }
}

#[test]
fn transpositions_fail_the_intersection_property() {
    let t = |a, b| Permutation::from_cycles(3, &[&[a, b]]).unwrap();
    let out = intersection_property(&[t(0, 1), t(0, 2), t(1, 2)], DEFAULT_INTERSECTION_LIMIT).unwrap();
    assert_eq!(
        out,
        IntersectionOutcome::Fail {
            i: vec![0, 1],
            j: vec![2]
        }
    );
}

#[test]
fn square_torus_geometry() {
    let e = ext(Family::Polygon(2), 2);
    let g = build_geometry(&e.concrete, &e.generators, DEFAULT_GEOMETRY_BOUND).unwrap();
    let g0 = PermGroup::new(&e.generators[1..]).unwrap().order_u64().unwrap();
    assert_eq!(g.rank(), 3);
    assert_eq!(g.type_counts()[0] as u64, 128 / g0);
    let props = geometry_properties(&g);
    assert!(
        props.thin && props.residually_connected && props.flag_transitive,
        "{:?}",
        props
    );
    assert_eq!(props.chambers * props.borel_order, 128);
    assert_eq!(props.borel_order, 1);
}

#[test]
fn halved_square_torus_geometry() {
    let h = halve(&ext(Family::Polygon(2), 2));
    let g = build_geometry(&h.concrete, &h.generators, DEFAULT_GEOMETRY_BOUND).unwrap();
    let props = geometry_properties(&g);
    assert!(props.is_regular_hypertope(), "{:?}", props);
    assert_eq!(props.chambers, 64);
}

#[test]
fn dropping_a_parabolic_generator_breaks_thinness() {
    let e = ext(Family::Polygon(2), 2);
    let parabolics = vec![vec![1, 2], vec![0], vec![0, 1]];
    let g = build_geometry_with(&e.concrete, &e.generators, parabolics, DEFAULT_GEOMETRY_BOUND).unwrap();
    let props = geometry_properties(&g);
    assert!(!props.thin, "{:?}", props);
    assert!(!props.is_regular_hypertope());
}

#[test]
fn halved_icosahedral_residue_geometry() {
    let h = halve(&ext(Family::Icosahedron, 2));
    let gens = h.generators[..3].to_vec();
    let group = PermGroup::new(&gens).unwrap();
    let g = build_geometry(&group, &gens, DEFAULT_GEOMETRY_BOUND).unwrap();
    assert_eq!(g.rank(), 3);
    let props = geometry_properties(&g);
    assert_eq!(props.chambers * props.borel_order, g.group_order());
}

#[test]
fn rank_one_geometry() {
    let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
    let group = PermGroup::new(std::slice::from_ref(&t)).unwrap();
    let g = build_geometry(&group, &[t], 2).unwrap();
    assert_eq!(g.type_counts(), vec![2]);
}

#[test]
fn toroidal_residues() {
    let e = ext(Family::Polygon(2), 2);
    assert_eq!(
        classify_torus_44(&triple(&e.generators, [0, 1, 2])).unwrap(),
        TorusShape { a: 4, b: 0 }
    );
    let h = halve(&e);
    assert_eq!(
        classify_torus_44(&triple(&h.generators, [0, 2, 1])).unwrap(),
        TorusShape { a: 2, b: 2 }
    );
    for n in [3, 4] {
        let e = ext(Family::Cube(n), 2);
        assert_eq!(
            classify_torus_44(&triple(&e.generators, [0, 1, 2])).unwrap(),
            TorusShape { a: 4, b: 0 }
        );
        let h = halve(&e);
        assert_eq!(
            PermGroup::new(&triple(&h.generators, [0, 2, 1])).unwrap().order_u64(),
            Some(64)
        );
        assert_eq!(
            classify_torus_44(&triple(&h.generators, [0, 2, 1])).unwrap(),
            TorusShape { a: 2, b: 2 }
        );
    }
}

#[test]
fn certification_requires_every_check() {
    let e = ext(Family::Polygon(2), 2);
    let g = build_geometry(&e.concrete, &e.generators, DEFAULT_GEOMETRY_BOUND).unwrap();
    let ip = intersection_property(&e.generators, DEFAULT_INTERSECTION_LIMIT).unwrap();
    let report = CertificationReport {
        intersection_property: ip.clone(),
        geometry: Some(geometry_properties(&g)),
    };
    assert!(report.hypertope_certified());
    let skipped = CertificationReport {
        intersection_property: ip,
        geometry: None,
    };
    assert!(!skipped.hypertope_certified());
}
