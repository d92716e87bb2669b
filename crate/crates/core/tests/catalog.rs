use num_bigint::BigUint;
use polyext_core::catalog::{catalog, coxeter_matrix, realize, realize_by_enumeration, Family, FamilyDescriptor};
use polyext_core::fp::{evaluate, Word};
use polyext_core::perm::Permutation;

fn desc(f: Family) -> FamilyDescriptor {
    FamilyDescriptor::new(f).unwrap()
}

#[test]
fn every_row_is_realized_faithfully() {
    for d in catalog(8, 6) {
        let p = realize(&d).unwrap();
        assert_eq!(p.group.order(), &d.expected_order, "{}", d.family);
        assert_eq!(p.taus[0].degree(), d.vertex_count, "{}", d.family);
        assert!(p.alpha.is_involution() && p.alpha.fixed_points() == 0, "{}", d.family);
        assert!(p.taus.iter().all(|t| t.commutes_with(&p.alpha)), "{}", d.family);
    }
}

#[test]
fn table_rows() {
    let rows = [
        (Family::Polygon(2), "{4}", 4, 8u64),
        (Family::Polygon(8), "{16}", 16, 32),
        (Family::Orthoplex(3), "{3,4}", 6, 48),
        (Family::Cube(3), "{4,3}", 8, 48),
        (Family::Cube(6), "{4,3,3,3,3}", 64, 46080),
        (Family::Icosahedron, "{3,5}", 12, 120),
        (Family::Dodecahedron, "{5,3}", 20, 120),
        (Family::Cell24, "{3,4,3}", 24, 1152),
        (Family::Cell600, "{3,3,5}", 120, 14400),
        (Family::Cell120, "{5,3,3}", 600, 14400),
    ];
    for (f, schlafli, vertices, order) in rows {
        let d = desc(f);
        assert_eq!(d.schlafli_string(), schlafli);
        assert_eq!(d.vertex_count, vertices);
        assert_eq!(d.expected_order, BigUint::from(order));
    }
}

#[test]
fn alpha_words() {
    let o = realize(&desc(Family::Orthoplex(3))).unwrap();
    let alpha = evaluate(&Word::new(vec![0, 1, 2]).pow(3), &o.taus).unwrap();
    assert_eq!(alpha.fixed_points(), 0);
    assert!(alpha.is_involution());

    let c = realize(&desc(Family::Cube(5))).unwrap();
    assert_eq!(c.alpha, c.beta().pow(5));
    assert_eq!(c.alpha.fixed_points(), 0);
    assert_eq!(c.alpha.apply(0), 31);

    let p = realize(&desc(Family::Polygon(6))).unwrap();
    let half_turn = p.taus[0].then(&p.taus[1]).pow(6);
    assert_eq!(p.alpha, half_turn);
}

#[test]
fn icosahedral_orbit_has_twelve_vertices() {
    let p = realize(&desc(Family::Icosahedron)).unwrap();
    for v in 0..12 {
        let orbit = polyext_core::perm::orbit_with_transversal(&p.taus, v).unwrap();
        assert_eq!(orbit.len(), 12);
    }
}

/// The map `F0·w ↦ F0'·w` along the given vertex words.
fn intertwiner(words: &[Word], b: &[Permutation], f0: u32) -> Vec<u32> {
    words
        .iter()
        .map(|w| w.letters().iter().fold(f0, |x, &g| b[g].apply(x)))
        .collect()
}

#[test]
fn cube_coordinates_match_coset_action() {
    for n in 3..=5 {
        let coords = realize(&desc(Family::Cube(n))).unwrap();
        let cosets = realize_by_enumeration(&desc(Family::Cube(n))).unwrap();
        assert_eq!(coxeter_matrix(&coords.taus), coxeter_matrix(&cosets.taus));
        let phi = intertwiner(&cosets.vertex_words(), &coords.taus, coords.f0);
        let mut sorted = phi.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..1u32 << n).collect::<Vec<_>>(), "bijection for n = {}", n);
        for (ta, tb) in cosets.taus.iter().zip(&coords.taus) {
            for v in 0..1u32 << n {
                assert_eq!(phi[ta.apply(v) as usize], tb.apply(phi[v as usize]));
            }
        }
    }
}

#[test]
fn vertex_stabilizer_fixes_base_vertex() {
    for f in [Family::Cell24, Family::Dodecahedron, Family::Orthoplex(5)] {
        let p = realize(&desc(f)).unwrap();
        assert!(p.taus[1..].iter().all(|t| t.apply(p.f0) == p.f0));
        assert_ne!(p.taus[0].apply(p.f0), p.f0);
    }
}
