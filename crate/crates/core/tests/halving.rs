use num_bigint::BigUint;
use polyext_core::catalog::{realize, Family, FamilyDescriptor};
use polyext_core::diagonals::diagonal_classes;
use polyext_core::extend::{build_extension, Limits, Status};
use polyext_core::fp::{evaluate, Word};
use polyext_core::halve::{realize_halving, verify_halving, HalvingArtifact};

fn halve(f: Family, s: usize) -> HalvingArtifact {
    let p = realize(&FamilyDescriptor::new(f).unwrap()).unwrap();
    let d = diagonal_classes(&p).unwrap();
    realize_halving(&build_extension(&p, &d, s).unwrap()).unwrap()
}

#[test]
fn enumerated_halvings() {
    let jobs = [
        (Family::Polygon(2), 2, 64u64),
        (Family::Polygon(2), 3, 144),
        (Family::Polygon(3), 2, 384),
        (Family::Orthoplex(3), 2, 1536),
        (Family::Orthoplex(3), 3, 5184),
        (Family::Cube(3), 2, 6144),
        (Family::Icosahedron, 2, 245760),
    ];
    for (f, s, order) in jobs {
        let h = halve(f, s);
        assert_eq!(h.expected_order, BigUint::from(order));
        let r = verify_halving(&h, &Limits::default()).unwrap();
        for (name, l) in r.layers() {
            assert_eq!(l.status, Status::Pass, "{} s={} {}: {}", f, s, name, l.detail);
        }
        assert!(r.l3.detail.starts_with(&format!("{} cosets", order)), "{}", r.l3.detail);
    }
    assert_eq!(BigUint::from(245760u32), BigUint::from(60u32) << 12);
}

#[test]
fn large_halvings_have_index_two() {
    for f in [Family::Dodecahedron, Family::Cell24, Family::Cell600, Family::Cube(4)] {
        let h = halve(f, 2);
        assert!(h.diagram_matches(), "{}: {:?}", f, h.diagram);
        assert_eq!(h.concrete.order(), &h.expected_order, "{}", f);
    }
}

#[test]
fn y_diagrams() {
    let h = halve(Family::Icosahedron, 2);
    assert_eq!(
        h.diagram,
        vec![vec![1, 2, 3, 2], vec![2, 1, 3, 2], vec![3, 3, 1, 5], vec![2, 2, 5, 1]]
    );
    for f in [
        Family::Polygon(3),
        Family::Orthoplex(4),
        Family::Cube(5),
        Family::Cell24,
    ] {
        assert!(halve(f, 3).diagram_matches(), "{}", f);
    }
}

#[test]
fn halved_cube_translations() {
    for n in [3, 4] {
        let g = halve(Family::Cube(n), 2).generators;
        let u = evaluate(&Word::new(vec![0, 2, 1, 2]), &g).unwrap();
        let t = evaluate(&Word::new(vec![0, 2, 1]).pow(2), &g).unwrap();
        assert_eq!(u.order(), 4);
        assert_eq!(t.order(), 2);
    }
}

#[test]
fn orthoplex_chain_relator() {
    for n in [3, 4] {
        for s in [2, 3] {
            let h = halve(Family::Orthoplex(n), s);
            let mut letters = vec![0];
            letters.extend(2..=n);
            letters.extend((1..n).rev());
            let w = Word::new(letters).pow(2 * s);
            assert!(evaluate(&w, &h.generators).unwrap().is_identity(), "n={} s={}", n, s);
        }
    }
}

#[test]
fn halved_orthoplex_rendering() {
    let h = halve(Family::Orthoplex(4), 2);
    let last = h.presentation.render(h.presentation.relators().last().unwrap());
    assert_eq!(last, "( r0~ r2 r3 r4 r3 r2 r1 )^4");
}
