//! The halving operation: `ρ_0 ↦ ρ_0 ρ_1 ρ_0`, keeping `ρ_1, ..., ρ_n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::catalog::{coxeter_matrix, Family};
use crate::error::{Error, Result};
use crate::extend::{enumeration_layer, extension_schlafli, relators_layer, ExtensionArtifact, Layer, Limits};
use crate::fp::{Expr, Presentation};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct HalvingArtifact {
    /// `ρ̃_0 = ρ_0 ρ_1 ρ_0, ρ_1, ..., ρ_n`.
    pub generators: Vec<Permutation>,
    pub concrete: PermGroup,
    pub presentation: Presentation,
    pub expected_order: BigUint,
    /// Orders of products of the generators.
    pub diagram: Vec<Vec<u64>>,
    /// The Y-shaped diagram the generators should have.
    pub expected_diagram: Vec<Vec<usize>>,
    /// `|G(P)|`, the order of `⟨ρ_1, ..., ρ_n⟩`.
    pub parabolic_order: BigUint,
}

impl HalvingArtifact {
    pub fn diagram_matches(&self) -> bool {
        self.diagram
            .iter()
            .flatten()
            .zip(self.expected_diagram.iter().flatten())
            .all(|(&a, &b)| a == b as u64)
    }
}

/// Coxeter matrix of the halved diagram for an extension of type
/// `{4, p_1, ..., p_{n-1}}`: `ρ̃_0` and `ρ_1` commute, both are joined to
/// `ρ_2` by `p_1`, and `ρ_2, ..., ρ_n` keep the tail of the string.
pub fn halving_matrix(ext_schlafli: &[usize]) -> Vec<Vec<usize>> {
    let n = ext_schlafli.len();
    let mut m = vec![vec![2usize; n + 1]; n + 1];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut join = |i: usize, j: usize, p: usize| {
        m[i][j] = p;
        m[j][i] = p;
    };
    join(0, 2, ext_schlafli[1]);
    join(1, 2, ext_schlafli[1]);
    for (i, &p) in ext_schlafli.iter().enumerate().skip(2) {
        join(i, i + 1, p);
    }
    m
}

/// The family's halved relator table on `ρ̃_0, ρ_1, ..., ρ_n`.
pub fn halving_presentation(e: &ExtensionArtifact) -> Presentation {
    let p = &e.polytope;
    let n = p.rank();
    let s = e.s;
    let mut pres = Presentation::coxeter(&halving_matrix(&extension_schlafli(p)));
    pres.set_label(0, String::from("r0~"));
    match p.descriptor.family {
        Family::Polygon(k) => {
            let rel = |j: usize, pow: usize| {
                Expr::seq(vec![
                    Expr::gens(&[0, 2]).pow(j - 1),
                    Expr::gen(0),
                    Expr::gen(1),
                    Expr::gens(&[2, 1]).pow(j - 1),
                ])
                .pow(pow)
            };
            for j in 2..k {
                pres.push(rel(j, 2));
            }
            pres.push(rel(k, s));
        }
        Family::Orthoplex(_) => {
            let mut letters = vec![0];
            letters.extend(2..=n);
            letters.extend((1..n).rev());
            pres.push(Expr::gens(&letters).pow(2 * s));
        }
        _ => {
            let mut tilde: Vec<usize> = vec![0];
            tilde.extend(2..=n);
            let tilde_inv: Vec<usize> = tilde.iter().rev().copied().collect();
            let beta: Vec<usize> = (1..=n).collect();
            let a = p.descriptor.alpha_exponent;
            let listed = p.descriptor.published_beta_exponents().expect("listed family");
            for &i in listed.iter().filter(|&&i| i != 1 && i != a) {
                pres.push(Expr::seq(vec![Expr::gens(&tilde_inv).pow(i), Expr::gens(&beta).pow(i)]).pow(2));
            }
            pres.push(Expr::seq(vec![Expr::gens(&tilde).pow(a), Expr::gens(&beta).pow(a)]).pow(s));
        }
    }
    pres
}

/// Builds the halved group and checks that it has index 2.
pub fn realize_halving(e: &ExtensionArtifact) -> Result<HalvingArtifact> {
    let r = &e.generators;
    let mut generators = vec![r[0].then(&r[1]).then(&r[0])];
    generators.extend_from_slice(&r[1..]);
    let concrete = PermGroup::new(&generators)?;
    let expected_order = &e.expected_order / 2u32;
    if concrete.order() * 2u32 != e.expected_order {
        return Err(Error::CheckFailed(format!(
            "halving has order {}, not half of {}",
            concrete.order(),
            e.expected_order
        )));
    }
    Ok(HalvingArtifact {
        diagram: coxeter_matrix(&generators),
        expected_diagram: halving_matrix(&extension_schlafli(&e.polytope)),
        presentation: halving_presentation(e),
        parabolic_order: e.polytope.group.order().clone(),
        generators,
        concrete,
        expected_order,
    })
}

#[derive(Clone, Debug)]
pub struct HalvingReport {
    /// Halved relators hold at the concrete generators.
    pub l1: Layer,
    /// Concrete order is half the extension order.
    pub l2: Layer,
    /// Coset enumeration of the halved presentation gives that order.
    pub l3: Layer,
    pub diagram: Layer,
}

impl HalvingReport {
    pub fn layers(&self) -> Vec<(&'static str, &Layer)> {
        vec![
            ("L1", &self.l1),
            ("L2", &self.l2),
            ("L3", &self.l3),
            ("diagram", &self.diagram),
        ]
    }

    pub fn any_failed(&self) -> bool {
        self.layers().iter().any(|(_, l)| l.failed())
    }
}

pub fn verify_halving(h: &HalvingArtifact, limits: &Limits) -> Result<HalvingReport> {
    let l1 = relators_layer(&[("halving", &h.presentation)], &h.generators)?;
    let l2 = Layer::check(
        *h.concrete.order() == h.expected_order,
        format!("order {} against |G|/2 = {}", h.concrete.order(), h.expected_order),
    );
    let ngens = h.generators.len();
    let stab = PermGroup::new(&h.generators[1..])?;
    let l3 = if *stab.order() != h.parabolic_order {
        Layer::fail(format!(
            "⟨ρ_1..ρ_n⟩ has order {}, not {}",
            stab.order(),
            h.parabolic_order
        ))
    } else {
        let parabolic: Vec<usize> = (1..ngens).collect();
        enumeration_layer(
            &h.presentation,
            &h.expected_order,
            &parabolic,
            &h.parabolic_order,
            limits.coset_limit,
        )
        .layer
    };
    let diagram = Layer::check(h.diagram_matches(), format!("{:?}", h.diagram));
    Ok(HalvingReport { l1, l2, l3, diagram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{realize, FamilyDescriptor};
    use crate::diagonals::diagonal_classes;
    use crate::extend::build_extension;

    fn halve(f: Family, s: usize) -> HalvingArtifact {
        let p = realize(&FamilyDescriptor::new(f).unwrap()).unwrap();
        let d = diagonal_classes(&p).unwrap();
        realize_halving(&build_extension(&p, &d, s).unwrap()).unwrap()
    }

    #[test]
    fn halved_square_extension() {
        let h = halve(Family::Polygon(2), 2);
        assert_eq!(h.concrete.order_u64(), Some(64));
        let r = verify_halving(&h, &Limits::default()).unwrap();
        for (name, l) in r.layers() {
            assert!(l.passed(), "{} {:?}", name, l);
        }
        assert!(r.l3.detail.starts_with("64 cosets"));
    }

    #[test]
    fn y_diagram_for_icosahedron() {
        let m = halving_matrix(&[4, 3, 5]);
        assert_eq!(
            m,
            vec![vec![1, 2, 3, 2], vec![2, 1, 3, 2], vec![3, 3, 1, 5], vec![2, 2, 5, 1]]
        );
    }

    #[test]
    fn orthoplex_halving_order() {
        let h = halve(Family::Orthoplex(3), 2);
        assert_eq!(h.concrete.order_u64(), Some(1536));
        assert!(h.diagram_matches());
        let line = h.presentation.render(h.presentation.relators().last().unwrap());
        assert_eq!(line, "( r0~ r2 r3 r2 r1 )^4");
    }

    #[test]
    fn halved_tilde_is_a_new_involution() {
        let h = halve(Family::Cube(3), 2);
        assert!(h.generators[0].is_involution());
        assert_ne!(h.generators[0], h.generators[1]);
    }
}
