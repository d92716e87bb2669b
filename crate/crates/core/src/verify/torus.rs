//! Classification of rank-3 groups of type `{4,4}` as torus maps
//! `{4,4}_{(a,b)}` from the group order and the translation order.

use alloc::format;

use crate::error::{Error, Result};
use crate::fp::{Expr, Presentation};
use crate::perm::{PermGroup, Permutation};

/// Lattice vector `(a, b)` of a torus map `{4,4}_{(a,b)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusShape {
    pub a: u64,
    pub b: u64,
}

/// Classifies `⟨σ_0, σ_1, σ_2⟩` with `T = σ_0σ_1σ_2σ_1`, `k = o(T)` and
/// `N` the group order: `(k, 0)` when `N = 8k²`, `(k/2, k/2)` when `N = 4k²`.
pub fn classify_torus_44(sigma: &[Permutation; 3]) -> Result<TorusShape> {
    let [s0, s1, s2] = sigma;
    let checks = [(s0, s1, 4u64, "σ0σ1"), (s1, s2, 4, "σ1σ2"), (s0, s2, 2, "σ0σ2")];
    for (x, y, m, name) in checks {
        if !x.is_involution() || x.then(y).order() != m {
            return Err(Error::CheckFailed(format!("{} does not have order {}", name, m)));
        }
    }
    let k = s0.then(s1).then(s2).then(s1).order();
    let group = PermGroup::new(sigma)?;
    let n = group.order_u64().ok_or(Error::ResourceLimit {
        what: "torus group order",
        limit: u64::MAX,
    })?;
    if n == 8 * k * k {
        Ok(TorusShape { a: k, b: 0 })
    } else if k % 2 == 0 && n == 4 * k * k {
        Ok(TorusShape { a: k / 2, b: k / 2 })
    } else {
        Err(Error::CheckFailed(format!(
            "order {} with translation order {} is neither {{4,4}}_(k,0) nor {{4,4}}_(k/2,k/2)",
            n, k
        )))
    }
}

/// Standard presentation of `{4,4}_{(a,0)}` or `{4,4}_{(a,a)}`.
pub fn torus_presentation(shape: TorusShape) -> Result<Presentation> {
    let mut pres = Presentation::string_coxeter(&[4, 4]);
    if shape.b == 0 && shape.a > 0 {
        pres.push(Expr::gens(&[0, 1, 2, 1]).pow(shape.a as usize));
    } else if shape.a == shape.b && shape.a > 0 {
        pres.push(Expr::gens(&[0, 1, 2]).pow(2 * shape.a as usize));
    } else {
        return Err(Error::InvalidDescriptor(format!(
            "no standard presentation for {{4,4}}_({},{})",
            shape.a, shape.b
        )));
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{todd_coxeter, CosetTable, DEFAULT_COSET_LIMIT};
    use alloc::vec::Vec;

    fn regular_images(shape: TorusShape) -> (usize, [Permutation; 3]) {
        let pres = torus_presentation(shape).unwrap();
        let table: CosetTable = todd_coxeter(&pres, &[], DEFAULT_COSET_LIMIT);
        let n = table.index().unwrap();
        let acts: Vec<Permutation> = table.actions();
        (n, [acts[0].clone(), acts[1].clone(), acts[2].clone()])
    }

    #[test]
    fn presentations_have_the_expected_orders() {
        for a in 2..=4u64 {
            let (n, _) = regular_images(TorusShape { a, b: 0 });
            assert_eq!(n as u64, 8 * a * a);
            let (n, _) = regular_images(TorusShape { a, b: a });
            assert_eq!(n as u64, 16 * a * a);
        }
    }

    #[test]
    fn classifier_agrees_with_presentations() {
        for a in 2..=4u64 {
            for shape in [TorusShape { a, b: 0 }, TorusShape { a, b: a }] {
                let (_, sigma) = regular_images(shape);
                assert_eq!(classify_torus_44(&sigma).unwrap(), shape);
            }
        }
    }

    #[test]
    fn order_32_torus() {
        let (n, sigma) = regular_images(TorusShape { a: 2, b: 0 });
        assert_eq!(n, 32);
        assert_eq!(sigma[0].then(&sigma[1]).then(&sigma[2]).then(&sigma[1]).order(), 2);
        assert_eq!(classify_torus_44(&sigma).unwrap(), TorusShape { a: 2, b: 0 });
    }

    #[test]
    fn wrong_type_is_rejected() {
        let pres = Presentation::string_coxeter(&[3, 3]);
        let acts = todd_coxeter(&pres, &[], DEFAULT_COSET_LIMIT).actions();
        let sigma = [acts[0].clone(), acts[1].clone(), acts[2].clone()];
        assert!(classify_torus_44(&sigma).is_err());
    }
}
