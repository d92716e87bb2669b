//! Evaluating words at concrete permutations.

use alloc::vec::Vec;

use num_bigint::BigUint;

use super::{Presentation, Word};
use crate::error::{Error, Result};
use crate::perm::{check_degrees, PermGroup, Permutation};

/// The permutation obtained by substituting `images[g]` for each letter `g`,
/// read left to right.
pub fn evaluate(word: &Word, images: &[Permutation]) -> Result<Permutation> {
    let degree = images.first().ok_or(Error::NoGenerators)?.degree();
    let mut acc = Permutation::identity(degree);
    for &g in word.letters() {
        let p = images.get(g).ok_or(Error::GeneratorOutOfRange {
            index: g,
            ngens: images.len(),
        })?;
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: p.degree(),
            });
        }
        acc.then_assign(p);
    }
    Ok(acc)
}

/// Outcome of checking that generator images define an epimorphism.
#[derive(Clone, Debug)]
pub struct EpimorphismReport {
    /// Every relator evaluates to the identity.
    pub relators_hold: bool,
    /// Indices into [`Presentation::relators`] of relators that failed.
    pub failing: Vec<usize>,
    /// The images generate `target`.
    pub generates: bool,
    pub generated_order: BigUint,
}

impl EpimorphismReport {
    pub fn is_epimorphism(&self) -> bool {
        self.relators_hold && self.generates
    }
}

/// Checks that `g ↦ images[g]` respects every relator and that the images
/// generate `target`.
pub fn verify_epimorphism(
    presentation: &Presentation,
    images: &[Permutation],
    target: &PermGroup,
) -> Result<EpimorphismReport> {
    if images.len() != presentation.ngens() {
        return Err(Error::GeneratorOutOfRange {
            index: presentation.ngens(),
            ngens: images.len(),
        });
    }
    check_degrees(images, target.degree())?;
    let mut failing = Vec::new();
    for (k, r) in presentation.relators().iter().enumerate() {
        if !evaluate(&r.word(), images)?.is_identity() {
            failing.push(k);
        }
    }
    let generated = PermGroup::new(images)?;
    let inside = images.iter().all(|p| target.contains(p));
    let generates = inside && generated.order() == target.order();
    Ok(EpimorphismReport {
        relators_hold: failing.is_empty(),
        failing,
        generates,
        generated_order: generated.order().clone(),
    })
}

/// Order of the subgroup generated by the images of the given generator
/// indices.
pub fn generated_subgroup_order(images: &[Permutation], indices: &[usize]) -> Result<BigUint> {
    let degree = images.first().ok_or(Error::NoGenerators)?.degree();
    let mut gens = Vec::with_capacity(indices.len() + 1);
    for &i in indices {
        gens.push(
            images
                .get(i)
                .ok_or(Error::GeneratorOutOfRange {
                    index: i,
                    ngens: images.len(),
                })?
                .clone(),
        );
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    Ok(PermGroup::new(&gens)?.order().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Expr;
    use alloc::vec;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn triangle_group_maps_onto_s3() {
        let p = Presentation::string_coxeter(&[3]);
        let images = [cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])];
        let target = PermGroup::new(&images).unwrap();
        let r = verify_epimorphism(&p, &images, &target).unwrap();
        assert!(r.is_epimorphism());
        assert_eq!(r.generated_order, BigUint::from(6u32));
    }

    #[test]
    fn failing_relator_is_reported() {
        let mut p = Presentation::new(2);
        p.push(Expr::gens(&[0, 1]).pow(2));
        let images = [cyc(3, &[&[0, 1]]), cyc(3, &[&[1, 2]])];
        let target = PermGroup::new(&images).unwrap();
        let r = verify_epimorphism(&p, &images, &target).unwrap();
        assert_eq!(r.failing, vec![2]);
        assert!(!r.is_epimorphism());
    }

    #[test]
    fn out_of_range_letter() {
        let err = evaluate(&Word::letter(3), &[Permutation::identity(2)]).unwrap_err();
        assert_eq!(err, Error::GeneratorOutOfRange { index: 3, ngens: 1 });
    }

    #[test]
    fn subgroup_order_of_parabolic() {
        let images = [cyc(4, &[&[0, 1]]), cyc(4, &[&[1, 2]]), cyc(4, &[&[2, 3]])];
        assert_eq!(generated_subgroup_order(&images, &[0, 2]).unwrap(), BigUint::from(4u32));
        assert_eq!(generated_subgroup_order(&images, &[]).unwrap(), BigUint::from(1u32));
    }
}
