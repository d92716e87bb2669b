//! Subgroup intersection by backtracking over base images.

use super::chain::Level;
use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Default node budget for [`subgroup_intersection`].
pub const DEFAULT_INTERSECTION_LIMIT: u64 = 10_000_000;

/// `A ∩ B`, found by walking the elements of `A` over a base that starts with
/// the base of `B` and pruning every branch whose partial base image already
/// fails to sift through `B`.
///
/// At most `limit` search nodes are visited; past that the search fails with
/// [`Error::ResourceLimit`].
pub fn subgroup_intersection(a: &PermGroup, b: &PermGroup, limit: u64) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    let degree = a.degree();
    if a.is_trivial() || b.is_trivial() {
        return Ok(PermGroup::trivial(degree));
    }
    // Walk the smaller group.
    let (a, b) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let a = PermGroup::with_base(a.generators(), &b.base())?;
    let mut search = Search {
        a_levels: a.levels(),
        b_levels: b.levels(),
        found: PermGroup::trivial(degree),
        nodes: 0,
        limit,
    };
    let id = Permutation::identity(degree);
    search.descend(0, &id, &id)?;
    Ok(search.found)
}

struct Search<'a> {
    a_levels: &'a [Level],
    b_levels: &'a [Level],
    found: PermGroup,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// `prefix` is the product of the transversal elements chosen so far, the
    /// deepest one applied first; `sift` is the product of inverse `B`
    /// representatives that sifts the partial base image.
    fn descend(&mut self, level: usize, prefix: &Permutation, sift: &Permutation) -> Result<()> {
        if level == self.a_levels.len() {
            // `prefix` is now a full element of A; it lies in B iff the
            // accumulated B-sift returns it to the identity.
            let residue = prefix.then(sift);
            if residue.is_identity() && !self.found.contains(prefix) {
                let mut gens = self.found.generators().to_vec();
                gens.push(prefix.clone());
                self.found = PermGroup::new(&gens)?;
            }
            return Ok(());
        }
        let a_level = &self.a_levels[level];
        for rep in &a_level.reps {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::ResourceLimit {
                    what: "subgroup intersection",
                    limit: self.limit,
                });
            }
            // Image of this level's base point under the final element.
            let image = prefix.apply(rep.apply(a_level.base_point));
            let next_sift = match self.b_levels.get(level) {
                Some(b_level) => {
                    debug_assert_eq!(b_level.base_point, a_level.base_point);
                    let sifted = sift.apply(image);
                    match b_level.position(sifted) {
                        None => continue,
                        Some(k) => sift.then(&b_level.inv_reps[k]),
                    }
                }
                None => sift.clone(),
            };
            let next_prefix = rep.then(prefix);
            self.descend(level + 1, &next_prefix, &next_sift)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn intersection_with_itself() {
        let a = PermGroup::new(&[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])]).unwrap();
        let k = subgroup_intersection(&a, &a, DEFAULT_INTERSECTION_LIMIT).unwrap();
        assert_eq!(k.order(), a.order());
    }

    #[test]
    fn disjoint_supports_meet_trivially() {
        let a = PermGroup::new(&[cyc(4, &[&[0, 1]])]).unwrap();
        let b = PermGroup::new(&[cyc(4, &[&[2, 3]])]).unwrap();
        let k = subgroup_intersection(&a, &b, DEFAULT_INTERSECTION_LIMIT).unwrap();
        assert!(k.is_trivial());
    }

    #[test]
    fn s3_meets_transposition_subgroup() {
        let s3 = PermGroup::new(&[cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 2]])]).unwrap();
        let t = PermGroup::new(&[cyc(3, &[&[1, 2]])]).unwrap();
        let k = subgroup_intersection(&s3, &t, DEFAULT_INTERSECTION_LIMIT).unwrap();
        assert_eq!(k.order_u64(), Some(2));
    }

    #[test]
    fn tiny_limit_is_reported() {
        let a = PermGroup::new(&[cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])]).unwrap();
        let b = PermGroup::new(&[cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])]).unwrap();
        let err = subgroup_intersection(&a, &b, 3).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
