use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::{subgroup_intersection, PermGroup, Permutation};

/// Result of checking `⟨ρ_I⟩ ∩ ⟨ρ_J⟩ = ⟨ρ_{I∩J}⟩` for all `I, J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionOutcome {
    /// Number of index-set pairs that needed an intersection.
    Pass {
        pairs: usize,
    },
    Fail {
        i: Vec<usize>,
        j: Vec<usize>,
    },
    Skipped {
        reason: String,
    },
}

impl IntersectionOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, IntersectionOutcome::Pass { .. })
    }
}

fn members(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Checks the intersection property of `gens`.
///
/// Pairs with `I ⊆ J` hold trivially and are skipped. For the others the
/// intersection always contains `⟨ρ_{I∩J}⟩`, so comparing orders decides
/// equality. `limit` bounds the search nodes of each intersection.
pub fn intersection_property(gens: &[Permutation], limit: u64) -> Result<IntersectionOutcome> {
    let n = gens.len();
    let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
    let full = 1usize << n;
    let groups: Vec<PermGroup> = (0..full)
        .map(|mask| {
            let sub: Vec<Permutation> = members(mask).iter().map(|&k| gens[k].clone()).collect();
            if sub.is_empty() {
                Ok(PermGroup::trivial(degree))
            } else {
                PermGroup::new(&sub)
            }
        })
        .collect::<Result<_>>()?;
    let mut pairs = 0;
    // Colex order: pairs are taken by their larger index set first.
    for j in 1..full {
        for i in 1..j {
            if i & j == i || i & j == j {
                continue;
            }
            pairs += 1;
            let meet = match subgroup_intersection(&groups[i], &groups[j], limit) {
                Ok(g) => g,
                Err(Error::ResourceLimit { limit, .. }) => {
                    return Ok(IntersectionOutcome::Skipped {
                        reason: format!(
                            "intersection of {:?} and {:?} exceeded {} nodes",
                            members(i),
                            members(j),
                            limit
                        ),
                    })
                }
                Err(e) => return Err(e),
            };
            if meet.order() != groups[i & j].order() {
                return Ok(IntersectionOutcome::Fail {
                    i: members(i),
                    j: members(j),
                });
            }
        }
    }
    Ok(IntersectionOutcome::Pass { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{realize, Family, FamilyDescriptor};
    use crate::perm::DEFAULT_INTERSECTION_LIMIT;

    #[test]
    fn coxeter_group_passes() {
        let p = realize(&FamilyDescriptor::new(Family::Icosahedron).unwrap()).unwrap();
        let r = intersection_property(&p.taus, DEFAULT_INTERSECTION_LIMIT).unwrap();
        assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn three_transpositions_fail() {
        let t = |a, b| Permutation::from_cycles(3, &[&[a, b]]).unwrap();
        let r = intersection_property(&[t(0, 1), t(0, 2), t(1, 2)], DEFAULT_INTERSECTION_LIMIT).unwrap();
        assert!(matches!(r, IntersectionOutcome::Fail { .. }));
    }
}
