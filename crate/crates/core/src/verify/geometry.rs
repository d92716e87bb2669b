//! Coset geometries `Γ(G; (G_i))` with incidence by nonempty intersection,
//! checked exhaustively.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Default ceiling on `|G|` for exhaustive geometry checks.
pub const DEFAULT_GEOMETRY_BOUND: usize = 100_000;

/// The cosets `G_i x` of every parabolic subgroup, with elements of `G`
/// indexed through the stabilizer chain.
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    order: usize,
    /// Generator indices of each parabolic subgroup.
    parabolics: Vec<Vec<usize>>,
    /// `coset_of[i][x]`: the type-`i` coset containing element `x`.
    coset_of: Vec<Vec<u32>>,
    /// One element of every coset.
    reps: Vec<Vec<u32>>,
    /// `right[g][x]`: index of `x·g`.
    right: Vec<Vec<u32>>,
    /// `incident[i][j][a]`: type-`j` cosets meeting the type-`i` coset `a`.
    incident: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Geometry with the standard parabolics `G_i = ⟨g_j | j ≠ i⟩`.
pub fn build_geometry(group: &PermGroup, gens: &[Permutation], bound: usize) -> Result<CosetGeometry> {
    let n = gens.len();
    let parabolics = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
    build_geometry_with(group, gens, parabolics, bound)
}

/// Geometry with explicitly chosen parabolic generator sets, one per type.
pub fn build_geometry_with(
    group: &PermGroup,
    gens: &[Permutation],
    parabolics: Vec<Vec<usize>>,
    bound: usize,
) -> Result<CosetGeometry> {
    let order = match group.order_u64() {
        Some(o) if o as usize <= bound => o as usize,
        _ => {
            return Err(Error::ResourceLimit {
                what: "geometry group order",
                limit: bound as u64,
            })
        }
    };
    let elements = group.elements();
    let index = |p: &Permutation| -> Result<u32> {
        group
            .element_index(p)
            .map(|k| k as u32)
            .ok_or_else(|| Error::CheckFailed(String::from("generator outside the group")))
    };
    let mut left = Vec::with_capacity(gens.len());
    let mut right = Vec::with_capacity(gens.len());
    for g in gens {
        let mut l = Vec::with_capacity(order);
        let mut r = Vec::with_capacity(order);
        for x in &elements {
            l.push(index(&g.then(x))?);
            r.push(index(&x.then(g))?);
        }
        left.push(l);
        right.push(r);
    }

    let mut coset_of = Vec::new();
    let mut reps = Vec::new();
    for par in &parabolics {
        let mut label = vec![u32::MAX; order];
        let mut rep = Vec::new();
        for start in 0..order {
            if label[start] != u32::MAX {
                continue;
            }
            let id = rep.len() as u32;
            rep.push(start as u32);
            label[start] = id;
            let mut queue = VecDeque::from([start as u32]);
            while let Some(x) = queue.pop_front() {
                for &h in par {
                    let y = left[h][x as usize];
                    if label[y as usize] == u32::MAX {
                        label[y as usize] = id;
                        queue.push_back(y);
                    }
                }
            }
        }
        coset_of.push(label);
        reps.push(rep);
    }

    let t = parabolics.len();
    let mut incident = vec![vec![Vec::new(); t]; t];
    for i in 0..t {
        for j in 0..t {
            if i == j {
                continue;
            }
            let mut sets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); reps[i].len()];
            for x in 0..order {
                sets[coset_of[i][x] as usize].insert(coset_of[j][x]);
            }
            incident[i][j] = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        }
    }
    Ok(CosetGeometry {
        order,
        parabolics,
        coset_of,
        reps,
        right,
        incident,
    })
}

/// A flag as `(type, coset)` pairs in increasing type order.
type Flag = Vec<(usize, u32)>;

impl CosetGeometry {
    pub fn rank(&self) -> usize {
        self.parabolics.len()
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// Number of elements of each type.
    pub fn type_counts(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn incident(&self, i: usize, a: u32, j: usize, b: u32) -> bool {
        i != j && self.incident[i][j][a as usize].binary_search(&b).is_ok()
    }

    /// Elements of type `t` incident to every element of `flag`.
    fn candidates(&self, flag: &[(usize, u32)], t: usize) -> Vec<u32> {
        match flag.first() {
            None => (0..self.reps[t].len() as u32).collect(),
            Some(&(i, a)) => self.incident[i][t][a as usize]
                .iter()
                .copied()
                .filter(|&b| flag[1..].iter().all(|&(j, c)| self.incident(j, c, t, b)))
                .collect(),
        }
    }

    /// All flags whose type set is `types` (sorted).
    pub fn flags(&self, types: &[usize]) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_flags(types, &mut current, &mut out);
        out
    }

    fn extend_flags(&self, types: &[usize], current: &mut Flag, out: &mut Vec<Flag>) {
        match types.split_first() {
            None => out.push(current.clone()),
            Some((&t, rest)) => {
                for b in self.candidates(current, t) {
                    current.push((t, b));
                    self.extend_flags(rest, current, out);
                    current.pop();
                }
            }
        }
    }

    fn act(&self, flag: &[(usize, u32)], g: usize) -> Flag {
        flag.iter()
            .map(|&(t, a)| {
                let x = self.reps[t][a as usize];
                (t, self.coset_of[t][self.right[g][x as usize] as usize])
            })
            .collect()
    }

    /// Orbits of `G` on `flags`, as lists of indices into `flags`.
    fn flag_orbits(&self, flags: &[Flag]) -> Vec<Vec<usize>> {
        let position: BTreeMap<&Flag, usize> = flags.iter().enumerate().map(|(k, f)| (f, k)).collect();
        let mut seen = vec![false; flags.len()];
        let mut orbits = Vec::new();
        for start in 0..flags.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let f = &flags[orbit[k]];
                k += 1;
                for g in 0..self.right.len() {
                    let img = self.act(f, g);
                    let p = position[&img];
                    if !seen[p] {
                        seen[p] = true;
                        orbit.push(p);
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Whether the residue of `flag` has a connected incidence graph.
    fn residue_connected(&self, flag: &[(usize, u32)]) -> bool {
        let types: Vec<usize> = (0..self.rank())
            .filter(|t| flag.iter().all(|&(u, _)| u != *t))
            .collect();
        let mut nodes: Vec<(usize, u32)> = Vec::new();
        for &t in &types {
            for b in self.candidates(flag, t) {
                nodes.push((t, b));
            }
        }
        if nodes.is_empty() {
            return false;
        }
        let mut seen = vec![false; nodes.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(k) = stack.pop() {
            let (t, a) = nodes[k];
            for (m, &(u, b)) in nodes.iter().enumerate() {
                if !seen[m] && self.incident(t, a, u, b) {
                    seen[m] = true;
                    count += 1;
                    stack.push(m);
                }
            }
        }
        count == nodes.len()
    }

    /// Size of `∩ G_i`: elements lying in the base coset of every type.
    pub fn borel_order(&self) -> usize {
        let id = 0usize;
        let base: Vec<u32> = self.coset_of.iter().map(|c| c[id]).collect();
        (0..self.order)
            .filter(|&x| self.coset_of.iter().zip(&base).all(|(c, &b)| c[x] == b))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryProperties {
    pub thin: bool,
    pub residually_connected: bool,
    pub flag_transitive: bool,
    pub chambers: usize,
    /// `|∩ G_i|`.
    pub borel_order: usize,
    pub group_order: usize,
    pub type_counts: Vec<usize>,
}

impl GeometryProperties {
    /// Thin, residually connected and flag-transitive, with chambers
    /// accounting for the whole group.
    pub fn is_regular_hypertope(&self) -> bool {
        self.thin && self.residually_connected && self.flag_transitive && self.borel_accounting_holds()
    }

    pub fn borel_accounting_holds(&self) -> bool {
        self.chambers > 0 && self.chambers * self.borel_order == self.group_order
    }
}

fn subsets(rank: usize) -> Vec<Vec<usize>> {
    (0..1usize << rank)
        .map(|m| (0..rank).filter(|k| m >> k & 1 == 1).collect())
        .collect()
}

/// Thinness, residual connectedness and flag-transitivity, decided over all
/// flags. Residues are checked on one flag per `G`-orbit.
pub fn geometry_properties(g: &CosetGeometry) -> GeometryProperties {
    let rank = g.rank();
    let all: Vec<usize> = (0..rank).collect();
    let chambers = g.flags(&all).len();

    let mut thin = chambers > 0;
    for t in 0..rank {
        let rest: Vec<usize> = all.iter().copied().filter(|&u| u != t).collect();
        for f in g.flags(&rest) {
            if g.candidates(&f, t).len() != 2 {
                thin = false;
            }
        }
    }

    let mut flag_transitive = true;
    let mut residually_connected = true;
    for types in subsets(rank) {
        let flags = g.flags(&types);
        let orbits = g.flag_orbits(&flags);
        if orbits.len() != 1 {
            flag_transitive = false;
        }
        if rank - types.len() >= 2 {
            for orbit in &orbits {
                if !g.residue_connected(&flags[orbit[0]]) {
                    residually_connected = false;
                }
            }
        }
    }
    GeometryProperties {
        thin,
        residually_connected,
        flag_transitive,
        chambers,
        borel_order: g.borel_order(),
        group_order: g.group_order(),
        type_counts: g.type_counts(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{realize, Family, FamilyDescriptor};

    #[test]
    fn cube_geometry_is_a_polytope() {
        let p = realize(&FamilyDescriptor::new(Family::Cube(3)).unwrap()).unwrap();
        let g = build_geometry(&p.group, &p.taus, DEFAULT_GEOMETRY_BOUND).unwrap();
        assert_eq!(g.type_counts(), vec![8, 12, 6]);
        let props = geometry_properties(&g);
        assert!(props.is_regular_hypertope(), "{:?}", props);
        assert_eq!(props.chambers * props.borel_order, 48);
    }

    #[test]
    fn order_two_group_has_one_type() {
        let t = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let grp = PermGroup::new(core::slice::from_ref(&t)).unwrap();
        let g = build_geometry(&grp, &[t], 10).unwrap();
        assert_eq!(g.type_counts(), vec![2]);
        let props = geometry_properties(&g);
        assert!(props.thin && props.flag_transitive);
    }

    #[test]
    fn bound_is_enforced() {
        let p = realize(&FamilyDescriptor::new(Family::Cube(3)).unwrap()).unwrap();
        assert!(build_geometry(&p.group, &p.taus, 47).is_err());
    }
}
