//! Deterministic Schreier–Sims.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::{check_degrees, Permutation};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// One level of the stabilizer chain: the orbit of `base_point` under the
/// pointwise stabilizer of the earlier base points.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base_point: u32,
    /// Indices into the strong generating set.
    pub(crate) gens: Vec<usize>,
    pub(crate) orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `NONE`.
    slot: Vec<u32>,
    /// `reps[k]` maps `base_point` to `orbit[k]`.
    pub(crate) reps: Vec<Permutation>,
    pub(crate) inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base_point as usize] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            slot,
            reps: vec![Permutation::identity(degree)],
            inv_reps: vec![Permutation::identity(degree)],
        }
    }

    #[inline]
    pub(crate) fn position(&self, point: u32) -> Option<usize> {
        match self.slot[point as usize] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    fn close_orbit(&mut self, strong: &[Permutation]) {
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for &g in &self.gens {
                let s = &strong[g];
                let y = s.apply(x);
                if self.slot[y as usize] == NONE {
                    let rep = self.reps[k].then(s);
                    self.slot[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group with a complete base and strong generating set.
///
/// Immutable once built. The base starts with any requested prefix and is
/// completed with the smallest point moved by each generator that still fixes
/// the base, so identical inputs give identical chains.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Stabilizer chain of the group generated by `gens`.
    pub fn new(gens: &[Permutation]) -> Result<Self> {
        Self::with_base(gens, &[])
    }

    /// Like [`PermGroup::new`] with the base forced to begin with `prefix`.
    pub fn with_base(gens: &[Permutation], prefix: &[u32]) -> Result<Self> {
        let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
        check_degrees(gens, degree)?;
        for &b in prefix {
            if b as usize >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
        }
        Ok(Self::build(degree, gens, prefix))
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        Self::build(degree, &[Permutation::identity(degree)], &[])
    }

    fn build(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<u32> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved_point().unwrap());
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = (0..strong.len())
                .filter(|&g| base[..i].iter().all(|&b| strong[g].apply(b) == b))
                .collect();
            level.close_orbit(&strong);
        }

        // cursors[i][t]: orbit positions of level i already checked against
        // the level's t-th generator.
        let mut cursors: Vec<Vec<usize>> = levels.iter().map(|l| vec![0; l.gens.len()]).collect();
        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match next_failing_schreier_generator(&levels, &strong, lvl, &mut cursors[lvl]) {
                None => i -= 1,
                Some((residue, depth)) => {
                    if depth == levels.len() {
                        let b = residue.first_moved_point().unwrap();
                        levels.push(Level::new(b, degree));
                        cursors.push(Vec::new());
                    }
                    let idx = strong.len();
                    strong.push(residue);
                    for l in lvl + 1..=depth {
                        levels[l].gens.push(idx);
                        cursors[l].push(0);
                        levels[l].close_orbit(&strong);
                    }
                    i = depth as isize;
                }
            }
        }

        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        PermGroup {
            degree,
            generators: gens.to_vec(),
            strong,
            levels,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators the group was built from, in the order given.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Orbit lengths along the chain.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Sifts `p` through the chain. Returns the residue and the level at which
    /// sifting stopped (`levels.len()` when every level was passed).
    pub(crate) fn strip(&self, p: &Permutation) -> (Permutation, usize) {
        strip_from(&self.levels, p.clone(), 0)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.strip(p);
        depth == self.levels.len() && residue.is_identity()
    }

    /// Mixed-radix index of an element, level 0 most significant. Only
    /// meaningful when the order fits in a `usize`.
    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        let mut h = p.clone();
        let mut index = 0usize;
        for level in &self.levels {
            let k = level.position(h.apply(level.base_point))?;
            index = index.checked_mul(level.orbit.len())?.checked_add(k)?;
            h.then_assign(&level.inv_reps[k]);
        }
        if h.is_identity() {
            Some(index)
        } else {
            None
        }
    }

    /// Inverse of [`PermGroup::element_index`].
    pub fn element_at(&self, mut index: usize) -> Permutation {
        let mut positions = vec![0usize; self.levels.len()];
        for (l, level) in self.levels.iter().enumerate().rev() {
            positions[l] = index % level.orbit.len();
            index /= level.orbit.len();
        }
        let mut g = Permutation::identity(self.degree);
        for (l, level) in self.levels.iter().enumerate().rev() {
            g.then_assign(&level.reps[positions[l]]);
        }
        g
    }

    /// All elements, in index order. Intended for small groups only.
    pub fn elements(&self) -> Vec<Permutation> {
        let n = self.order_u64().expect("group too large to list") as usize;
        (0..n).map(|k| self.element_at(k)).collect()
    }
}

fn strip_from(levels: &[Level], mut h: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let beta = h.apply(level.base_point);
        if beta == level.base_point {
            continue;
        }
        match level.position(beta) {
            None => return (h, l),
            Some(k) => h.then_assign(&level.inv_reps[k]),
        }
    }
    (h, levels.len())
}

/// Finds the next Schreier generator of level `lvl` which does not sift
/// through the deeper levels, advancing the per-generator cursors.
fn next_failing_schreier_generator(
    levels: &[Level],
    strong: &[Permutation],
    lvl: usize,
    cursors: &mut [usize],
) -> Option<(Permutation, usize)> {
    let level = &levels[lvl];
    for (t, &g) in level.gens.iter().enumerate() {
        let s = &strong[g];
        while cursors[t] < level.orbit.len() {
            let k = cursors[t];
            cursors[t] += 1;
            let image = s.apply(level.orbit[k]);
            let target = level.position(image).expect("orbit is closed");
            let mut h = level.reps[k].then(s);
            if h == level.reps[target] {
                continue;
            }
            h.then_assign(&level.inv_reps[target]);
            let (residue, depth) = strip_from(levels, h, lvl + 1);
            if depth < levels.len() || !residue.is_identity() {
                return Some((residue, depth));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn symmetric_group_of_degree_four() {
        let g = PermGroup::new(&[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(g.base(), vec![0, 1, 2]);
        for x in g.elements() {
            assert!(g.contains(&x));
        }
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(&[Permutation::identity(5)]).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&cyc(5, &[&[0, 1]])));
    }

    #[test]
    fn alternating_group_excludes_transpositions() {
        let g = PermGroup::new(&[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(g.order_u64(), Some(12));
        assert!(!g.contains(&cyc(4, &[&[0, 1]])));
        assert!(g.contains(&cyc(4, &[&[0, 1], &[2, 3]])));
    }

    #[test]
    fn element_index_round_trips() {
        let g = PermGroup::new(&[cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        for k in 0..120 {
            let x = g.element_at(k);
            assert_eq!(g.element_index(&x), Some(k));
        }
    }

    #[test]
    fn base_prefix_is_respected() {
        let gens = [cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4]])];
        let g = PermGroup::with_base(&gens, &[4, 2]).unwrap();
        assert_eq!(&g.base()[..2], &[4, 2]);
        assert_eq!(g.order_u64(), Some(6));
    }

    #[test]
    fn chain_is_deterministic() {
        let gens = [cyc(7, &[&[0, 3, 5], &[1, 6]]), cyc(7, &[&[2, 4, 6, 0]])];
        let a = PermGroup::new(&gens).unwrap();
        let b = PermGroup::new(&gens).unwrap();
        assert_eq!(a.base(), b.base());
        assert_eq!(a.order(), b.order());
        assert_eq!(a.strong_generators(), b.strong_generators());
    }
}
