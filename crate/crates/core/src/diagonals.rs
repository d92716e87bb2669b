//! Diagonal classes: orbits of the automorphism group on unordered vertex
//! pairs, computed through the base vertex stabilizer.
//!
//! A pair `{F0, v}` is equivalent to `{F0, w}` exactly when `w` lies in
//! `F0·G_0 t_v G_0` or `F0·G_0 t_v^{-1} G_0`, where `t_v` takes `F0` to `v`.
//! So the classes are the `G_0`-orbits on the other vertices, with the orbit
//! of `v` glued to the orbit of `F0·t_v^{-1}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::RealizedPolytope;
use crate::error::{Error, Result};
use crate::perm::{orbit_with_transversal, orbits, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalClassification {
    /// Classes of vertices other than `F0`, each sorted, listed by smallest
    /// vertex.
    pub classes: Vec<Vec<u32>>,
    /// `class_of[v]`, `None` for `F0`.
    pub class_of: Vec<Option<usize>>,
    /// Class of `F0·α`.
    pub antipodal_index: usize,
    /// Class of `F0·τ_0`, the edges.
    pub edge_index: usize,
    pub beta: Permutation,
    /// Smallest `i ≥ 1` with `F0·β^i` in each class reached by powers of
    /// `β`, ascending.
    pub beta_reps: Vec<usize>,
    /// Classes containing no vertex `F0·β^i`.
    pub unreachable: Vec<usize>,
}

impl DiagonalClassification {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class sizes in class order.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class of `F0·β^i`; `None` when that vertex is `F0`.
    pub fn class_of_power(&self, f0: u32, i: usize) -> Option<usize> {
        let v = self.beta.pow(i as u64).apply(f0);
        self.class_of[v as usize]
    }

    /// Checks that `exponents` hits every class exactly once.
    pub fn validate_transversal(&self, f0: u32, exponents: &[usize]) -> Result<()> {
        let mut hit = vec![false; self.len()];
        for &i in exponents {
            let c = self
                .class_of_power(f0, i)
                .ok_or_else(|| Error::CheckFailed(format!("F0·β^{} is F0", i)))?;
            if hit[c] {
                return Err(Error::CheckFailed(format!(
                    "β^{} lands in an already represented class",
                    i
                )));
            }
            hit[c] = true;
        }
        match hit.iter().position(|h| !h) {
            Some(class) => Err(Error::UnreachableClass { class }),
            None => Ok(()),
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let up = self.0[y];
            self.0[y] = r;
            y = up;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

/// Partitions the vertices other than `F0` into diagonal classes.
pub fn diagonal_classes(p: &RealizedPolytope) -> Result<DiagonalClassification> {
    let n = p.vertex_count();
    let f0 = p.f0;
    let stab = orbits(&p.taus[1..], n);
    let mut orbit_of = vec![0usize; n];
    for (k, o) in stab.iter().enumerate() {
        for &v in o {
            orbit_of[v as usize] = k;
        }
    }
    let tree = orbit_with_transversal(&p.taus, f0)?;
    let mut uf = UnionFind((0..stab.len()).collect());
    for v in 0..n as u32 {
        if v == f0 {
            continue;
        }
        let t = tree.transversal(v).expect("vertex action is transitive");
        let u = t.inverse().apply(f0);
        uf.union(orbit_of[v as usize], orbit_of[u as usize]);
    }

    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; stab.len()];
    let mut class_of = vec![None; n];
    for v in 0..n as u32 {
        if v == f0 {
            continue;
        }
        let root = uf.find(orbit_of[v as usize]);
        if class_of_root[root] == usize::MAX {
            class_of_root[root] = classes.len();
            classes.push(Vec::new());
        }
        let c = class_of_root[root];
        classes[c].push(v);
        class_of[v as usize] = Some(c);
    }

    let antipodal_index = class_of[p.alpha.apply(f0) as usize].expect("α moves F0");
    let edge_index = class_of[p.taus[0].apply(f0) as usize].expect("τ_0 moves F0");
    let mut d = DiagonalClassification {
        classes,
        class_of,
        antipodal_index,
        edge_index,
        beta: p.beta(),
        beta_reps: Vec::new(),
        unreachable: Vec::new(),
    };
    let first = first_powers(p.f0, &d);
    d.beta_reps = first.iter().flatten().copied().collect();
    d.beta_reps.sort_unstable();
    d.unreachable = (0..d.len()).filter(|&c| first[c].is_none()).collect();
    Ok(d)
}

fn first_powers(f0: u32, d: &DiagonalClassification) -> Vec<Option<usize>> {
    let mut first = vec![None; d.len()];
    let period = d.beta.order() as usize;
    let mut x = f0;
    for i in 1..period {
        x = d.beta.apply(x);
        if let Some(c) = d.class_of[x as usize] {
            first[c].get_or_insert(i);
        }
    }
    first
}

/// Smallest exponents `i ≥ 1` whose vertex `F0·β^i` lands in each class, in
/// ascending order. Fails if some class contains no such vertex.
pub fn beta_representatives(p: &RealizedPolytope, d: &DiagonalClassification) -> Result<Vec<usize>> {
    let first = first_powers(p.f0, d);
    let mut reps = Vec::with_capacity(d.len());
    for (class, f) in first.iter().enumerate() {
        reps.push(f.ok_or(Error::UnreachableClass { class })?);
    }
    reps.sort_unstable();
    Ok(reps)
}

/// The class of the antipodal pairs `{F, F·α}`.
pub fn antipodal_class(d: &DiagonalClassification) -> usize {
    d.antipodal_index
}
