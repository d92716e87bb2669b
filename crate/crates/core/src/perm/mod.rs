//! Permutations acting on the right and permutation groups with stabilizer
//! chains.
//!
//! Points are `0..degree`. A product `p.then(q)` applies `p` first and `q`
//! second, so `x^(pq) = (x^p)^q`. This matches the right cosets `G_0 g` used
//! throughout the crate.

mod chain;
mod intersect;

pub use chain::PermGroup;
pub use intersect::{subgroup_intersection, DEFAULT_INTERSECTION_LIMIT};

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, ..., degree - 1}` stored by its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::NotAPermutation);
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self = self * other`.
    pub fn then_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc.then_assign(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// `other^-1 * self * other`, i.e. `self` conjugated by `other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Smallest point moved by the permutation.
    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    /// Cycle lengths, cycles of length one included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &x)| self.images[x as usize] == i as u32)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x)?;
                first = false;
                x = self.images[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `p` followed by `q`; fails when the degrees differ.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(p.then(q))
}

/// Orbit of `point` with, for every orbit point `v`, an element mapping
/// `point` to `v`.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Orbit points in breadth-first discovery order, `points[0]` is the seed.
    pub points: Vec<u32>,
    transversal: Vec<Option<Permutation>>,
}

impl Orbit {
    pub fn contains(&self, v: u32) -> bool {
        self.transversal.get(v as usize).is_some_and(|t| t.is_some())
    }

    /// An element taking the seed point to `v`.
    pub fn transversal(&self, v: u32) -> Option<&Permutation> {
        self.transversal.get(v as usize).and_then(|t| t.as_ref())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Closure of `{point}` under `gens`, with a Schreier-tree transversal.
pub fn orbit_with_transversal(gens: &[Permutation], point: u32) -> Result<Orbit> {
    let degree = gens.first().ok_or(Error::NoGenerators)?.degree();
    check_degrees(gens, degree)?;
    if point as usize >= degree {
        return Err(Error::PointOutOfRange { point, degree });
    }
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[point as usize] = Some(Permutation::identity(degree));
    let mut points = vec![point];
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if transversal[y as usize].is_none() {
                let t = transversal[x as usize].as_ref().unwrap().then(g);
                transversal[y as usize] = Some(t);
                points.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(Orbit { points, transversal })
}

/// Orbits of the group generated by `gens` on `0..degree`, each sorted, listed
/// by smallest point.
pub fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<u32>> {
    let mut label = vec![usize::MAX; degree];
    let mut out: Vec<Vec<u32>> = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start as u32];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            k += 1;
            for g in gens {
                let y = g.apply(x) as usize;
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y as u32);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub(crate) fn check_degrees(gens: &[Permutation], degree: usize) -> Result<()> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_left_factor_first() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(compose(&a, &b).unwrap().images(), &[2, 0, 1]);
        let id = Permutation::identity(3);
        assert_eq!(compose(&id, &a).unwrap(), a);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn orbit_of_three_cycle() {
        let c = p(&[1, 2, 0, 3]);
        let o = orbit_with_transversal(&[c], 0).unwrap();
        assert_eq!(o.points, vec![0, 1, 2]);
        for &v in &o.points {
            assert_eq!(o.transversal(v).unwrap().apply(0), v);
        }
        assert!(!o.contains(3));
    }

    #[test]
    fn orbit_under_identity_is_singleton() {
        let o = orbit_with_transversal(&[Permutation::identity(5)], 3).unwrap();
        assert_eq!(o.points, vec![3]);
    }

    #[test]
    fn element_order_and_power() {
        let c = p(&[1, 2, 0, 4, 3]);
        assert_eq!(c.order(), 6);
        assert!(c.pow(6).is_identity());
        assert_eq!(c.pow(2), c.then(&c));
        assert!(!c.pow(3).is_identity());
    }

    #[test]
    fn debug_prints_cycles() {
        let c = Permutation::from_cycles(5, &[&[0, 2], &[1, 3, 4]]).unwrap();
        assert_eq!(alloc::format!("{:?}", c), "(0 2)(1 3 4)");
        assert_eq!(alloc::format!("{:?}", Permutation::identity(2)), "()");
    }
}
