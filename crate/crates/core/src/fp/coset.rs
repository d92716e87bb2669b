//! HLT coset enumeration for presentations on involutions.
//!
//! Because every generator is an involution, a single column per generator
//! serves as both `c·g` and `c·g⁻¹`: `table[c][g] = d` implies
//! `table[d][g] = c`.

use alloc::vec;
use alloc::vec::Vec;

use super::{Presentation, Word};
use crate::perm::Permutation;

/// Default ceiling on simultaneously allocated cosets.
pub const DEFAULT_COSET_LIMIT: usize = 2_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    /// The table needed more than `limit` rows.
    Aborted {
        limit: usize,
    },
}

/// Result of [`todd_coxeter`]. When complete, rows are numbered in definition
/// order and row 0 is the subgroup coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
    status: EnumerationStatus,
    /// Largest number of rows held at any time.
    peak: usize,
}

impl CosetTable {
    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Number of cosets, `None` if the enumeration aborted.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then(|| self.rows.len() / self.ngens.max(1))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn peak_rows(&self) -> usize {
        self.peak
    }

    pub fn entry(&self, coset: usize, g: usize) -> u32 {
        self.rows[coset * self.ngens + g]
    }

    /// Permutation induced by generator `g` on the cosets.
    pub fn action(&self, g: usize) -> Permutation {
        let n = self.index().expect("enumeration incomplete");
        Permutation::from_images_unchecked((0..n).map(|c| self.entry(c, g)).collect())
    }

    pub fn actions(&self) -> Vec<Permutation> {
        (0..self.ngens).map(|g| self.action(g)).collect()
    }

    /// Coset reached from coset `start` by reading `w`.
    pub fn trace(&self, start: usize, w: &Word) -> usize {
        w.letters().iter().fold(start, |c, &g| self.entry(c, g) as usize)
    }

    /// For every coset, a word leading to it from coset 0 along a
    /// breadth-first spanning tree.
    pub fn spanning_words(&self) -> Vec<Word> {
        let n = self.index().expect("enumeration incomplete");
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let c = queue[k];
            k += 1;
            for g in 0..self.ngens {
                let d = self.entry(c, g) as usize;
                if words[d].is_none() {
                    words[d] = Some(words[c].as_ref().unwrap().concat(&Word::letter(g)));
                    queue.push(d);
                }
            }
        }
        words.into_iter().map(|w| w.unwrap()).collect()
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group given by `presentation`.
///
/// Scheduling is fixed: cosets are processed in definition order, each is
/// scanned against every relator in presentation order and its undefined
/// entries are then filled from the first generator up. When more than
/// `limit` rows would be needed the result is `Aborted`.
pub fn todd_coxeter(presentation: &Presentation, subgroup: &[Word], limit: usize) -> CosetTable {
    let ngens = presentation.ngens();
    let relators: Vec<Vec<u32>> = presentation
        .relator_words()
        .iter()
        .filter(|w| !w.canonicalize().is_empty())
        .map(|w| w.letters().iter().map(|&g| g as u32).collect())
        .collect();
    let subgroup: Vec<Vec<u32>> = subgroup
        .iter()
        .map(|w| w.letters().iter().map(|&g| g as u32).collect())
        .collect();
    let mut e = Enumerator::new(ngens, limit.max(1));
    let status = e.run(&relators, &subgroup);
    let peak = e.peak;
    match status {
        EnumerationStatus::Complete => {
            e.compact();
            CosetTable {
                ngens,
                rows: e.table,
                status,
                peak,
            }
        }
        aborted => CosetTable {
            ngens,
            rows: Vec::new(),
            status: aborted,
            peak,
        },
    }
}

struct Enumerator {
    ngens: usize,
    limit: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    last: u32,
    queue: Vec<u32>,
    peak: usize,
}

#[derive(Debug)]
struct Full;

impl Enumerator {
    fn new(ngens: usize, limit: usize) -> Self {
        let mut e = Enumerator {
            ngens,
            limit,
            table: Vec::new(),
            parent: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            last: 0,
            queue: Vec::new(),
            peak: 0,
        };
        e.alloc_row();
        e
    }

    #[inline]
    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, g: u32) -> u32 {
        self.table[c as usize * self.ngens + g as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, g: u32, d: u32) {
        self.table[c as usize * self.ngens + g as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn alloc_row(&mut self) -> u32 {
        let c = self.rows() as u32;
        self.table.extend(core::iter::repeat_n(UNDEF, self.ngens));
        self.parent.push(c);
        self.next.push(UNDEF);
        self.prev.push(if c == 0 { UNDEF } else { self.last });
        if c > 0 {
            let last = self.last;
            self.next[last as usize] = c;
        }
        self.last = c;
        self.peak = self.peak.max(self.rows());
        c
    }

    /// Makes sure `needed` more rows fit, compacting away dead cosets first
    /// when that helps. Returns the (possibly renumbered) `current` coset.
    fn reserve(&mut self, needed: usize, current: u32) -> Result<u32, Full> {
        if self.rows() + needed <= self.limit {
            return Ok(current);
        }
        let map = self.compact();
        let current = map[current as usize];
        if self.rows() + needed <= self.limit {
            Ok(current)
        } else {
            Err(Full)
        }
    }

    fn define(&mut self, c: u32, g: u32) -> u32 {
        let d = self.alloc_row();
        self.set(c, g, d);
        self.set(d, g, c);
        d
    }

    fn run(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> EnumerationStatus {
        let aborted = EnumerationStatus::Aborted { limit: self.limit };
        let mut c = 0u32;
        for w in subgroup {
            match self.reserve(w.len(), c) {
                Ok(cc) => c = cc,
                Err(Full) => return aborted,
            }
            self.scan_and_fill(0, w);
        }
        loop {
            for w in relators {
                if !self.is_live(c) {
                    break;
                }
                match self.reserve(w.len(), c) {
                    Ok(cc) => c = cc,
                    Err(Full) => return aborted,
                }
                self.scan_and_fill(c, w);
            }
            if self.is_live(c) {
                for g in 0..self.ngens as u32 {
                    if self.is_live(c) && self.get(c, g) == UNDEF {
                        match self.reserve(1, c) {
                            Ok(cc) => c = cc,
                            Err(Full) => return aborted,
                        }
                        self.define(c, g);
                    }
                }
            }
            // Advance to the next live coset; dead cosets keep their forward
            // link so the walk resumes after them.
            let mut n = self.next[c as usize];
            while n != UNDEF && !self.is_live(n) {
                n = self.next[n as usize];
            }
            if n == UNDEF {
                return EnumerationStatus::Complete;
            }
            c = n;
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[u32]) {
        if w.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                if i == j {
                    i += 1;
                    break;
                }
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.get(b, w[j]) != UNDEF {
                b = self.get(b, w[j]);
                if j == 0 {
                    break;
                }
                j -= 1;
                if j < i {
                    break;
                }
            }
            if j < i || (j == i && self.get(b, w[j]) != UNDEF) {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                // One gap: deduce f·w[i] = b.
                self.set(f, w[i], b);
                self.set(b, w[i], f);
                return;
            }
            self.define(f, w[i]);
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let up = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = up;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
        let (p, n) = (self.prev[kill as usize], self.next[kill as usize]);
        if p != UNDEF {
            self.next[p as usize] = n;
        }
        if n != UNDEF {
            self.prev[n as usize] = p;
        } else {
            self.last = p;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut k = 0;
        while k < self.queue.len() {
            let dead = self.queue[k];
            k += 1;
            for g in 0..self.ngens as u32 {
                let delta = self.get(dead, g);
                if delta == UNDEF {
                    continue;
                }
                if self.get(delta, g) == dead {
                    self.set(delta, g, UNDEF);
                }
                self.set(dead, g, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(delta);
                let mu_g = self.get(mu, g);
                if mu_g != UNDEF {
                    self.merge(nu, mu_g);
                } else {
                    let nu_g = self.get(nu, g);
                    if nu_g != UNDEF {
                        self.merge(mu, nu_g);
                    } else {
                        self.set(mu, g, nu);
                        self.set(nu, g, mu);
                    }
                }
            }
        }
    }

    /// Renumbers live cosets 0.. in list order and drops dead rows. Returns
    /// the old-to-new map (`UNDEF` for dead cosets).
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![UNDEF; self.rows()];
        let mut order = Vec::new();
        let mut c = 0u32;
        while c != UNDEF {
            map[c as usize] = order.len() as u32;
            order.push(c);
            c = self.next[c as usize];
        }
        let n = order.len();
        let mut table = Vec::with_capacity(n * self.ngens);
        for &old in &order {
            for g in 0..self.ngens as u32 {
                let d = self.get(old, g);
                table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..n as u32).collect();
        self.next = (1..=n as u32)
            .map(|x| if x as usize == n { UNDEF } else { x })
            .collect();
        self.prev = (0..n as u32).map(|x| if x == 0 { UNDEF } else { x - 1 }).collect();
        self.last = n as u32 - 1;
        map
    }
}
