use alloc::vec::Vec;
use core::fmt;

/// A word in involutory generators, letters are generator indices.
///
/// Every generator is its own inverse, so the inverse of a word is its
/// reversal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(alloc::vec![g])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Largest generator index plus one, zero for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|&g| g + 1).max().unwrap_or(0)
    }

    /// Free reduction under `g^2 = 1`, then cyclic reduction, then the
    /// lexicographically least rotation. Two relators define the same
    /// relation up to conjugacy when their canonical forms agree.
    pub fn canonicalize(&self) -> Word {
        let mut stack: Vec<usize> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if stack.last() == Some(&g) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        let (mut lo, mut hi) = (0usize, stack.len());
        while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        let core = &stack[lo..hi];
        Word(least_rotation(core))
    }
}

fn least_rotation(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = 0;
    for start in 1..n {
        let better = (0..n)
            .map(|k| (w[(start + k) % n], w[(best + k) % n]))
            .find(|(a, b)| a != b)
            .is_some_and(|(a, b)| a < b);
        if better {
            best = start;
        }
    }
    (0..n).map(|k| w[(best + k) % n]).collect()
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    #[test]
    fn involution_cancels() {
        assert_eq!(w(&[0, 0]).canonicalize(), Word::empty());
        assert_eq!(w(&[1, 0, 0, 1]).canonicalize(), Word::empty());
    }

    #[test]
    fn cyclic_reduction_then_rotation() {
        assert_eq!(w(&[1, 0, 1]).canonicalize(), w(&[0]));
        assert_eq!(w(&[2, 1, 0, 1]).canonicalize(), w(&[0, 1, 2, 1]));
        assert_eq!(w(&[1, 2, 0]).canonicalize(), w(&[0, 1, 2]));
    }

    #[test]
    fn periodic_words_keep_their_period() {
        assert_eq!(w(&[1, 0, 1, 0, 1, 0]).canonicalize(), w(&[0, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn inverse_is_reversal() {
        assert_eq!(w(&[0, 1, 2]).inverse(), w(&[2, 1, 0]));
        assert_eq!(w(&[0, 1]).pow(3).len(), 6);
        assert_eq!(w(&[0, 1]).concat(&w(&[2])), Word::new(vec![0, 1, 2]));
    }
}
