use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Word;

/// A relator kept in the shape it was written, e.g. `(r0 r1 (r2 r1)^2)^4`,
/// so that exports reproduce the published form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(usize),
    Seq(Vec<Expr>),
    Pow(Box<Expr>, usize),
}

impl Expr {
    pub fn gen(g: usize) -> Expr {
        Expr::Gen(g)
    }

    /// Concatenation of single generators.
    pub fn gens(gs: &[usize]) -> Expr {
        Expr::Seq(gs.iter().map(|&g| Expr::Gen(g)).collect())
    }

    pub fn seq(items: Vec<Expr>) -> Expr {
        Expr::Seq(items)
    }

    /// `self^k`; `k = 1` returns `self` unchanged and `k = 0` the empty word.
    pub fn pow(self, k: usize) -> Expr {
        match k {
            0 => Expr::Seq(Vec::new()),
            1 => self,
            _ => Expr::Pow(Box::new(self), k),
        }
    }

    /// The inverse, written as the reversed expression.
    pub fn inverse(&self) -> Expr {
        match self {
            Expr::Gen(g) => Expr::Gen(*g),
            Expr::Seq(items) => Expr::Seq(items.iter().rev().map(Expr::inverse).collect()),
            Expr::Pow(e, k) => Expr::Pow(Box::new(e.inverse()), *k),
        }
    }

    pub fn word(&self) -> Word {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        Word::new(out)
    }

    fn flatten_into(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Gen(g) => out.push(*g),
            Expr::Seq(items) => items.iter().for_each(|e| e.flatten_into(out)),
            Expr::Pow(e, k) => {
                let start = out.len();
                e.flatten_into(out);
                let end = out.len();
                for _ in 1..*k {
                    out.extend_from_within(start..end);
                }
            }
        }
    }

    /// Renders with the given labels: `r0^2`, `( r0 r1 )^4`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut parts: Vec<String> = Vec::new();
        self.render_into(labels, &mut parts);
        parts.join(" ")
    }

    fn render_into(&self, labels: &[String], parts: &mut Vec<String>) {
        match self {
            Expr::Gen(g) => parts.push(labels[*g].clone()),
            Expr::Seq(items) => items.iter().for_each(|e| e.render_into(labels, parts)),
            Expr::Pow(e, k) => match e.as_ref() {
                Expr::Gen(g) => parts.push(format!("{}^{}", labels[*g], k)),
                Expr::Seq(items) if items.len() == 1 => {
                    Expr::Pow(Box::new(items[0].clone()), *k).render_into(labels, parts)
                }
                inner => {
                    parts.push(String::from("("));
                    inner.render_into(labels, parts);
                    parts.push(format!(")^{}", k));
                }
            },
        }
    }
}

/// Generators (all involutions) and relators.
///
/// The first `ngens` relators are always the involution relators `g^2`. Other
/// relators are kept only when their canonical form is non-trivial and not
/// already present.
#[derive(Clone, Debug)]
pub struct Presentation {
    ngens: usize,
    labels: Vec<String>,
    relators: Vec<Expr>,
    canonical: BTreeSet<Word>,
}

impl Presentation {
    /// A free product of `ngens` involutions labelled `r0, r1, ...`.
    pub fn new(ngens: usize) -> Self {
        let labels = (0..ngens).map(|i| format!("r{}", i)).collect();
        Self::with_labels(labels)
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let ngens = labels.len();
        Presentation {
            ngens,
            labels,
            relators: (0..ngens).map(|g| Expr::gen(g).pow(2)).collect(),
            canonical: BTreeSet::new(),
        }
    }

    /// Coxeter presentation for a symmetric matrix of exponents; entries
    /// `m[i][j]` with `i < j` become `(ri rj)^m`, taken row by row.
    pub fn coxeter(matrix: &[Vec<usize>]) -> Self {
        let mut p = Self::new(matrix.len());
        p.push_coxeter(matrix);
        p
    }

    /// Coxeter presentation of a string diagram with the given edge labels.
    pub fn string_coxeter(schlafli: &[usize]) -> Self {
        Self::coxeter(&string_matrix(schlafli))
    }

    pub fn push_coxeter(&mut self, matrix: &[Vec<usize>]) {
        for (i, row) in matrix.iter().enumerate() {
            for (j, &m) in row.iter().enumerate().skip(i + 1) {
                self.push(Expr::gens(&[i, j]).pow(m));
            }
        }
    }

    /// Adds a relator. Returns `false` if it was trivial or a duplicate.
    pub fn push(&mut self, relator: Expr) -> bool {
        let canon = relator.word().canonicalize();
        if canon.is_empty() || !self.canonical.insert(canon) {
            return false;
        }
        self.relators.push(relator);
        true
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_label(&mut self, g: usize, label: String) {
        self.labels[g] = label;
    }

    /// All relators including the leading involution relators.
    pub fn relators(&self) -> &[Expr] {
        &self.relators
    }

    pub fn relator_words(&self) -> Vec<Word> {
        self.relators.iter().map(Expr::word).collect()
    }

    /// Canonical forms of the non-involution relators, sorted.
    pub fn canonical_relators(&self) -> &BTreeSet<Word> {
        &self.canonical
    }

    /// Renders one relator with this presentation's labels.
    pub fn render(&self, relator: &Expr) -> String {
        relator.render(&self.labels)
    }
}

/// Symmetric Coxeter matrix of a string diagram: `m[i][i+1]` from `schlafli`,
/// 2 for non-adjacent nodes and 1 on the diagonal.
pub fn string_matrix(schlafli: &[usize]) -> Vec<Vec<usize>> {
    let n = schlafli.len() + 1;
    let mut m = vec![vec![2usize; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (i, &p) in schlafli.iter().enumerate() {
        m[i][i + 1] = p;
        m[i + 1][i] = p;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_nested_powers() {
        let e = Expr::seq(vec![Expr::gen(0), Expr::gen(1), Expr::gens(&[2, 1]).pow(2)]).pow(4);
        let p = Presentation::new(3);
        assert_eq!(p.render(&e), "( r0 r1 ( r2 r1 )^2 )^4");
        assert_eq!(e.word().len(), 24);
        assert_eq!(p.render(&Expr::gen(1).pow(2)), "r1^2");
    }

    #[test]
    fn duplicates_and_trivial_relators_are_dropped() {
        let mut p = Presentation::new(2);
        assert!(p.push(Expr::gens(&[0, 1]).pow(3)));
        assert!(!p.push(Expr::gens(&[1, 0]).pow(3)));
        assert!(!p.push(Expr::gens(&[1, 1])));
        assert_eq!(p.relators().len(), 3);
    }

    #[test]
    fn string_coxeter_has_commuting_relators() {
        let p = Presentation::string_coxeter(&[4, 3]);
        let rendered: Vec<String> = p.relators().iter().map(|r| p.render(r)).collect();
        assert_eq!(
            rendered,
            vec!["r0^2", "r1^2", "r2^2", "( r0 r1 )^4", "( r0 r2 )^2", "( r1 r2 )^3"]
        );
    }

    #[test]
    fn inverse_expression_reverses() {
        let e = Expr::seq(vec![Expr::gen(0), Expr::gens(&[1, 2]).pow(2)]);
        assert_eq!(e.inverse().word(), e.word().inverse());
    }
}
