//! The centrally symmetric spherical regular polytopes as vertex actions.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fp::{todd_coxeter, verify_epimorphism, Presentation, Word};
use crate::perm::{PermGroup, Permutation};

/// Row of the catalog of centrally symmetric regular polytopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// The `2p`-gon.
    Polygon(usize),
    /// The `n`-dimensional cross polytope `{3^(n-2),4}`.
    Orthoplex(usize),
    /// The `n`-cube `{4,3^(n-2)}`.
    Cube(usize),
    Icosahedron,
    Dodecahedron,
    Cell24,
    Cell600,
    Cell120,
}

impl Family {
    /// Parses a family name as used on the command line. `polygon` takes
    /// `p`, `orthoplex` and `cube` take `n`.
    pub fn from_name(name: &str, param: Option<usize>) -> Result<Family> {
        let need = |what: &str| param.ok_or_else(|| Error::InvalidDescriptor(format!("{} needs a parameter", what)));
        let f = match name {
            "polygon" => Family::Polygon(need(name)?),
            "orthoplex" => Family::Orthoplex(need(name)?),
            "cube" => Family::Cube(need(name)?),
            "icosahedron" => Family::Icosahedron,
            "dodecahedron" => Family::Dodecahedron,
            "cell24" => Family::Cell24,
            "cell600" => Family::Cell600,
            "cell120" => Family::Cell120,
            other => return Err(Error::InvalidDescriptor(format!("unknown family `{}`", other))),
        };
        Ok(f)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Polygon(_) => "polygon",
            Family::Orthoplex(_) => "orthoplex",
            Family::Cube(_) => "cube",
            Family::Icosahedron => "icosahedron",
            Family::Dodecahedron => "dodecahedron",
            Family::Cell24 => "cell24",
            Family::Cell600 => "cell600",
            Family::Cell120 => "cell120",
        }
    }

    pub fn parameter(&self) -> Option<usize> {
        match *self {
            Family::Polygon(k) | Family::Orthoplex(k) | Family::Cube(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(k) => write!(f, "{}({})", self.name(), k),
            None => f.write_str(self.name()),
        }
    }
}

/// Catalog data for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: Family,
    pub schlafli: Vec<usize>,
    pub vertex_count: usize,
    /// `α = (τ_0 ⋯ τ_{n-1})^alpha_exponent`.
    pub alpha_exponent: usize,
    pub expected_order: BigUint,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl FamilyDescriptor {
    pub fn new(family: Family) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidDescriptor(format!("{}: {}", family, msg)));
        let (schlafli, vertex_count, alpha_exponent, expected_order) = match family {
            Family::Polygon(p) => {
                if p < 2 {
                    return bad("p must be at least 2");
                }
                (vec![2 * p], 2 * p, p, BigUint::from(4 * p))
            }
            Family::Orthoplex(n) | Family::Cube(n) => {
                if n < 3 {
                    return bad("n must be at least 3");
                }
                if n > 20 {
                    return bad("n above 20 is not supported");
                }
                let mut s = vec![3; n - 1];
                let order = (BigUint::one() << n) * factorial(n);
                if let Family::Cube(_) = family {
                    s[0] = 4;
                    (s, 1usize << n, n, order)
                } else {
                    s[n - 2] = 4;
                    (s, 2 * n, n, order)
                }
            }
            Family::Icosahedron => (vec![3, 5], 12, 5, BigUint::from(120u32)),
            Family::Dodecahedron => (vec![5, 3], 20, 5, BigUint::from(120u32)),
            Family::Cell24 => (vec![3, 4, 3], 24, 6, BigUint::from(1152u32)),
            Family::Cell600 => (vec![3, 3, 5], 120, 15, BigUint::from(14400u32)),
            Family::Cell120 => (vec![5, 3, 3], 600, 15, BigUint::from(14400u32)),
        };
        Ok(FamilyDescriptor {
            family,
            schlafli,
            vertex_count,
            alpha_exponent,
            expected_order,
        })
    }

    /// Number of generators `τ_0, ..., τ_{n-1}`.
    pub fn rank(&self) -> usize {
        self.schlafli.len() + 1
    }

    /// The published β-exponents representing the diagonal classes, where
    /// the literature lists them.
    pub fn published_beta_exponents(&self) -> Option<Vec<usize>> {
        match self.family {
            Family::Polygon(p) => Some((1..=p).collect()),
            Family::Cube(n) => Some((1..=n).collect()),
            Family::Orthoplex(_) => None,
            Family::Icosahedron => Some(vec![1, 3, 5]),
            Family::Dodecahedron => Some((1..=5).collect()),
            Family::Cell24 => Some(vec![1, 3, 4, 6]),
            Family::Cell600 => Some(vec![1, 4, 6, 7, 9, 10, 12, 15]),
            Family::Cell120 => Some((1..=15).collect()),
        }
    }

    /// Schläfli symbol as `{a,b,...}`.
    pub fn schlafli_string(&self) -> String {
        let parts: Vec<String> = self.schlafli.iter().map(|p| format!("{}", p)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Every row with `n ≤ max_n` and `p ≤ max_p`, small parameters first.
pub fn catalog(max_p: usize, max_n: usize) -> Vec<FamilyDescriptor> {
    let mut out = Vec::new();
    for p in 2..=max_p {
        out.push(Family::Polygon(p));
    }
    for n in 3..=max_n {
        out.push(Family::Orthoplex(n));
    }
    for n in 3..=max_n {
        out.push(Family::Cube(n));
    }
    out.extend([
        Family::Icosahedron,
        Family::Dodecahedron,
        Family::Cell24,
        Family::Cell600,
        Family::Cell120,
    ]);
    out.into_iter()
        .map(|f| FamilyDescriptor::new(f).expect("catalog rows are valid"))
        .collect()
}

/// A catalog polytope as a faithful permutation group on its vertices.
#[derive(Clone, Debug)]
pub struct RealizedPolytope {
    pub descriptor: FamilyDescriptor,
    pub group: PermGroup,
    /// `τ_0, ..., τ_{n-1}` acting on vertices.
    pub taus: Vec<Permutation>,
    /// The base vertex, fixed by `τ_1, ..., τ_{n-1}`.
    pub f0: u32,
    pub alpha: Permutation,
    /// Coxeter presentation of the Schläfli type.
    pub presentation: Presentation,
}

impl RealizedPolytope {
    pub fn rank(&self) -> usize {
        self.taus.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.descriptor.vertex_count
    }

    /// `β = τ_0 τ_1 ⋯ τ_{n-1}`.
    pub fn beta(&self) -> Permutation {
        self.taus
            .iter()
            .fold(Permutation::identity(self.vertex_count()), |acc, t| acc.then(t))
    }

    /// The word `τ_0 ⋯ τ_{n-1}` in generator indices.
    pub fn beta_word(&self) -> Word {
        Word::new((0..self.rank()).collect())
    }

    /// For every vertex `v`, a word `w` in the `τ` with `F0·w = v`, along a
    /// breadth-first tree that tries generators in index order.
    pub fn vertex_words(&self) -> Vec<Word> {
        let n = self.vertex_count();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[self.f0 as usize] = Some(Word::empty());
        let mut queue = VecDeque::from([self.f0]);
        while let Some(x) = queue.pop_front() {
            for (g, t) in self.taus.iter().enumerate() {
                let y = t.apply(x) as usize;
                if words[y].is_none() {
                    words[y] = Some(words[x as usize].as_ref().unwrap().concat(&Word::letter(g)));
                    queue.push_back(y as u32);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.expect("vertex action is transitive"))
            .collect()
    }

    /// The antipodal pairs `{v, v·α}` listed by their smaller vertex.
    pub fn antipodal_pairs(&self) -> Vec<(u32, u32)> {
        (0..self.vertex_count() as u32)
            .filter_map(|v| {
                let w = self.alpha.apply(v);
                (v < w).then_some((v, w))
            })
            .collect()
    }
}

/// Builds the vertex action of a catalog polytope and certifies it.
///
/// The cube uses signed coordinates: a vertex is a bit mask whose bit `k` is
/// set when coordinate `k` is negative, `τ_0` negates the first coordinate and
/// `τ_j` swaps coordinates `j-1` and `j`. Every other family acts on the
/// cosets of `⟨τ_1, ..., τ_{n-1}⟩` found by coset enumeration.
pub fn realize(descriptor: &FamilyDescriptor) -> Result<RealizedPolytope> {
    let taus = match descriptor.family {
        Family::Cube(n) => cube_taus(n),
        _ => enumerated_taus(descriptor)?,
    };
    certify(descriptor.clone(), taus, 0)
}

/// Like [`realize`] but always through coset enumeration, also for the cube.
pub fn realize_by_enumeration(descriptor: &FamilyDescriptor) -> Result<RealizedPolytope> {
    let taus = enumerated_taus(descriptor)?;
    certify(descriptor.clone(), taus, 0)
}

fn cube_taus(n: usize) -> Vec<Permutation> {
    let size = 1u32 << n;
    let flip = Permutation::from_images_unchecked((0..size).map(|v| v ^ 1).collect());
    let mut taus = vec![flip];
    for j in 1..n {
        let images = (0..size)
            .map(|v| {
                let a = (v >> (j - 1)) & 1;
                let b = (v >> j) & 1;
                if a == b {
                    v
                } else {
                    v ^ (1 << (j - 1)) ^ (1 << j)
                }
            })
            .collect();
        taus.push(Permutation::from_images_unchecked(images));
    }
    taus
}

fn enumerated_taus(descriptor: &FamilyDescriptor) -> Result<Vec<Permutation>> {
    let presentation = Presentation::string_coxeter(&descriptor.schlafli);
    let subgroup: Vec<Word> = (1..descriptor.rank()).map(Word::letter).collect();
    let limit = 64 * descriptor.vertex_count + 1024;
    let table = todd_coxeter(&presentation, &subgroup, limit);
    if !table.is_complete() {
        return Err(Error::EnumerationAborted { limit });
    }
    Ok(table.actions())
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(String::from(what)))
    }
}

fn certify(descriptor: FamilyDescriptor, taus: Vec<Permutation>, f0: u32) -> Result<RealizedPolytope> {
    check(taus[0].degree() == descriptor.vertex_count, "vertex count")?;
    let group = PermGroup::new(&taus)?;
    check(*group.order() == descriptor.expected_order, "group order")?;
    check(taus[1..].iter().all(|t| t.apply(f0) == f0), "base vertex stabilizer")?;
    let presentation = Presentation::string_coxeter(&descriptor.schlafli);
    let epi = verify_epimorphism(&presentation, &taus, &group)?;
    check(epi.relators_hold, "Coxeter relators")?;
    let mut p = RealizedPolytope {
        alpha: Permutation::identity(descriptor.vertex_count),
        descriptor,
        group,
        taus,
        f0,
        presentation,
    };
    p.alpha = central_involution(&p)?;
    Ok(p)
}

/// Evaluates `α = β^k` and checks that it is a central involution without
/// fixed vertices.
pub fn central_involution(p: &RealizedPolytope) -> Result<Permutation> {
    let alpha = p.beta().pow(p.descriptor.alpha_exponent as u64);
    check(!alpha.is_identity() && alpha.is_involution(), "alpha is an involution")?;
    check(p.taus.iter().all(|t| t.commutes_with(&alpha)), "alpha is central")?;
    check(alpha.fixed_points() == 0, "alpha is fixed-point-free")?;
    Ok(alpha)
}

/// `m[i][j] = o(g_i g_j)`, with 1 on the diagonal.
pub fn coxeter_matrix(gens: &[Permutation]) -> Vec<Vec<u64>> {
    gens.iter()
        .map(|a| {
            gens.iter()
                .map(|b| if a == b { 1 } else { a.then(b).order() })
                .collect()
        })
        .collect()
}
