//! The extension `2^{P,G(s)}`: a presentation on `ρ_0, ..., ρ_n` and the
//! concrete group `D_s^q ⋊ G(P)` acting on points.
//!
//! Every antipodal pair `{F, F·α}` owns a block of `2s` points, numbered
//! `0..2s` and read modulo `2s`. On its block `σ_F` is `k ↦ -k` when `F` is
//! the smaller vertex of the pair and `k ↦ 2 - k` otherwise, so
//! `σ_F σ_{F·α}` rotates the block by 2 and has order `s`. A lifted `τ`
//! moves blocks as `τ` moves pairs, composing with `k ↦ 1 - k` whenever it
//! sends the smaller vertex of a pair to the larger vertex of the image pair.
//! The vertices themselves are appended as extra points so that `G(P)` acts
//! faithfully.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::catalog::{Family, RealizedPolytope};
use crate::diagonals::DiagonalClassification;
use crate::error::{Error, Result};
use crate::fp::{evaluate, todd_coxeter, CosetTable, Expr, Presentation, Word};
use crate::perm::{PermGroup, Permutation};

/// Outcome of one verification layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub status: Status,
    pub detail: String,
}

impl Layer {
    pub fn pass(detail: String) -> Self {
        Layer {
            status: Status::Pass,
            detail,
        }
    }

    pub fn fail(detail: String) -> Self {
        Layer {
            status: Status::Fail,
            detail,
        }
    }

    pub fn skipped(detail: String) -> Self {
        Layer {
            status: Status::Skipped,
            detail,
        }
    }

    pub fn check(ok: bool, detail: String) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            Self::fail(detail)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Limits for the expensive verification layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub coset_limit: usize,
    /// Largest coset count for the table-side central element check.
    pub central_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            coset_limit: crate::fp::DEFAULT_COSET_LIMIT,
            central_bound: 100_000,
        }
    }
}

/// Everything built for one `(P, s)`.
#[derive(Clone, Debug)]
pub struct ExtensionArtifact {
    pub polytope: RealizedPolytope,
    pub classes: DiagonalClassification,
    pub s: usize,
    /// The family's relator table.
    pub presentation: Presentation,
    /// The presentation produced from the diagonal classes.
    pub recipe: Result<Presentation>,
    /// `ρ_0, ..., ρ_n`.
    pub generators: Vec<Permutation>,
    pub concrete: PermGroup,
    /// Number of antipodal pairs.
    pub q: usize,
    pub expected_order: BigUint,
    pairs: Vec<(u32, u32)>,
    /// For every vertex, its pair and whether it is the smaller vertex.
    pair_of: Vec<(usize, bool)>,
}

/// `(2s)^q · |G(P)|`.
pub fn expected_extension_order(p: &RealizedPolytope, s: usize) -> BigUint {
    let q = p.vertex_count() / 2;
    BigUint::from(2 * s).pow(q as u32) * p.group.order()
}

/// Builds presentations and the concrete group and checks the order.
pub fn build_extension(p: &RealizedPolytope, classes: &DiagonalClassification, s: usize) -> Result<ExtensionArtifact> {
    if s < 2 {
        return Err(Error::InvalidDescriptor(format!("s = {} is below 2", s)));
    }
    let pairs = p.antipodal_pairs();
    let mut pair_of = vec![(0usize, true); p.vertex_count()];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        pair_of[a as usize] = (k, true);
        pair_of[b as usize] = (k, false);
    }
    let mut art = ExtensionArtifact {
        polytope: p.clone(),
        classes: classes.clone(),
        s,
        presentation: extension_table(p, s),
        recipe: extension_presentation(p, classes, s),
        generators: Vec::new(),
        concrete: PermGroup::trivial(1),
        q: pairs.len(),
        expected_order: expected_extension_order(p, s),
        pairs,
        pair_of,
    };
    art.generators = realize_extension_generators(&art)?;
    art.concrete = PermGroup::new(&art.generators)?;
    if *art.concrete.order() != art.expected_order {
        return Err(Error::CheckFailed(format!(
            "extension order {} differs from (2s)^q|G(P)| = {}",
            art.concrete.order(),
            art.expected_order
        )));
    }
    Ok(art)
}

impl ExtensionArtifact {
    pub fn ngens(&self) -> usize {
        self.polytope.rank() + 1
    }

    pub fn block_size(&self) -> usize {
        2 * self.s
    }

    pub fn degree(&self) -> usize {
        self.q * self.block_size() + self.polytope.vertex_count()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The reflection `σ_F` for the vertex `F`.
    pub fn sigma(&self, f: u32) -> Permutation {
        let bs = self.block_size() as u32;
        let mut images: Vec<u32> = (0..self.degree() as u32).collect();
        let (k, first) = self.pair_of[f as usize];
        let base = k as u32 * bs;
        for x in 0..bs {
            let y = if first { (bs - x) % bs } else { (2 + bs - x) % bs };
            images[(base + x) as usize] = base + y;
        }
        Permutation::from_images(images).expect("block reflection")
    }

    /// A vertex permutation commuting with `α`, lifted to the block points.
    pub fn lift(&self, tau: &Permutation) -> Permutation {
        let bs = self.block_size() as u32;
        let offset = self.q as u32 * bs;
        let mut images = vec![0u32; self.degree()];
        for (k, &(a, _)) in self.pairs.iter().enumerate() {
            let (k2, first) = self.pair_of[tau.apply(a) as usize];
            for x in 0..bs {
                let y = if first { x } else { (1 + bs - x) % bs };
                images[k * bs as usize + x as usize] = k2 as u32 * bs + y;
            }
        }
        for v in 0..self.polytope.vertex_count() as u32 {
            images[(offset + v) as usize] = offset + tau.apply(v);
        }
        Permutation::from_images(images).expect("lifted permutation")
    }

    /// `W = ⟨σ_F⟩`, the normal subgroup `D_s^q`.
    pub fn w_group(&self) -> Result<PermGroup> {
        let sigmas: Vec<Permutation> = (0..self.polytope.vertex_count() as u32)
            .map(|f| self.sigma(f))
            .collect();
        PermGroup::new(&sigmas)
    }

    /// `⟨ρ_1, ..., ρ_n⟩`, the stabilizer of the base vertex.
    pub fn vertex_stabilizer(&self) -> Result<PermGroup> {
        PermGroup::new(&self.generators[1..])
    }

    /// Word for `σ_F` in `ρ_0, ..., ρ_n`: `w^{-1} ρ_0 w` with `w` lifting a
    /// word that carries `F0` to `F`.
    pub fn sigma_word(&self, vertex_words: &[Word], f: u32) -> Word {
        let w = Word::new(vertex_words[f as usize].letters().iter().map(|&g| g + 1).collect());
        w.inverse().concat(&Word::letter(0)).concat(&w)
    }

    /// The candidate central involution `∏ (σ_F σ_{F·α})^{s/2}` and its
    /// word, for even `s`.
    pub fn central_candidate(&self) -> Option<(Permutation, Word)> {
        if !self.s.is_multiple_of(2) {
            return None;
        }
        let words = self.polytope.vertex_words();
        let mut z = Permutation::identity(self.degree());
        let mut zw = Word::empty();
        for &(a, b) in &self.pairs {
            let piece = self.sigma(a).then(&self.sigma(b)).pow((self.s / 2) as u64);
            z.then_assign(&piece);
            let pw = self.sigma_word(&words, a).concat(&self.sigma_word(&words, b));
            zw = zw.concat(&pw.pow(self.s / 2));
        }
        Some((z, zw))
    }
}

fn realize_extension_generators(art: &ExtensionArtifact) -> Result<Vec<Permutation>> {
    let p = &art.polytope;
    let mut gens = vec![art.sigma(p.f0)];
    let lifts: Vec<Permutation> = p.taus.iter().map(|t| art.lift(t)).collect();
    // σ_{F·τ} = τ^{-1} σ_F τ for every generator and vertex.
    for (t, lt) in p.taus.iter().zip(&lifts) {
        for f in 0..p.vertex_count() as u32 {
            if art.sigma(f).conjugate_by(lt) != art.sigma(t.apply(f)) {
                return Err(Error::CheckFailed(format!(
                    "lifted generator does not conjugate σ_{} to σ_{}",
                    f,
                    t.apply(f)
                )));
            }
        }
    }
    gens.extend(lifts);
    Ok(gens)
}

/// The extension's Schläfli type `{4, p_1, ..., p_{n-1}}`.
pub fn extension_schlafli(p: &RealizedPolytope) -> Vec<usize> {
    let mut s = vec![4];
    s.extend_from_slice(&p.descriptor.schlafli);
    s
}

/// `β^i` with `β = ρ_1 ⋯ ρ_n`.
fn beta_pow(n: usize, i: usize) -> Expr {
    Expr::gens(&(1..=n).collect::<Vec<_>>()).pow(i)
}

fn beta_inv_pow(n: usize, i: usize) -> Expr {
    Expr::gens(&(1..=n).rev().collect::<Vec<_>>()).pow(i)
}

/// `(ρ_0 β^{-i} ρ_0 β^i)^k`.
pub fn class_relator(n: usize, i: usize, k: usize) -> Expr {
    Expr::seq(vec![Expr::gen(0), beta_inv_pow(n, i), Expr::gen(0), beta_pow(n, i)]).pow(k)
}

/// `(ρ_0 β^a ρ_0 β^a)^s`.
pub fn antipodal_relator(n: usize, a: usize, s: usize) -> Expr {
    Expr::seq(vec![Expr::gen(0), beta_pow(n, a), Expr::gen(0), beta_pow(n, a)]).pow(s)
}

/// The published relator table of the family.
pub fn extension_table(p: &RealizedPolytope, s: usize) -> Presentation {
    let mut pres = Presentation::string_coxeter(&extension_schlafli(p));
    let n = p.rank();
    match p.descriptor.family {
        Family::Polygon(k) => {
            let head = |j: usize| Expr::seq(vec![Expr::gen(0), Expr::gen(1), Expr::gens(&[2, 1]).pow(j - 1)]);
            for j in 2..k {
                pres.push(head(j).pow(4));
            }
            pres.push(head(k).pow(2 * s));
        }
        Family::Orthoplex(_) => {
            let mut letters: Vec<usize> = (0..=n).collect();
            letters.extend((1..n).rev());
            pres.push(Expr::gens(&letters).pow(2 * s));
        }
        _ => {
            let a = p.descriptor.alpha_exponent;
            let listed = p.descriptor.published_beta_exponents().expect("listed family");
            for &i in listed.iter().filter(|&&i| i != 1 && i != a) {
                pres.push(class_relator(n, i, 2));
            }
            pres.push(antipodal_relator(n, a, s));
        }
    }
    pres
}

/// The presentation read off the diagonal classes: the Coxeter relators of
/// `{4, p_1, ..., p_{n-1}}`, `(ρ_0 β^{-i} ρ_0 β^i)^2` for the smallest
/// exponent `i` of every class other than the edges and the antipodal pairs,
/// and `(ρ_0 β^a ρ_0 β^a)^s` with `β^a = α`. The edge relator is dropped
/// because it reduces to `(ρ_0 ρ_1)^4`.
pub fn extension_presentation(p: &RealizedPolytope, d: &DiagonalClassification, s: usize) -> Result<Presentation> {
    if let Some(&class) = d.unreachable.first() {
        return Err(Error::UnreachableClass { class });
    }
    let n = p.rank();
    let a = p.descriptor.alpha_exponent;
    if d.class_of_power(p.f0, a) != Some(d.antipodal_index) {
        return Err(Error::CheckFailed(format!("β^{} is not antipodal", a)));
    }
    let mut pres = Presentation::string_coxeter(&extension_schlafli(p));
    for &i in &d.beta_reps {
        let c = d.class_of_power(p.f0, i).expect("representative moves F0");
        if c != d.edge_index && c != d.antipodal_index {
            pres.push(class_relator(n, i, 2));
        }
    }
    pres.push(antipodal_relator(n, a, s));
    Ok(pres)
}

/// Layered certificate for an extension.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    /// Table relators hold at `ρ_0, ..., ρ_n` (and recipe relators, when
    /// the recipe exists).
    pub l1: Layer,
    /// Concrete order equals `(2s)^q |G(P)|`.
    pub l2: Layer,
    /// Coset enumeration of the table presentation gives the same order.
    pub l3: Layer,
    /// Same for the recipe presentation when it differs from the table.
    pub l3_recipe: Option<Layer>,
    /// The central involution candidate, for even `s`.
    pub l4: Layer,
}

impl ExtensionReport {
    pub fn layers(&self) -> Vec<(&'static str, &Layer)> {
        let mut v = vec![("L1", &self.l1), ("L2", &self.l2), ("L3", &self.l3)];
        if let Some(l) = &self.l3_recipe {
            v.push(("L3-recipe", l));
        }
        v.push(("L4", &self.l4));
        v
    }

    pub fn any_failed(&self) -> bool {
        self.layers().iter().any(|(_, l)| l.failed())
    }
}

/// Indices of relators that fail at the given images.
pub fn failing_relators(pres: &Presentation, images: &[Permutation]) -> Result<Vec<usize>> {
    let mut failing = Vec::new();
    for (k, r) in pres.relators().iter().enumerate() {
        if !evaluate(&r.word(), images)?.is_identity() {
            failing.push(k);
        }
    }
    Ok(failing)
}

pub(crate) fn relators_layer(pres: &[(&str, &Presentation)], images: &[Permutation]) -> Result<Layer> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, p) in pres {
        let failing = failing_relators(p, images)?;
        if failing.is_empty() {
            parts.push(format!("{}: {} relators hold", name, p.relators().len()));
        } else {
            ok = false;
            let shown: Vec<String> = failing.iter().map(|&k| p.render(&p.relators()[k])).collect();
            parts.push(format!("{}: failing {}", name, shown.join("; ")));
        }
    }
    Ok(Layer::check(ok, parts.join(", ")))
}

/// How an enumeration certificate was obtained.
#[derive(Clone, Debug)]
pub(crate) struct Enumerated {
    pub layer: Layer,
    /// Table over `⟨ρ_1, ..., ρ_n⟩` when one was computed.
    pub parabolic: Option<CosetTable>,
}

/// Certifies `|presented group| = expected` by enumerating over the trivial
/// subgroup, or, when that is beyond `limit`, over the subgroup generated by
/// `parabolic` whose presented order is known to be `parabolic_order`.
///
/// The parabolic route is sound because the subgroup's relators include the
/// full Coxeter presentation of a finite group of order `parabolic_order`
/// and the subgroup maps onto a concrete copy of that order.
pub(crate) fn enumeration_layer(
    pres: &Presentation,
    expected: &BigUint,
    parabolic: &[usize],
    parabolic_order: &BigUint,
    limit: usize,
) -> Enumerated {
    if let Some(e) = expected.to_usize().filter(|&e| e <= limit) {
        let t = todd_coxeter(pres, &[], limit);
        if let Some(idx) = t.index() {
            return Enumerated {
                layer: Layer::check(
                    idx == e,
                    format!("{} cosets over the trivial subgroup, expected {}", idx, e),
                ),
                parabolic: None,
            };
        }
    }
    let (q, r) = (expected / parabolic_order, expected % parabolic_order);
    if r != BigUint::from(0u32) {
        return Enumerated {
            layer: Layer::fail(format!("{} is not a multiple of the parabolic order", expected)),
            parabolic: None,
        };
    }
    match q.to_usize().filter(|&q| q <= limit) {
        None => Enumerated {
            layer: Layer::skipped(format!("presented order {} needs more than {} cosets", expected, limit)),
            parabolic: None,
        },
        Some(want) => {
            let sub: Vec<Word> = parabolic.iter().map(|&g| Word::letter(g)).collect();
            let t = todd_coxeter(pres, &sub, limit);
            match t.index() {
                None => Enumerated {
                    layer: Layer::skipped(format!("enumeration aborted at {} cosets", limit)),
                    parabolic: None,
                },
                Some(idx) => Enumerated {
                    layer: Layer::check(
                        idx == want,
                        format!(
                            "{} cosets over the parabolic subgroup of order {}, expected {}",
                            idx, parabolic_order, want
                        ),
                    ),
                    parabolic: Some(t),
                },
            }
        }
    }
}

/// Runs layers L1 to L4.
pub fn verify_extension(art: &ExtensionArtifact, limits: &Limits) -> Result<ExtensionReport> {
    let mut pres: Vec<(&str, &Presentation)> = vec![("table", &art.presentation)];
    let recipe = art.recipe.as_ref().ok();
    if let Some(r) = recipe {
        pres.push(("recipe", r));
    }
    let l1 = relators_layer(&pres, &art.generators)?;

    let l2 = Layer::check(
        *art.concrete.order() == art.expected_order,
        format!(
            "order {} against (2s)^q|G(P)| = {}",
            art.concrete.order(),
            art.expected_order
        ),
    );

    let parabolic: Vec<usize> = (1..art.ngens()).collect();
    let stab = art.vertex_stabilizer()?;
    let base_order = art.polytope.group.order();
    let (l3, table) = if stab.order() != base_order {
        (
            Layer::fail(format!("⟨ρ_1..ρ_n⟩ has order {}, not {}", stab.order(), base_order)),
            None,
        )
    } else {
        let e = enumeration_layer(
            &art.presentation,
            &art.expected_order,
            &parabolic,
            base_order,
            limits.coset_limit,
        );
        (e.layer, e.parabolic)
    };
    let l3_recipe = match recipe {
        Some(r) if r.canonical_relators() != art.presentation.canonical_relators() => {
            Some(enumeration_layer(r, &art.expected_order, &parabolic, base_order, limits.coset_limit).layer)
        }
        Some(_) => None,
        None => Some(Layer::skipped(format!(
            "no recipe presentation: {}",
            art.recipe.as_ref().unwrap_err()
        ))),
    };

    let l4 = central_layer(art, &stab, table, limits)?;
    Ok(ExtensionReport {
        l1,
        l2,
        l3,
        l3_recipe,
        l4,
    })
}

fn central_layer(
    art: &ExtensionArtifact,
    stab: &PermGroup,
    table: Option<CosetTable>,
    limits: &Limits,
) -> Result<Layer> {
    let Some((z, zw)) = art.central_candidate() else {
        return Ok(Layer::skipped(String::from("s is odd")));
    };
    let mut detail = Vec::new();
    let mut ok = true;
    let concrete_ok = !z.is_identity()
        && z.is_involution()
        && art.generators.iter().all(|g| g.commutes_with(&z))
        && !stab.contains(&z)
        && evaluate(&zw, &art.generators)? == z;
    ok &= concrete_ok;
    detail.push(format!(
        "concrete z central involution outside ⟨ρ_1..ρ_n⟩: {}",
        concrete_ok
    ));

    let cosets = BigUint::from(2 * art.s).pow(art.q as u32);
    let bound = limits.central_bound.min(limits.coset_limit);
    match cosets.to_usize().filter(|&c| c <= bound) {
        None => detail.push(format!("coset check skipped ({} cosets)", cosets)),
        Some(_) => {
            let table = match table {
                Some(t) => t,
                None => {
                    let sub: Vec<Word> = (1..art.ngens()).map(Word::letter).collect();
                    todd_coxeter(&art.presentation, &sub, limits.coset_limit)
                }
            };
            match table.index() {
                None => detail.push(String::from("coset check skipped (enumeration aborted)")),
                Some(n) => {
                    let zimg: Vec<usize> = (0..n).map(|c| table.trace(c, &zw)).collect();
                    let invol = (0..n).all(|c| zimg[zimg[c]] == c);
                    let free = (0..n).all(|c| zimg[c] != c);
                    let central = (0..table.ngens())
                        .all(|g| (0..n).all(|c| table.entry(zimg[c], g) as usize == zimg[table.entry(c, g) as usize]));
                    let good = invol && free && central;
                    ok &= good;
                    detail.push(format!(
                        "on {} vertex cosets: involution {}, fixed-point-free {}, central {}",
                        n, invol, free, central
                    ));
                }
            }
        }
    }
    Ok(Layer::check(ok, detail.join("; ")))
}
