//! Jobs, the pipeline that runs them and the JSON reports they produce.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use polyext_core::catalog::{realize, Family, FamilyDescriptor, RealizedPolytope};
use polyext_core::diagonals::{diagonal_classes, DiagonalClassification};
use polyext_core::extend::{
    build_extension, extension_schlafli, verify_extension, ExtensionArtifact, Layer, Limits, Status,
};
use polyext_core::halve::{realize_halving, verify_halving, HalvingArtifact};
use polyext_core::perm::{PermGroup, Permutation, DEFAULT_INTERSECTION_LIMIT};
use polyext_core::verify::{
    build_geometry, classify_torus_44, geometry_properties, intersection_property, CertificationReport,
    GeometryProperties, IntersectionOutcome, TorusShape, DEFAULT_GEOMETRY_BOUND,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::render_presentation;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest group order for which the intersection property is checked.
pub const DEFAULT_CGROUP_BOUND: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum JobError {
    #[error(transparent)]
    Core(#[from] polyext_core::Error),
    #[error("invalid job: {0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Verification depth. Each level includes the ones before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Catalog, diagonal classes and the concrete orders.
    Orders,
    /// Relators, coset enumeration, central involution and residues.
    Relations,
    /// Intersection property.
    Cgroup,
    /// Coset geometries.
    Geometry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobLimits {
    pub coset_limit: usize,
    pub central_bound: usize,
    pub geometry_bound: usize,
    pub intersection_limit: u64,
    pub cgroup_bound: u64,
}

impl Default for JobLimits {
    fn default() -> Self {
        let core = Limits::default();
        JobLimits {
            coset_limit: core.coset_limit,
            central_bound: core.central_bound,
            geometry_bound: DEFAULT_GEOMETRY_BOUND,
            intersection_limit: DEFAULT_INTERSECTION_LIMIT,
            cgroup_bound: DEFAULT_CGROUP_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub family: String,
    pub parameter: Option<usize>,
    pub s: usize,
    pub level: Level,
    pub limits: JobLimits,
    #[serde(skip)]
    pub timings: bool,
}

impl Job {
    pub fn new(family: Family, s: usize, level: Level) -> Self {
        Job {
            family: family.name().to_string(),
            parameter: family.parameter(),
            s,
            level,
            limits: JobLimits::default(),
            timings: false,
        }
    }

    pub fn family(&self) -> Result<Family, JobError> {
        Ok(Family::from_name(&self.family, self.parameter)?)
    }

    fn validate(&self) -> Result<Family, JobError> {
        if self.s < 2 {
            return Err(JobError::Invalid(format!("s must be at least 2, got {}", self.s)));
        }
        let l = &self.limits;
        if l.coset_limit == 0
            || l.central_bound == 0
            || l.geometry_bound == 0
            || l.intersection_limit == 0
            || l.cgroup_bound == 0
        {
            return Err(JobError::Invalid(String::from("limits must be positive")));
        }
        self.family()
    }

    fn core_limits(&self) -> Limits {
        Limits {
            coset_limit: self.limits.coset_limit,
            central_bound: self.limits.central_bound,
        }
    }
}

/// An expected value with the formula it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub value: String,
    pub provenance: String,
}

fn claim(value: impl ToString, provenance: &str) -> Claim {
    Claim {
        value: value.to_string(),
        provenance: provenance.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub name: String,
    pub status: String,
    pub detail: String,
}

fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn records(layers: Vec<(&'static str, &Layer)>) -> Vec<LayerRecord> {
    layers
        .into_iter()
        .map(|(name, l)| LayerRecord {
            name: name.to_string(),
            status: status_name(&l.status).to_string(),
            detail: l.detail.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSection {
    pub family: String,
    pub schlafli: String,
    pub vertices: usize,
    pub order: Claim,
    pub computed_order: String,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalSection {
    pub count: usize,
    pub sizes: Vec<usize>,
    pub beta_representatives: Vec<usize>,
    pub published_representatives: Option<Vec<usize>>,
    pub unreachable_classes: Vec<usize>,
    pub antipodal_index: usize,
    pub edge_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSection {
    pub schlafli: String,
    pub degree: usize,
    pub expected_order: Claim,
    pub computed_order: String,
    pub relators: Vec<String>,
    pub recipe_matches_table: Option<bool>,
    pub layers: Vec<LayerRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalvingSection {
    pub expected_order: Claim,
    pub computed_order: String,
    pub diagram: Vec<Vec<u64>>,
    pub expected_diagram: Vec<Vec<usize>>,
    pub relators: Vec<String>,
    pub layers: Vec<LayerRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRecord {
    pub generators: String,
    pub order: String,
    pub shape: Option<String>,
    pub expected: Option<Claim>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSection {
    pub extension: ResidueRecord,
    pub halving: ResidueRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgroupRecord {
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgroupSection {
    pub extension: CgroupRecord,
    pub halving: CgroupRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryRecord {
    pub status: String,
    pub thin: Option<bool>,
    pub residually_connected: Option<bool>,
    pub flag_transitive: Option<bool>,
    pub chambers: Option<usize>,
    pub borel_order: Option<usize>,
    pub type_counts: Option<Vec<usize>>,
    pub hypertope_certified: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometrySection {
    pub residual_connectedness: String,
    pub extension: GeometryRecord,
    pub halving: GeometryRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub job: Job,
    pub catalog: CatalogSection,
    pub diagonals: DiagonalSection,
    pub extension: ExtensionSection,
    pub halving: HalvingSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residues: Option<ResidueSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cgroup: Option<CgroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySection>,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    /// Whether any check failed. Skipped checks are not failures.
    pub fn is_fatal(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// The built pipeline objects of a job, before verification.
pub struct Built {
    pub polytope: RealizedPolytope,
    pub classes: DiagonalClassification,
    pub extension: ExtensionArtifact,
    pub halving: HalvingArtifact,
}

pub fn build(job: &Job) -> Result<Built, JobError> {
    let family = job.validate()?;
    let polytope = realize(&FamilyDescriptor::new(family)?)?;
    let classes = diagonal_classes(&polytope)?;
    let extension = build_extension(&polytope, &classes, job.s)?;
    let halving = realize_halving(&extension)?;
    Ok(Built {
        polytope,
        classes,
        extension,
        halving,
    })
}

fn schlafli_string(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn catalog_formula(f: Family) -> &'static str {
    match f {
        Family::Polygon(_) => "|G({2p})| = 4p",
        Family::Orthoplex(_) | Family::Cube(_) => "|G| = 2^n n!",
        Family::Icosahedron | Family::Dodecahedron => "|[3,5]| = 120",
        Family::Cell24 => "|[3,4,3]| = 1152",
        Family::Cell600 | Family::Cell120 => "|[3,3,5]| = 14400",
    }
}

fn alpha_word(p: &RealizedPolytope) -> String {
    let taus: Vec<String> = (0..p.rank()).map(|i| format!("t{}", i)).collect();
    format!("( {} )^{}", taus.join(" "), p.descriptor.alpha_exponent)
}

struct Clock {
    on: bool,
    last: Instant,
    marks: BTreeMap<String, u128>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock {
            on,
            last: Instant::now(),
            marks: BTreeMap::new(),
        }
    }

    fn mark(&mut self, stage: &str) {
        let now = Instant::now();
        if self.on {
            self.marks.insert(stage.to_string(), (now - self.last).as_millis());
        }
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, u128>> {
        self.on.then_some(self.marks)
    }
}

/// Runs the pipeline up to `job.level`. Build errors are returned as `Err`;
/// failed checks are listed in `Report::failures`.
pub fn run_job(job: &Job) -> Result<Report, JobError> {
    let mut clock = Clock::new(job.timings);
    let b = build(job)?;
    clock.mark("build");
    let mut failures = Vec::new();
    let p = &b.polytope;
    let e = &b.extension;
    let h = &b.halving;

    let catalog = CatalogSection {
        family: p.descriptor.family.to_string(),
        schlafli: p.descriptor.schlafli_string(),
        vertices: p.vertex_count(),
        order: claim(&p.descriptor.expected_order, catalog_formula(p.descriptor.family)),
        computed_order: p.group.order().to_string(),
        alpha: alpha_word(p),
    };

    let published = p.descriptor.published_beta_exponents();
    if let Some(list) = &published {
        if *list != b.classes.beta_reps || !b.classes.unreachable.is_empty() {
            failures.push(format!(
                "diagonal classes: {} computed with representatives {:?}, published {:?}",
                b.classes.len(),
                b.classes.beta_reps,
                list
            ));
        }
    }
    let diagonals = DiagonalSection {
        count: b.classes.len(),
        sizes: b.classes.sizes(),
        beta_representatives: b.classes.beta_reps.clone(),
        published_representatives: published,
        unreachable_classes: b.classes.unreachable.clone(),
        antipodal_index: b.classes.antipodal_index,
        edge_index: b.classes.edge_index,
    };

    let recipe_matches_table = e
        .recipe
        .as_ref()
        .ok()
        .map(|r| r.canonical_relators() == e.presentation.canonical_relators());
    let mut extension = ExtensionSection {
        schlafli: schlafli_string(&extension_schlafli(p)),
        degree: e.degree(),
        expected_order: claim(&e.expected_order, "(2s)^{|V|/2} |G(P)|"),
        computed_order: e.concrete.order().to_string(),
        relators: e
            .presentation
            .relators()
            .iter()
            .map(|r| e.presentation.render(r))
            .collect(),
        recipe_matches_table,
        layers: Vec::new(),
    };
    let mut halving = HalvingSection {
        expected_order: claim(&h.expected_order, "(2s)^{|V|/2} |G(P)| / 2"),
        computed_order: h.concrete.order().to_string(),
        diagram: h.diagram.clone(),
        expected_diagram: h.expected_diagram.clone(),
        relators: h
            .presentation
            .relators()
            .iter()
            .map(|r| h.presentation.render(r))
            .collect(),
        layers: Vec::new(),
    };
    let orders_only = |name: &str, ok: bool, detail: String| LayerRecord {
        name: name.to_string(),
        status: if ok { "pass" } else { "fail" }.to_string(),
        detail,
    };

    let mut residues = None;
    if job.level >= Level::Relations {
        let limits = job.core_limits();
        let er = verify_extension(e, &limits)?;
        clock.mark("extension");
        let hr = verify_halving(h, &limits)?;
        clock.mark("halving");
        extension.layers = records(er.layers());
        halving.layers = records(hr.layers());
        residues = residue_section(job, p.descriptor.family, e, h);
        clock.mark("residues");
    } else {
        extension.layers.push(orders_only(
            "L2",
            *e.concrete.order() == e.expected_order,
            format!("order {}", e.concrete.order()),
        ));
        halving.layers.push(orders_only(
            "L2",
            *h.concrete.order() == h.expected_order,
            format!("order {}", h.concrete.order()),
        ));
        halving
            .layers
            .push(orders_only("diagram", h.diagram_matches(), format!("{:?}", h.diagram)));
    }
    for (what, layers) in [("extension", &extension.layers), ("halving", &halving.layers)] {
        for l in layers.iter().filter(|l| l.status == "fail") {
            failures.push(format!("{} {}: {}", what, l.name, l.detail));
        }
    }
    if let Some(r) = &residues {
        for (what, rec) in [("extension", &r.extension), ("halving", &r.halving)] {
            let wrong = match (&rec.expected, &rec.shape) {
                (Some(c), Some(s)) => c.value != *s,
                (Some(_), None) => true,
                _ => false,
            };
            if wrong {
                failures.push(format!("{} residue: {:?}", what, rec));
            }
        }
    }

    let mut ip = None;
    let mut cgroup = None;
    if job.level >= Level::Cgroup {
        let ext_ip = cgroup_check(&e.generators, &e.concrete, &job.limits)?;
        let half_ip = cgroup_check(&h.generators, &h.concrete, &job.limits)?;
        clock.mark("cgroup");
        for (what, out) in [("extension", &ext_ip), ("halving", &half_ip)] {
            if let IntersectionOutcome::Fail { i, j } = out {
                failures.push(format!("{} intersection property fails at {:?}, {:?}", what, i, j));
            }
        }
        cgroup = Some(CgroupSection {
            extension: cgroup_record(&ext_ip),
            halving: cgroup_record(&half_ip),
        });
        ip = Some((ext_ip, half_ip));
    }

    let mut geometry = None;
    if let (true, Some((ext_ip, half_ip))) = (job.level >= Level::Geometry, ip) {
        let ext_g = geometry_record(&e.concrete, &e.generators, ext_ip, job.limits.geometry_bound)?;
        let half_g = geometry_record(&h.concrete, &h.generators, half_ip, job.limits.geometry_bound)?;
        clock.mark("geometry");
        for (what, g) in [("extension", &ext_g), ("halving", &half_g)] {
            if g.status == "fail" {
                failures.push(format!("{} geometry: {}", what, g.detail));
            }
        }
        geometry = Some(GeometrySection {
            residual_connectedness: String::from(
                "standard definition: the incidence graph of every residue of rank at least 2 is connected",
            ),
            extension: ext_g,
            halving: half_g,
        });
    }

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        job: job.clone(),
        catalog,
        diagonals,
        extension,
        halving,
        residues,
        cgroup,
        geometry,
        failures,
        timings_ms: clock.finish(),
    })
}

fn shape_string(t: TorusShape) -> String {
    format!("({},{})", t.a, t.b)
}

fn residue_record(gens: [Permutation; 3], labels: &str, expected: Option<Claim>) -> ResidueRecord {
    let order = PermGroup::new(&gens).map(|g| g.order().to_string()).unwrap_or_default();
    let (shape, error) = match classify_torus_44(&gens) {
        Ok(t) => (Some(shape_string(t)), None),
        Err(err) => (None, Some(err.to_string())),
    };
    ResidueRecord {
        generators: labels.to_string(),
        order,
        shape,
        expected,
        error,
    }
}

/// Residues of type `{4,4}`, present when the polytope's first label is 4.
fn residue_section(job: &Job, family: Family, e: &ExtensionArtifact, h: &HalvingArtifact) -> Option<ResidueSection> {
    let s = job.s as u64;
    let (ext_expected, half_expected) = match family {
        Family::Polygon(2) => (
            Some(claim(shape_string(TorusShape { a: 2 * s, b: 0 }), "{4,4}_{(2s,0)}")),
            Some(claim(shape_string(TorusShape { a: s, b: s }), "{4,4}_{(s,s)}")),
        ),
        Family::Cube(_) if s == 2 => (
            Some(claim("(4,0)", "{4,4}_{(4,0)} at s = 2")),
            Some(claim("(2,2)", "{4,4}_{(2,2)} at s = 2")),
        ),
        Family::Cube(_) => (None, None),
        _ => return None,
    };
    let r = &e.generators;
    let g = &h.generators;
    Some(ResidueSection {
        extension: residue_record([r[0].clone(), r[1].clone(), r[2].clone()], "r0 r1 r2", ext_expected),
        halving: residue_record([g[0].clone(), g[2].clone(), g[1].clone()], "r0~ r2 r1", half_expected),
    })
}

fn cgroup_check(gens: &[Permutation], group: &PermGroup, limits: &JobLimits) -> Result<IntersectionOutcome, JobError> {
    match group.order_u64().filter(|&o| o <= limits.cgroup_bound) {
        Some(_) => Ok(intersection_property(gens, limits.intersection_limit)?),
        None => Ok(IntersectionOutcome::Skipped {
            reason: format!("group order {} exceeds {}", group.order(), limits.cgroup_bound),
        }),
    }
}

fn cgroup_record(o: &IntersectionOutcome) -> CgroupRecord {
    match o {
        IntersectionOutcome::Pass { pairs } => CgroupRecord {
            status: String::from("pass"),
            detail: format!("{} incomparable index-set pairs checked", pairs),
        },
        IntersectionOutcome::Fail { i, j } => CgroupRecord {
            status: String::from("fail"),
            detail: format!("fails at I = {:?}, J = {:?}", i, j),
        },
        IntersectionOutcome::Skipped { reason } => CgroupRecord {
            status: String::from("skipped"),
            detail: reason.clone(),
        },
    }
}

fn geometry_record(
    group: &PermGroup,
    gens: &[Permutation],
    ip: IntersectionOutcome,
    bound: usize,
) -> Result<GeometryRecord, JobError> {
    let props: Option<GeometryProperties> = match group.order_u64().filter(|&o| o as usize <= bound) {
        Some(_) => Some(geometry_properties(&build_geometry(group, gens, bound)?)),
        None => None,
    };
    let report = CertificationReport {
        intersection_property: ip,
        geometry: props.clone(),
    };
    let certified = report.hypertope_certified();
    Ok(match props {
        None => GeometryRecord {
            status: String::from("skipped"),
            thin: None,
            residually_connected: None,
            flag_transitive: None,
            chambers: None,
            borel_order: None,
            type_counts: None,
            hypertope_certified: false,
            detail: format!("group order {} exceeds {}", group.order(), bound),
        },
        Some(g) => GeometryRecord {
            status: if g.is_regular_hypertope() { "pass" } else { "fail" }.to_string(),
            thin: Some(g.thin),
            residually_connected: Some(g.residually_connected),
            flag_transitive: Some(g.flag_transitive),
            chambers: Some(g.chambers),
            borel_order: Some(g.borel_order),
            type_counts: Some(g.type_counts.clone()),
            hypertope_certified: certified,
            detail: format!("{} chambers, |G| = {}", g.chambers, g.group_order),
        },
    })
}

/// Which presentation to export.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Extension,
    Halving,
}

/// Writes the chosen presentation of the job in the text format.
pub fn export_presentation(job: &Job, which: Which, path: &Path) -> Result<String, JobError> {
    let b = build(job)?;
    let pres = match which {
        Which::Extension => &b.extension.presentation,
        Which::Halving => &b.halving.presentation,
    };
    let text = render_presentation(pres);
    fs::write(path, &text).map_err(|source| JobError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(text)
}
