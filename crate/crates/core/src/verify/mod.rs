//! Structural certificates: the intersection property, coset geometries and
//! the classification of `{4,4}` torus maps.

mod cgroup;
mod geometry;
mod torus;

pub use cgroup::{intersection_property, IntersectionOutcome};
pub use geometry::{
    build_geometry, build_geometry_with, geometry_properties, CosetGeometry, GeometryProperties, DEFAULT_GEOMETRY_BOUND,
};
pub use torus::{classify_torus_44, torus_presentation, TorusShape};

/// Summary of the structural checks on one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub intersection_property: IntersectionOutcome,
    /// `None` when the geometry was above the exhaustive bound.
    pub geometry: Option<GeometryProperties>,
}

impl CertificationReport {
    /// True only when every check ran and passed.
    pub fn hypertope_certified(&self) -> bool {
        matches!(self.intersection_property, IntersectionOutcome::Pass { .. })
            && self.geometry.as_ref().is_some_and(|g| g.is_regular_hypertope())
    }
}
