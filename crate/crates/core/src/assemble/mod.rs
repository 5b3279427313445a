//! Smoothing a whole surface: one smoothed cone per vertex, glued to the flat
//! metric at each safe radius.
//!
//! Vertex disks are pairwise disjoint and the smoothed metric agrees with the
//! polyhedral one from the safe radius outwards, so no partition of unity is
//! needed in two dimensions.

mod blend;
mod sample;
mod verify;

pub use blend::{blend_forms, QuadraticForm2, WEIGHT_SUM_TOLERANCE};
pub use sample::{sample_fields, write_csv, FieldSample, FieldTable, CSV_HEADER};
pub use verify::{
    global_verification, ConeVerification, CurvatureCheck, DiscreteGaussBonnet, DistortionCheck, GaussBonnetCheck,
    VerificationOptions, VerificationReport,
};

use std::collections::BTreeMap;
use std::f64::consts::PI;

use thiserror::Error;

use crate::cone::{ConeError, SmoothedCone};
use crate::mesh::{MeshError, PolyhedralSurface, VertexId};

/// Cone angles within this relative distance of 2π are treated as flat.
pub const FLAT_ANGLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssembleError {
    #[error("vertex {0} lies on the boundary; only closed surfaces can be smoothed")]
    BoundaryNotSupported(VertexId),
    #[error("invalid surface: {0}")]
    InvalidSurface(#[from] MeshError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("bad blend weights: {0}")]
    BadWeights(String),
    #[error("form ({g11}, {g12}, {g22}) is not positive definite")]
    NotPositiveDefinite { g11: f64, g12: f64, g22: f64 },
}

impl AssembleError {
    pub fn code(&self) -> &'static str {
        match self {
            AssembleError::BoundaryNotSupported(_) => "BoundaryNotSupported",
            AssembleError::InvalidSurface(e) => e.code(),
            AssembleError::Cone(e) => e.code(),
            AssembleError::BadWeights(_) => "BadWeights",
            AssembleError::NotPositiveDefinite { .. } => "NotPositiveDefinite",
        }
    }
}

/// A closed polyhedral surface with a smoothed cone at every vertex.
#[derive(Debug, Clone)]
pub struct SmoothedSurface {
    base: PolyhedralSurface,
    cones: BTreeMap<VertexId, SmoothedCone>,
    k_hyp: f64,
    l_bound: f64,
}

impl SmoothedSurface {
    pub fn base(&self) -> &PolyhedralSurface {
        &self.base
    }

    pub fn cones(&self) -> &BTreeMap<VertexId, SmoothedCone> {
        &self.cones
    }

    pub fn cone(&self, v: VertexId) -> Result<&SmoothedCone, AssembleError> {
        self.cones
            .get(&v)
            .ok_or(AssembleError::InvalidSurface(MeshError::UnknownVertex(v)))
    }

    /// Smallest `K ≥ 1` with every cone angle in `[2π/K, 2πK]`.
    pub fn k_hyp(&self) -> f64 {
        self.k_hyp
    }

    /// Certified lower bound for the minimal distance between vertices.
    pub fn l_bound(&self) -> f64 {
        self.l_bound
    }

    /// `2⁹ K (K − 1) / l²` with `K = k_hyp` and `l = l_bound`.
    pub fn curvature_bound(&self) -> f64 {
        512.0 * self.k_hyp * (self.k_hyp - 1.0) / (self.l_bound * self.l_bound)
    }
}

/// Builds the smoothed cone `(cone_angle(v), safe_radius(v))` at every vertex.
pub fn smooth_surface(surface: &PolyhedralSurface) -> Result<SmoothedSurface, AssembleError> {
    let mut cones = BTreeMap::new();
    let mut k_hyp: f64 = 1.0;
    for v in surface.vertices() {
        if surface.is_boundary_vertex(v)? {
            return Err(AssembleError::BoundaryNotSupported(v));
        }
        let model = surface.vertex_cone(v)?;
        let mut alpha = model.alpha;
        if (alpha - 2.0 * PI).abs() <= FLAT_ANGLE_TOLERANCE * 2.0 * PI {
            alpha = 2.0 * PI;
        }
        let ratio = alpha / (2.0 * PI);
        k_hyp = k_hyp.max(ratio).max(1.0 / ratio);
        cones.insert(v, SmoothedCone::new(alpha, model.rho)?);
    }
    Ok(SmoothedSurface {
        base: surface.clone(),
        cones,
        k_hyp,
        l_bound: surface.min_vertex_separation(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tetrahedron_cones() {
        let s = smooth_surface(&fixtures::tetrahedron(1.0)).unwrap();
        assert_eq!(s.cones().len(), 4);
        for c in s.cones().values() {
            assert!((c.alpha() - PI).abs() < 1e-14);
            assert!((c.rho() - 3f64.sqrt() / 4.0).abs() < 1e-15);
        }
        assert!((s.k_hyp() - 2.0).abs() < 1e-14);
        assert!((s.curvature_bound() - 1_365.333_333_333_333).abs() < 1e-9);
    }

    #[test]
    fn icosahedron_and_torus() {
        let s = smooth_surface(&fixtures::icosahedron(1.0)).unwrap();
        assert_eq!(s.cones().len(), 12);
        for c in s.cones().values() {
            assert!((c.alpha() - 5.0 * PI / 3.0).abs() < 1e-13);
        }
        assert!((s.k_hyp() - 1.2).abs() < 1e-13);
        assert!((s.curvature_bound() - 163.84).abs() < 1e-9);

        let t = smooth_surface(&fixtures::flat_torus(4, 4, 1.0)).unwrap();
        assert_eq!(t.k_hyp(), 1.0);
        assert_eq!(t.curvature_bound(), 0.0);
        assert!(t.cones().values().all(|c| c.alpha() == 2.0 * PI));
    }

    #[test]
    fn boundary_is_refused() {
        let err = smooth_surface(&fixtures::hexagonal_fan(1.0)).unwrap_err();
        assert!(matches!(err, AssembleError::BoundaryNotSupported(_)));
        assert_eq!(err.code(), "BoundaryNotSupported");
    }

    #[test]
    fn vertex_disks_are_disjoint() {
        for surface in [fixtures::tetrahedron(1.0), fixtures::cube(), fixtures::genus_two()] {
            let s = smooth_surface(&surface).unwrap();
            for (u, v, len) in surface.edges() {
                let sum = s.cone(u).unwrap().rho() + s.cone(v).unwrap().rho();
                assert!(sum <= len + 1e-12);
            }
        }
    }
}
