use std::f64::consts::PI;

use super::{FaceId, MeshError, PolyhedralSurface, VertexId};

/// Cone angle at a vertex. Boundary vertices get the sum of their corner
/// angles too, but that number is not the angle of a cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeAngle {
    Interior(f64),
    Boundary(f64),
}

impl ConeAngle {
    pub fn radians(self) -> f64 {
        match self {
            ConeAngle::Interior(a) | ConeAngle::Boundary(a) => a,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, ConeAngle::Boundary(_))
    }
}

/// The flat cone model around a vertex: angle `alpha`, valid out to `rho`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VertexCone {
    pub vertex: VertexId,
    pub alpha: f64,
    pub rho: f64,
}

/// Angle opposite to side `a` in the flat triangle `(a, b, c)`.
pub(crate) fn law_of_cosines(a: f64, b: f64, c: f64) -> f64 {
    let cos = (b * b + c * c - a * a) / (2.0 * b * c);
    cos.clamp(-1.0, 1.0).acos()
}

/// Area of the flat triangle with sides `a, b, c` (Kahan's formulation).
pub(crate) fn triangle_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * p.max(0.0).sqrt()
}

impl PolyhedralSurface {
    pub(crate) fn corner_angle_at(&self, f: usize, v: usize) -> f64 {
        let [p, q] = self.opposite_pair(f, v);
        let b = self.edge_length(v, p);
        let c = self.edge_length(v, q);
        let a = self.edge_length(p, q);
        law_of_cosines(a, b, c)
    }

    pub(crate) fn cone_angle_at(&self, v: usize) -> f64 {
        self.incident_faces(v).iter().map(|&f| self.corner_angle_at(f, v)).sum()
    }

    pub(crate) fn safe_radius_at(&self, v: usize) -> f64 {
        let mut m = f64::INFINITY;
        for &f in self.incident_faces(v) {
            let [p, q] = self.opposite_pair(f, v);
            let b = self.edge_length(v, p);
            let c = self.edge_length(v, q);
            let a = self.edge_length(p, q);
            let height = 2.0 * triangle_area(a, b, c) / a;
            m = m.min(b).min(c).min(height);
        }
        0.5 * m
    }

    /// Interior angle of `face` at `vertex`, in `(0, π)`.
    pub fn corner_angle(&self, face: FaceId, vertex: VertexId) -> Result<f64, MeshError> {
        let t = self.tri(face)?;
        let v = self.index(vertex)?;
        if !t.contains(&v) {
            return Err(MeshError::VertexNotInFace { face, vertex });
        }
        Ok(self.corner_angle_at(face.0, v))
    }

    /// Sum of the corner angles at `vertex`.
    ///
    /// For an interior vertex and any `r < safe_radius`, this is the length of
    /// the circle of radius `r` about the vertex divided by `r`.
    pub fn cone_angle(&self, vertex: VertexId) -> Result<ConeAngle, MeshError> {
        let v = self.index(vertex)?;
        let a = self.cone_angle_at(v);
        Ok(if self.boundary[v] {
            ConeAngle::Boundary(a)
        } else {
            ConeAngle::Interior(a)
        })
    }

    /// `2π − cone_angle` at an interior vertex (`π − angle` on the boundary,
    /// i.e. the geodesic curvature of the boundary there).
    pub fn angle_defect(&self, vertex: VertexId) -> Result<f64, MeshError> {
        Ok(match self.cone_angle(vertex)? {
            ConeAngle::Interior(a) => 2.0 * PI - a,
            ConeAngle::Boundary(a) => PI - a,
        })
    }

    /// Sum of [`Self::angle_defect`] over all vertices. Equals `2πχ`.
    pub fn total_angle_defect(&self) -> f64 {
        self.vertices()
            .map(|v| self.angle_defect(v).expect("known vertex"))
            .sum()
    }

    /// Half the minimum over the star of `vertex` of the incident edge
    /// lengths and the heights from `vertex` onto the opposite edges.
    ///
    /// The open disk of this radius about the vertex stays inside the star,
    /// contains no other vertex, and is isometric to a cone.
    pub fn safe_radius(&self, vertex: VertexId) -> Result<f64, MeshError> {
        Ok(self.safe_radius_at(self.index(vertex)?))
    }

    /// Cone model `(α, ρ)` at a vertex.
    pub fn vertex_cone(&self, vertex: VertexId) -> Result<VertexCone, MeshError> {
        let v = self.index(vertex)?;
        Ok(VertexCone {
            vertex,
            alpha: self.cone_angle_at(v),
            rho: self.safe_radius_at(v),
        })
    }

    /// Lower bound for the smallest distance between two distinct vertices:
    /// `2 · min_v safe_radius(v)`.
    pub fn min_vertex_separation(&self) -> f64 {
        (0..self.vertex_count())
            .map(|v| 2.0 * self.safe_radius_at(v))
            .fold(f64::INFINITY, f64::min)
    }
}
