//! Bounded-geometry certification.
//!
//! A surface is *M-Lipschitz* when every point lies in at most `M` closed
//! simplices and every face is linearly `M`-bi-Lipschitz to the unit standard
//! triangle; it is *M-quasiconformal* when, around each point, some common
//! scale `r` makes the faces there `M`-bi-Lipschitz to the standard triangle
//! of side `r`.
//!
//! Only vertices are checked. A point inside an edge lies in that edge and
//! its two faces, a point inside a face only in the face; both sets are
//! contained in the closed star of either endpoint, so the vertex count
//! bounds theirs and a scale that works for the vertex star works for them.

mod shape;

pub use shape::{singular_values_2x2, ScaleInterval, TriangleShape, ENDPOINT_SLACK};

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::mesh::{ConeAngle, FaceId, MeshError, PolyhedralSurface, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("degenerate triangle with sides ({a}, {b}, {c})")]
    DegenerateTriangle { a: f64, b: f64, c: f64 },
    #[error("invalid surface: {0}")]
    InvalidSurface(#[from] MeshError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl CertifyError {
    pub fn code(&self) -> &'static str {
        match self {
            CertifyError::DegenerateTriangle { .. } => "DegenerateTriangle",
            CertifyError::InvalidSurface(e) => e.code(),
            CertifyError::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    Lipschitz,
    Quasiconformal,
}

/// Cone-angle window: `[2π/K, 2πK]` (hypothesis of the smoothing
/// construction) or `[2π/K², 2πK²]` (necessary for a `K`-bi-Lipschitz
/// smoothing to exist).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    Hypothesis,
    Obstruction,
}

impl Window {
    /// `[lo, hi]` for the given `K`.
    pub fn bounds(self, k: f64) -> (f64, f64) {
        let p = match self {
            Window::Hypothesis => k,
            Window::Obstruction => k * k,
        };
        (2.0 * PI / p, 2.0 * PI * p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Lipschitz,
    Quasiconformal,
    Hypothesis,
    Obstruction,
}

impl From<CertifyMode> for Check {
    fn from(m: CertifyMode) -> Self {
        match m {
            CertifyMode::Lipschitz => Check::Lipschitz,
            CertifyMode::Quasiconformal => Check::Quasiconformal,
        }
    }
}

impl From<Window> for Check {
    fn from(w: Window) -> Self {
        match w {
            Window::Hypothesis => Check::Hypothesis,
            Window::Obstruction => Check::Obstruction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexVerdict {
    pub vertex: VertexId,
    pub boundary: bool,
    /// Closed simplices containing the vertex: faces, edges and the vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex_count: Option<usize>,
    /// Faces containing the vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face_count: Option<usize>,
    /// Scales at which every face of the star is `M`-bi-Lipschitz to the
    /// standard triangle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale_interval: Option<ScaleInterval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone_angle: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceVerdict {
    pub face: FaceId,
    pub vertices: [VertexId; 3],
    /// Target side length the constant refers to.
    pub scale: f64,
    pub bilipschitz_constant: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale_interval: Option<ScaleInterval>,
    pub passed: bool,
}

/// Result of one certification run. Entries are ordered by id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub check: Check,
    /// `M` for the bounded-geometry checks, `K` for the angle windows.
    pub parameter: f64,
    pub verdict: Verdict,
    pub per_vertex: Vec<VertexVerdict>,
    pub per_face: Vec<FaceVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_m: Option<u64>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failing_vertices(&self) -> impl Iterator<Item = &VertexVerdict> {
        self.per_vertex.iter().filter(|v| !v.passed)
    }

    pub fn failing_faces(&self) -> impl Iterator<Item = &FaceVerdict> {
        self.per_face.iter().filter(|f| !f.passed)
    }

    fn new(check: Check, parameter: f64, per_vertex: Vec<VertexVerdict>, per_face: Vec<FaceVerdict>) -> Self {
        let ok = per_vertex.iter().all(|v| v.passed) && per_face.iter().all(|f| f.passed);
        CertificationReport {
            check,
            parameter,
            verdict: Verdict::from_bool(ok),
            per_vertex,
            per_face,
            minimal_m: None,
        }
    }
}

/// `x ≤ bound` up to [`ENDPOINT_SLACK`].
fn within(x: f64, bound: f64) -> bool {
    x <= bound * (1.0 + ENDPOINT_SLACK)
}

/// Vertex, on boundary, simplex count, face count, star face indices.
type VertexEntry = (VertexId, bool, usize, usize, Vec<usize>);
/// Face, corners, shape, unit-target singular values.
type FaceEntry = (FaceId, [VertexId; 3], TriangleShape, (f64, f64));

/// Per-face singular values and per-vertex counts, computed once.
struct Prepared {
    vertices: Vec<VertexEntry>,
    faces: Vec<FaceEntry>,
}

impl Prepared {
    fn new(surface: &PolyhedralSurface) -> Result<Self, CertifyError> {
        let mut faces = Vec::with_capacity(surface.face_count());
        for (id, verts) in surface.faces() {
            let [a, b, c] = surface.face_lengths(id)?;
            let shape = TriangleShape::new(a, b, c)?;
            let sv = shape.affine_singular_values(1.0)?;
            faces.push((id, verts, shape, sv));
        }
        let mut vertices = Vec::with_capacity(surface.vertex_count());
        for v in surface.vertices() {
            let star: Vec<usize> = surface.star(v)?.into_iter().map(|f| f.0).collect();
            let boundary = surface.is_boundary_vertex(v)?;
            let count = star.len() + surface.degree(v)? + 1;
            vertices.push((v, boundary, count, star.len(), star));
        }
        Ok(Prepared { vertices, faces })
    }

    fn face_constant_unit(&self, f: usize) -> f64 {
        let (s1, s2) = self.faces[f].3;
        s1.max(1.0 / s2)
    }

    fn face_interval(&self, f: usize, m: f64) -> ScaleInterval {
        let (s1, s2) = self.faces[f].3;
        ScaleInterval {
            lo: 1.0 / (m * s2),
            hi: m / s1,
        }
    }

    fn star_interval(&self, star: &[usize], m: f64) -> ScaleInterval {
        star.iter().fold(ScaleInterval::everything(), |acc, &f| {
            acc.intersect(self.face_interval(f, m))
        })
    }

    fn passes(&self, mode: CertifyMode, m: f64) -> bool {
        let counts_ok = self.vertices.iter().all(|v| v.2 as f64 <= m);
        counts_ok
            && match mode {
                CertifyMode::Lipschitz => (0..self.faces.len()).all(|f| within(self.face_constant_unit(f), m)),
                CertifyMode::Quasiconformal => self.vertices.iter().all(|v| !self.star_interval(&v.4, m).is_empty()),
            }
    }

    fn lipschitz(&self, m: u64) -> CertificationReport {
        let mf = m as f64;
        let per_face: Vec<FaceVerdict> = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, (id, verts, _, _))| {
                let c = self.face_constant_unit(i);
                FaceVerdict {
                    face: *id,
                    vertices: *verts,
                    scale: 1.0,
                    bilipschitz_constant: c,
                    scale_interval: None,
                    passed: within(c, mf),
                }
            })
            .collect();
        let per_vertex = self
            .vertices
            .iter()
            .map(|(v, boundary, count, faces, star)| {
                let mut failure = None;
                if *count as f64 > mf {
                    failure = Some(format!("{count} simplices contain the vertex, more than {m}"));
                } else if let Some(&f) = star.iter().find(|&&f| !per_face[f].passed) {
                    failure = Some(format!(
                        "incident face {} has constant {} > {m}",
                        f, per_face[f].bilipschitz_constant
                    ));
                }
                VertexVerdict {
                    vertex: *v,
                    boundary: *boundary,
                    simplex_count: Some(*count),
                    face_count: Some(*faces),
                    scale_interval: None,
                    chosen_scale: Some(1.0),
                    cone_angle: None,
                    passed: failure.is_none(),
                    failure,
                }
            })
            .collect();
        CertificationReport::new(Check::Lipschitz, mf, per_vertex, per_face)
    }

    fn quasiconformal(&self, m: u64) -> CertificationReport {
        let mf = m as f64;
        let per_face = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, (id, verts, shape, _))| {
                let (best, at) = shape.optimal_scale();
                let interval = self.face_interval(i, mf);
                FaceVerdict {
                    face: *id,
                    vertices: *verts,
                    scale: at,
                    bilipschitz_constant: best,
                    scale_interval: Some(interval),
                    passed: !interval.is_empty(),
                }
            })
            .collect();
        let per_vertex = self
            .vertices
            .iter()
            .map(|(v, boundary, count, faces, star)| {
                let interval = self.star_interval(star, mf);
                let count_ok = *count as f64 <= mf;
                let failure = if !count_ok {
                    Some(format!("{count} simplices contain the vertex, more than {m}"))
                } else if interval.is_empty() {
                    Some(format!(
                        "no common scale: faces need r >= {} and r <= {}",
                        interval.lo, interval.hi
                    ))
                } else {
                    None
                };
                VertexVerdict {
                    vertex: *v,
                    boundary: *boundary,
                    simplex_count: Some(*count),
                    face_count: Some(*faces),
                    scale_interval: Some(interval),
                    chosen_scale: (!interval.is_empty()).then(|| interval.representative()),
                    cone_angle: None,
                    passed: failure.is_none(),
                    failure,
                }
            })
            .collect();
        CertificationReport::new(Check::Quasiconformal, mf, per_vertex, per_face)
    }
}

fn check_m(m: u64) -> Result<(), CertifyError> {
    if m == 0 {
        Err(CertifyError::InvalidParameter("M must be a positive integer".into()))
    } else {
        Ok(())
    }
}

/// Checks the M-Lipschitz condition at scale 1.
pub fn certify_lipschitz(surface: &PolyhedralSurface, m: u64) -> Result<CertificationReport, CertifyError> {
    check_m(m)?;
    Ok(Prepared::new(surface)?.lipschitz(m))
}

/// Checks the M-quasiconformal condition, choosing one scale per vertex star.
pub fn certify_quasiconformal(surface: &PolyhedralSurface, m: u64) -> Result<CertificationReport, CertifyError> {
    check_m(m)?;
    Ok(Prepared::new(surface)?.quasiconformal(m))
}

/// Runs the certification for `mode` and records the minimal passing `M`.
pub fn certify_with_minimal(
    surface: &PolyhedralSurface,
    mode: CertifyMode,
    m: u64,
) -> Result<CertificationReport, CertifyError> {
    check_m(m)?;
    let prepared = Prepared::new(surface)?;
    let mut report = match mode {
        CertifyMode::Lipschitz => prepared.lipschitz(m),
        CertifyMode::Quasiconformal => prepared.quasiconformal(m),
    };
    report.minimal_m = Some(search_minimal(&prepared, mode)?);
    Ok(report)
}

/// Smallest `M` for which the surface certifies in the given mode.
pub fn minimal_m(surface: &PolyhedralSurface, mode: CertifyMode) -> Result<u64, CertifyError> {
    search_minimal(&Prepared::new(surface)?, mode)
}

fn search_minimal(prepared: &Prepared, mode: CertifyMode) -> Result<u64, CertifyError> {
    const CAP: u64 = 1 << 52;
    let mut hi = 1u64;
    while !prepared.passes(mode, hi as f64) {
        if hi >= CAP {
            return Err(CertifyError::InvalidParameter(format!(
                "no M up to {CAP} certifies the surface"
            )));
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // fails (or is 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if prepared.passes(mode, mid as f64) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Whether `angle` lies in the closed window for `k`, with relative slack
/// [`ENDPOINT_SLACK`] at both ends.
pub fn angle_in_window(angle: f64, k: f64, window: Window) -> bool {
    let (lo, hi) = window.bounds(k);
    angle >= lo * (1.0 - ENDPOINT_SLACK) && angle <= hi * (1.0 + ENDPOINT_SLACK)
}

/// Checks every interior cone angle against the window for `k ≥ 1`.
/// Boundary vertices are listed but never fail.
pub fn angle_window_check(
    surface: &PolyhedralSurface,
    k: f64,
    window: Window,
) -> Result<CertificationReport, CertifyError> {
    if !(k >= 1.0 && k.is_finite()) {
        return Err(CertifyError::InvalidParameter(format!("K must be at least 1, got {k}")));
    }
    let (lo, hi) = window.bounds(k);
    let mut per_vertex = Vec::with_capacity(surface.vertex_count());
    for v in surface.vertices() {
        let angle = surface.cone_angle(v)?;
        let (passed, failure) = match angle {
            ConeAngle::Boundary(_) => (true, None),
            ConeAngle::Interior(a) if angle_in_window(a, k, window) => (true, None),
            ConeAngle::Interior(a) => (false, Some(format!("cone angle {a} outside [{lo}, {hi}]"))),
        };
        per_vertex.push(VertexVerdict {
            vertex: v,
            boundary: angle.is_boundary(),
            simplex_count: None,
            face_count: None,
            scale_interval: None,
            chosen_scale: None,
            cone_angle: Some(angle.radians()),
            passed,
            failure,
        });
    }
    Ok(CertificationReport::new(window.into(), k, per_vertex, Vec::new()))
}

/// A point of the surface, identified by the open simplex containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
    Face(FaceId),
}

/// Number of closed simplices containing a point at `location`, and the
/// scales at which all faces containing it are `m`-bi-Lipschitz to the
/// standard triangle.
pub fn point_requirements(
    surface: &PolyhedralSurface,
    location: Location,
    m: f64,
) -> Result<(usize, ScaleInterval), CertifyError> {
    let faces: Vec<FaceId> = match location {
        Location::Vertex(v) => surface.star(v)?,
        Location::Edge(u, v) => {
            if surface.length(u, v).is_none() {
                return Err(CertifyError::InvalidParameter(format!("({u}, {v}) is not an edge")));
            }
            let sv = surface.star(v)?;
            surface.star(u)?.into_iter().filter(|f| sv.contains(f)).collect()
        }
        Location::Face(f) => {
            surface.face_vertices(f)?;
            vec![f]
        }
    };
    let count = match location {
        Location::Vertex(v) => faces.len() + surface.degree(v)? + 1,
        Location::Edge(..) => faces.len() + 1,
        Location::Face(_) => 1,
    };
    let mut interval = ScaleInterval::everything();
    for f in faces {
        let [a, b, c] = surface.face_lengths(f)?;
        interval = interval.intersect(TriangleShape::new(a, b, c)?.feasible_scales(m));
    }
    Ok((count, interval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn icosahedron_lipschitz_threshold() {
        let s = fixtures::icosahedron(1.0);
        let pass = certify_lipschitz(&s, 11).unwrap();
        assert!(pass.passed());
        assert!(pass
            .per_vertex
            .iter()
            .all(|v| v.simplex_count == Some(11) && v.face_count == Some(5)));
        assert!(pass
            .per_face
            .iter()
            .all(|f| (f.bilipschitz_constant - 1.0).abs() < 1e-12));

        let fail = certify_lipschitz(&s, 10).unwrap();
        assert!(!fail.passed());
        assert_eq!(fail.failing_vertices().count(), 12);
        assert_eq!(fail.failing_faces().count(), 0);
    }

    #[test]
    fn needle_face_fails_small_m() {
        let s = PolyhedralSurface::new(&[0, 1, 2], &[[0, 1, 2]], &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.9)]).unwrap();
        let r = certify_lipschitz(&s, 2).unwrap();
        assert!(!r.passed());
        let face = &r.per_face[0];
        assert!(!face.passed && face.bilipschitz_constant > 2.0);
    }

    #[test]
    fn minimal_m_examples() {
        assert_eq!(
            minimal_m(&fixtures::tetrahedron(1.0), CertifyMode::Lipschitz).unwrap(),
            7
        );
        assert_eq!(
            minimal_m(&fixtures::icosahedron(1.0), CertifyMode::Lipschitz).unwrap(),
            11
        );
        // Scale-free: the tiny icosahedron is as good as the unit one for qc.
        let tiny = fixtures::icosahedron(0.01);
        assert_eq!(minimal_m(&tiny, CertifyMode::Quasiconformal).unwrap(), 11);
        assert_eq!(minimal_m(&tiny, CertifyMode::Lipschitz).unwrap(), 100);
        assert!(certify_quasiconformal(&tiny, 11).unwrap().passed());
        let r = certify_quasiconformal(&tiny, 11).unwrap();
        let scale = r.per_vertex[0].chosen_scale.unwrap();
        assert!((scale - 0.01).abs() < 1e-12);
    }

    #[test]
    fn certify_with_minimal_records_m() {
        let r = certify_with_minimal(&fixtures::tetrahedron(1.0), CertifyMode::Lipschitz, 3).unwrap();
        assert!(!r.passed());
        assert_eq!(r.minimal_m, Some(7));
    }

    #[test]
    fn zero_m_and_bad_k_are_rejected() {
        let t = fixtures::tetrahedron(1.0);
        assert!(certify_lipschitz(&t, 0).is_err());
        assert!(angle_window_check(&t, 0.5, Window::Hypothesis).is_err());
    }

    #[test]
    fn tetrahedron_windows() {
        let t = fixtures::tetrahedron(1.0);
        assert!(angle_window_check(&t, 2.0, Window::Hypothesis).unwrap().passed());
        let r = angle_window_check(&t, 1.9, Window::Hypothesis).unwrap();
        assert!(!r.passed() && r.failing_vertices().count() == 4);
        assert!(angle_window_check(&t, 1.5, Window::Obstruction).unwrap().passed());
    }

    #[test]
    fn point_requirements_on_edges_and_faces() {
        let s = fixtures::icosahedron(1.0);
        let (u, v, _) = s.edges().next().unwrap();
        let (n, i) = point_requirements(&s, Location::Edge(u, v), 11.0).unwrap();
        assert_eq!(n, 3);
        assert!(!i.is_empty());
        let (n, _) = point_requirements(&s, Location::Face(FaceId(0)), 11.0).unwrap();
        assert_eq!(n, 1);
        let (n, _) = point_requirements(&s, Location::Vertex(VertexId(0)), 11.0).unwrap();
        assert_eq!(n, 11);
    }

    #[test]
    fn report_serializes_with_stable_keys() {
        let r = certify_lipschitz(&fixtures::tetrahedron(1.0), 7).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"check":"lipschitz","parameter":7.0,"verdict":"pass","per_vertex":[{"vertex":0,"#));
    }
}
