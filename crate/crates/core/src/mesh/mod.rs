//! Intrinsic triangulated surfaces.
//!
//! A [`PolyhedralSurface`] is a closed (or bounded) 2-manifold simplicial
//! complex together with a length for every edge. Nothing is embedded; every
//! face is realised as the flat triangle with its three recorded lengths.

mod geometry;
mod io;

pub(crate) use geometry::triangle_area;
pub use geometry::{ConeAngle, VertexCone};
pub use io::{IntrinsicDocument, LengthRecord};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Relative slack under which a triangle is considered degenerate.
pub const TRIANGLE_SLACK: f64 = 1e-12;

/// External vertex identifier, as it appears in input documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a face in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("malformed document: {0}")]
    MalformedDocument(String),
    #[error("edge ({u}, {v}) has non-positive or non-finite length {len}")]
    NonPositiveLength { u: VertexId, v: VertexId, len: f64 },
    #[error("edge ({u}, {v}) is used by a face but has no recorded length")]
    MissingEdgeLength { u: VertexId, v: VertexId },
    #[error("face {face} with lengths ({a}, {b}, {c}) violates the strict triangle inequality")]
    TriangleInequalityViolation { face: FaceId, a: f64, b: f64, c: f64 },
    #[error("edge ({u}, {v}) is shared by {count} faces")]
    NonManifoldEdge { u: VertexId, v: VertexId, count: usize },
    #[error("link of vertex {vertex} is not a single cycle or path: {reason}")]
    BadVertexLink { vertex: VertexId, reason: String },
    #[error("surface is disconnected: vertex {vertex} is unreachable from vertex {root}")]
    DisconnectedSurface { root: VertexId, vertex: VertexId },
    #[error("face {face} has {count} vertices; only triangles are supported")]
    NonTriangularFace { face: FaceId, count: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("vertex {vertex} is not a corner of face {face}")]
    VertexNotInFace { face: FaceId, vertex: VertexId },
}

impl MeshError {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            MeshError::MalformedDocument(_) => "MalformedDocument",
            MeshError::NonPositiveLength { .. } => "NonPositiveLength",
            MeshError::MissingEdgeLength { .. } => "MissingEdgeLength",
            MeshError::TriangleInequalityViolation { .. } => "TriangleInequalityViolation",
            MeshError::NonManifoldEdge { .. } => "NonManifoldEdge",
            MeshError::BadVertexLink { .. } => "BadVertexLink",
            MeshError::DisconnectedSurface { .. } => "DisconnectedSurface",
            MeshError::NonTriangularFace { .. } => "NonTriangularFace",
            MeshError::UnknownVertex(_) => "UnknownVertex",
            MeshError::UnknownFace(_) => "UnknownFace",
            MeshError::VertexNotInFace { .. } => "VertexNotInFace",
        }
    }
}

pub(crate) type Edge = (usize, usize);

pub(crate) fn edge_key(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Validated intrinsic surface. Immutable after construction.
#[derive(Debug, Clone)]
pub struct PolyhedralSurface {
    ids: Vec<VertexId>,
    index_of: HashMap<VertexId, usize>,
    faces: Vec<[usize; 3]>,
    lengths: BTreeMap<Edge, f64>,
    edge_faces: BTreeMap<Edge, Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    boundary: Vec<bool>,
}

impl PolyhedralSurface {
    /// Builds and validates a surface.
    ///
    /// `vertices` are external ids, `faces` reference them, and `lengths`
    /// lists every edge exactly once as an unordered pair.
    pub fn new(vertices: &[u64], faces: &[[u64; 3]], lengths: &[(u64, u64, f64)]) -> Result<Self, MeshError> {
        let mut ids: Vec<VertexId> = vertices.iter().map(|&v| VertexId(v)).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(MeshError::MalformedDocument(format!("vertex id {} listed twice", w[0])));
        }
        if ids.is_empty() {
            return Err(MeshError::MalformedDocument("no vertices".into()));
        }
        let index_of: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let lookup = |v: u64| {
            index_of
                .get(&VertexId(v))
                .copied()
                .ok_or_else(|| MeshError::MalformedDocument(format!("reference to undeclared vertex {v}")))
        };

        let mut edge_lengths = BTreeMap::new();
        for &(u, v, len) in lengths {
            let (iu, iv) = (lookup(u)?, lookup(v)?);
            if iu == iv {
                return Err(MeshError::MalformedDocument(format!(
                    "edge length record ({u}, {v}) is a loop"
                )));
            }
            if !(len.is_finite() && len > 0.0) {
                return Err(MeshError::NonPositiveLength {
                    u: VertexId(u),
                    v: VertexId(v),
                    len,
                });
            }
            if edge_lengths.insert(edge_key(iu, iv), len).is_some() {
                return Err(MeshError::MalformedDocument(format!(
                    "edge ({u}, {v}) has more than one length record"
                )));
            }
        }

        if faces.is_empty() {
            return Err(MeshError::MalformedDocument("no faces".into()));
        }
        let mut tris = Vec::with_capacity(faces.len());
        let mut seen_faces = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            let t = [lookup(f[0])?, lookup(f[1])?, lookup(f[2])?];
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(MeshError::MalformedDocument(format!("face {fi} repeats a vertex")));
            }
            let mut key = t;
            key.sort_unstable();
            if let Some(prev) = seen_faces.insert(key, fi) {
                return Err(MeshError::MalformedDocument(format!(
                    "faces {prev} and {fi} have the same vertices"
                )));
            }
            tris.push(t);
        }

        let mut surface = PolyhedralSurface {
            boundary: vec![false; ids.len()],
            vertex_faces: vec![Vec::new(); ids.len()],
            ids,
            index_of,
            faces: tris,
            lengths: edge_lengths,
            edge_faces: BTreeMap::new(),
        };
        surface.validate()?;
        Ok(surface)
    }

    fn validate(&mut self) -> Result<(), MeshError> {
        for (fi, t) in self.faces.iter().enumerate() {
            for k in 0..3 {
                let e = edge_key(t[k], t[(k + 1) % 3]);
                if !self.lengths.contains_key(&e) {
                    return Err(MeshError::MissingEdgeLength {
                        u: self.ids[e.0],
                        v: self.ids[e.1],
                    });
                }
                self.edge_faces.entry(e).or_default().push(fi);
                self.vertex_faces[t[k]].push(fi);
            }
            let [a, b, c] = self.face_lengths_raw(fi);
            if !strict_triangle(a, b, c) {
                return Err(MeshError::TriangleInequalityViolation {
                    face: FaceId(fi),
                    a,
                    b,
                    c,
                });
            }
        }

        if let Some(&(u, v)) = self.lengths.keys().find(|e| !self.edge_faces.contains_key(e)) {
            return Err(MeshError::MalformedDocument(format!(
                "edge ({}, {}) is not used by any face",
                self.ids[u], self.ids[v]
            )));
        }
        for (&(u, v), fs) in &self.edge_faces {
            if fs.len() > 2 {
                return Err(MeshError::NonManifoldEdge {
                    u: self.ids[u],
                    v: self.ids[v],
                    count: fs.len(),
                });
            }
        }

        for v in 0..self.ids.len() {
            self.boundary[v] = self.check_link(v)?;
        }
        self.check_connected()
    }

    /// Checks that the link of `v` is one cycle or one path; returns whether
    /// it is a path (boundary vertex).
    fn check_link(&self, v: usize) -> Result<bool, MeshError> {
        let bad = |reason: &str| MeshError::BadVertexLink {
            vertex: self.ids[v],
            reason: reason.to_string(),
        };
        let faces = &self.vertex_faces[v];
        if faces.is_empty() {
            return Err(bad("vertex belongs to no face"));
        }
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &f in faces {
            let [a, b] = self.opposite_pair(f, v);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        // Edge multiplicities are at most 2 here, so link degrees are 1 or 2.
        let ends = adj.values().filter(|n| n.len() == 1).count();
        let start = *adj.keys().next().expect("non-empty link");
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        if seen.len() != adj.len() {
            return Err(bad("link has more than one component"));
        }
        match ends {
            0 => Ok(false),
            2 => Ok(true),
            _ => Err(bad("link branches")),
        }
    }

    fn check_connected(&self) -> Result<(), MeshError> {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &f in &self.vertex_faces[v] {
                for &w in &self.faces[f] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(w) => Err(MeshError::DisconnectedSurface {
                root: self.ids[0],
                vertex: self.ids[w],
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn index(&self, v: VertexId) -> Result<usize, MeshError> {
        self.index_of.get(&v).copied().ok_or(MeshError::UnknownVertex(v))
    }

    pub(crate) fn tri(&self, face: FaceId) -> Result<[usize; 3], MeshError> {
        self.faces.get(face.0).copied().ok_or(MeshError::UnknownFace(face))
    }

    pub(crate) fn incident_faces(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    pub(crate) fn edge_length(&self, a: usize, b: usize) -> f64 {
        self.lengths[&edge_key(a, b)]
    }

    /// The two corners of face `f` other than `v`.
    pub(crate) fn opposite_pair(&self, f: usize, v: usize) -> [usize; 2] {
        let t = self.faces[f];
        let k = t.iter().position(|&x| x == v).expect("vertex in face");
        [t[(k + 1) % 3], t[(k + 2) % 3]]
    }

    /// Lengths of `f` as `[|t0 t1|, |t1 t2|, |t2 t0|]`.
    fn face_lengths_raw(&self, f: usize) -> [f64; 3] {
        let t = self.faces[f];
        [
            self.edge_length(t[0], t[1]),
            self.edge_length(t[1], t[2]),
            self.edge_length(t[2], t[0]),
        ]
    }

    /// Vertex ids in increasing order.
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn faces(&self) -> impl ExactSizeIterator<Item = (FaceId, [VertexId; 3])> + '_ {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, t)| (FaceId(i), t.map(|v| self.ids[v])))
    }

    /// Edges as `(u, v, length)` with `u < v`, ordered by vertex index.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.lengths
            .iter()
            .map(|(&(a, b), &len)| (self.ids[a], self.ids[b], len))
    }

    pub fn length(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let (a, b) = (self.index(u).ok()?, self.index(v).ok()?);
        self.lengths.get(&edge_key(a, b)).copied()
    }

    /// Side lengths `[|v0 v1|, |v1 v2|, |v2 v0|]` of a face.
    pub fn face_lengths(&self, face: FaceId) -> Result<[f64; 3], MeshError> {
        self.tri(face)?;
        Ok(self.face_lengths_raw(face.0))
    }

    pub fn face_vertices(&self, face: FaceId) -> Result<[VertexId; 3], MeshError> {
        Ok(self.tri(face)?.map(|v| self.ids[v]))
    }

    /// Faces containing `v`, in increasing order.
    pub fn star(&self, v: VertexId) -> Result<Vec<FaceId>, MeshError> {
        let i = self.index(v)?;
        let mut fs: Vec<FaceId> = self.vertex_faces[i].iter().map(|&f| FaceId(f)).collect();
        fs.sort();
        Ok(fs)
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize, MeshError> {
        let i = self.index(v)?;
        let faces = self.vertex_faces[i].len();
        Ok(if self.boundary[i] { faces + 1 } else { faces })
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> Result<bool, MeshError> {
        Ok(self.boundary[self.index(v)?])
    }

    pub fn is_closed(&self) -> bool {
        !self.boundary.iter().any(|&b| b)
    }

    /// V − E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.ids.len() as i64 - self.lengths.len() as i64 + self.faces.len() as i64
    }

    /// Copy with every edge length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self, MeshError> {
        let mut out = self.clone();
        for len in out.lengths.values_mut() {
            *len *= s;
        }
        for (fi, _) in self.faces.iter().enumerate() {
            let [a, b, c] = out.face_lengths_raw(fi);
            if !(a > 0.0 && b > 0.0 && c > 0.0) {
                let t = self.faces[fi];
                return Err(MeshError::NonPositiveLength {
                    u: self.ids[t[0]],
                    v: self.ids[t[1]],
                    len: a.min(b).min(c),
                });
            }
            if !strict_triangle(a, b, c) {
                return Err(MeshError::TriangleInequalityViolation {
                    face: FaceId(fi),
                    a,
                    b,
                    c,
                });
            }
        }
        Ok(out)
    }
}

/// Strict triangle inequality with relative slack [`TRIANGLE_SLACK`].
pub(crate) fn strict_triangle(a: f64, b: f64, c: f64) -> bool {
    let m = a.max(b).max(c);
    let slack = TRIANGLE_SLACK * m;
    a + b - c > slack && b + c - a > slack && c + a - b > slack
}
