//! Input and output formats: the intrinsic JSON document and embedded ASCII OFF.

use serde::{Deserialize, Serialize};

use super::{FaceId, MeshError, PolyhedralSurface};

/// `{"vertices": [..], "faces": [[i,j,k], ..], "edge_lengths": [{"u","v","len"}, ..]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntrinsicDocument {
    pub vertices: Vec<u64>,
    pub faces: Vec<[u64; 3]>,
    pub edge_lengths: Vec<LengthRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthRecord {
    pub u: u64,
    pub v: u64,
    pub len: f64,
}

impl IntrinsicDocument {
    pub fn into_surface(self) -> Result<PolyhedralSurface, MeshError> {
        let lengths: Vec<_> = self.edge_lengths.iter().map(|r| (r.u, r.v, r.len)).collect();
        PolyhedralSurface::new(&self.vertices, &self.faces, &lengths)
    }
}

impl PolyhedralSurface {
    /// Parses and validates an intrinsic JSON document.
    pub fn from_json_str(doc: &str) -> Result<Self, MeshError> {
        let doc: IntrinsicDocument =
            serde_json::from_str(doc).map_err(|e| MeshError::MalformedDocument(e.to_string()))?;
        doc.into_surface()
    }

    pub fn to_document(&self) -> IntrinsicDocument {
        IntrinsicDocument {
            vertices: self.vertices().map(|v| v.0).collect(),
            faces: self.faces().map(|(_, t)| t.map(|v| v.0)).collect(),
            edge_lengths: self
                .edges()
                .map(|(u, v, len)| LengthRecord { u: u.0, v: v.0, len })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    /// Reads an ASCII OFF file with 3-D coordinates and triangular faces.
    ///
    /// Vertex ids are the 0-based positions in the file; edge lengths are the
    /// Euclidean distances between coordinates.
    pub fn from_off_str(doc: &str) -> Result<Self, MeshError> {
        let malformed = |msg: String| MeshError::MalformedDocument(msg);
        let mut tokens = doc
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);

        match tokens.next() {
            Some("OFF") => {}
            Some(t) if t.starts_with("OFF") => return Err(malformed(format!("unsupported OFF variant '{t}'"))),
            _ => return Err(malformed("missing OFF header".into())),
        }
        let mut count = |what: &str| -> Result<usize, MeshError> {
            tokens
                .next()
                .ok_or_else(|| malformed(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| malformed(format!("bad {what}: {e}")))
        };
        let nv = count("vertex count")?;
        let nf = count("face count")?;
        let _ne = count("edge count")?;

        // Rest is parsed line by line: face lines may carry trailing colour values.
        let body: Vec<Vec<&str>> = doc
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>())
            .filter(|l| !l.is_empty())
            .collect();
        let header_lines = header_line_count(&body);
        let rows = &body[header_lines..];
        if rows.len() < nv + nf {
            return Err(malformed(format!(
                "expected {} vertex and face lines, found {}",
                nv + nf,
                rows.len()
            )));
        }

        let mut coords = Vec::with_capacity(nv);
        for (i, row) in rows[..nv].iter().enumerate() {
            if row.len() < 3 {
                return Err(malformed(format!("vertex {i} has fewer than 3 coordinates")));
            }
            let mut p = [0.0; 3];
            for k in 0..3 {
                p[k] = row[k]
                    .parse::<f64>()
                    .map_err(|e| malformed(format!("vertex {i}: {e}")))?;
                if !p[k].is_finite() {
                    return Err(malformed(format!("vertex {i} has a non-finite coordinate")));
                }
            }
            coords.push(p);
        }

        let mut faces = Vec::with_capacity(nf);
        for (fi, row) in rows[nv..nv + nf].iter().enumerate() {
            let n: usize = row[0].parse().map_err(|e| malformed(format!("face {fi}: {e}")))?;
            if n != 3 {
                return Err(MeshError::NonTriangularFace {
                    face: FaceId(fi),
                    count: n,
                });
            }
            if row.len() < 4 {
                return Err(malformed(format!("face {fi} lists fewer than 3 indices")));
            }
            let mut t = [0u64; 3];
            for k in 0..3 {
                let idx: usize = row[k + 1].parse().map_err(|e| malformed(format!("face {fi}: {e}")))?;
                if idx >= nv {
                    return Err(malformed(format!("face {fi} references vertex {idx}")));
                }
                t[k] = idx as u64;
            }
            faces.push(t);
        }

        PolyhedralSurface::from_embedding(&coords, &faces)
    }

    /// Surface whose edge lengths are the Euclidean distances between the
    /// given 3-D points; vertex ids are the point indices.
    pub fn from_embedding(coords: &[[f64; 3]], faces: &[[u64; 3]]) -> Result<Self, MeshError> {
        let mut lengths = std::collections::BTreeMap::new();
        for t in faces {
            for k in 0..3 {
                let (a, b) = (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]));
                let (pa, pb) = match (coords.get(a as usize), coords.get(b as usize)) {
                    (Some(&pa), Some(&pb)) => (pa, pb),
                    _ => {
                        return Err(MeshError::MalformedDocument(format!(
                            "face references vertex {} without coordinates",
                            b.max(a)
                        )))
                    }
                };
                lengths.entry((a, b)).or_insert_with(|| distance(pa, pb));
            }
        }
        let lengths: Vec<_> = lengths.into_iter().map(|((a, b), l)| (a, b, l)).collect();
        let vertices: Vec<u64> = (0..coords.len() as u64).collect();
        PolyhedralSurface::new(&vertices, faces, &lengths)
    }
}

/// Number of non-empty lines occupied by `OFF` and the three counts.
fn header_line_count(lines: &[Vec<&str>]) -> usize {
    let mut tokens = 0;
    for (i, l) in lines.iter().enumerate() {
        tokens += l.len();
        if tokens >= 4 {
            return i + 1;
        }
    }
    lines.len()
}

fn distance(p: [f64; 3], q: [f64; 3]) -> f64 {
    let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}
