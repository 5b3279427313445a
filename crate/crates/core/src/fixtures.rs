//! Reference surfaces used by the examples, the CLI tests and the acceptance
//! suite.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::mesh::PolyhedralSurface;

/// Regular tetrahedron with the given edge length.
pub fn tetrahedron(edge: f64) -> PolyhedralSurface {
    let faces = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    let mut lengths = Vec::new();
    for u in 0..4 {
        for v in u + 1..4 {
            lengths.push((u, v, edge));
        }
    }
    PolyhedralSurface::new(&[0, 1, 2, 3], &faces, &lengths).expect("valid tetrahedron")
}

/// Vertex 0 surrounded by six equilateral faces; vertices 1..=6 lie on the
/// boundary.
pub fn hexagonal_fan(edge: f64) -> PolyhedralSurface {
    let mut faces = Vec::new();
    let mut lengths = Vec::new();
    for k in 1..=6u64 {
        let next = k % 6 + 1;
        faces.push([0, k, next]);
        lengths.push((0, k, edge));
        lengths.push((k.min(next), k.max(next), edge));
    }
    PolyhedralSurface::new(&[0, 1, 2, 3, 4, 5, 6], &faces, &lengths).expect("valid fan")
}

/// Regular octahedron with unit edges.
pub fn octahedron() -> PolyhedralSurface {
    let coords = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
    .map(|p: [f64; 3]| p.map(|x| x / 2f64.sqrt()));
    let faces = [
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    PolyhedralSurface::from_embedding(&coords, &faces).expect("valid octahedron")
}

/// Unit cube with each square split along a diagonal.
pub fn cube() -> PolyhedralSurface {
    let coords = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 1.0],
        [1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0],
    ];
    let faces = [
        [0, 2, 1],
        [0, 3, 2],
        [4, 5, 6],
        [4, 6, 7],
        [0, 1, 5],
        [0, 5, 4],
        [1, 2, 6],
        [1, 6, 5],
        [2, 3, 7],
        [2, 7, 6],
        [3, 0, 4],
        [3, 4, 7],
    ];
    PolyhedralSurface::from_embedding(&coords, &faces).expect("valid cube")
}

/// Vertex coordinates and faces of the regular icosahedron with the given
/// edge length.
pub fn icosahedron_embedding(edge: f64) -> (Vec<[f64; 3]>, Vec<[u64; 3]>) {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut coords = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-g, g] {
            coords.push([0.0, a, b]);
            coords.push([a, b, 0.0]);
            coords.push([b, 0.0, a]);
        }
    }
    // Canonical coordinates have edge 2.
    let coords: Vec<[f64; 3]> = coords.iter().map(|p| p.map(|x| x * edge / 2.0)).collect();
    let close = |i: usize, j: usize| {
        let d: f64 = (0..3).map(|k| (coords[i][k] - coords[j][k]).powi(2)).sum();
        (d.sqrt() - edge).abs() < 1e-9 * edge
    };
    let mut faces = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if close(i, j) && close(j, k) && close(i, k) {
                    faces.push([i as u64, j as u64, k as u64]);
                }
            }
        }
    }
    (coords, faces)
}

/// Regular icosahedron; edge lengths are recomputed from coordinates.
pub fn icosahedron(edge: f64) -> PolyhedralSurface {
    let (coords, faces) = icosahedron_embedding(edge);
    PolyhedralSurface::from_embedding(&coords, &faces).expect("valid icosahedron")
}

/// Flat torus: an `n × m` grid of equilateral triangles with periodic
/// identifications. Every vertex has six incident faces and cone angle 2π.
/// Needs `n, m ≥ 3`.
pub fn flat_torus(n: u64, m: u64, edge: f64) -> PolyhedralSurface {
    assert!(n >= 3 && m >= 3, "grid torus needs at least 3x3 cells");
    let id = |i: u64, j: u64| (i % n) + n * (j % m);
    let mut faces = Vec::new();
    let mut lengths = BTreeMap::new();
    for j in 0..m {
        for i in 0..n {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            faces.push([a, b, c]);
            faces.push([b, d, c]);
            for (u, v) in [(a, b), (b, c), (c, a), (b, d), (d, c)] {
                lengths.insert((u.min(v), u.max(v)), edge);
            }
        }
    }
    let lengths: Vec<_> = lengths.into_iter().map(|((u, v), l)| (u, v, l)).collect();
    let vertices: Vec<u64> = (0..n * m).collect();
    PolyhedralSurface::new(&vertices, &faces, &lengths).expect("valid torus")
}

/// Genus-2 surface from a regular octagon with side word `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹`.
///
/// Each side is split in three, an inner ring of 24 points and a centre point
/// triangulate the interior. All eight corners become one vertex of cone
/// angle 6π; every other vertex is flat, so the angle defects sum to −4π.
pub fn genus_two() -> PolyhedralSurface {
    const CORNERS: usize = 8;
    const RING: usize = 3 * CORNERS;
    let corner = |k: usize| {
        let t = 2.0 * PI * (k % CORNERS) as f64 / CORNERS as f64 + PI / 8.0;
        [t.cos(), t.sin()]
    };
    let boundary_point = |j: usize| {
        let (k, i) = (j / 3, (j % 3) as f64 / 3.0);
        let (p, q) = (corner(k), corner(k + 1));
        [p[0] + i * (q[0] - p[0]), p[1] + i * (q[1] - p[1])]
    };

    // Side k carries (label, reversed).
    let word = [
        (0, false),
        (1, false),
        (0, true),
        (1, true),
        (2, false),
        (3, false),
        (2, true),
        (3, true),
    ];
    // Ids: 0 = the corner vertex, 1..=8 side points, 9..=32 inner ring, 33 centre.
    let boundary_id = |j: usize| -> u64 {
        let (k, i) = (j / 3 % CORNERS, j % 3);
        if i == 0 {
            return 0;
        }
        let (label, reversed) = word[k];
        let i = if reversed { 3 - i } else { i };
        1 + 2 * label as u64 + (i as u64 - 1)
    };
    let inner_id = |j: usize| 9 + (j % RING) as u64;
    let centre = 33u64;

    let mut pos: BTreeMap<u64, [f64; 2]> = BTreeMap::new();
    let mut planar: Vec<([u64; 3], [[f64; 2]; 3])> = Vec::new();
    pos.insert(centre, [0.0, 0.0]);
    for j in 0..RING {
        let b0 = boundary_point(j);
        let b1 = boundary_point(j + 1);
        let i0 = b0.map(|x| 0.55 * x);
        let i1 = b1.map(|x| 0.55 * x);
        pos.insert(inner_id(j), i0);
        let (bj, bk, ij, ik) = (boundary_id(j), boundary_id(j + 1), inner_id(j), inner_id(j + 1));
        planar.push(([bj, bk, ik], [b0, b1, i1]));
        planar.push(([bj, ik, ij], [b0, i1, i0]));
        planar.push(([ij, ik, centre], [i0, i1, [0.0, 0.0]]));
    }

    let mut lengths = BTreeMap::new();
    for (ids, pts) in &planar {
        for k in 0..3 {
            let (u, v) = (ids[k], ids[(k + 1) % 3]);
            let (p, q) = (pts[k], pts[(k + 1) % 3]);
            let len = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            lengths.entry((u.min(v), u.max(v))).or_insert(len);
        }
    }
    let faces: Vec<[u64; 3]> = planar.iter().map(|(ids, _)| *ids).collect();
    let lengths: Vec<_> = lengths.into_iter().map(|((u, v), l)| (u, v, l)).collect();
    let vertices: Vec<u64> = (0..=centre).collect();
    PolyhedralSurface::new(&vertices, &faces, &lengths).expect("valid genus-2 surface")
}
