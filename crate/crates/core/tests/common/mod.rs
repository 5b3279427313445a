//! Random mesh generators and independent oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::PI;

use polysmooth::fixtures;
use polysmooth::{PolyhedralSurface, VertexId};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Loop-style midpoint subdivision of a triangle list, points pushed to the
/// unit sphere.
fn subdivide(points: &mut Vec<[f64; 3]>, faces: &[[u64; 3]]) -> Vec<[u64; 3]> {
    let mut mids: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut mid = |a: u64, b: u64, points: &mut Vec<[f64; 3]>| -> u64 {
        let key = (a.min(b), a.max(b));
        *mids.entry(key).or_insert_with(|| {
            let (p, q) = (points[a as usize], points[b as usize]);
            let m = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, (p[2] + q[2]) / 2.0];
            points.push(m);
            points.len() as u64 - 1
        })
    };
    let mut out = Vec::with_capacity(faces.len() * 4);
    for &[a, b, c] in faces {
        let (ab, bc, ca) = (mid(a, b, points), mid(b, c, points), mid(c, a, points));
        out.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
    }
    out
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

/// Jittered sphere: icosahedron subdivided `levels` times (20·4^levels
/// faces), vertices pushed radially by up to `jitter` relative, then scaled.
pub fn random_sphere(rng: &mut TestRng, levels: u32, jitter: f64) -> PolyhedralSurface {
    let (mut pts, mut faces) = fixtures::icosahedron_embedding(1.0);
    for _ in 0..levels {
        faces = subdivide(&mut pts, &faces);
    }
    let scale = rng.gen_range(0.5..3.0);
    let pts: Vec<[f64; 3]> = pts
        .into_iter()
        .map(|p| {
            let q = normalize(p);
            let s = scale * (1.0 + rng.gen_range(-jitter..=jitter));
            [q[0] * s, q[1] * s, q[2] * s]
        })
        .collect();
    PolyhedralSurface::from_embedding(&pts, &faces).expect("jittered sphere is valid")
}

/// Jittered torus of revolution on an `n × m` grid (`2nm` faces).
pub fn random_torus(rng: &mut TestRng, n: u64, m: u64, jitter: f64) -> PolyhedralSurface {
    let big = rng.gen_range(2.0..4.0);
    let small = rng.gen_range(0.6..1.2);
    let mut pts = Vec::new();
    for i in 0..n {
        for j in 0..m {
            let u = 2.0 * PI * (i as f64 + rng.gen_range(-jitter..=jitter)) / n as f64;
            let v = 2.0 * PI * (j as f64 + rng.gen_range(-jitter..=jitter)) / m as f64;
            let w = big + small * v.cos();
            pts.push([w * u.cos(), w * u.sin(), small * v.sin()]);
        }
    }
    let id = |i: u64, j: u64| (i % n) * m + (j % m);
    let mut faces = Vec::new();
    for i in 0..n {
        for j in 0..m {
            faces.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            faces.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    PolyhedralSurface::from_embedding(&pts, &faces).expect("jittered torus is valid")
}

/// A random closed mesh with at most `max_faces` faces.
pub fn random_closed(rng: &mut TestRng, max_faces: usize) -> PolyhedralSurface {
    loop {
        let s = if rng.gen_bool(0.5) {
            let levels = if max_faces >= 320 {
                rng.gen_range(0..=2)
            } else if max_faces >= 80 {
                rng.gen_range(0..=1)
            } else {
                0
            };
            let jitter = rng.gen_range(0.0..0.15);
            random_sphere(rng, levels, jitter)
        } else {
            let cap = (max_faces / 2).max(9) as u64;
            let n = rng.gen_range(3..=7u64);
            let m = rng.gen_range(3..=(cap / n).clamp(3, 12));
            let jitter = rng.gen_range(0.0..0.2);
            random_torus(rng, n, m, jitter)
        };
        if s.face_count() <= max_faces {
            return s;
        }
    }
}

/// Same surface with vertex ids permuted and faces/lengths reordered.
pub fn relabel(rng: &mut TestRng, s: &PolyhedralSurface) -> (PolyhedralSurface, BTreeMap<VertexId, VertexId>) {
    let ids: Vec<VertexId> = s.vertices().collect();
    let mut targets: Vec<u64> = (0..ids.len() as u64).map(|i| 1000 + 7 * i).collect();
    shuffle(rng, &mut targets);
    let map: BTreeMap<VertexId, VertexId> = ids.iter().zip(&targets).map(|(&a, &b)| (a, VertexId(b))).collect();
    let mut faces: Vec<[u64; 3]> = s
        .faces()
        .map(|(_, [a, b, c])| {
            let f = [map[&a].0, map[&b].0, map[&c].0];
            let k = rng.gen_range(0..3);
            [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
        })
        .collect();
    shuffle(rng, &mut faces);
    let mut lengths: Vec<(u64, u64, f64)> = s
        .edges()
        .map(|(u, v, l)| {
            if rng.gen_bool(0.5) {
                (map[&u].0, map[&v].0, l)
            } else {
                (map[&v].0, map[&u].0, l)
            }
        })
        .collect();
    shuffle(rng, &mut lengths);
    let mut verts = targets.clone();
    shuffle(rng, &mut verts);
    (
        PolyhedralSurface::new(&verts, &faces, &lengths).expect("relabelled surface is valid"),
        map,
    )
}

fn shuffle<T>(rng: &mut TestRng, xs: &mut [T]) {
    for i in (1..xs.len()).rev() {
        xs.swap(i, rng.gen_range(0..=i));
    }
}

/// Corner angle at the first vertex of a triangle with adjacent sides `b`,
/// `c` and opposite side `a`: lay the triangle in the plane by intersecting
/// circles and measure with `atan2`.
pub fn corner_angle_oracle(adj1: f64, adj2: f64, opposite: f64) -> f64 {
    let x = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / (2.0 * adj1);
    let y = (adj2 * adj2 - x * x).max(0.0).sqrt();
    y.atan2(x)
}

/// Singular values of the linear map from a triangle with sides
/// `a = |P0P1|`, `b = |P1P2|`, `c = |P2P0|` onto the unit equilateral
/// triangle, from the generalised eigenproblem `det(H − λG) = 0` between the
/// two Gram matrices of the edge vectors at `P0`. Uses only the lengths.
pub fn gram_singular_values(a: f64, b: f64, c: f64) -> (f64, f64) {
    let (g11, g12, g22) = (a * a, (a * a + c * c - b * b) / 2.0, c * c);
    let (h11, h12, h22) = (1.0, 0.5, 1.0);
    let qa = g11 * g22 - g12 * g12;
    let qb = -(g11 * h22 + g22 * h11 - 2.0 * g12 * h12);
    let qc = h11 * h22 - h12 * h12;
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0).sqrt();
    let hi = (-qb + disc) / (2.0 * qa);
    let lo = qc / (qa * hi);
    (hi.sqrt(), lo.sqrt())
}

/// Closed simplices containing each vertex, counted from the face list.
pub fn simplex_counts(s: &PolyhedralSurface) -> BTreeMap<VertexId, usize> {
    let mut faces: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut nbrs: BTreeMap<VertexId, std::collections::BTreeSet<VertexId>> = BTreeMap::new();
    for (_, [a, b, c]) in s.faces() {
        for (v, p, q) in [(a, b, c), (b, c, a), (c, a, b)] {
            *faces.entry(v).or_default() += 1;
            nbrs.entry(v).or_default().extend([p, q]);
        }
    }
    faces.iter().map(|(v, f)| (*v, f + nbrs[v].len() + 1)).collect()
}

/// Whether the surface certifies at `m`, decided directly from lengths.
pub fn oracle_passes(s: &PolyhedralSurface, m: f64, lipschitz: bool) -> bool {
    let slack = 1.0 + 1e-12;
    if simplex_counts(s).values().any(|&c| c as f64 > m) {
        return false;
    }
    let sv: BTreeMap<usize, (f64, f64)> = s
        .faces()
        .map(|(f, _)| {
            let [a, b, c] = s.face_lengths(f).unwrap();
            (f.0, gram_singular_values(a, b, c))
        })
        .collect();
    if lipschitz {
        return sv.values().all(|&(s1, s2)| s1.max(1.0 / s2) <= m * slack);
    }
    s.vertices().all(|v| {
        let star = s.star(v).unwrap();
        let lo = star.iter().map(|f| 1.0 / (m * sv[&f.0].1)).fold(0.0, f64::max);
        let hi = star.iter().map(|f| m / sv[&f.0].0).fold(f64::INFINITY, f64::min);
        lo <= hi * slack
    })
}
