use std::io::{self, Write};

use serde::Serialize;

use super::{AssembleError, SmoothedSurface};
use crate::mesh::VertexId;

pub const CSV_HEADER: &str = "r,phi,g_theta_theta,curvature";

/// Smallest sampled radius, relative to `ρ`, is just above this.
const SAMPLE_DECADES: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub r: f64,
    pub phi: f64,
    pub g_theta_theta: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldTable {
    pub vertex: VertexId,
    pub rows: Vec<FieldSample>,
    /// Whether `φ` increases strictly along the samples. Observed, not assumed.
    pub phi_monotone: bool,
}

/// Samples `φ`, `g_θθ` and the curvature of the cone at `vertex` on a
/// geometric grid of `n_samples` radii in `(10⁻⁴ ρ, ρ]`, ending at `ρ`.
pub fn sample_fields(
    smoothed: &SmoothedSurface,
    vertex: VertexId,
    n_samples: usize,
) -> Result<FieldTable, AssembleError> {
    let cone = smoothed.cone(vertex)?;
    let mut rows = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let exponent = -SAMPLE_DECADES * (1.0 - (i + 1) as f64 / n_samples as f64);
        let r = cone.rho() * 10f64.powf(exponent);
        let phi = cone.phi(r)?;
        rows.push(FieldSample {
            r,
            phi,
            g_theta_theta: cone.metric_coefficients(r)?.0,
            curvature: cone.curvature(r)?,
        });
    }
    let phi_monotone = rows.windows(2).all(|w| w[1].phi > w[0].phi);
    Ok(FieldTable {
        vertex,
        rows,
        phi_monotone,
    })
}

/// Writes the header line and one line per sample. Floats use the shortest
/// representation that round-trips.
pub fn write_csv<W: Write>(out: &mut W, rows: &[FieldSample]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in rows {
        writeln!(out, "{},{},{},{}", s.r, s.phi, s.g_theta_theta, s.curvature)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemble::smooth_surface;
    use crate::fixtures;

    #[test]
    fn flat_vertex_has_zero_curvature() {
        let s = smooth_surface(&fixtures::flat_torus(4, 4, 1.0)).unwrap();
        let t = sample_fields(&s, VertexId(5), 200).unwrap();
        assert_eq!(t.rows.len(), 200);
        assert!(t.rows.iter().all(|r| r.curvature == 0.0));
    }

    #[test]
    fn tetrahedron_grid_and_monotonicity() {
        let s = smooth_surface(&fixtures::tetrahedron(1.0)).unwrap();
        let rho = s.cone(VertexId(0)).unwrap().rho();
        let t = sample_fields(&s, VertexId(0), 1000).unwrap();
        assert_eq!(t.rows.len(), 1000);
        assert_eq!(t.rows.last().unwrap().r, rho);
        assert!(t.rows[0].r > 1e-4 * rho);
        assert!(t.rows.windows(2).all(|w| w[1].r > w[0].r));
        assert!(t.phi_monotone);
    }

    #[test]
    fn empty_request_and_unknown_vertex() {
        let s = smooth_surface(&fixtures::tetrahedron(1.0)).unwrap();
        assert!(sample_fields(&s, VertexId(0), 0).unwrap().rows.is_empty());
        assert!(sample_fields(&s, VertexId(99), 10).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = [FieldSample {
            r: 0.5,
            phi: 0.375,
            g_theta_theta: 0.140625,
            curvature: -1.5,
        }];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "r,phi,g_theta_theta,curvature\n0.5,0.375,0.140625,-1.5\n"
        );
    }
}
