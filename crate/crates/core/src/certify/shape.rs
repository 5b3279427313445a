//! Flat triangles and their linear maps onto the standard (equilateral)
//! triangle.

use crate::mesh::{strict_triangle, triangle_area};

use super::CertifyError;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Side lengths `(a, b, c)` of a flat triangle `P0 P1 P2` with
/// `a = |P0P1|`, `b = |P1P2|`, `c = |P2P0|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleShape {
    lengths: [f64; 3],
}

impl TriangleShape {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, CertifyError> {
        let ok = [a, b, c].iter().all(|x| x.is_finite() && *x > 0.0) && strict_triangle(a, b, c);
        if !ok {
            return Err(CertifyError::DegenerateTriangle { a, b, c });
        }
        Ok(TriangleShape { lengths: [a, b, c] })
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.lengths
    }

    /// `(0, 0)`, `(a, 0)` and the apex above the first side at distance `b`
    /// from the second point and `c` from the first.
    pub fn plane_embedding(&self) -> [[f64; 2]; 3] {
        let [a, b, c] = self.lengths;
        let x = (a * a + c * c - b * b) / (2.0 * a);
        let y = 2.0 * triangle_area(a, b, c) / a;
        [[0.0, 0.0], [a, 0.0], [x, y]]
    }

    /// Linear map sending `P1 − P0 ↦ (s, 0)` and `P2 − P0 ↦ (s/2, s√3/2)`
    /// for this embedding's vertex order.
    pub fn affine_map(&self, target_side: f64) -> [[f64; 2]; 2] {
        let [_, p1, p2] = self.plane_embedding();
        let (a, x, y) = (p1[0], p2[0], p2[1]);
        let s = target_side;
        // A = T E⁻¹ with E = [[a, x], [0, y]], T = [[s, s/2], [0, s√3/2]].
        [[s / a, s * (0.5 * a - x) / (a * y)], [0.0, s * SQRT3 / (2.0 * y)]]
    }

    /// Singular values `σ₁ ≥ σ₂ > 0` of the linear map onto the standard
    /// triangle of side `target_side`.
    ///
    /// The lengths are sorted first. Any vertex correspondence gives the same
    /// singular values, since the equilateral target is symmetric under all
    /// of them; sorting makes the result exactly invariant under permutation.
    pub fn affine_singular_values(&self, target_side: f64) -> Result<(f64, f64), CertifyError> {
        if !(target_side > 0.0 && target_side.is_finite()) {
            return Err(CertifyError::InvalidParameter(format!(
                "target side must be positive, got {target_side}"
            )));
        }
        let mut sorted = self.lengths;
        sorted.sort_by(f64::total_cmp);
        let canonical = TriangleShape { lengths: sorted };
        Ok(singular_values_2x2(canonical.affine_map(target_side)))
    }

    /// `max(σ₁, 1/σ₂)`: the best constant `M` with
    /// `M⁻¹|x − y| ≤ |Ax − Ay| ≤ M|x − y|` for the map onto the standard
    /// triangle of side `target_side`.
    pub fn simplex_bilip_constant(&self, target_side: f64) -> Result<f64, CertifyError> {
        let (s1, s2) = self.affine_singular_values(target_side)?;
        Ok(s1.max(1.0 / s2))
    }

    /// Scales `r` at which the constant is at most `m`:
    /// `[1/(m σ₂), m/σ₁]` with the unit-target singular values. Empty when
    /// `σ₁/σ₂ > m²`.
    pub fn feasible_scales(&self, m: f64) -> ScaleInterval {
        let (s1, s2) = self.affine_singular_values(1.0).expect("unit target");
        ScaleInterval {
            lo: 1.0 / (m * s2),
            hi: m / s1,
        }
    }

    /// Smallest constant over all target scales, `√(σ₁/σ₂)`, and the scale
    /// `1/√(σ₁σ₂)` attaining it.
    pub fn optimal_scale(&self) -> (f64, f64) {
        let (s1, s2) = self.affine_singular_values(1.0).expect("unit target");
        ((s1 / s2).sqrt(), 1.0 / (s1 * s2).sqrt())
    }
}

/// Closed interval of target scales `[lo, hi]`; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ScaleInterval {
    pub lo: f64,
    pub hi: f64,
}

/// Relative slack applied when comparing interval endpoints.
pub const ENDPOINT_SLACK: f64 = 1e-12;

impl ScaleInterval {
    pub fn everything() -> Self {
        ScaleInterval {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn intersect(self, other: ScaleInterval) -> ScaleInterval {
        ScaleInterval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi * (1.0 + ENDPOINT_SLACK)
    }

    /// Geometric midpoint (or the lower end if the interval is unbounded).
    pub fn representative(&self) -> f64 {
        if self.hi.is_finite() && self.lo > 0.0 {
            (self.lo * self.hi).sqrt()
        } else {
            self.lo.max(1.0).min(self.hi)
        }
    }
}

/// Singular values of a 2×2 matrix, largest first.
pub fn singular_values_2x2(m: [[f64; 2]; 2]) -> (f64, f64) {
    let e = 0.5 * (m[0][0] + m[1][1]);
    let f = 0.5 * (m[0][0] - m[1][1]);
    let g = 0.5 * (m[1][0] + m[0][1]);
    let h = 0.5 * (m[1][0] - m[0][1]);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let s1 = q + r;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let s2 = if s1 > 0.0 { det.abs() / s1 } else { 0.0 };
    (s1, s2)
}
