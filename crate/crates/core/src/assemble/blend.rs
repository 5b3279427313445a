//! Pointwise convex combinations of inner products.
//!
//! A convex combination `g = Σ wᵢ gᵢ` of positive-definite forms satisfies
//! `minᵢ gᵢ(v, v) ≤ g(v, v) ≤ maxᵢ gᵢ(v, v)` for every vector `v`, which is
//! what lets locally defined metrics be glued by a partition of unity
//! without losing a bi-Lipschitz constant.

use super::AssembleError;

/// Tolerance on `Σ wᵢ = 1`.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Symmetric 2×2 form `g₁₁ x² + 2 g₁₂ xy + g₂₂ y²`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadraticForm2 {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl QuadraticForm2 {
    /// Positive-definite form; rejects anything with `g₁₁ ≤ 0` or `det ≤ 0`.
    pub fn new(g11: f64, g12: f64, g22: f64) -> Result<Self, AssembleError> {
        let q = QuadraticForm2 { g11, g12, g22 };
        if q.is_positive_definite() {
            Ok(q)
        } else {
            Err(AssembleError::NotPositiveDefinite { g11, g12, g22 })
        }
    }

    pub fn identity() -> Self {
        QuadraticForm2 {
            g11: 1.0,
            g12: 0.0,
            g22: 1.0,
        }
    }

    pub fn scaled(self, s: f64) -> Self {
        QuadraticForm2 {
            g11: s * self.g11,
            g12: s * self.g12,
            g22: s * self.g22,
        }
    }

    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn is_positive_definite(&self) -> bool {
        [self.g11, self.g12, self.g22].iter().all(|x| x.is_finite()) && self.g11 > 0.0 && self.det() > 0.0
    }

    /// `g(v, v)`.
    pub fn eval(&self, v: [f64; 2]) -> f64 {
        let [x, y] = v;
        self.g11 * x * x + 2.0 * self.g12 * x * y + self.g22 * y * y
    }

    /// Length of `v` in this inner product.
    pub fn norm(&self, v: [f64; 2]) -> f64 {
        self.eval(v).sqrt()
    }
}

/// `Σ wᵢ gᵢ` for positive-definite forms and weights on the simplex.
pub fn blend_forms(forms: &[QuadraticForm2], weights: &[f64]) -> Result<QuadraticForm2, AssembleError> {
    if forms.is_empty() || forms.len() != weights.len() {
        return Err(AssembleError::BadWeights(format!(
            "{} forms but {} weights",
            forms.len(),
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(AssembleError::BadWeights(format!(
            "weight {w} is negative or not finite"
        )));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(AssembleError::BadWeights(format!("weights sum to {sum}, not 1")));
    }
    if let Some(q) = forms.iter().find(|q| !q.is_positive_definite()) {
        return Err(AssembleError::NotPositiveDefinite {
            g11: q.g11,
            g12: q.g12,
            g22: q.g22,
        });
    }
    let mut out = QuadraticForm2 {
        g11: 0.0,
        g12: 0.0,
        g22: 0.0,
    };
    for (q, &w) in forms.iter().zip(weights) {
        out.g11 += w * q.g11;
        out.g12 += w * q.g12;
        out.g22 += w * q.g22;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_form_is_unchanged() {
        let q = QuadraticForm2::new(2.0, 0.5, 1.0).unwrap();
        assert_eq!(blend_forms(&[q], &[1.0]).unwrap(), q);
    }

    #[test]
    fn identity_and_four_identity() {
        let i = QuadraticForm2::identity();
        let g = blend_forms(&[i, i.scaled(4.0)], &[0.5, 0.5]).unwrap();
        assert_eq!(g, i.scaled(2.5));
        for v in [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]] {
            let x = g.eval(v);
            assert!((1.0 - 1e-15..=4.0 + 1e-15).contains(&x));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let i = QuadraticForm2::identity();
        assert!(matches!(blend_forms(&[i], &[0.9]), Err(AssembleError::BadWeights(_))));
        assert!(matches!(
            blend_forms(&[i, i], &[1.5, -0.5]),
            Err(AssembleError::BadWeights(_))
        ));
        assert!(matches!(blend_forms(&[], &[]), Err(AssembleError::BadWeights(_))));
        assert!(QuadraticForm2::new(1.0, 2.0, 1.0).is_err());
        let bad = QuadraticForm2 {
            g11: -1.0,
            g12: 0.0,
            g22: 1.0,
        };
        assert!(matches!(
            blend_forms(&[bad], &[1.0]),
            Err(AssembleError::NotPositiveDefinite { .. })
        ));
    }
}
