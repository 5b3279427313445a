use std::f64::consts::PI;

use super::kernel::{SmoothingKernel, TransitionKernel};
use super::ConeError;
use crate::quadrature::{adaptive_simpson, SimpsonOptions};

/// Number of geometric grid points used by [`SmoothedCone::distortion_to_cone`].
pub const DISTORTION_GRID: usize = 10_000;

/// The flat cone `dr² + (αr/2π)² dθ²` on a disk of the given radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeMetric {
    alpha: f64,
    radius: f64,
}

impl ConeMetric {
    pub fn new(alpha: f64, radius: f64) -> Result<Self, ConeError> {
        check_positive("cone angle", alpha)?;
        check_positive("radius", radius)?;
        Ok(ConeMetric { alpha, radius })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `(g_θθ, g_rr)` at radius `r`.
    pub fn coefficients(&self, r: f64) -> Result<(f64, f64), ConeError> {
        check_radius(r)?;
        let c = self.alpha * r / (2.0 * PI);
        Ok((c * c, 1.0))
    }

    /// Circumference of the circle of radius `r` about the tip.
    pub fn circumference(&self, r: f64) -> f64 {
        self.alpha * r
    }
}

/// The smoothed cone metric `dr² + φ(r)² dθ²` on the disk of radius `ρ`.
///
/// Inside the disk `φ(r) = (f(r/ρ)(α/2π − 1) + 1) r`; from `r = ρ` on it is
/// exactly the cone value `(α/2π) r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedCone<K = TransitionKernel> {
    alpha: f64,
    rho: f64,
    kernel: K,
}

impl SmoothedCone<TransitionKernel> {
    pub fn new(alpha: f64, rho: f64) -> Result<Self, ConeError> {
        Self::with_kernel(alpha, rho, TransitionKernel)
    }
}

impl<K: SmoothingKernel> SmoothedCone<K> {
    pub fn with_kernel(alpha: f64, rho: f64, kernel: K) -> Result<Self, ConeError> {
        check_positive("cone angle", alpha)?;
        check_positive("safe radius", rho)?;
        Ok(SmoothedCone { alpha, rho, kernel })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn kernel(&self) -> &K {
        &self.kernel
    }

    /// The unsmoothed cone on the same disk.
    pub fn cone_metric(&self) -> ConeMetric {
        ConeMetric {
            alpha: self.alpha,
            radius: self.rho,
        }
    }

    /// Same cone angle, disk radius multiplied by `s`.
    pub fn rescaled(&self, s: f64) -> Result<Self, ConeError>
    where
        K: Clone,
    {
        Self::with_kernel(self.alpha, self.rho * s, self.kernel.clone())
    }

    /// `α/2π − 1`.
    fn excess(&self) -> f64 {
        self.alpha / (2.0 * PI) - 1.0
    }

    /// `(f_v, f_v′, f_v″)` at `r` with `f_v(r) = f(r/ρ)`.
    fn scaled_kernel(&self, r: f64) -> (f64, f64, f64) {
        let [f, d1, d2, _] = self.kernel.jet(r / self.rho);
        (f, d1 / self.rho, d2 / (self.rho * self.rho))
    }

    /// `φ(r)`; equals `(α/2π) r` for `r ≥ ρ`.
    pub fn phi(&self, r: f64) -> Result<f64, ConeError> {
        check_radius(r)?;
        if r >= self.rho {
            return Ok(self.alpha / (2.0 * PI) * r);
        }
        let (f, _, _) = self.scaled_kernel(r);
        Ok((f * self.excess() + 1.0) * r)
    }

    /// `(g_θθ, g_rr) = (φ(r)², 1)`.
    pub fn metric_coefficients(&self, r: f64) -> Result<(f64, f64), ConeError> {
        let phi = self.phi(r)?;
        Ok((phi * phi, 1.0))
    }

    /// Gaussian curvature `(2π − α)(2f_v′ + r f_v″) / (2π φ)`; 0 for `r ≥ ρ`.
    pub fn curvature(&self, r: f64) -> Result<f64, ConeError> {
        check_radius(r)?;
        if r >= self.rho {
            return Ok(0.0);
        }
        let (_, d1, d2) = self.scaled_kernel(r);
        let phi = self.phi(r)?;
        Ok((2.0 * PI - self.alpha) * (2.0 * d1 + r * d2) / (2.0 * PI * phi))
    }

    /// `−φ″/φ` with `φ″` from a central second difference of step `h`.
    pub fn curvature_finite_diff(&self, r: f64, h: f64) -> Result<f64, ConeError> {
        check_radius(r)?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(ConeError::InvalidParameter(format!("step must be positive, got {h}")));
        }
        if h >= r / 4.0 {
            return Err(ConeError::StepTooLarge { r, h });
        }
        // Use the representable step so the stencil is symmetric.
        let h = (r + h) - r;
        let (lo, mid, hi) = (self.phi(r - h)?, self.phi(r)?, self.phi(r + h)?);
        let second = ((hi - mid) - (mid - lo)) / (h * h);
        Ok(-second / mid)
    }

    /// `2π ∫₀^ρ K(r) φ(r) dr` by adaptive Simpson quadrature. The integrand
    /// extends continuously by 0 to the tip, so `r = 0` is never evaluated.
    ///
    /// Analytically this is the angle defect `2π − α`.
    pub fn total_curvature(&self, quadrature_tol: f64) -> Result<f64, ConeError> {
        if !(quadrature_tol > 0.0) {
            return Err(ConeError::InvalidParameter(format!(
                "quadrature tolerance must be positive, got {quadrature_tol}"
            )));
        }
        let opts = SimpsonOptions {
            // The result is multiplied by 2π afterwards.
            abs_tol: quadrature_tol / (2.0 * PI),
            max_intervals: 1_000_000,
            ..Default::default()
        };
        let integrand = |r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            match (self.curvature(r), self.phi(r)) {
                (Ok(k), Ok(phi)) => k * phi,
                _ => f64::NAN,
            }
        };
        let integral = adaptive_simpson(integrand, 0.0, self.rho, opts)?;
        Ok(2.0 * PI * integral)
    }

    /// Ratio `φ(r) / ((α/2π) r)` of the circumferential coefficients of the
    /// smoothed and the flat cone metric. Both share `g_rr = 1`.
    fn stretch(&self, r: f64) -> Result<f64, ConeError> {
        Ok(self.phi(r)? / (self.alpha / (2.0 * PI) * r))
    }

    /// Bi-Lipschitz constant between the smoothed metric and the cone metric
    /// on the disk: `sup_r max(s, 1/s)` with `s` the stretch of
    /// the circles about the tip.
    ///
    /// Taken over a geometric grid of [`DISTORTION_GRID`] radii in
    /// `[10⁻⁶ ρ, ρ]` together with the limit at the tip, where the kernel
    /// vanishes and `s → 2π/α`.
    pub fn distortion_to_cone(&self) -> f64 {
        let tip = 2.0 * PI / self.alpha;
        let mut worst = tip.max(1.0 / tip);
        let n = DISTORTION_GRID;
        for i in 0..n {
            let exponent = -6.0 * (1.0 - i as f64 / (n - 1) as f64);
            let r = self.rho * 10f64.powf(exponent);
            let s = self.stretch(r).expect("positive radius");
            worst = worst.max(s).max(1.0 / s);
        }
        worst
    }
}

fn check_positive(what: &str, x: f64) -> Result<(), ConeError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConeError::InvalidParameter(format!(
            "{what} must be positive and finite, got {x}"
        )))
    }
}

fn check_radius(r: f64) -> Result<(), ConeError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(ConeError::OutOfDomain { r })
    }
}
