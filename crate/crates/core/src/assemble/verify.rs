use std::f64::consts::PI;

use serde::Serialize;

use super::{AssembleError, SmoothedSurface};
use crate::cone::SmoothedCone;
use crate::mesh::VertexId;

/// Knobs for [`global_verification`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationOptions {
    /// Radii per cone for the curvature sup.
    pub grid: usize,
    /// Absolute tolerance for the per-cone total-curvature quadrature, also
    /// used as the per-cone Gauss-Bonnet threshold.
    pub quad_tol: f64,
    /// Threshold for `|Σ defects − 2πχ|`.
    pub discrete_tol: f64,
}

impl Default for VerificationOptions {
    fn default() -> Self {
        VerificationOptions {
            grid: 10_000,
            quad_tol: 1e-8,
            discrete_tol: 1e-9,
        }
    }
}

/// Relative slack on the distortion comparison against `K`.
const DISTORTION_SLACK: f64 = 1e-12;

/// Decades below `ρ` covered by the curvature grid.
const CURVATURE_DECADES: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeVerification {
    pub vertex: VertexId,
    pub alpha: f64,
    pub rho: f64,
    pub curvature_sup: f64,
    pub curvature_sup_at: f64,
    pub distortion: f64,
    pub total_curvature: f64,
    pub angle_defect: f64,
    pub gauss_bonnet_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureCheck {
    pub bound: f64,
    pub measured_sup: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_vertex: Option<VertexId>,
    pub witness_r: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionCheck {
    pub max: f64,
    pub k_hyp: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetCheck {
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteGaussBonnet {
    pub sum_defects: f64,
    pub euler_characteristic: i64,
    pub expected: f64,
    pub residual: f64,
    pub passed: bool,
}

/// Everything [`global_verification`] measured. Cones are ordered by vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub k_hyp: f64,
    pub l_bound: f64,
    pub grid: usize,
    pub curvature: CurvatureCheck,
    pub distortion: DistortionCheck,
    pub gauss_bonnet: GaussBonnetCheck,
    pub discrete_gauss_bonnet: DiscreteGaussBonnet,
    pub cones: Vec<ConeVerification>,
}

/// Checks the smoothed surface against its constructive bounds:
///
/// - sampled `sup |K| ≤ 2⁹ K(K − 1)/l²` with `K = k_hyp`, `l = l_bound`;
/// - per-cone distortion to the polyhedral metric `≤ k_hyp`;
/// - per-cone `|∫K dA − (2π − α)| ≤ quad_tol`;
/// - `|Σ (2π − α) − 2πχ| ≤ discrete_tol`.
pub fn global_verification(
    smoothed: &SmoothedSurface,
    opts: VerificationOptions,
) -> Result<VerificationReport, AssembleError> {
    let mut cones = Vec::with_capacity(smoothed.cones().len());
    for (&vertex, cone) in smoothed.cones() {
        let (sup, at) = curvature_sup(cone, opts.grid);
        let total = cone.total_curvature(opts.quad_tol)?;
        let defect = 2.0 * PI - cone.alpha();
        cones.push(ConeVerification {
            vertex,
            alpha: cone.alpha(),
            rho: cone.rho(),
            curvature_sup: sup,
            curvature_sup_at: at,
            distortion: cone.distortion_to_cone(),
            total_curvature: total,
            angle_defect: defect,
            gauss_bonnet_residual: (total - defect).abs(),
        });
    }

    let bound = smoothed.curvature_bound();
    let worst = cones.iter().max_by(|a, b| a.curvature_sup.total_cmp(&b.curvature_sup));
    let curvature = CurvatureCheck {
        bound,
        measured_sup: worst.map_or(0.0, |c| c.curvature_sup),
        witness_vertex: worst.map(|c| c.vertex),
        witness_r: worst.map_or(0.0, |c| c.curvature_sup_at),
        passed: worst.map_or(0.0, |c| c.curvature_sup) <= bound,
    };

    let max_distortion = cones.iter().map(|c| c.distortion).fold(1.0, f64::max);
    let distortion = DistortionCheck {
        max: max_distortion,
        k_hyp: smoothed.k_hyp(),
        passed: max_distortion <= smoothed.k_hyp() * (1.0 + DISTORTION_SLACK),
    };

    let max_residual = cones.iter().map(|c| c.gauss_bonnet_residual).fold(0.0, f64::max);
    let gauss_bonnet = GaussBonnetCheck {
        max_residual,
        tolerance: opts.quad_tol,
        passed: max_residual <= opts.quad_tol,
    };

    let base = smoothed.base();
    let sum_defects = base.total_angle_defect();
    let chi = base.euler_characteristic();
    let expected = 2.0 * PI * chi as f64;
    let discrete_gauss_bonnet = DiscreteGaussBonnet {
        sum_defects,
        euler_characteristic: chi,
        expected,
        residual: (sum_defects - expected).abs(),
        passed: (sum_defects - expected).abs() <= opts.discrete_tol,
    };

    Ok(VerificationReport {
        passed: curvature.passed && distortion.passed && gauss_bonnet.passed && discrete_gauss_bonnet.passed,
        k_hyp: smoothed.k_hyp(),
        l_bound: smoothed.l_bound(),
        grid: opts.grid,
        curvature,
        distortion,
        gauss_bonnet,
        discrete_gauss_bonnet,
        cones,
    })
}

/// Sampled `sup |K|` over a geometric grid of radii in `[10⁻⁴ ρ, ρ]`, with
/// each grid-local maximum refined by golden-section search between its
/// neighbours. Returns the value and where it was attained.
pub(crate) fn curvature_sup(cone: &SmoothedCone, grid: usize) -> (f64, f64) {
    let n = grid.max(3);
    let abs_k = |r: f64| cone.curvature(r).map_or(0.0, f64::abs);
    let radii: Vec<f64> = (0..n)
        .map(|i| cone.rho() * 10f64.powf(-CURVATURE_DECADES * (1.0 - i as f64 / (n - 1) as f64)))
        .collect();
    let values: Vec<f64> = radii.iter().map(|&r| abs_k(r)).collect();

    let mut best = (0.0, cone.rho());
    for i in 0..n {
        if values[i] > best.0 {
            best = (values[i], radii[i]);
        }
    }
    for i in 1..n - 1 {
        if values[i] > 0.0 && values[i] >= values[i - 1] && values[i] >= values[i + 1] {
            let (v, r) = golden_max(abs_k, radii[i - 1], radii[i + 1]);
            if v > best.0 {
                best = (v, r);
            }
        }
    }
    best
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (fc, c)
    } else {
        (fd, d)
    }
}
