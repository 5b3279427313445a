//! Intrinsic polyhedral surfaces, their cone points, and an explicit smoothing
//! of the polyhedral metric near every cone point.
//!
//! The crate is organised around the pipeline
//!
//! 1. [`mesh`]: read and validate an intrinsic triangulated surface (faces plus
//!    edge lengths, no embedding) and compute corner angles, cone angles and
//!    safe radii.
//! 2. [`cone`]: the rotationally symmetric cone metric `dr² + φ(r)² dθ²`, the
//!    smoothing kernel, and the curvature / distortion of the smoothed cone.
//! 3. [`certify`]: bounded-geometry checks (M-Lipschitz, M-quasiconformal) and
//!    cone-angle windows.
//! 4. [`assemble`]: smooth a whole surface and verify the curvature bound,
//!    the bi-Lipschitz distortion and Gauss-Bonnet.
//!
//! [`cli`] wires the above into the `polysmooth` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assemble;
pub mod certify;
pub mod cli;
pub mod cone;
pub mod fixtures;
pub mod mesh;
pub mod quadrature;

pub use assemble::{
    blend_forms, global_verification, sample_fields, smooth_surface, AssembleError, FieldSample, QuadraticForm2,
    SmoothedSurface, VerificationOptions, VerificationReport,
};
pub use certify::{
    angle_window_check, certify_lipschitz, certify_quasiconformal, minimal_m, CertificationReport, CertifyError,
    CertifyMode, TriangleShape, Window,
};
pub use cone::{
    certify_kernel, ConeError, ConeMetric, KernelCertificate, SmoothedCone, SmoothingKernel, TransitionKernel,
};
pub use mesh::{ConeAngle, FaceId, MeshError, PolyhedralSurface, VertexId};
