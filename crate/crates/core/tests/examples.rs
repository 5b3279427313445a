//! Runs every shipped example and checks what it reports.

use std::f64::consts::PI;

#[allow(dead_code)]
#[path = "../examples/blend_forms.rs"]
mod blend_forms;
#[allow(dead_code)]
#[path = "../examples/certify_bounded_geometry.rs"]
mod certify_bounded_geometry;
#[allow(dead_code)]
#[path = "../examples/certify_kernel.rs"]
mod certify_kernel;
#[allow(dead_code)]
#[path = "../examples/sample_fields.rs"]
mod sample_fields;
#[allow(dead_code)]
#[path = "../examples/smooth_and_verify.rs"]
mod smooth_and_verify;
#[allow(dead_code)]
#[path = "../examples/smoothed_cone.rs"]
mod smoothed_cone;
#[allow(dead_code)]
#[path = "../examples/validate_and_angles.rs"]
mod validate_and_angles;

#[test]
fn validate_and_angles_example() {
    let s = validate_and_angles::run_example().unwrap();
    assert!((s.icosahedron_defects - 4.0 * PI).abs() < 1e-12);
    assert!((s.genus_two_defects + 4.0 * PI).abs() < 1e-9);
    assert_eq!(s.genus_two_chi, -2);
    assert_eq!(s.nonmanifold_code, "NonManifoldEdge");
}

#[test]
fn certify_kernel_example() {
    let c = certify_kernel::run_example().unwrap();
    assert!(c.certified_bound <= 16.0);
    assert!((c.max_df.value - 2.0).abs() < 1e-6);
}

#[test]
fn smoothed_cone_example() {
    let s = smoothed_cone::run_example().unwrap();
    assert!((s.total_curvature - PI).abs() < 1e-8);
    assert!((s.distortion - 2.0).abs() < 1e-12);
    assert!(s.max_fd_gap < 1e-4);
}

#[test]
fn certify_bounded_geometry_example() {
    let s = certify_bounded_geometry::run_example().unwrap();
    // Cube corners: 5 or 4 faces plus as many edges, plus the vertex.
    assert_eq!(s.cube_lipschitz_m, 11);
    assert!(s.cube_quasiconformal_m <= s.cube_lipschitz_m);
    assert!(s.tetrahedron_hypothesis_k2);
    assert!(!s.tetrahedron_hypothesis_k15);
    assert!(s.tetrahedron_obstruction_k15);
}

#[test]
fn smooth_and_verify_example() {
    let reports = smooth_and_verify::run_example().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|(_, r)| r.passed));
}

#[test]
fn blend_forms_example() {
    assert_eq!(blend_forms::run_example().unwrap(), 0);
}

#[test]
fn sample_fields_example() {
    let t = sample_fields::run_example().unwrap();
    assert_eq!(t.rows.len(), 40);
    assert!(t.phi_monotone);
}
