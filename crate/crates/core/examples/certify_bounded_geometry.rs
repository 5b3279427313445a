//! Bounded-geometry certification and cone-angle windows.
//!
//! `cargo run --example certify_bounded_geometry`

use std::error::Error;

use polysmooth::certify::certify_with_minimal;
use polysmooth::{angle_window_check, fixtures, minimal_m, CertifyMode, Window};

pub struct Summary {
    pub cube_lipschitz_m: u64,
    pub cube_quasiconformal_m: u64,
    pub tetrahedron_hypothesis_k2: bool,
    pub tetrahedron_hypothesis_k15: bool,
    pub tetrahedron_obstruction_k15: bool,
}

pub fn run_example() -> Result<Summary, Box<dyn Error>> {
    let cube = fixtures::cube();
    let lip = minimal_m(&cube, CertifyMode::Lipschitz)?;
    let qc = minimal_m(&cube, CertifyMode::Quasiconformal)?;
    println!("cube: minimal M lipschitz = {lip}, quasiconformal = {qc}");

    let report = certify_with_minimal(&cube, CertifyMode::Quasiconformal, qc - 1)?;
    for v in report.failing_vertices().take(2) {
        println!(
            "  M={} fails at vertex {}: {}",
            qc - 1,
            v.vertex,
            v.failure.as_deref().unwrap_or("?")
        );
    }

    let tet = fixtures::tetrahedron(1.0);
    let h2 = angle_window_check(&tet, 2.0, Window::Hypothesis)?.passed();
    let h15 = angle_window_check(&tet, 1.5, Window::Hypothesis)?.passed();
    let o15 = angle_window_check(&tet, 1.5, Window::Obstruction)?.passed();
    println!("tetrahedron (angles π): hypothesis K=2 {h2}, K=1.5 {h15}; obstruction K=1.5 {o15}");

    Ok(Summary {
        cube_lipschitz_m: lip,
        cube_quasiconformal_m: qc,
        tetrahedron_hypothesis_k2: h2,
        tetrahedron_hypothesis_k15: h15,
        tetrahedron_obstruction_k15: o15,
    })
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
