//! One smoothed cone: profile, curvature, total curvature and distortion.
//!
//! `cargo run --example smoothed_cone`

use std::error::Error;
use std::f64::consts::PI;

use polysmooth::SmoothedCone;

pub struct Summary {
    pub total_curvature: f64,
    pub distortion: f64,
    pub max_fd_gap: f64,
}

pub fn run_example() -> Result<Summary, Box<dyn Error>> {
    let cone = SmoothedCone::new(PI, 1.0)?;
    println!("α = π, ρ = 1");
    println!("{:>8} {:>12} {:>14} {:>14}", "r", "phi", "K", "K (fd)");
    let mut max_fd_gap: f64 = 0.0;
    for r in [0.05, 0.2, 0.4, 0.5, 0.6, 0.8, 0.95] {
        let k = cone.curvature(r)?;
        let fd = cone.curvature_finite_diff(r, 1e-5)?;
        max_fd_gap = max_fd_gap.max((k - fd).abs() / k.abs().max(1.0));
        println!("{r:>8} {:>12.8} {k:>14.6} {fd:>14.6}", cone.phi(r)?);
    }
    let total = cone.total_curvature(1e-10)?;
    let distortion = cone.distortion_to_cone();
    println!("∫K dA = {total:.12} (2π − α = {:.12})", PI);
    println!("distortion to the exact cone = {distortion:.12}");
    Ok(Summary {
        total_curvature: total,
        distortion,
        max_fd_gap,
    })
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
