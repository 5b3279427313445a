//! Load surfaces from disk, validate them and list cone angles and defects.
//!
//! `cargo run --example validate_and_angles`

use std::error::Error;
use std::f64::consts::PI;

use polysmooth::PolyhedralSurface;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

pub struct Summary {
    pub icosahedron_defects: f64,
    pub genus_two_defects: f64,
    pub genus_two_chi: i64,
    pub nonmanifold_code: &'static str,
}

pub fn run_example() -> Result<Summary, Box<dyn Error>> {
    let ico = PolyhedralSurface::from_off_str(&std::fs::read_to_string(format!("{DATA}/icosahedron.off"))?)?;
    println!(
        "icosahedron: V={} E={} F={} chi={}",
        ico.vertex_count(),
        ico.edge_count(),
        ico.face_count(),
        ico.euler_characteristic()
    );
    for v in ico.vertices().take(3) {
        println!(
            "  vertex {v}: cone angle {:.6} (5π/3 = {:.6})",
            ico.cone_angle(v)?.radians(),
            5.0 * PI / 3.0
        );
    }

    let g2 = PolyhedralSurface::from_json_str(&std::fs::read_to_string(format!("{DATA}/genus2.json"))?)?;
    let corner = g2.vertices().next().expect("non-empty");
    println!(
        "genus two: chi={} corner cone angle {:.6} = {:.3}π, Σ defects / 2π = {:.12}",
        g2.euler_characteristic(),
        g2.cone_angle(corner)?.radians(),
        g2.cone_angle(corner)?.radians() / PI,
        g2.total_angle_defect() / (2.0 * PI)
    );

    let bad = PolyhedralSurface::from_json_str(&std::fs::read_to_string(format!("{DATA}/nonmanifold.json"))?)
        .expect_err("three faces on one edge");
    println!("nonmanifold.json rejected: [{}] {bad}", bad.code());

    Ok(Summary {
        icosahedron_defects: ico.total_angle_defect(),
        genus_two_defects: g2.total_angle_defect(),
        genus_two_chi: g2.euler_characteristic(),
        nonmanifold_code: bad.code(),
    })
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
