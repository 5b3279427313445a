//! Export φ, g_θθ and curvature along one smoothed cone as CSV.
//!
//! `cargo run --example sample_fields > tetra_v0.csv`

use std::error::Error;

use polysmooth::assemble::{write_csv, FieldTable};
use polysmooth::{fixtures, sample_fields, smooth_surface, VertexId};

pub fn run_example() -> Result<FieldTable, Box<dyn Error>> {
    let smoothed = smooth_surface(&fixtures::tetrahedron(1.0))?;
    let table = sample_fields(&smoothed, VertexId(0), 40)?;
    write_csv(&mut std::io::stdout().lock(), &table.rows)?;
    eprintln!("φ strictly increasing: {}", table.phi_monotone);
    Ok(table)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
