//! Convex combinations of inner products stay between their extremes.
//!
//! `cargo run --example blend_forms`

use std::error::Error;

use polysmooth::{blend_forms, QuadraticForm2};

/// Returns the number of sandwich violations seen (expected: zero).
pub fn run_example() -> Result<usize, Box<dyn Error>> {
    let forms = [
        QuadraticForm2::identity(),
        QuadraticForm2::identity().scaled(4.0),
        QuadraticForm2::new(2.0, 0.9, 1.0)?,
    ];
    let mut violations = 0;
    for weights in [[1.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.2, 0.3, 0.5], [0.0, 0.25, 0.75]] {
        let g = blend_forms(&forms, &weights)?;
        for k in 0..8 {
            let th = k as f64 * std::f64::consts::PI / 8.0;
            let v = [th.cos(), th.sin()];
            let x = g.eval(v);
            let lo = forms.iter().map(|q| q.eval(v)).fold(f64::INFINITY, f64::min);
            let hi = forms.iter().map(|q| q.eval(v)).fold(0.0, f64::max);
            if x < lo * (1.0 - 1e-12) || x > hi * (1.0 + 1e-12) {
                violations += 1;
            }
        }
        println!(
            "w={weights:?} → g=({:.3}, {:.3}, {:.3}) det {:.4}",
            g.g11,
            g.g12,
            g.g22,
            g.det()
        );
    }
    println!("sandwich violations: {violations}");
    Ok(violations)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
