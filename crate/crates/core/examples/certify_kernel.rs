//! Certify the shipped transition kernel: `f`, `|f′|`, `|f″|` ≤ 16.
//!
//! `cargo run --example certify_kernel`

use std::error::Error;

use polysmooth::{certify_kernel, KernelCertificate, TransitionKernel};

pub fn run_example() -> Result<KernelCertificate, Box<dyn Error>> {
    let cert = certify_kernel(&TransitionKernel, TransitionKernel::CERTIFICATION_STEP)?;
    println!("kernel      {}", cert.kernel);
    println!("grid step   {:e} ({} samples)", cert.grid_step, cert.samples);
    println!("max f       {:.6} at t={:.5}", cert.max_f.value, cert.max_f.at);
    println!("max |f'|    {:.6} at t={:.5}", cert.max_df.value, cert.max_df.at);
    println!("max |f''|   {:.6} at t={:.5}", cert.max_d2f.value, cert.max_d2f.at);
    println!(
        "max |f'''|  {:.6} at t={:.5}  (padded {:.6})",
        cert.max_d3f.value, cert.max_d3f.at, cert.d3f_bound
    );
    println!("certified   {:.6} <= {}", cert.certified_bound, cert.limit);
    println!("{}", serde_json::to_string(&cert)?);
    Ok(cert)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example().map(|_| ())
}
