//! From resonant absorption to a steady temperature profile.
//!
//! A lossy Drude sphere driven near resonance dissipates light into heat;
//! the steady state is a parabola inside the particle and a 1/r tail
//! outside.
//!
//! Run with: cargo run --example heat_profile

use num_complex::Complex64;
use plasmod::drude::{permittivity, DrudeParams};
use plasmod::heat::{heat_intensity, steady_profile, temperature_at, HeatScene};
use plasmod::sphere::{cvec_norm, sphere_response, SphereScene};

fn main() {
    let metal = DrudeParams::new(1.0, 1.0, 1e-2).unwrap();
    let omega = metal.omega_p / 3.0f64.sqrt();
    let r_np = 1.0;

    let eps1 = permittivity(&metal, omega);
    let scene = SphereScene::new(r_np, Complex64::new(1.0, 0.0), eps1, [0.0, 0.0, 1.0]).unwrap();
    let response = sphere_response(&scene).unwrap();
    let e2_sq = cvec_norm(&response.e2).powi(2);
    let q = heat_intensity(omega, eps1, e2_sq).unwrap();
    println!(
        "drive at omega_p/sqrt(3): |E2|^2 = {:.4e}, Q = {:.4e}",
        e2_sq, q
    );

    let heat_scene = HeatScene::new(1.0, 3.0, r_np, q).unwrap();
    let profile = steady_profile(&heat_scene);
    println!(
        "profile constants: A = {:.6e} (center), B = {:.6e} (exterior)",
        profile.a_coeff, profile.b_coeff
    );
    println!();
    println!("{:>8} {:>14}", "r/r_np", "T");
    for i in 0..=15 {
        let r = r_np * 0.2 * i as f64;
        println!("{:>8.2} {:>14.6e}", r / r_np, temperature_at(&profile, r));
    }
    println!("\ninterior is a parabola with maximum at the center;");
    println!(
        "exterior decays as 1/r: T(2 r_np) / T(r_np) = {:.4}",
        temperature_at(&profile, 2.0 * r_np) / temperature_at(&profile, r_np * 1.0000001)
    );
}
