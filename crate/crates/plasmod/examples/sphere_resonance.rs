//! Field enhancement and stored energy of a Drude sphere near resonance.
//!
//! Run with: cargo run --example sphere_resonance

use num_complex::Complex64;
use plasmod::drude::{permittivity, DrudeParams};
use plasmod::sphere::{
    cvec_norm, resonance_wavelength, sphere_energy, sphere_response, SphereScene,
};

fn main() {
    let metal = DrudeParams::new(1.0, 1.0, 1e-3).unwrap();
    let r_np = 10e-9;
    let e0 = [0.0, 0.0, 1.0];

    println!(
        "sphere radius {:.0} nm, tau = {:.0e} wp",
        r_np * 1e9,
        metal.tau
    );
    println!();
    println!(
        "{:>10} {:>14} {:>14} {:>12}",
        "omega/wp", "|E2|/|E0|", "energy", "tau*energy"
    );
    let resonant = metal.omega_p / 3.0f64.sqrt();
    for i in 0..13 {
        let omega = resonant * (0.7 + 0.05 * i as f64);
        let eps1 = permittivity(&metal, omega);
        let scene = SphereScene::new(r_np, Complex64::new(metal.eps0, 0.0), eps1, e0).unwrap();
        let response = sphere_response(&scene).unwrap();
        let energy = sphere_energy(&scene).unwrap();
        let marker = if (omega - resonant).abs() < 1e-12 {
            "  <- omega_p/sqrt(3)"
        } else {
            ""
        };
        println!(
            "{:>10.4} {:>14.2} {:>14.4e} {:>12.4e}{}",
            omega / metal.omega_p,
            cvec_norm(&response.e2),
            energy,
            metal.tau * energy,
            marker
        );
    }

    let speed = 299_792_458.0;
    println!(
        "\npredicted resonance wavelength for v = c: {:.2} nm (omega_p = 4.8e15 rad/s scale)",
        resonance_wavelength(&DrudeParams::new(1.0, 4.8e15, 0.0).unwrap(), speed) * 1e9
    );
}
