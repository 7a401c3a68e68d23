//! Drude permittivity across frequency and the lossless inversion.
//!
//! Run with: cargo run --example drude_dispersion

use plasmod::drude::{lossless_frequency_for, permittivity, DrudeParams};

fn main() {
    let metal = DrudeParams::new(1.0, 1.0, 1e-2).unwrap();
    println!(
        "Drude metal: eps0 = {}, omega_p = {}, tau = {}",
        metal.eps0, metal.omega_p, metal.tau
    );
    println!();
    println!("{:>10} {:>14} {:>14}", "omega/wp", "Re eps", "Im eps");
    for i in 1..=12 {
        let omega = 0.1 * i as f64 * metal.omega_p;
        let eps = permittivity(&metal, omega);
        println!(
            "{:>10.2} {:>14.6} {:>14.6}",
            omega / metal.omega_p,
            eps.re,
            eps.im
        );
    }

    // the interesting targets: eps = -2 eps0 (sphere resonance) and eps = 0
    println!();
    for target in [-2.0 * metal.eps0, 0.0] {
        let omega = lossless_frequency_for(&metal, target).unwrap();
        let check = permittivity(&metal.with_tau(0.0).unwrap(), omega);
        println!(
            "lossless eps = {:>6.2} at omega = {:.6} wp (round trip: {:.3e})",
            target,
            omega / metal.omega_p,
            (check.re - target).abs()
        );
    }
    println!(
        "\nomega_p/sqrt(3) = {:.6} wp is the sphere resonance frequency",
        1.0 / 3.0f64.sqrt()
    );
}
