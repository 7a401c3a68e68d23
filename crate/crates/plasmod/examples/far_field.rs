//! Dipole far field of a small sphere via polarization tensors and the
//! dyadic Green function.
//!
//! Run with: cargo run --example far_field

use num_complex::Complex64;
use plasmod::sphere::{
    contrast, cvec_norm, dyadic_green, far_field_scattered, sphere_polarization_tensors,
    GreenParams, SphereScene,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let scene = SphereScene::new(1.0, c(1.0, 0.0), c(4.0, 0.1), [0.0, 0.0, 1.0]).unwrap();
    let pt = sphere_polarization_tensors(&scene, None).unwrap();
    println!(
        "polarization tensor M^e = {:.4}+{:.4}i * I (lambda_eps = {:.4})",
        pt.m_e[(0, 0)].re,
        pt.m_e[(0, 0)].im,
        contrast(scene.eps_particle, scene.eps_matrix).unwrap()
    );

    let omega = 2.0;
    let green = GreenParams::new(c(2.0, 0.0), scene.eps_matrix, 1.0, 1.0, [0.0; 3], 0.05).unwrap();
    let g = dyadic_green(&green, [3.0, 0.0, 0.0]).unwrap();
    println!("\nG at 3 wavelengths along x (diagonal entries):");
    for i in 0..3 {
        println!(
            "  G[{0}][{0}] = {1:.6e} + {2:.6e} i",
            i,
            g[(i, i)].re,
            g[(i, i)].im
        );
    }

    let e_in = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let h_in = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
    println!("\nscattered far field |E - E_in| along the x axis:");
    println!("{:>8} {:>14}", "x", "|E_sc|");
    for i in 1..=8 {
        let x = [2.0 * i as f64, 0.0, 0.0];
        let field = far_field_scattered(&green, &pt, e_in, h_in, x, omega).unwrap();
        println!("{:>8.1} {:>14.6e}", x[0], cvec_norm(&field));
    }
    println!(
        "\nthe amplitude carries the delta^3 prefactor: delta = {}",
        green.delta
    );
}
