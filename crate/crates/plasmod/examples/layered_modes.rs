//! Mode counting for deeper alternating stacks with the brute-force solver.
//!
//! Each added metal shell supplies extra resonances, so deeper stacks can
//! absorb more distinct frequencies. The determinant scan finds every
//! lossless metal/host ratio where the transmission system turns singular.
//!
//! Run with: cargo run --example layered_modes

use plasmod::layered::mode_count_scan;

fn main() {
    let stacks: [(&str, Vec<f64>); 4] = [
        ("solid metal sphere", vec![1.0]),
        ("single metal shell on a dielectric core", vec![2.0, 3.0]),
        (
            "two metal shells (the nanomatryushka)",
            vec![4.0, 5.0, 9.0, 10.0],
        ),
        ("three metal shells", vec![4.0, 5.0, 9.0, 10.0, 14.0, 15.0]),
    ];
    for (label, radii) in stacks {
        let ratios = mode_count_scan(&radii, 1.0).unwrap();
        println!("{} ({} interfaces):", label, radii.len());
        println!("  {} resonant ratios eps_s/eps_host:", ratios.len());
        for r in &ratios {
            println!("    {:>10.4}", r);
        }
        println!();
    }
}
