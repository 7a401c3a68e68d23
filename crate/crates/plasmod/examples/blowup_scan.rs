//! Energy blow-up as the loss width shrinks: the defining signature of
//! plasmon resonance. tau * E diverges on resonance and vanishes off it.
//!
//! Run with: cargo run --example blowup_scan

use plasmod::drude::DrudeParams;
use plasmod::nanoshell::{resonance_blowup_shell, Radii};
use plasmod::numerics::fit_loglog_slope;
use plasmod::sphere::resonance_blowup_scan;

fn main() {
    let metal = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
    let grid: Vec<f64> = (0..9).map(|i| 10f64.powf(-2.0 - 0.5 * i as f64)).collect();

    println!("sphere at omega = omega_p/sqrt(3):");
    let scan = resonance_blowup_scan(
        &metal,
        metal.omega_p / 3.0f64.sqrt(),
        1.0,
        [0.0, 0.0, 1.0],
        &grid,
    )
    .unwrap();
    print_scan(&scan);

    println!("\nsphere at omega = 10 omega_p (off resonance):");
    let scan = resonance_blowup_scan(&metal, 10.0, 1.0, [0.0, 0.0, 1.0], &grid).unwrap();
    print_scan(&scan);

    let radii = Radii::new([4.0, 5.0, 9.0, 10.0]).unwrap();
    for mode_index in 0..4 {
        println!("\nnanoshell 4:5:9:10, mode {}:", mode_index);
        let scan = resonance_blowup_shell(&radii, 1.0, &metal, mode_index, &grid).unwrap();
        print_scan(&scan);
    }
}

fn print_scan(scan: &[(f64, f64)]) {
    println!("  {:>10} {:>14}", "tau/wp", "tau*energy");
    for &(tau, te) in scan {
        println!("  {:>10.1e} {:>14.6e}", tau, te);
    }
    let energies: Vec<(f64, f64)> = scan.iter().map(|&(t, te)| (t, te / t)).collect();
    println!(
        "  energy log-log slope: {:+.4}",
        fit_loglog_slope(&energies)
    );
}
