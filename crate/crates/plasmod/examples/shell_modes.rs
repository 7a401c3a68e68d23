//! Resonant modes of concentric nanoshells for four radius ratios.
//!
//! Each structure supports four modes; the table lists the eigenvalue, the
//! metal/dielectric permittivity ratio that excites it, the overlaps that
//! decide excitability, and the Drude frequency reaching that ratio.
//!
//! Run with: cargo run --example shell_modes

use plasmod::drude::DrudeParams;
use plasmod::nanoshell::{mode_frequencies, Radii};

fn main() {
    let drude = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
    for radii in [
        [4.0, 5.0, 9.0, 10.0],
        [3.0, 4.0, 7.0, 8.0],
        [5.0, 6.0, 11.0, 12.0],
        [3.0, 4.0, 6.0, 8.0],
    ] {
        let r = Radii::new(radii).unwrap();
        println!(
            "r1:r2:r3:r4 = {}:{}:{}:{}",
            radii[0], radii[1], radii[2], radii[3]
        );
        println!(
            "  {:>10} {:>12} {:>10} {:>12} {:>12}",
            "lambda1", "eps_s/eps1", "v.e", "r1^3 v1", "omega/wp"
        );
        for entry in mode_frequencies(&r, &drude, 1.0).unwrap() {
            let m = &entry.mode;
            println!(
                "  {:>10.4} {:>12.4} {:>10.4} {:>12.4} {:>12.6}",
                m.lambda,
                m.eps_ratio,
                m.e_overlap,
                m.upsilon_overlap,
                entry.omega.unwrap_or(f64::NAN)
            );
        }
        println!();
    }
}
