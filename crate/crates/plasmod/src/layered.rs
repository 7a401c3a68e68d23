//! Brute-force transmission solver for N concentric layers.
//!
//! The degree-1 potential in region j is a_j r + b_j / r^2; regularity pins
//! b = 0 in the core and a = a0 (the drive) in the host. Each interface
//! contributes two raw conditions,
//!
//! ```text
//! a_{j+1} r + b_{j+1} r^-2 = a_j r + b_j r^-2
//! eps_{j+1} (a_{j+1} - 2 b_{j+1} r^-3) = eps_j (a_j - 2 b_j r^-3)
//! ```
//!
//! and the resulting dense 2(N-1) system is solved as-is — no shell
//! factorizations — which is what makes this module an independent oracle
//! for the nanoshell formulas. A determinant scan over lossless metal
//! permittivities counts the resonant modes of alternating stacks.

use num_complex::Complex64;

use crate::error::invalid;
use crate::numerics::{solve_linear, SmallMatrix};
use crate::{Error, Result};

/// N concentric regions described by N-1 interface radii and N
/// permittivities, innermost first; the last entry is the host.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredSphere {
    pub radii: Vec<f64>,
    pub eps: Vec<Complex64>,
}

impl LayeredSphere {
    pub fn new(radii: Vec<f64>, eps: Vec<Complex64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(invalid("at least one interface radius required"));
        }
        if radii.iter().any(|&r| !(r > 0.0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("radii must be positive and strictly increasing"));
        }
        if eps.len() != radii.len() + 1 {
            return Err(invalid(format!(
                "need {} permittivities for {} interfaces, got {}",
                radii.len() + 1,
                radii.len(),
                eps.len()
            )));
        }
        let host = eps[eps.len() - 1];
        if !(host.re > 0.0) {
            return Err(invalid("host permittivity must have positive real part"));
        }
        Ok(LayeredSphere { radii, eps })
    }

    fn regions(&self) -> usize {
        self.eps.len()
    }
}

/// Per-region coefficients of one harmonic order: `a[j]`, `b[j]` for region
/// j (0-based), with `b[0] = 0` and `a[N-1] = a0` fixed by regularity.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredCoefficients {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

/// Unknown layout for the dense system: a1, (a2,b2), ..., (a_{N-1},b_{N-1}), bN.
fn idx_a(j: usize) -> usize {
    // region j in 1..=N-1 (1-based)
    if j == 1 {
        0
    } else {
        1 + 2 * (j - 2)
    }
}

fn idx_b(j: usize, n_unknowns: usize, regions: usize) -> usize {
    // region j in 2..=N (1-based)
    if j == regions {
        n_unknowns - 1
    } else {
        2 + 2 * (j - 2)
    }
}

/// Assembles the raw transmission system on radii scaled by `1/scale`.
/// Returns the matrix and the right-hand side for unit drive.
fn assemble_system(ls: &LayeredSphere, scale: f64) -> (SmallMatrix, Vec<Complex64>) {
    let regions = ls.regions();
    let n = 2 * (regions - 1);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = SmallMatrix::zeros(n, n);
    let mut rhs = vec![zero; n];
    for (iface, &radius) in ls.radii.iter().enumerate() {
        let j = iface + 1; // interface between region j and j+1 (1-based)
        let r = radius / scale;
        let (row_c, row_f) = (2 * iface, 2 * iface + 1);
        let (ej, ej1) = (ls.eps[j - 1], ls.eps[j]);
        // region j side (a_j present unless j == N, b_j present unless j == 1)
        m[(row_c, idx_a(j))] += Complex64::new(r, 0.0);
        m[(row_f, idx_a(j))] += ej;
        if j >= 2 {
            m[(row_c, idx_b(j, n, regions))] += Complex64::new(r.powi(-2), 0.0);
            m[(row_f, idx_b(j, n, regions))] += ej * (-2.0 * r.powi(-3));
        }
        // region j+1 side, subtracted
        if j + 1 < regions {
            m[(row_c, idx_a(j + 1))] -= Complex64::new(r, 0.0);
            m[(row_f, idx_a(j + 1))] -= ej1;
        } else {
            // a_N = a0 is known: move to the right-hand side (unit drive)
            rhs[row_c] += Complex64::new(r, 0.0);
            rhs[row_f] += ej1;
        }
        m[(row_c, idx_b(j + 1, n, regions))] -= Complex64::new(r.powi(-2), 0.0);
        m[(row_f, idx_b(j + 1, n, regions))] -= ej1 * (-2.0 * r.powi(-3));
    }
    (m, rhs)
}

/// Solves the raw transmission conditions for each driving coefficient.
pub fn direct_solve(ls: &LayeredSphere, a0: &[Complex64]) -> Result<Vec<LayeredCoefficients>> {
    let regions = ls.regions();
    let n = 2 * (regions - 1);
    // nondimensionalize by the outermost radius; a is scale-free and b maps
    // back exactly as b * scale^3
    let scale = *ls.radii.last().unwrap();
    let (m, rhs) = assemble_system(ls, scale);
    let unit = solve_linear(&m, &rhs).map_err(|err| match err {
        Error::SingularMatrix { .. } => Error::ResonantSingularity,
        other => other,
    })?;
    let scale3 = scale.powi(3);
    Ok(a0
        .iter()
        .map(|&drive| {
            let mut a = vec![Complex64::new(0.0, 0.0); regions];
            let mut b = vec![Complex64::new(0.0, 0.0); regions];
            for j in 1..regions {
                a[j - 1] = drive * unit[idx_a(j)];
            }
            a[regions - 1] = drive;
            for j in 2..=regions {
                b[j - 1] = drive * unit[idx_b(j, n, regions)] * scale3;
            }
            LayeredCoefficients { a, b }
        })
        .collect())
}

/// Largest relative residual of the raw transmission equations.
pub fn transmission_residual(
    ls: &LayeredSphere,
    coeffs: &LayeredCoefficients,
    _a0: Complex64,
) -> f64 {
    let mut worst: f64 = 0.0;
    for (iface, &r) in ls.radii.iter().enumerate() {
        let (ej, ej1) = (ls.eps[iface], ls.eps[iface + 1]);
        let (aj, bj) = (coeffs.a[iface], coeffs.b[iface]);
        let (aj1, bj1) = (coeffs.a[iface + 1], coeffs.b[iface + 1]);
        let c_lhs = aj1 * r + bj1 * r.powi(-2);
        let c_rhs = aj * r + bj * r.powi(-2);
        let c_scale = c_lhs.norm().max(c_rhs.norm()).max(1e-300);
        worst = worst.max((c_lhs - c_rhs).norm() / c_scale);
        let f_lhs = ej1 * (aj1 - 2.0 * bj1 * r.powi(-3));
        let f_rhs = ej * (aj - 2.0 * bj * r.powi(-3));
        let f_scale = f_lhs.norm().max(f_rhs.norm()).max(1e-300);
        worst = worst.max((f_lhs - f_rhs).norm() / f_scale);
    }
    worst
}

/// Scan bracket for the lossless metal/host permittivity ratio.
const SCAN_LO: f64 = -100.0;
const SCAN_HI: f64 = -0.01;
const SCAN_POINTS: usize = 10_000;

/// Counts the real resonance ratios of an alternating metal/dielectric
/// stack: every other region, counted inward from the host, is metal.
///
/// Returns the distinct lossless `eps_s / eps_host` values where the
/// transmission system turns singular, found by a sign-change scan of the
/// system determinant over [-100, -0.01] (log-spaced) plus bisection.
pub fn mode_count_scan(radii: &[f64], eps_dielectric: f64) -> Result<Vec<f64>> {
    if !(eps_dielectric > 0.0) {
        return Err(invalid("dielectric permittivity must be positive"));
    }
    let probe = |ratio: f64| -> Result<f64> {
        let ls = alternating_structure(radii, eps_dielectric, ratio)?;
        let scale = *ls.radii.last().unwrap();
        let (m, _) = assemble_system(&ls, scale);
        Ok(m.determinant()?.re)
    };
    // log-spaced grid in |ratio| so nearby shallow roots stay separated
    let (lo, hi) = (SCAN_HI.abs().ln(), SCAN_LO.abs().ln());
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| {
            let t = i as f64 / (SCAN_POINTS - 1) as f64;
            -((lo + t * (hi - lo)).exp())
        })
        .collect();
    let mut roots = Vec::new();
    let mut prev = probe(grid[0])?;
    for window in grid.windows(2) {
        let next = probe(window[1])?;
        if prev == 0.0 {
            roots.push(window[0]);
        } else if prev * next < 0.0 {
            let mut a = window[0];
            let mut b = window[1];
            let mut fa = prev;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (b - a).abs() <= 1e-12 * mid.abs().max(1.0) {
                    break;
                }
                let fm = probe(mid)?;
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev = next;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-8 * a.abs().max(1.0));
    Ok(roots)
}

/// Builds the alternating stack: metal in regions N-1, N-3, ... (1-based),
/// dielectric elsewhere, host dielectric.
fn alternating_structure(radii: &[f64], eps_dielectric: f64, ratio: f64) -> Result<LayeredSphere> {
    let regions = radii.len() + 1;
    let eps_metal = Complex64::new(ratio * eps_dielectric, 0.0);
    let eps: Vec<Complex64> = (1..=regions)
        .map(|j| {
            // distance from the host region, host itself dielectric
            if (regions - j) % 2 == 1 {
                eps_metal
            } else {
                Complex64::new(eps_dielectric, 0.0)
            }
        })
        .collect();
    LayeredSphere::new(radii.to_vec(), eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_sphere_recovers_closed_form() {
        // N = 2: a_in = 3 eps0/(2 eps0 + eps1) a0, b_out = (eps0-eps1)/(2
        // eps0+eps1) r^3 a0
        let (eps1, eps0, r) = (c(-1.9, 0.4), c(1.3, 0.0), 2.7);
        let ls = LayeredSphere::new(vec![r], vec![eps1, eps0]).unwrap();
        let out = direct_solve(&ls, &[c(1.0, 0.0)]).unwrap();
        let den = 2.0 * eps0 + eps1;
        let a_in = 3.0 * eps0 / den;
        let b_out = (eps0 - eps1) / den * r.powi(3);
        assert!((out[0].a[0] - a_in).norm() < 1e-12 * a_in.norm());
        assert!((out[0].b[1] - b_out).norm() < 1e-12 * b_out.norm());
        assert_eq!(out[0].b[0], c(0.0, 0.0));
        assert_eq!(out[0].a[1], c(1.0, 0.0));
        assert!(transmission_residual(&ls, &out[0], c(1.0, 0.0)) <= 1e-11);
    }

    #[test]
    fn uniform_medium_is_transparent() {
        let eps = c(2.2, 0.0);
        let ls = LayeredSphere::new(vec![1.0, 2.0, 3.0], vec![eps, eps, eps, eps]).unwrap();
        let out = direct_solve(&ls, &[c(1.0, 0.0)]).unwrap();
        for j in 0..4 {
            assert!((out[0].a[j] - c(1.0, 0.0)).norm() < 1e-12);
            assert!(out[0].b[j].norm() < 1e-12);
        }
    }

    #[test]
    fn residuals_small_for_deep_stack() {
        let ls = LayeredSphere::new(
            vec![1.0, 1.5, 2.2, 3.0, 4.1, 5.0, 6.3],
            vec![
                c(3.0, 0.0),
                c(-2.0, 0.5),
                c(1.5, 0.0),
                c(-4.0, 1.0),
                c(2.0, 0.0),
                c(-1.0, 0.2),
                c(1.2, 0.0),
                c(1.0, 0.0),
            ],
        )
        .unwrap();
        let out = direct_solve(&ls, &[c(1.0, 0.0), c(0.5, -0.5)]).unwrap();
        for coeffs in &out {
            assert!(transmission_residual(&ls, coeffs, c(1.0, 0.0)) <= 1e-11);
        }
    }

    #[test]
    fn si_scale_radii_keep_residuals_small() {
        // nanometer-scale radii in meters stress the scaling
        let ls = LayeredSphere::new(
            vec![4e-9, 5e-9, 9e-9, 10e-9],
            vec![
                c(1.0, 0.0),
                c(-6.0, 0.3),
                c(1.0, 0.0),
                c(-6.0, 0.3),
                c(1.0, 0.0),
            ],
        )
        .unwrap();
        let out = direct_solve(&ls, &[c(1.0, 0.0)]).unwrap();
        assert!(transmission_residual(&ls, &out[0], c(1.0, 0.0)) <= 1e-11);
    }

    #[test]
    fn solid_metal_sphere_has_one_mode() {
        let roots = mode_count_scan(&[1.0], 1.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + 2.0).abs() < 1e-8, "{:?}", roots);
    }

    #[test]
    fn single_metal_shell_has_two_modes() {
        let roots = mode_count_scan(&[2.0, 3.0], 1.0).unwrap();
        assert_eq!(roots.len(), 2, "{:?}", roots);
    }

    #[test]
    fn double_shell_structure_has_four_modes() {
        let roots = mode_count_scan(&[4.0, 5.0, 9.0, 10.0], 1.0).unwrap();
        assert_eq!(roots.len(), 4, "{:?}", roots);
        // the ratios agree with the eigenvalue route
        let modes = crate::nanoshell::resonance_modes(
            &crate::nanoshell::Radii::new([4.0, 5.0, 9.0, 10.0]).unwrap(),
        )
        .unwrap();
        let mut expected: Vec<f64> = modes.modes.iter().map(|m| m.eps_ratio).collect();
        expected.sort_by(f64::total_cmp);
        for (root, e) in roots.iter().zip(&expected) {
            assert!(
                (root - e).abs() <= 1e-8 * e.abs().max(1.0),
                "{} vs {}",
                root,
                e
            );
        }
    }

    #[test]
    fn mode_values_scale_invariant() {
        let base = mode_count_scan(&[4.0, 5.0, 9.0, 10.0], 1.0).unwrap();
        let scaled = mode_count_scan(&[8.0, 10.0, 18.0, 20.0], 1.0).unwrap();
        assert_eq!(base.len(), scaled.len());
        for (a, b) in base.iter().zip(&scaled) {
            assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0));
        }
    }

    #[test]
    fn structure_validation() {
        assert!(LayeredSphere::new(vec![], vec![c(1.0, 0.0)]).is_err());
        assert!(LayeredSphere::new(vec![2.0, 1.0], vec![c(1.0, 0.0); 3]).is_err());
        assert!(LayeredSphere::new(vec![1.0], vec![c(1.0, 0.0)]).is_err());
        assert!(LayeredSphere::new(vec![1.0], vec![c(1.0, 0.0), c(-1.0, 0.0)]).is_err());
    }
}
