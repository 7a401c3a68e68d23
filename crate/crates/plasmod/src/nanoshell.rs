//! Concentric-nanoshell resonance analysis.
//!
//! Five regions (dielectric core, metal, dielectric, metal, host) separated
//! by radii r1 < r2 < r3 < r4, with eps1 = eps3 = eps5 (dielectric) and
//! eps_s = eps2 = eps4 (metal). Writing the transmission conditions in the
//! jump variables d_j = a_{j+1} - a_j produces a 4x4 system P d = -a0 e,
//! and under the equal-permittivity pattern P = lambda1 I - K where K
//! depends only on radius ratios. Resonances are the eigenvalues of K: the
//! quartic det(lambda I - K) = 0 has four real roots, each mapping to a
//! metal/dielectric permittivity ratio via eps_s/eps1 = (lambda+1)/(lambda-2).
//!
//! Coefficient recovery:
//!
//! ```text
//! b_m = a0m Xi Upsilon P^-1 e            (b2, b3, b4, b5)
//! a_m = a0m (Xi^T P^-1 e + e4)           (a1, a2, a3, a4)
//! ```
//!
//! with Xi lower-triangular ones and Upsilon = diag(r_j^3). The energy in
//! the metal shells uses fixed radial weights per harmonic order; a
//! quadrature route over the actual potential is provided as the oracle.

use num_complex::Complex64;

use crate::drude::{lossless_frequency_for, permittivity, DrudeParams};
use crate::error::invalid;
use crate::numerics::{eig_real, quadrature_integrate, solve_linear, SmallMatrix};
use crate::sphere::check_descending_positive;
use crate::{Error, Result};

/// Strictly increasing interface radii (r1, r2, r3, r4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radii([f64; 4]);

impl Radii {
    pub fn new(radii: [f64; 4]) -> Result<Self> {
        if radii.iter().any(|&r| !(r > 0.0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid(format!(
                "radii must be positive and strictly increasing, got {:?}",
                radii
            )));
        }
        Ok(Radii(radii))
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    /// Radius of interface j, 1-based to match the region labels.
    fn r(&self, j: usize) -> f64 {
        self.0[j - 1]
    }

    pub fn scaled(&self, c: f64) -> Result<Radii> {
        Radii::new([c * self.0[0], c * self.0[1], c * self.0[2], c * self.0[3]])
    }
}

/// The concentric structure: radii plus the two permittivities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentricStructure {
    pub radii: Radii,
    /// Dielectric permittivity eps1 = eps3 = eps5 (positive real).
    pub eps_core: Complex64,
    /// Metal permittivity eps_s = eps2 = eps4.
    pub eps_shell: Complex64,
}

impl ConcentricStructure {
    pub fn new(radii: Radii, eps_core: Complex64, eps_shell: Complex64) -> Result<Self> {
        if !(eps_core.re > 0.0) || eps_core.im != 0.0 {
            return Err(invalid("core/host permittivity must be positive real"));
        }
        Ok(ConcentricStructure {
            radii,
            eps_core,
            eps_shell,
        })
    }

    /// Region permittivities (eps1..eps5), innermost first.
    fn region_eps(&self) -> [Complex64; 5] {
        [
            self.eps_core,
            self.eps_shell,
            self.eps_core,
            self.eps_shell,
            self.eps_core,
        ]
    }
}

/// Assembled shell matrices and vectors.
#[derive(Debug, Clone)]
pub struct ShellMatrices {
    /// P = lambda1 I - K, the jump-variable transmission matrix.
    pub p_mat: SmallMatrix,
    /// K, real, depends only on radius ratios.
    pub k_mat: SmallMatrix,
    /// Lower-triangular ones.
    pub xi_mat: SmallMatrix,
    /// diag(r1^3, ..., r4^3).
    pub upsilon_mat: SmallMatrix,
    /// Maps P^-1 e to the f-functions (plus the (1,1,0,0) offset).
    pub f_mat: SmallMatrix,
    /// Drive pattern (1, -1, 1, -1).
    pub e_vec: [f64; 4],
    /// All-ones vector.
    pub e4_vec: [f64; 4],
    /// Interface contrasts lambda_1..lambda_4.
    pub lambdas: [Complex64; 4],
}

fn k_entries(radii: &Radii) -> [[f64; 4]; 4] {
    let q = |a: usize, b: usize| (radii.r(a) / radii.r(b)).powi(3);
    [
        [0.0, 1.0, 1.0, 1.0],
        [2.0 * q(1, 2), 1.0, -1.0, -1.0],
        [-2.0 * q(1, 3), -2.0 * q(2, 3), 0.0, 1.0],
        [2.0 * q(1, 4), 2.0 * q(2, 4), 2.0 * q(3, 4), 1.0],
    ]
}

/// Builds P, K, Xi, Upsilon, F and the contrast vector for a structure.
///
/// Fails with [`Error::DegenerateInterface`] when adjacent permittivities
/// coincide (the contrasts lambda_j blow up).
pub fn assemble_matrices(s: &ConcentricStructure) -> Result<ShellMatrices> {
    let eps = s.region_eps();
    let max_eps = eps.iter().map(|e| e.norm()).fold(0.0, f64::max);
    let mut lambdas = [Complex64::new(0.0, 0.0); 4];
    for j in 0..4 {
        let diff = eps[j + 1] - eps[j];
        if diff.norm() < 1e-14 * max_eps {
            return Err(Error::DegenerateInterface { index: j + 1 });
        }
        lambdas[j] = (2.0 * eps[j + 1] + eps[j]) / diff;
    }
    // contrast identity under the alternating pattern:
    // lambda1 = lambda3 = 1 - lambda2 = 1 - lambda4
    debug_assert!((lambdas[0] - lambdas[2]).norm() <= 1e-10 * lambdas[0].norm().max(1.0));
    debug_assert!(
        (lambdas[0] + lambdas[1] - Complex64::new(1.0, 0.0)).norm()
            <= 1e-10 * lambdas[0].norm().max(1.0)
    );

    let k = k_entries(&s.radii);
    let k_mat = SmallMatrix::from_real_fn(4, 4, |i, j| k[i][j]);
    let lambda1 = lambdas[0];
    let p_mat = SmallMatrix::from_fn(4, 4, |i, j| {
        let diag = if i == j {
            lambda1
        } else {
            Complex64::new(0.0, 0.0)
        };
        diag - k[i][j]
    });
    let xi_mat = SmallMatrix::from_real_fn(4, 4, |i, j| if j <= i { 1.0 } else { 0.0 });
    let upsilon_mat = SmallMatrix::from_real_fn(4, 4, |i, j| {
        if i == j {
            s.radii.r(i + 1).powi(3)
        } else {
            0.0
        }
    });
    let r1c = s.radii.r(1).powi(3);
    let f_rows = [
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 1.0],
        [r1c, 0.0, 0.0, 0.0],
        [r1c, s.radii.r(2).powi(3), s.radii.r(3).powi(3), 0.0],
    ];
    let f_mat = SmallMatrix::from_real_fn(4, 4, |i, j| f_rows[i][j]);
    Ok(ShellMatrices {
        p_mat,
        k_mat,
        xi_mat,
        upsilon_mat,
        f_mat,
        e_vec: [1.0, -1.0, 1.0, -1.0],
        e4_vec: [1.0, 1.0, 1.0, 1.0],
        lambdas,
    })
}

/// Monic quartic det(lambda I - K) = 0, highest coefficient first.
///
/// The coefficients depend only on radius ratios; the lambda^2 coefficient
/// equals one minus the lambda^1 coefficient.
pub fn resonance_quartic_coeffs(radii: &Radii) -> [f64; 5] {
    let cube = |j: usize| radii.r(j).powi(3);
    let (r1, r2, r3, r4) = (cube(1), cube(2), cube(3), cube(4));
    let c1 = 2.0 * r1 / r2 - 2.0 * r1 / r3 + 2.0 * r1 / r4 + 2.0 * r2 / r3 - 2.0 * r2 / r4
        + 2.0 * r3 / r4;
    let c2 = 1.0 - c1;
    let c0 = 4.0 * (r1 / r2) * (r3 / r4);
    [1.0, -2.0, c2, c1, c0]
}

/// One resonant mode of the shell.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellMode {
    /// Eigenvalue lambda1 of K.
    pub lambda: f64,
    /// Resonant permittivity ratio eps_s/eps1 = (lambda+1)/(lambda-2).
    pub eps_ratio: f64,
    /// Unit eigenvector of K.
    pub eigenvector: [f64; 4],
    /// Drive overlap v . e.
    pub e_overlap: f64,
    /// Leading excitability overlap (1,0,0,0) Upsilon v = r1^3 v1.
    pub upsilon_overlap: f64,
}

/// All four modes, sorted by ascending eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    pub modes: Vec<ShellMode>,
}

/// Eigen-modes of K for the given radii.
pub fn resonance_modes(radii: &Radii) -> Result<ModeSet> {
    let k = k_entries(radii);
    let k_mat = SmallMatrix::from_real_fn(4, 4, |i, j| k[i][j]);
    let pairs = eig_real(&k_mat)?;
    let knorm = k_mat.inf_norm();
    let mut modes = Vec::with_capacity(4);
    for pair in &pairs {
        if pair.value.im.abs() > 1e-9 * knorm {
            return Err(invalid(format!(
                "complex eigenvalue {} for radii {:?}",
                pair.value,
                radii.as_array()
            )));
        }
        let lambda = pair.value.re;
        let mut v = [0.0f64; 4];
        for (slot, z) in v.iter_mut().zip(&pair.vector) {
            *slot = z.re;
        }
        let e_overlap = v[0] - v[1] + v[2] - v[3];
        let upsilon_overlap = radii.r(1).powi(3) * v[0];
        modes.push(ShellMode {
            lambda,
            eps_ratio: (lambda + 1.0) / (lambda - 2.0),
            eigenvector: v,
            e_overlap,
            upsilon_overlap,
        });
    }
    // trace(K) = 2, so the eigenvalues must sum to 2
    let sum: f64 = modes.iter().map(|m| m.lambda).sum();
    debug_assert!((sum - 2.0).abs() <= 1e-9 * knorm.max(1.0));
    Ok(ModeSet { modes })
}

/// Per-order coefficient vectors recovered from the drive.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    /// Driving coefficients a0m, one per harmonic order m.
    pub a0: Vec<Complex64>,
    /// (a1m, a2m, a3m, a4m) per order; a5m = a0m by convention.
    pub a_coeffs: Vec<[Complex64; 4]>,
    /// (b2m, b3m, b4m, b5m) per order; b1m = 0 by convention.
    pub b_coeffs: Vec<[Complex64; 4]>,
}

/// Solves the shell for the given driving coefficients.
///
/// Fails with [`Error::ResonantSingularity`] when P is numerically singular,
/// which happens exactly at a lossless resonance.
pub fn shell_coefficients(s: &ConcentricStructure, a0: &[Complex64]) -> Result<CoefficientSet> {
    let m = assemble_matrices(s)?;
    let e: Vec<Complex64> = m.e_vec.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let x = solve_linear(&m.p_mat, &e).map_err(|err| match err {
        Error::SingularMatrix { .. } => Error::ResonantSingularity,
        other => other,
    })?;
    let ups_x = m.upsilon_mat.mul_vec(&x);
    let b_base = m.xi_mat.mul_vec(&ups_x);
    let xt_x = m.xi_mat.transpose().mul_vec(&x);
    let mut a_coeffs = Vec::with_capacity(a0.len());
    let mut b_coeffs = Vec::with_capacity(a0.len());
    for &a0m in a0 {
        let mut a = [Complex64::new(0.0, 0.0); 4];
        let mut b = [Complex64::new(0.0, 0.0); 4];
        for j in 0..4 {
            a[j] = a0m * (xt_x[j] + 1.0);
            b[j] = a0m * b_base[j];
        }
        a_coeffs.push(a);
        b_coeffs.push(b);
    }
    Ok(CoefficientSet {
        a0: a0.to_vec(),
        a_coeffs,
        b_coeffs,
    })
}

/// Shell energy with the fixed radial weights:
///
/// ```text
/// E = (r2^3-r1^3)/3 sum|a2m|^2 + (r4^3-r3^3)/3 sum|a4m|^2
///   + (r1^-5-r2^-5)/5 sum|b2m|^2 + (r3^-5-r4^-5)/5 sum|b4m|^2
/// ```
///
/// Every term is nonnegative for increasing radii.
pub fn shell_energy_weighted(s: &ConcentricStructure, coeffs: &CoefficientSet) -> f64 {
    let cube = |j: usize| s.radii.r(j).powi(3);
    let inv5 = |j: usize| s.radii.r(j).powi(-5);
    let sum_a2: f64 = coeffs.a_coeffs.iter().map(|a| a[1].norm_sqr()).sum();
    let sum_a4: f64 = coeffs.a_coeffs.iter().map(|a| a[3].norm_sqr()).sum();
    let sum_b2: f64 = coeffs.b_coeffs.iter().map(|b| b[0].norm_sqr()).sum();
    let sum_b4: f64 = coeffs.b_coeffs.iter().map(|b| b[2].norm_sqr()).sum();
    (cube(2) - cube(1)) / 3.0 * sum_a2
        + (cube(4) - cube(3)) / 3.0 * sum_a4
        + (inv5(1) - inv5(2)) / 5.0 * sum_b2
        + (inv5(3) - inv5(4)) / 5.0 * sum_b4
}

/// The f-function route to the same energy: (f1..f4) = F P^-1 e + (1,1,0,0),
/// then the weights above applied to |f_i|^2 times sum |a0m|^2.
pub fn shell_energy_f_route(s: &ConcentricStructure) -> Result<impl Fn(&[Complex64]) -> f64> {
    let m = assemble_matrices(s)?;
    let e: Vec<Complex64> = m.e_vec.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let x = solve_linear(&m.p_mat, &e).map_err(|err| match err {
        Error::SingularMatrix { .. } => Error::ResonantSingularity,
        other => other,
    })?;
    let fx = m.f_mat.mul_vec(&x);
    let f = [fx[0] + 1.0, fx[1] + 1.0, fx[2], fx[3]];
    let cube = |j: usize| s.radii.r(j).powi(3);
    let inv5 = |j: usize| s.radii.r(j).powi(-5);
    let weights = [
        (cube(2) - cube(1)) / 3.0,
        (cube(4) - cube(3)) / 3.0,
        (inv5(1) - inv5(2)) / 5.0,
        (inv5(3) - inv5(4)) / 5.0,
    ];
    Ok(move |a0: &[Complex64]| {
        let drive: f64 = a0.iter().map(|a| a.norm_sqr()).sum();
        weights
            .iter()
            .zip(&f)
            .map(|(w, fi)| w * fi.norm_sqr())
            .sum::<f64>()
            * drive
    })
}

/// Choice of integrand for the quadrature oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyIntegrand {
    /// |grad u|^2 over the metal shells.
    Field,
    /// |u|^2 over the metal shells.
    Potential,
}

/// Ground-truth energy by radial Gauss quadrature and exact angular
/// integration of the degree-1 expansion over the metal shells A2 and A4.
///
/// For u = f(r) Y_1^m with orthonormal Y, the angular integral of |grad u|^2
/// is |f'|^2 + 2 |f/r|^2 and of |u|^2 is |f|^2, leaving a radial integral
/// against r^2 dr.
pub fn shell_energy_quadrature(
    s: &ConcentricStructure,
    coeffs: &CoefficientSet,
    integrand: EnergyIntegrand,
) -> f64 {
    let nodes = 64;
    let mut total = 0.0;
    // metal shells: region 2 between (r1, r2), region 4 between (r3, r4)
    for (region, lo, hi) in [
        (1usize, s.radii.r(1), s.radii.r(2)),
        (3, s.radii.r(3), s.radii.r(4)),
    ] {
        for (a, b) in coeffs
            .a_coeffs
            .iter()
            .zip(&coeffs.b_coeffs)
            .map(|(am, bm)| (am[region], bm[region - 1]))
        {
            total += quadrature_integrate(lo, hi, nodes, |r| {
                let value = match integrand {
                    EnergyIntegrand::Potential => {
                        let f = a * r + b / (r * r);
                        f.norm_sqr()
                    }
                    EnergyIntegrand::Field => {
                        let df = a - 2.0 * b / (r * r * r);
                        let f_over_r = a + b / (r * r * r);
                        df.norm_sqr() + 2.0 * f_over_r.norm_sqr()
                    }
                };
                value * r * r
            });
        }
    }
    total
}

/// A mode together with the Drude frequency that excites it, when one
/// exists.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeFrequency {
    pub mode: ShellMode,
    /// Drude frequency with lossless permittivity eps_ratio * eps_core;
    /// `None` when that target is not reachable at a real frequency.
    pub omega: Option<f64>,
}

/// Maps every mode to its exciting frequency under the given Drude metal.
/// Ineligible modes are flagged with `omega: None`, never dropped.
pub fn mode_frequencies(
    radii: &Radii,
    drude: &DrudeParams,
    eps_core: f64,
) -> Result<Vec<ModeFrequency>> {
    if !(eps_core > 0.0) {
        return Err(invalid("eps_core must be positive"));
    }
    let modes = resonance_modes(radii)?;
    Ok(modes
        .modes
        .into_iter()
        .map(|mode| {
            let target = mode.eps_ratio * eps_core;
            let omega = lossless_frequency_for(drude, target).ok();
            ModeFrequency { mode, omega }
        })
        .collect())
}

/// Excitability overlaps of a mode: v.e together with the four F-row
/// overlaps whose nonvanishing makes the corresponding f-function blow up.
fn mode_overlaps(radii: &Radii, mode: &ShellMode) -> (f64, [f64; 4]) {
    let v = mode.eigenvector;
    let cube = |j: usize| radii.r(j).powi(3);
    let f_overlaps = [
        v[1] + v[2] + v[3],
        v[3],
        cube(1) * v[0],
        cube(1) * v[0] + cube(2) * v[1] + cube(3) * v[2],
    ];
    (mode.e_overlap, f_overlaps)
}

/// Drives the structure at one mode's frequency and sweeps the Drude loss
/// width downward, reporting `(tau, tau * shell energy)`.
///
/// The theorem hypotheses require a nonzero drive overlap v.e and at least
/// one nonzero f-overlap; otherwise [`Error::HypothesisViolated`].
pub fn resonance_blowup_shell(
    radii: &Radii,
    eps_core: f64,
    drude: &DrudeParams,
    mode_index: usize,
    tau_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    check_descending_positive(tau_grid)?;
    let frequencies = mode_frequencies(radii, drude, eps_core)?;
    let entry = frequencies
        .get(mode_index)
        .ok_or_else(|| invalid(format!("mode index {} out of range", mode_index)))?;
    let (e_overlap, f_overlaps) = mode_overlaps(radii, &entry.mode);
    let f_scale = radii.r(4).powi(3);
    let excitable = e_overlap.abs() > 1e-10
        && f_overlaps
            .iter()
            .any(|o| o.abs() > 1e-10 * f_scale.max(1.0));
    if !excitable {
        return Err(Error::HypothesisViolated { mode_index });
    }
    let omega = entry
        .omega
        .ok_or_else(|| invalid(format!("mode {} has no real Drude frequency", mode_index)))?;
    let a0 = crate::sphere::uniform_field_coefficients([0.0, 0.0, 1.0]);
    let mut out = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        let eps_s = permittivity(&drude.with_tau(tau)?, omega);
        let s = ConcentricStructure::new(*radii, Complex64::new(eps_core, 0.0), eps_s)?;
        let coeffs = shell_coefficients(&s, &a0)?;
        let energy = shell_energy_weighted(&s, &coeffs);
        out.push((tau, tau * energy));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::{direct_solve, LayeredSphere};
    use crate::numerics::{fit_loglog_slope, poly_eval, poly_roots};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reference_radii() -> Radii {
        Radii::new([4.0, 5.0, 9.0, 10.0]).unwrap()
    }

    #[test]
    fn k_row_and_upsilon() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let m = assemble_matrices(&s).unwrap();
        // K row 2 = (2 (4/5)^3, 1, -1, -1) = (1.024, 1, -1, -1)
        assert!((m.k_mat[(1, 0)].re - 1.024).abs() < 1e-12);
        assert_eq!(m.k_mat[(1, 1)].re, 1.0);
        assert_eq!(m.k_mat[(1, 2)].re, -1.0);
        assert_eq!(m.k_mat[(1, 3)].re, -1.0);
        // Upsilon = diag(64, 125, 729, 1000)
        for (i, v) in [64.0, 125.0, 729.0, 1000.0].iter().enumerate() {
            assert_eq!(m.upsilon_mat[(i, i)].re, *v);
        }
        // det(F) = r1^3 (r2^3 - r3^3)
        let det = m.f_mat.determinant().unwrap();
        assert!((det.re - 64.0 * (125.0 - 729.0)).abs() < 1e-6);
    }

    #[test]
    fn p_equals_minus_k_at_lambda_zero() {
        // lambda1 = 0 requires 2 eps_s + eps1 = 0
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(-0.5, 0.0)).unwrap();
        let m = assemble_matrices(&s).unwrap();
        assert!(m.lambdas[0].norm() < 1e-14);
        for i in 0..4 {
            for j in 0..4 {
                assert!((m.p_mat[(i, j)] + m.k_mat[(i, j)]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_interface_rejected() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(
            assemble_matrices(&s),
            Err(Error::DegenerateInterface { .. })
        ));
    }

    #[test]
    fn quartic_leading_coefficients_and_ratio_dependence() {
        let coeffs = resonance_quartic_coeffs(&reference_radii());
        assert_eq!(coeffs[0], 1.0);
        assert_eq!(coeffs[1], -2.0);
        let doubled = resonance_quartic_coeffs(&Radii::new([8.0, 10.0, 18.0, 20.0]).unwrap());
        for (a, b) in coeffs.iter().zip(&doubled) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn quartic_roots_match_table() {
        let coeffs = resonance_quartic_coeffs(&Radii::new([3.0, 4.0, 6.0, 8.0]).unwrap());
        let roots = poly_roots(&coeffs).unwrap();
        let expected = [-0.7702, -0.3787, 1.3787, 1.7702];
        for (root, e) in roots.iter().zip(expected) {
            assert!(root.im.abs() < 1e-10);
            assert!((root.re - e).abs() < 5e-4, "{} vs {}", root.re, e);
            assert!(poly_eval(&coeffs, *root).norm() < 1e-8 * 4.0);
        }
    }

    #[test]
    fn modes_match_table_one() {
        let modes = resonance_modes(&reference_radii()).unwrap();
        let expected = [
            (-0.8550, -0.0508),
            (-0.5915, -0.1576),
            (1.5915, -6.3439),
            (1.8550, -19.6878),
        ];
        assert_eq!(modes.modes.len(), 4);
        for (mode, (lam, ratio)) in modes.modes.iter().zip(expected) {
            assert!(
                (mode.lambda - lam).abs() < 5e-4,
                "{} vs {}",
                mode.lambda,
                lam
            );
            assert!(
                (mode.eps_ratio - ratio).abs() < 5e-4,
                "{} vs {}",
                mode.eps_ratio,
                ratio
            );
        }
        let sum: f64 = modes.modes.iter().map(|m| m.lambda).sum();
        assert!((sum - 2.0).abs() < 1e-10);
    }

    #[test]
    fn second_table_row() {
        let modes = resonance_modes(&Radii::new([5.0, 6.0, 11.0, 12.0]).unwrap()).unwrap();
        let expected = [-0.8771, -0.6546, 1.6546, 1.8771];
        for (mode, lam) in modes.modes.iter().zip(expected) {
            assert!((mode.lambda - lam).abs() < 5e-4);
        }
    }

    #[test]
    fn ratio_map_round_trip() {
        // substituting eps_s = ratio * eps1 back into the contrast recovers
        // the eigenvalue
        let modes = resonance_modes(&reference_radii()).unwrap();
        for mode in &modes.modes {
            let eps1 = 2.3;
            let eps_s = mode.eps_ratio * eps1;
            let lambda = (2.0 * eps_s + eps1) / (eps_s - eps1);
            assert!((lambda - mode.lambda).abs() < 1e-10);
        }
    }

    #[test]
    fn coefficients_uniform_medium() {
        // eps_s = eps1 (1 + 1e-9): essentially no scatterer
        let s =
            ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(1.0 + 1e-9, 0.0)).unwrap();
        let coeffs = shell_coefficients(&s, &[c(1.0, 0.0)]).unwrap();
        for j in 0..4 {
            assert!((coeffs.a_coeffs[0][j] - c(1.0, 0.0)).norm() < 1e-6);
            assert!(coeffs.b_coeffs[0][j].norm() < 1e-6 * 1000.0);
        }
    }

    #[test]
    fn coefficients_match_direct_transmission_solve() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let a0 = [c(1.0, 0.0), c(0.3, -0.4)];
        let coeffs = shell_coefficients(&s, &a0).unwrap();
        let ls = LayeredSphere::new(
            s.radii.as_array().to_vec(),
            vec![
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(1.0, 0.0),
                c(2.0, 0.0),
                c(1.0, 0.0),
            ],
        )
        .unwrap();
        let oracle = direct_solve(&ls, &a0).unwrap();
        for (m, per_m) in oracle.iter().enumerate() {
            for j in 0..4 {
                let da = (coeffs.a_coeffs[m][j] - per_m.a[j]).norm();
                assert!(da <= 1e-10 * per_m.a[j].norm().max(1.0), "a[{}]", j);
                let db = (coeffs.b_coeffs[m][j] - per_m.b[j + 1]).norm();
                assert!(db <= 1e-10 * per_m.b[j + 1].norm().max(1.0), "b[{}]", j);
            }
        }
    }

    #[test]
    fn near_resonance_growth() {
        // approaching a mode ratio from the lossy side grows ||b|| like 1/eta
        let modes = resonance_modes(&reference_radii()).unwrap();
        let ratio = modes.modes[2].eps_ratio; // -6.3439
        let mut norms = Vec::new();
        for eta in [1e-4, 1e-5, 1e-6] {
            let eps_s = c(ratio, ratio.abs() * eta);
            let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), eps_s).unwrap();
            let coeffs = shell_coefficients(&s, &[c(1.0, 0.0)]).unwrap();
            let norm: f64 = coeffs.b_coeffs[0]
                .iter()
                .map(|b| b.norm_sqr())
                .sum::<f64>()
                .sqrt();
            norms.push((eta, norm));
        }
        let slope = fit_loglog_slope(&norms);
        assert!((slope + 1.0).abs() < 0.05, "slope {}", slope);
    }

    #[test]
    fn energy_arithmetic() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        // zero coefficients give zero energy
        let zero = CoefficientSet {
            a0: vec![c(0.0, 0.0)],
            a_coeffs: vec![[c(0.0, 0.0); 4]],
            b_coeffs: vec![[c(0.0, 0.0); 4]],
        };
        assert_eq!(shell_energy_weighted(&s, &zero), 0.0);
        // a2 = a4 = 1, b = 0: (125-64)/3 + (1000-729)/3
        let unit = CoefficientSet {
            a0: vec![c(1.0, 0.0)],
            a_coeffs: vec![[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]],
            b_coeffs: vec![[c(0.0, 0.0); 4]],
        };
        let expect = 61.0 / 3.0 + 271.0 / 3.0;
        assert!((shell_energy_weighted(&s, &unit) - expect).abs() < 1e-12);
    }

    #[test]
    fn energy_routes_agree() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(2.0, 0.3)).unwrap();
        let a0 = [c(0.7, 0.1), c(-0.2, 0.5), c(1.1, 0.0)];
        let coeffs = shell_coefficients(&s, &a0).unwrap();
        let direct = shell_energy_weighted(&s, &coeffs);
        let f_route = shell_energy_f_route(&s).unwrap();
        let via_f = f_route(&a0);
        assert!(
            (direct - via_f).abs() <= 1e-10 * direct.abs().max(1e-300),
            "{} vs {}",
            direct,
            via_f
        );
    }

    #[test]
    fn quadrature_closed_forms() {
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let zero = CoefficientSet {
            a0: vec![c(0.0, 0.0)],
            a_coeffs: vec![[c(0.0, 0.0); 4]],
            b_coeffs: vec![[c(0.0, 0.0); 4]],
        };
        assert_eq!(
            shell_energy_quadrature(&s, &zero, EnergyIntegrand::Potential),
            0.0
        );
        // pure a-term, potential: (r2^5 - r1^5)/5 |a2|^2 + (r4^5 - r3^5)/5 |a4|^2
        let unit = CoefficientSet {
            a0: vec![c(1.0, 0.0)],
            a_coeffs: vec![[c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]],
            b_coeffs: vec![[c(0.0, 0.0); 4]],
        };
        let p5 = |r: f64| r.powi(5);
        let expect = (p5(5.0) - p5(4.0)) / 5.0 * 4.0 + (p5(10.0) - p5(9.0)) / 5.0 * 0.25;
        let got = shell_energy_quadrature(&s, &unit, EnergyIntegrand::Potential);
        assert!((got - expect).abs() <= 1e-10 * expect);
        // pure a-term, field: 3 * (r2^3 - r1^3)/3 |a2|^2 + ...
        let expect =
            (5.0f64.powi(3) - 4.0f64.powi(3)) * 4.0 + (10.0f64.powi(3) - 9.0f64.powi(3)) * 0.25;
        let got = shell_energy_quadrature(&s, &unit, EnergyIntegrand::Field);
        assert!((got - expect).abs() <= 1e-10 * expect);
    }

    #[test]
    fn frequencies_for_table_modes() {
        let drude = DrudeParams::new(1.0, 5.0, 0.0).unwrap();
        let freqs = mode_frequencies(&reference_radii(), &drude, 1.0).unwrap();
        assert_eq!(freqs.len(), 4);
        // mode lambda = 1.5915 -> target -6.3439 -> omega = omega_p/sqrt(7.3439)
        let f = &freqs[2];
        assert!((f.mode.eps_ratio + 6.3439).abs() < 5e-4);
        let omega = f.omega.unwrap();
        let expect = drude.omega_p / (1.0 - f.mode.eps_ratio).sqrt();
        assert!((omega - expect).abs() < 1e-12 * expect);
        // all four ratios are negative, so all four frequencies are real
        assert!(freqs.iter().all(|f| f.omega.is_some()));
        // distinct
        for i in 0..4 {
            for j in i + 1..4 {
                let (a, b) = (freqs[i].omega.unwrap(), freqs[j].omega.unwrap());
                assert!((a - b).abs() > 1e-6 * a.max(b));
            }
        }
        // hypothetical target eps_s = 0 sits exactly at the plasma frequency
        let w = lossless_frequency_for(&drude, 0.0).unwrap();
        assert!((w - drude.omega_p).abs() < 1e-12 * drude.omega_p);
    }

    #[test]
    fn shell_blowup_at_mode() {
        let drude = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
        let grid: Vec<f64> = (0..7).map(|i| 10f64.powf(-3.0 - 0.5 * i as f64)).collect();
        let scan = resonance_blowup_shell(&reference_radii(), 1.0, &drude, 2, &grid).unwrap();
        assert!(scan.last().unwrap().1 > 1e2 * scan[0].1);
        let slope = fit_loglog_slope(&scan);
        assert!((slope + 1.0).abs() < 0.1, "tau*E slope {}", slope);
    }

    #[test]
    fn shell_blowup_off_mode_bounded() {
        // drive midway between two mode frequencies: tau * E stays bounded
        let drude = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
        let freqs = mode_frequencies(&reference_radii(), &drude, 1.0).unwrap();
        let omega = 0.5 * (freqs[2].omega.unwrap() + freqs[3].omega.unwrap());
        let a0 = crate::sphere::uniform_field_coefficients([0.0, 0.0, 1.0]);
        let mut values = Vec::new();
        for tau in [1e-3, 1e-4, 1e-5, 1e-6] {
            let eps_s = permittivity(&drude.with_tau(tau).unwrap(), omega);
            let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), eps_s).unwrap();
            let coeffs = shell_coefficients(&s, &a0).unwrap();
            values.push(tau * shell_energy_weighted(&s, &coeffs));
        }
        assert!(values[3] < 2.0 * values[0]);
    }

    #[test]
    fn shell_blowup_single_point_consistency() {
        let drude = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
        let scan = resonance_blowup_shell(&reference_radii(), 1.0, &drude, 1, &[1e-4]).unwrap();
        let freqs = mode_frequencies(&reference_radii(), &drude, 1.0).unwrap();
        let omega = freqs[1].omega.unwrap();
        let eps_s = permittivity(&drude.with_tau(1e-4).unwrap(), omega);
        let s = ConcentricStructure::new(reference_radii(), c(1.0, 0.0), eps_s).unwrap();
        let a0 = crate::sphere::uniform_field_coefficients([0.0, 0.0, 1.0]);
        let coeffs = shell_coefficients(&s, &a0).unwrap();
        let expect = 1e-4 * shell_energy_weighted(&s, &coeffs);
        assert!((scan[0].1 - expect).abs() <= 1e-12 * expect.abs());
    }

    #[test]
    fn vanishing_drive_overlap_rejected() {
        // at this r2 the lowest mode's eigenvector is orthogonal to the
        // drive pattern e, so the blow-up hypothesis fails
        let radii = Radii::new([1.0, 2.1814688084793072, 3.0, 4.0]).unwrap();
        let modes = resonance_modes(&radii).unwrap();
        assert!(modes.modes[0].e_overlap.abs() < 1e-10);
        let drude = DrudeParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            resonance_blowup_shell(&radii, 1.0, &drude, 0, &[1e-3, 1e-4]),
            Err(Error::HypothesisViolated { mode_index: 0 })
        ));
        // the other modes remain excitable
        assert!(resonance_blowup_shell(&radii, 1.0, &drude, 1, &[1e-3, 1e-4]).is_ok());
    }

    #[test]
    fn scale_invariance_of_modes() {
        let base = resonance_modes(&reference_radii()).unwrap();
        for scale in [0.5, 2.0, 10.0] {
            let scaled = resonance_modes(&reference_radii().scaled(scale).unwrap()).unwrap();
            for (a, b) in base.modes.iter().zip(&scaled.modes) {
                assert!((a.lambda - b.lambda).abs() < 1e-12);
                assert!((a.eps_ratio - b.eps_ratio).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn table_rows_pair_to_one() {
        // asserted for these reference ratios only, not claimed generally
        for radii in [
            [4.0, 5.0, 9.0, 10.0],
            [3.0, 4.0, 7.0, 8.0],
            [5.0, 6.0, 11.0, 12.0],
            [3.0, 4.0, 6.0, 8.0],
        ] {
            let modes = resonance_modes(&Radii::new(radii).unwrap()).unwrap();
            let l: Vec<f64> = modes.modes.iter().map(|m| m.lambda).collect();
            assert!((l[0] + l[3] - 1.0).abs() < 1e-9);
            assert!((l[1] + l[2] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn radii_validation() {
        assert!(Radii::new([1.0, 2.0, 2.0, 3.0]).is_err());
        assert!(Radii::new([-1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(Radii::new([1.0, 2.0, 3.0, 4.0]).is_ok());
    }
}
