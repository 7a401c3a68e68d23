//! Quasi-static response of a single spherical nanoparticle.
//!
//! A sphere of radius `r_np` and permittivity `eps_particle` sits in a
//! lossless host `eps_matrix` under a uniform incident field `E0`. The
//! potential is linear inside and dipolar outside; the interior field and
//! the scattered dipole strength follow from the transmission conditions:
//!
//! ```text
//! E2 = 3 eps0 / (2 eps0 + eps1) * E0
//! E1 = (eps0 - eps1) / (2 eps0 + eps1) * r_np^3 * E0
//! ```
//!
//! The same module carries the sphere polarization tensors, the free-space
//! dyadic Green function with its curl, and the leading-order dipole far
//! field built from them. Blow-up of the stored energy as the Drude loss
//! width shrinks is what the resonance scans quantify.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::drude::{permittivity, DrudeParams};
use crate::error::invalid;
use crate::numerics::SmallMatrix;
use crate::{Error, Result};

/// Complex 3-vector.
pub type CVec3 = [Complex64; 3];

/// Euclidean norm of a complex 3-vector.
pub fn cvec_norm(v: &CVec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn cvec_from_real(v: [f64; 3]) -> CVec3 {
    [
        Complex64::new(v[0], 0.0),
        Complex64::new(v[1], 0.0),
        Complex64::new(v[2], 0.0),
    ]
}

fn cvec_scale(v: &CVec3, s: Complex64) -> CVec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn cvec_add(a: &CVec3, b: &CVec3) -> CVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// One spherical particle in a uniform incident field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereScene {
    /// Particle radius (m), > 0.
    pub r_np: f64,
    /// Host permittivity; must be lossless with positive real part.
    pub eps_matrix: Complex64,
    /// Particle permittivity.
    pub eps_particle: Complex64,
    /// Incident amplitude E0 (V/m).
    pub e0: [f64; 3],
}

impl SphereScene {
    pub fn new(
        r_np: f64,
        eps_matrix: Complex64,
        eps_particle: Complex64,
        e0: [f64; 3],
    ) -> Result<Self> {
        if !(r_np > 0.0) {
            return Err(invalid("sphere radius must be positive"));
        }
        if !(eps_matrix.re > 0.0) || eps_matrix.im != 0.0 {
            return Err(invalid("host permittivity must be positive real"));
        }
        Ok(SphereScene {
            r_np,
            eps_matrix,
            eps_particle,
            e0,
        })
    }

    fn e0_norm_sqr(&self) -> f64 {
        self.e0.iter().map(|x| x * x).sum()
    }
}

/// Field coefficients of the solved sphere problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereResponse {
    /// Uniform interior field E2.
    pub e2: CVec3,
    /// Scattered dipole strength E1 (V·m^2).
    pub e1: CVec3,
    /// Permittivity contrast (eps1+eps0)/(2(eps1-eps0)); `None` in the
    /// no-contrast limit eps1 == eps0 where the contrast diverges.
    pub lambda_eps: Option<Complex64>,
}

/// Contrast lambda = (a1 + a0) / (2 (a1 - a0)); `None` when a1 == a0.
pub fn contrast(param_inclusion: Complex64, param_matrix: Complex64) -> Option<Complex64> {
    if param_inclusion == param_matrix {
        return None;
    }
    Some((param_inclusion + param_matrix) / (2.0 * (param_inclusion - param_matrix)))
}

fn sphere_denominator(s: &SphereScene) -> Result<Complex64> {
    let den = 2.0 * s.eps_matrix + s.eps_particle;
    if den.norm() <= 1e-300 {
        return Err(Error::ExactResonanceSingularity);
    }
    Ok(den)
}

/// Interior/scattered coefficients of the sphere under uniform drive.
pub fn sphere_response(s: &SphereScene) -> Result<SphereResponse> {
    let den = sphere_denominator(s)?;
    let e0 = cvec_from_real(s.e0);
    let interior = 3.0 * s.eps_matrix / den;
    let scattered = (s.eps_matrix - s.eps_particle) / den * s.r_np.powi(3);
    Ok(SphereResponse {
        e2: cvec_scale(&e0, interior),
        e1: cvec_scale(&e0, scattered),
        lambda_eps: contrast(s.eps_particle, s.eps_matrix),
    })
}

/// Stored energy |3 eps0/(2 eps0+eps1)|^2 * (4 pi/3) r^3 * |E0|^2.
pub fn sphere_energy(s: &SphereScene) -> Result<f64> {
    let den = sphere_denominator(s)?;
    let amp = (3.0 * s.eps_matrix / den).norm_sqr();
    Ok(amp * (4.0 * PI / 3.0) * s.r_np.powi(3) * s.e0_norm_sqr())
}

/// Sweeps the loss width downward and reports `(tau, tau * energy)`.
///
/// At the resonant drive `omega = omega_p/sqrt(3)` the product grows without
/// bound as tau -> 0; off resonance it decays linearly.
pub fn resonance_blowup_scan(
    p: &DrudeParams,
    omega: f64,
    r_np: f64,
    e0: [f64; 3],
    tau_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    check_descending_positive(tau_grid)?;
    let eps_matrix = Complex64::new(p.eps0, 0.0);
    let mut out = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        let eps1 = permittivity(&p.with_tau(tau)?, omega);
        let scene = SphereScene::new(r_np, eps_matrix, eps1, e0)?;
        let energy = sphere_energy(&scene)?;
        out.push((tau, tau * energy));
    }
    Ok(out)
}

pub(crate) fn check_descending_positive(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|&t| !(t > 0.0)) {
        return Err(invalid("tau grid entries must be positive"));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(invalid("tau grid must be strictly decreasing"));
    }
    Ok(())
}

/// Resonant wavelength Lambda = 2 pi v sqrt(3) / omega_p of the lossless
/// sphere; the matching angular frequency is omega_p/sqrt(3).
pub fn resonance_wavelength(p: &DrudeParams, speed: f64) -> f64 {
    assert!(speed > 0.0, "wave speed must be positive");
    2.0 * PI * speed * 3.0f64.sqrt() / p.omega_p
}

/// Expands a uniform field into degree-1 spherical-harmonic coefficients,
/// order m = -1, 0, +1 with orthonormal Y_1^m. The coefficients satisfy
/// sum |a_m|^2 = (4 pi / 3) |E0|^2.
pub fn uniform_field_coefficients(e0: [f64; 3]) -> [Complex64; 3] {
    let c_axial = (4.0 * PI / 3.0).sqrt();
    let c_trans = (2.0 * PI / 3.0).sqrt();
    [
        Complex64::new(e0[0], e0[1]) * c_trans,
        Complex64::new(e0[2], 0.0) * c_axial,
        Complex64::new(-e0[0], e0[1]) * c_trans,
    ]
}

/// Inputs for the dyadic Green function and far-field assembly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenParams {
    /// Host wavenumber k0 = omega sqrt(eps0 mu0) (1/m).
    pub k: Complex64,
    /// Host permittivity eps0 entering the Green function prefactor.
    pub eps_matrix: Complex64,
    /// Host permeability mu0.
    pub mu_matrix: f64,
    /// Particle permeability mu1.
    pub mu_particle: f64,
    /// Dipole location z.
    pub source: [f64; 3],
    /// Particle scale delta (m), > 0.
    pub delta: f64,
}

impl GreenParams {
    pub fn new(
        k: Complex64,
        eps_matrix: Complex64,
        mu_matrix: f64,
        mu_particle: f64,
        source: [f64; 3],
        delta: f64,
    ) -> Result<Self> {
        if k.norm() == 0.0 {
            return Err(invalid("wavenumber must be nonzero"));
        }
        if !(delta > 0.0) {
            return Err(invalid("particle scale delta must be positive"));
        }
        Ok(GreenParams {
            k,
            eps_matrix,
            mu_matrix,
            mu_particle,
            source,
            delta,
        })
    }
}

/// Electric and magnetic polarization tensors of the inclusion.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationTensors {
    pub m_e: SmallMatrix,
    pub m_h: SmallMatrix,
}

fn scalar_tensor(s: Complex64) -> SmallMatrix {
    SmallMatrix::from_fn(
        3,
        3,
        |i, j| {
            if i == j {
                s
            } else {
                Complex64::new(0.0, 0.0)
            }
        },
    )
}

/// Sphere polarization tensors.
///
/// On the degree-1 subspace the boundary operator of a sphere acts as 1/6,
/// so M = V/(lambda - 1/6) * I with V the particle volume; equivalently
/// M^e = 3V (eps1-eps0)/(eps1+2 eps0) * I. `lambda_mu = None` encodes equal
/// permeabilities (the contrast diverges and the tensor vanishes).
pub fn sphere_polarization_tensors(
    s: &SphereScene,
    lambda_mu: Option<Complex64>,
) -> Result<PolarizationTensors> {
    let volume = Complex64::new(4.0 * PI / 3.0 * s.r_np.powi(3), 0.0);
    let sixth = Complex64::new(1.0 / 6.0, 0.0);
    let m_e = match contrast(s.eps_particle, s.eps_matrix) {
        None => scalar_tensor(Complex64::new(0.0, 0.0)),
        Some(lam) => {
            if (lam - sixth).norm() < 1e-14 {
                return Err(Error::EigenvalueHit);
            }
            scalar_tensor(volume / (lam - sixth))
        }
    };
    let m_h = match lambda_mu {
        None => scalar_tensor(Complex64::new(0.0, 0.0)),
        Some(lam) => {
            if (lam - sixth).norm() < 1e-14 {
                return Err(Error::EigenvalueHit);
            }
            scalar_tensor(volume / (lam - sixth))
        }
    };
    Ok(PolarizationTensors { m_e, m_h })
}

/// Fundamental solution Gamma_k(x) = -exp(ik|x|) / (4 pi |x|) together with
/// its first two radial derivatives.
fn gamma_radial(k: Complex64, r: f64) -> (Complex64, Complex64, Complex64) {
    let ikr = Complex64::new(0.0, 1.0) * k * r;
    let gamma = -ikr.exp() / (4.0 * PI * r);
    let ik_minus = Complex64::new(0.0, 1.0) * k - Complex64::new(1.0 / r, 0.0);
    let d1 = gamma * ik_minus;
    let d2 = gamma * (ik_minus * ik_minus + Complex64::new(1.0 / (r * r), 0.0));
    (gamma, d1, d2)
}

fn offset(g: &GreenParams, x: [f64; 3]) -> Result<([f64; 3], f64)> {
    let d = [x[0] - g.source[0], x[1] - g.source[1], x[2] - g.source[2]];
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if r <= 1e-12 {
        return Err(Error::SourceSingularity);
    }
    Ok((d, r))
}

/// Dyadic Green function G(x,z) = eps0 (Gamma_k I + k^-2 D^2 Gamma_k).
///
/// The Hessian is analytic: D^2 Gamma = f'' n n^T + (f'/r)(I - n n^T) with
/// n the unit offset. The result is symmetric.
pub fn dyadic_green(g: &GreenParams, x: [f64; 3]) -> Result<SmallMatrix> {
    let (d, r) = offset(g, x)?;
    let n = [d[0] / r, d[1] / r, d[2] / r];
    let (gamma, d1, d2) = gamma_radial(g.k, r);
    let k2 = g.k * g.k;
    let radial = d2 / k2;
    let tangential = d1 / (r * k2);
    Ok(SmallMatrix::from_fn(3, 3, |i, j| {
        let delta_ij = if i == j { 1.0 } else { 0.0 };
        let hessian = radial * n[i] * n[j] + tangential * (delta_ij - n[i] * n[j]);
        g.eps_matrix * (gamma * delta_ij + hessian)
    }))
}

/// Curl of the dyadic Green function as a matrix: (curl G) a = eps0 (grad
/// Gamma_k) x a. The Hessian part is curl-free (third derivatives commute),
/// so only the gradient of the scalar kernel survives.
pub fn dyadic_green_curl(g: &GreenParams, x: [f64; 3]) -> Result<SmallMatrix> {
    let (d, r) = offset(g, x)?;
    let n = [d[0] / r, d[1] / r, d[2] / r];
    let (_, d1, _) = gamma_radial(g.k, r);
    let grad = [d1 * n[0], d1 * n[1], d1 * n[2]];
    let zero = Complex64::new(0.0, 0.0);
    let rows = [
        [zero, -grad[2], grad[1]],
        [grad[2], zero, -grad[0]],
        [-grad[1], grad[0], zero],
    ];
    Ok(SmallMatrix::from_fn(3, 3, |i, j| g.eps_matrix * rows[i][j]))
}

/// Leading dipole terms of the scattered far field at `x`:
///
/// ```text
/// E - E_in = -delta^3 omega^2 mu0 G M^e E_in(z)
///            -delta^3 (i omega mu0 / eps0) curl(G) M^h H_in(z) + O(delta^4)
/// ```
pub fn far_field_scattered(
    g: &GreenParams,
    pt: &PolarizationTensors,
    e_in_at_z: CVec3,
    h_in_at_z: CVec3,
    x: [f64; 3],
    omega: f64,
) -> Result<CVec3> {
    let green = dyadic_green(g, x)?;
    let curl = dyadic_green_curl(g, x)?;
    let delta3 = g.delta * g.delta * g.delta;
    let electric_scale = Complex64::new(-delta3 * omega * omega * g.mu_matrix, 0.0);
    let magnetic_scale = Complex64::new(0.0, -delta3 * omega * g.mu_matrix) / g.eps_matrix;
    let ge: Vec<Complex64> = green.mul_vec(&pt.m_e.mul_vec(&e_in_at_z));
    let ch: Vec<Complex64> = curl.mul_vec(&pt.m_h.mul_vec(&h_in_at_z));
    let electric = cvec_scale(&[ge[0], ge[1], ge[2]], electric_scale);
    let magnetic = cvec_scale(&[ch[0], ch[1], ch[2]], magnetic_scale);
    Ok(cvec_add(&electric, &magnetic))
}
