//! Heat generation from resonant absorption and the steady temperature
//! profile of a heated spherical particle.
//!
//! The volumetric source is Q = (1/8 pi) omega Im(eps1) |E2|^2, uniform
//! inside the particle because the quasi-static interior field is uniform.
//! In steady state the temperature is an interior parabola matched to an
//! exterior 1/r decay:
//!
//! ```text
//! T(r) = A - Q r^2 / (6 sigma_np)   r <= r_np
//! T(r) = B / r                      r >  r_np
//! ```
//!
//! B = r_np^3 Q / (3 sigma0) and A follows from temperature continuity at
//! the surface, A = B/r_np + Q r_np^2/(6 sigma_np); flux continuity then
//! holds automatically (both sides carry Q r_np / 3).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::invalid;
use crate::{Error, Result};

/// Thermal scene around one heated particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatScene {
    /// Host thermal conductivity sigma0 (W/(m K)), > 0.
    pub sigma_matrix: f64,
    /// Particle thermal conductivity sigma_np (W/(m K)), > 0.
    pub sigma_np: f64,
    /// Particle radius (m), > 0.
    pub r_np: f64,
    /// Volumetric heat intensity Q (W/m^3), >= 0.
    pub q: f64,
    /// Particle volume (4 pi / 3) r_np^3, kept consistent with the radius.
    pub v_np: f64,
}

impl HeatScene {
    pub fn new(sigma_matrix: f64, sigma_np: f64, r_np: f64, q: f64) -> Result<Self> {
        if !(sigma_matrix > 0.0) || !(sigma_np > 0.0) {
            return Err(invalid("thermal conductivities must be positive"));
        }
        if !(r_np > 0.0) {
            return Err(invalid("particle radius must be positive"));
        }
        if !(q >= 0.0) {
            return Err(invalid("heat intensity must be nonnegative"));
        }
        let v_np = 4.0 * PI / 3.0 * r_np.powi(3);
        Ok(HeatScene {
            sigma_matrix,
            sigma_np,
            r_np,
            q,
            v_np,
        })
    }
}

/// Piecewise steady-state temperature: interior parabola, exterior decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureProfile {
    /// Center temperature A (K).
    pub a_coeff: f64,
    /// Exterior coefficient B (K m).
    pub b_coeff: f64,
    pub scene: HeatScene,
}

/// Volumetric source Q = (1/8 pi) omega Im(eps1) |E2|^2 from light
/// dissipation inside the particle.
pub fn heat_intensity(omega: f64, eps1: Complex64, e2_magnitude_sq: f64) -> Result<f64> {
    if eps1.im < 0.0 {
        return Err(Error::NegativeLoss(eps1.im));
    }
    if !(omega > 0.0) || !(e2_magnitude_sq >= 0.0) {
        return Err(invalid("heat intensity needs omega > 0 and |E2|^2 >= 0"));
    }
    Ok(omega * eps1.im * e2_magnitude_sq / (8.0 * PI))
}

/// Solves for the steady profile; both transmission conditions hold by
/// construction.
pub fn steady_profile(scene: &HeatScene) -> TemperatureProfile {
    let b = scene.r_np.powi(3) * scene.q / (3.0 * scene.sigma_matrix);
    let a = b / scene.r_np + scene.q * scene.r_np * scene.r_np / (6.0 * scene.sigma_np);
    let profile = TemperatureProfile {
        a_coeff: a,
        b_coeff: b,
        scene: *scene,
    };
    debug_assert!(profile_residuals(&profile) <= 1e-12);
    profile
}

/// Maximum relative violation of the two matching conditions at the surface.
pub fn profile_residuals(p: &TemperatureProfile) -> f64 {
    let s = &p.scene;
    let interior = p.a_coeff - s.q * s.r_np * s.r_np / (6.0 * s.sigma_np);
    let exterior = p.b_coeff / s.r_np;
    let scale_t = interior.abs().max(exterior.abs()).max(1e-300);
    let continuity = (interior - exterior).abs() / scale_t;
    // flux: sigma_np * Q r /(3 sigma_np) on both sides equals Q r / 3
    let flux_in = s.sigma_np * (s.q * s.r_np / (3.0 * s.sigma_np));
    let flux_out = s.sigma_matrix * p.b_coeff / (s.r_np * s.r_np);
    let scale_f = flux_in.abs().max(flux_out.abs()).max(1e-300);
    let flux = (flux_in - flux_out).abs() / scale_f;
    continuity.max(flux)
}

/// Temperature at radius r >= 0.
pub fn temperature_at(profile: &TemperatureProfile, r: f64) -> f64 {
    assert!(r >= 0.0, "radius must be nonnegative");
    let s = &profile.scene;
    if r <= s.r_np {
        profile.a_coeff - s.q * r * r / (6.0 * s.sigma_np)
    } else {
        profile.b_coeff / r
    }
}
