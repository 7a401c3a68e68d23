//! Drude dispersion model for metal permittivity.
//!
//! eps(omega) = eps0 * (1 - omega_p^2 / (omega * (omega + i tau))), evaluated
//! in the rationalized form so the imaginary part is explicit and
//! nonnegative. The background eps0 is the host permittivity; all
//! frequencies are angular (rad/s) and only ratios matter downstream.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::{Error, Result};

/// Drude material parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeParams {
    /// Background (host) permittivity, > 0.
    pub eps0: f64,
    /// Plasma frequency of the bulk material (rad/s), > 0.
    pub omega_p: f64,
    /// Loss width (rad/s), >= 0.
    pub tau: f64,
}

impl DrudeParams {
    pub fn new(eps0: f64, omega_p: f64, tau: f64) -> Result<Self> {
        if !(eps0 > 0.0) || !(omega_p > 0.0) || !(tau >= 0.0) {
            return Err(invalid(format!(
                "Drude parameters need eps0 > 0, omega_p > 0, tau >= 0; got ({}, {}, {})",
                eps0, omega_p, tau
            )));
        }
        Ok(DrudeParams { eps0, omega_p, tau })
    }

    /// Same material with a different loss width.
    pub fn with_tau(self, tau: f64) -> Result<Self> {
        DrudeParams::new(self.eps0, self.omega_p, tau)
    }
}

/// Monochromatic incident light.
///
/// `omega` and `wavelength` are linked by `omega = 2 pi speed / wavelength`;
/// the constructor enforces the relation to 1e-12 relative when both are
/// given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentLight {
    pub omega: f64,
    pub wavelength: Option<f64>,
    pub speed: f64,
}

impl IncidentLight {
    pub fn new(omega: f64, wavelength: Option<f64>, speed: f64) -> Result<Self> {
        if !(omega > 0.0) || !(speed > 0.0) {
            return Err(invalid("incident light needs omega > 0 and speed > 0"));
        }
        if let Some(wl) = wavelength {
            if !(wl > 0.0) {
                return Err(invalid("wavelength must be positive"));
            }
            let derived = 2.0 * std::f64::consts::PI * speed / wl;
            if (derived - omega).abs() > 1e-12 * omega.abs() {
                return Err(invalid(format!(
                    "inconsistent light: omega {} vs 2*pi*v/wavelength {}",
                    omega, derived
                )));
            }
        }
        Ok(IncidentLight {
            omega,
            wavelength,
            speed,
        })
    }

    pub fn from_omega(omega: f64, speed: f64) -> Result<Self> {
        IncidentLight::new(omega, None, speed)
    }

    pub fn from_wavelength(wavelength: f64, speed: f64) -> Result<Self> {
        if !(wavelength > 0.0) || !(speed > 0.0) {
            return Err(invalid("wavelength and speed must be positive"));
        }
        let omega = 2.0 * std::f64::consts::PI * speed / wavelength;
        Ok(IncidentLight {
            omega,
            wavelength: Some(wavelength),
            speed,
        })
    }

    /// Wavelength, derived from omega when not stored.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
            .unwrap_or(2.0 * std::f64::consts::PI * self.speed / self.omega)
    }
}

/// Complex permittivity at angular frequency `omega` (> 0).
///
/// Rationalized: eps0*(1 - wp^2/(w^2+tau^2)) + i * eps0*wp^2*tau/(w*(w^2+tau^2)).
/// The imaginary part is zero exactly when tau = 0.
pub fn permittivity(p: &DrudeParams, omega: f64) -> Complex64 {
    assert!(omega > 0.0, "permittivity requires omega > 0");
    let wp2 = p.omega_p * p.omega_p;
    let denom = omega * omega + p.tau * p.tau;
    Complex64::new(
        p.eps0 * (1.0 - wp2 / denom),
        p.eps0 * wp2 * p.tau / (omega * denom),
    )
}

/// The unique positive frequency where the lossless (tau = 0) permittivity
/// equals `eps_target`. Requires `eps_target < eps0`.
pub fn lossless_frequency_for(p: &DrudeParams, eps_target: f64) -> Result<f64> {
    if eps_target >= p.eps0 {
        return Err(Error::NoRealFrequency {
            target: eps_target,
            eps0: p.eps0,
        });
    }
    Ok(p.omega_p / (1.0 - eps_target / p.eps0).sqrt())
}
