//! Quasi-static plasmonics and photothermal toolkit.
//!
//! The crate models small metal nanostructures driven by a uniform incident
//! field, well below the retardation regime: Drude dispersion for the metal
//! permittivity, the dipole response and stored energy of a single sphere,
//! the four resonant modes of a dielectric/metal concentric nanoshell, the
//! energy blow-up that defines plasmon resonance as the loss width shrinks,
//! and the steady-state temperature profile produced by resonant absorption.
//!
//! Organization:
//!
//! - [`numerics`] — self-contained complex linear algebra: LU solves, real
//!   nonsymmetric eigendecomposition, companion-matrix polynomial roots,
//!   Gauss–Legendre quadrature.
//! - [`drude`] — metal permittivity ε(ω) and its lossless inversion.
//! - [`sphere`] — single-sphere response, energy, blow-up scans, polarization
//!   tensors, the free-space dyadic Green function and dipole far field.
//! - [`heat`] — volumetric heat source from light dissipation and the
//!   piecewise steady-state temperature profile.
//! - [`nanoshell`] — concentric five-region shell: matrix assembly, the
//!   resonance quartic, mode sets, layer coefficients, shell energy, and
//!   per-mode blow-up scans.
//! - [`layered`] — independent brute-force transmission solver for N
//!   concentric layers; the oracle the nanoshell formulas are checked
//!   against, and a mode counter for deeper stacks.
//! - [`cli`] — JSON config ingestion and deterministic CSV/JSON sweep output
//!   behind the `plasmod` binary.
//!
//! Start with the runnable examples (`cargo run --example shell_modes`);
//! each major capability has one.

// validation uses `!(x > 0.0)` so NaN inputs fail the checks too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod drude;
mod error;
pub mod heat;
pub mod layered;
pub mod nanoshell;
pub mod numerics;
pub mod sphere;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
