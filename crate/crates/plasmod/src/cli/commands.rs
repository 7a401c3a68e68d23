//! The four sweep commands behind the `plasmod` binary.
//!
//! Every command takes a parsed [`StructureConfig`], validates the pieces it
//! needs, evaluates the sweep (grid points in parallel, bounded by the
//! PLASMOD_THREADS environment variable), and returns rows sorted ascending
//! by the sweep parameter so output is deterministic regardless of
//! evaluation order.

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{config_err, Kind, MaterialSpec, StructureConfig};
use super::output::{SweepResult, SweepRow};
use crate::drude::{lossless_frequency_for, permittivity, DrudeParams};
use crate::heat::{heat_intensity, steady_profile, temperature_at, HeatScene};
use crate::nanoshell::{mode_frequencies, resonance_blowup_shell, resonance_modes, Radii};
use crate::sphere::{
    cvec_norm, resonance_blowup_scan, resonance_wavelength, sphere_energy, sphere_response,
    SphereScene,
};
use crate::{Error, Result};

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("PLASMOD_THREADS") {
        let n: usize = raw.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            config_err(format!(
                "PLASMOD_THREADS must be a positive integer, got {:?}",
                raw
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| config_err(format!("thread pool: {}", e)))
}

fn run_parallel<I, T>(inputs: Vec<I>, f: impl Fn(I) -> Result<T> + Sync + Send) -> Result<Vec<T>>
where
    I: Send,
    T: Send,
{
    let pool = thread_pool()?;
    pool.install(|| inputs.into_par_iter().map(f).collect())
}

fn stamp(result: &mut SweepResult, cfg: &StructureConfig) {
    result.push_meta("version", env!("CARGO_PKG_VERSION"));
    let ts = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    result.push_meta("timestamp", ts);
    result.push_meta("config", cfg.to_json());
}

fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| a.values[0].total_cmp(&b.values[0]));
}

fn require_kind(cfg: &StructureConfig, kind: Kind, command: &str) -> Result<()> {
    if cfg.kind != kind {
        return Err(config_err(format!(
            "{} requires kind {:?}, got {:?}",
            command, kind, cfg.kind
        )));
    }
    Ok(())
}

fn drive_e0(cfg: &StructureConfig) -> [f64; 3] {
    cfg.drive
        .as_ref()
        .and_then(|d| d.e0)
        .unwrap_or([0.0, 0.0, 1.0])
}

fn sphere_drude(cfg: &StructureConfig, command: &str) -> Result<DrudeParams> {
    cfg.materials
        .particle
        .as_ref()
        .and_then(|m| m.drude())
        .ok_or_else(|| {
            config_err(format!(
                "{} requires materials.particle to be a valid Drude material",
                command
            ))
        })
}

/// Host permittivity: materials.matrix when present (fixed, lossless),
/// otherwise the Drude background, otherwise 1.
fn matrix_eps(cfg: &StructureConfig, fallback: Option<f64>) -> Result<f64> {
    match &cfg.materials.matrix {
        Some(spec) => {
            let eps = spec
                .fixed_eps()
                .ok_or_else(|| config_err("materials.matrix must be a fixed permittivity"))?;
            if eps.im != 0.0 || !(eps.re > 0.0) {
                return Err(config_err("materials.matrix must be positive real"));
            }
            Ok(eps.re)
        }
        None => Ok(fallback.unwrap_or(1.0)),
    }
}

/// Sphere energy sweep across a frequency grid for a Drude particle.
///
/// Columns: omega, tau, energy, tau_times_energy. A lossless grid point that
/// lands exactly on the resonance is flagged "singular" instead of failing.
/// Metadata carries the predicted resonance frequency and wavelength.
pub fn cmd_sphere_resonance(cfg: &StructureConfig) -> Result<SweepResult> {
    require_kind(cfg, Kind::Sphere, "sphere-resonance")?;
    let drude = sphere_drude(cfg, "sphere-resonance")?;
    let eps_matrix = matrix_eps(cfg, Some(drude.eps0))?;
    let drive = cfg
        .drive
        .as_ref()
        .ok_or_else(|| config_err("sphere-resonance requires a drive block"))?;
    let grid = drive
        .omega_grid
        .as_ref()
        .ok_or_else(|| config_err("sphere-resonance requires drive.omega_grid"))?
        .points()?;
    if grid.iter().any(|&w| !(w > 0.0)) {
        return Err(config_err("drive.omega_grid must be positive"));
    }
    let e0 = drive_e0(cfg);
    let speed = drive.speed.unwrap_or(SPEED_OF_LIGHT);
    if !(speed > 0.0) {
        return Err(config_err("drive.speed must be positive"));
    }
    let r_np = cfg.radii_m()[0];

    let mut rows = run_parallel(grid, |omega| {
        let eps1 = permittivity(&drude, omega);
        let scene = SphereScene::new(r_np, Complex64::new(eps_matrix, 0.0), eps1, e0)?;
        Ok(match sphere_energy(&scene) {
            Ok(energy) => SweepRow::ok(vec![omega, drude.tau, energy, drude.tau * energy]),
            Err(Error::ExactResonanceSingularity) => {
                SweepRow::flagged(vec![omega, drude.tau, f64::NAN, f64::NAN], "singular")
            }
            Err(other) => return Err(other),
        })
    })?;
    sort_rows(&mut rows);
    let mut result = SweepResult::new(
        "sphere-resonance",
        vec!["omega", "tau", "energy", "tau_times_energy"],
        rows,
    );
    stamp(&mut result, cfg);
    result.push_meta("resonance_omega", drude.omega_p / 3.0f64.sqrt());
    result.push_meta("resonance_wavelength", resonance_wavelength(&drude, speed));
    Ok(result)
}

/// Mode table for a concentric nanoshell.
///
/// Columns: lambda1, eps_ratio, e_overlap, upsilon_overlap, omega_if_drude.
/// Rows are computed on radii normalized by the outermost one, so they
/// depend on ratios only; modes without a real Drude frequency are flagged
/// "no_real_frequency".
pub fn cmd_shell_modes(cfg: &StructureConfig) -> Result<SweepResult> {
    require_kind(cfg, Kind::Nanoshell, "shell-modes")?;
    let raw = &cfg.geometry.radii;
    let r4 = raw[3];
    let radii = Radii::new([raw[0] / r4, raw[1] / r4, raw[2] / r4, 1.0])
        .map_err(|e| config_err(e.to_string()))?;
    let shell_drude = cfg.materials.shell.as_ref().and_then(|m| m.drude());
    let eps_core = match &cfg.materials.core {
        Some(spec) => {
            let eps = spec
                .fixed_eps()
                .ok_or_else(|| config_err("materials.core must be a fixed permittivity"))?;
            if eps.im != 0.0 || !(eps.re > 0.0) {
                return Err(config_err("materials.core must be positive real"));
            }
            eps.re
        }
        None => 1.0,
    };

    let modes = resonance_modes(&radii)?;
    let rows: Vec<SweepRow> = modes
        .modes
        .iter()
        .map(|mode| {
            let (omega, flag) = match &shell_drude {
                Some(d) => match lossless_frequency_for(d, mode.eps_ratio * eps_core) {
                    Ok(w) => (w, None),
                    Err(_) => (f64::NAN, Some("no_real_frequency")),
                },
                None => (f64::NAN, None),
            };
            let values = vec![
                mode.lambda,
                mode.eps_ratio,
                mode.e_overlap,
                mode.upsilon_overlap,
                omega,
            ];
            match flag {
                Some(f) => SweepRow::flagged(values, f),
                None => SweepRow::ok(values),
            }
        })
        .collect();
    let mut result = SweepResult::new(
        "shell-modes",
        vec![
            "lambda1",
            "eps_ratio",
            "e_overlap",
            "upsilon_overlap",
            "omega_if_drude",
        ],
        rows,
    );
    stamp(&mut result, cfg);
    Ok(result)
}

/// Steady-state temperature samples for a heated sphere.
///
/// Columns: r, T. Metadata records the heat intensity Q and the profile
/// constants A and B.
pub fn cmd_heat_profile(cfg: &StructureConfig) -> Result<SweepResult> {
    require_kind(cfg, Kind::Sphere, "heat-profile")?;
    let heat = cfg
        .heat
        .as_ref()
        .ok_or_else(|| config_err("heat-profile requires a heat block"))?;
    let drive = cfg
        .drive
        .as_ref()
        .ok_or_else(|| config_err("heat-profile requires a drive block"))?;
    let omega = drive
        .omega
        .filter(|&w| w > 0.0)
        .ok_or_else(|| config_err("heat-profile requires positive drive.omega"))?;
    let particle = cfg
        .materials
        .particle
        .as_ref()
        .ok_or_else(|| config_err("heat-profile requires materials.particle"))?;
    let (eps1, fallback) = match particle {
        MaterialSpec::Fixed(f) => (Complex64::new(f.eps[0], f.eps[1]), None),
        MaterialSpec::Drude(_) => {
            let d = particle
                .drude()
                .ok_or_else(|| config_err("invalid Drude parameters"))?;
            (permittivity(&d, omega), Some(d.eps0))
        }
    };
    let eps_matrix = matrix_eps(cfg, fallback)?;
    let e0 = drive_e0(cfg);
    let r_np = cfg.radii_m()[0];

    let scene = SphereScene::new(r_np, Complex64::new(eps_matrix, 0.0), eps1, e0)?;
    let response = sphere_response(&scene)?;
    let e2_sq = cvec_norm(&response.e2).powi(2);
    let q = heat_intensity(omega, eps1, e2_sq)?;
    let heat_scene = HeatScene::new(heat.sigma_matrix, heat.sigma_np, r_np, q)?;
    let profile = steady_profile(&heat_scene);

    let grid = match &heat.r_grid {
        Some(g) => g.points()?,
        None => (0..121).map(|i| 3.0 * r_np * i as f64 / 120.0).collect(),
    };
    if grid.iter().any(|&r| r < 0.0) {
        return Err(config_err("heat.r_grid must be nonnegative"));
    }
    let mut rows = run_parallel(grid, |r| {
        Ok(SweepRow::ok(vec![r, temperature_at(&profile, r)]))
    })?;
    sort_rows(&mut rows);
    let mut result = SweepResult::new("heat-profile", vec!["r", "T"], rows);
    stamp(&mut result, cfg);
    result.push_meta("q", q);
    result.push_meta("a_coeff", profile.a_coeff);
    result.push_meta("b_coeff", profile.b_coeff);
    Ok(result)
}

/// Blow-up scan: tau swept downward at a resonant (or chosen) frequency.
///
/// Columns: tau, energy, tau_times_energy, local_loglog_slope, emitted in
/// ascending tau. For nanoshells the drive must select a mode index; a mode
/// whose overlaps all vanish fails with the hypothesis-violation error.
pub fn cmd_blowup_scan(cfg: &StructureConfig) -> Result<SweepResult> {
    let drive = cfg
        .drive
        .as_ref()
        .ok_or_else(|| config_err("blowup-scan requires a drive block"))?;
    let mut taus = drive
        .tau_grid
        .as_ref()
        .ok_or_else(|| config_err("blowup-scan requires drive.tau_grid"))?
        .points()?;
    if taus.iter().any(|&t| !(t > 0.0)) {
        return Err(config_err("drive.tau_grid must be positive"));
    }
    taus.sort_by(|a, b| b.total_cmp(a));
    if taus.windows(2).any(|w| w[0] == w[1]) {
        return Err(config_err("drive.tau_grid has duplicate entries"));
    }
    let e0 = drive_e0(cfg);

    type Meta = Vec<(String, String)>;
    let (scan, meta): (Vec<(f64, f64)>, Meta) = match cfg.kind {
        Kind::Sphere => {
            let drude = sphere_drude(cfg, "blowup-scan")?;
            let omega = match drive.omega {
                Some(w) if w > 0.0 => w,
                Some(_) => return Err(config_err("drive.omega must be positive")),
                None => drude.omega_p / 3.0f64.sqrt(),
            };
            let r_np = cfg.radii_m()[0];
            let scan = resonance_blowup_scan(&drude, omega, r_np, e0, &taus)?;
            (scan, vec![("omega".into(), omega.to_string())])
        }
        Kind::Nanoshell => {
            let drude = cfg
                .materials
                .shell
                .as_ref()
                .and_then(|m| m.drude())
                .ok_or_else(|| {
                    config_err("blowup-scan on a nanoshell requires a Drude materials.shell")
                })?;
            let eps_core = match &cfg.materials.core {
                Some(spec) => spec
                    .fixed_eps()
                    .filter(|e| e.im == 0.0 && e.re > 0.0)
                    .map(|e| e.re)
                    .ok_or_else(|| config_err("materials.core must be positive real"))?,
                None => 1.0,
            };
            let mode_index = drive.mode_index.ok_or_else(|| {
                config_err("blowup-scan on a nanoshell requires drive.mode_index")
            })?;
            let radii_m = cfg.radii_m();
            let radii = Radii::new([radii_m[0], radii_m[1], radii_m[2], radii_m[3]])
                .map_err(|e| config_err(e.to_string()))?;
            let scan = resonance_blowup_shell(&radii, eps_core, &drude, mode_index, &taus)?;
            let freqs = mode_frequencies(&radii, &drude, eps_core)?;
            let omega = freqs[mode_index].omega.unwrap_or(f64::NAN);
            (
                scan,
                vec![
                    ("mode_index".into(), mode_index.to_string()),
                    ("omega".into(), omega.to_string()),
                ],
            )
        }
        Kind::Layered => {
            return Err(config_err(
                "blowup-scan supports kinds sphere and nanoshell",
            ))
        }
    };

    // ascending tau with a backward-looking local slope of ln E vs ln tau
    let mut points: Vec<(f64, f64)> = scan.iter().map(|&(t, te)| (t, te / t)).collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let rows: Vec<SweepRow> = points
        .iter()
        .enumerate()
        .map(|(i, &(tau, energy))| {
            let slope = if i == 0 {
                f64::NAN
            } else {
                let (t0, e0_) = points[i - 1];
                (energy.ln() - e0_.ln()) / (tau.ln() - t0.ln())
            };
            SweepRow::ok(vec![tau, energy, tau * energy, slope])
        })
        .collect();
    let mut result = SweepResult::new(
        "blowup-scan",
        vec!["tau", "energy", "tau_times_energy", "local_loglog_slope"],
        rows,
    );
    stamp(&mut result, cfg);
    for (k, v) in meta {
        result.push_meta(&k, v);
    }
    Ok(result)
}
