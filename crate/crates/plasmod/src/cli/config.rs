//! JSON configuration schema. Unknown fields are rejected everywhere so a
//! typo never silently changes a sweep.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub(crate) fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Top-level structure configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConfig {
    pub kind: Kind,
    pub geometry: Geometry,
    #[serde(default)]
    pub materials: Materials,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drive: Option<Drive>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heat: Option<HeatBlock>,
}

impl StructureConfig {
    /// Parses and validates a JSON document.
    pub fn from_json(text: &str) -> Result<StructureConfig> {
        let cfg: StructureConfig =
            serde_json::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    fn validate(&self) -> Result<()> {
        let n = self.geometry.radii.len();
        let expected = match self.kind {
            Kind::Sphere => 1,
            Kind::Nanoshell => 4,
            Kind::Layered => n.max(1),
        };
        if n != expected {
            return Err(config_err(format!(
                "geometry.radii: kind {:?} needs {} radii, got {}",
                self.kind, expected, n
            )));
        }
        if self.geometry.radii.iter().any(|&r| !(r > 0.0)) {
            return Err(config_err("geometry.radii must be positive"));
        }
        if self.geometry.radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(config_err("geometry.radii must be strictly increasing"));
        }
        match self.kind {
            Kind::Sphere => {
                if self.materials.regions.is_some()
                    || self.materials.core.is_some()
                    || self.materials.shell.is_some()
                {
                    return Err(config_err(
                        "kind sphere takes materials.matrix and materials.particle only",
                    ));
                }
            }
            Kind::Nanoshell => {
                if self.materials.regions.is_some() || self.materials.particle.is_some() {
                    return Err(config_err(
                        "kind nanoshell takes materials.core and materials.shell only",
                    ));
                }
            }
            Kind::Layered => {
                if self.materials.particle.is_some()
                    || self.materials.core.is_some()
                    || self.materials.shell.is_some()
                {
                    return Err(config_err("kind layered takes materials.regions only"));
                }
                if let Some(regions) = &self.materials.regions {
                    if regions.len() != n + 1 {
                        return Err(config_err(format!(
                            "materials.regions needs {} entries for {} radii",
                            n + 1,
                            n
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Radii converted to meters.
    pub fn radii_m(&self) -> Vec<f64> {
        let f = self.geometry.unit.meters();
        self.geometry.radii.iter().map(|r| r * f).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sphere,
    Nanoshell,
    Layered,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub radii: Vec<f64>,
    #[serde(default)]
    pub unit: LengthUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LengthUnit {
    #[default]
    M,
    Mm,
    Um,
    Nm,
}

impl LengthUnit {
    pub fn meters(self) -> f64 {
        match self {
            LengthUnit::M => 1.0,
            LengthUnit::Mm => 1e-3,
            LengthUnit::Um => 1e-6,
            LengthUnit::Nm => 1e-9,
        }
    }
}

/// Per-region material assignments; which slots apply depends on `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Materials {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MaterialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub particle: Option<MaterialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<MaterialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shell: Option<MaterialSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<MaterialSpec>>,
}

/// Either a fixed complex permittivity or a Drude dispersion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialSpec {
    Fixed(FixedMaterial),
    Drude(DrudeMaterial),
}

impl MaterialSpec {
    pub fn fixed_eps(&self) -> Option<Complex64> {
        match self {
            MaterialSpec::Fixed(f) => Some(Complex64::new(f.eps[0], f.eps[1])),
            MaterialSpec::Drude(_) => None,
        }
    }

    pub fn drude(&self) -> Option<crate::drude::DrudeParams> {
        match self {
            MaterialSpec::Drude(d) => crate::drude::DrudeParams::new(d.eps0, d.omega_p, d.tau).ok(),
            MaterialSpec::Fixed(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedMaterial {
    /// Permittivity as [re, im].
    pub eps: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrudeMaterial {
    pub eps0: f64,
    pub omega_p: f64,
    pub tau: f64,
}

/// Incident drive and sweep grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drive {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e0: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_index: Option<usize>,
}

/// Thermal parameters for the heat-profile command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatBlock {
    pub sigma_matrix: f64,
    pub sigma_np: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// A sampling grid; `count = 0` is an empty sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.count == 0 {
            return Ok(Vec::new());
        }
        if self.count == 1 {
            return Ok(vec![self.start]);
        }
        let n = (self.count - 1) as f64;
        match self.spacing {
            Spacing::Linear => Ok((0..self.count)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / n)
                .collect()),
            Spacing::Log => {
                if !(self.start > 0.0) || !(self.stop > 0.0) {
                    return Err(config_err("log grids need positive start and stop"));
                }
                let (a, b) = (self.start.ln(), self.stop.ln());
                Ok((0..self.count)
                    .map(|i| (a + (b - a) * i as f64 / n).exp())
                    .collect())
            }
        }
    }
}
