//! Command-line front end: JSON structure configs in, deterministic CSV or
//! JSON sweep tables out. The `plasmod` binary is a thin wrapper over the
//! four `cmd_*` functions here.

mod commands;
mod config;
mod output;

pub use commands::{cmd_blowup_scan, cmd_heat_profile, cmd_shell_modes, cmd_sphere_resonance};
pub use config::{
    Drive, DrudeMaterial, FixedMaterial, Geometry, GridSpec, HeatBlock, Kind, LengthUnit,
    MaterialSpec, Materials, Spacing, StructureConfig,
};
pub use output::{OutputFormat, SweepResult, SweepRow};
