//! Command-line renderer, verifier and HTTP keyframe service for aquanim
//! transition specs.

pub mod commands;
pub mod dataset;
pub mod error;
pub mod service;
pub mod spec;

pub use commands::{cmd_render, cmd_verify, OutputFormat, DEFAULT_SAMPLES, DEFAULT_TOLERANCE};
pub use dataset::{load_dataset, ChartModel, DatasetKind};
pub use error::CliError;
pub use spec::{compile, parse_spec, DatasetRoot, TransitionSpecDoc};

/// Environment variable naming a palette override file.
pub const PALETTE_ENV: &str = "AQUANIM_PALETTE";

/// Default palette, with the overrides of the `AQUANIM_PALETTE` file if set.
pub fn palette_from_env() -> Result<aquanim::Palette, CliError> {
    match std::env::var_os(PALETTE_ENV) {
        Some(path) if !path.is_empty() => spec::load_palette_file(std::path::Path::new(&path)),
        _ => Ok(aquanim::Palette::default()),
    }
}
