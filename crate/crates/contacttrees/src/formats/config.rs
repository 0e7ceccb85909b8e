//! Mapping, layout parameter, style and synthetic profile files.

use std::path::Path;

use contacttrees_core::layout::LayoutParams;
use contacttrees_core::mapping::{preset_mapping, MappingSpec, PRESET_NAMES};
use contacttrees_core::render::StyleSheet;
use contacttrees_core::synth::SynthProfile;
use serde::de::DeserializeOwned;

use super::FormatError;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let bytes = std::fs::read(path).map_err(|e| FormatError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| FormatError::Json {
        path: path.display().to_string(),
        source: e,
    })
}

/// A preset name or the path of a mapping JSON file.
pub fn load_mapping(arg: &str) -> Result<MappingSpec, FormatError> {
    if PRESET_NAMES.contains(&arg) {
        return Ok(preset_mapping(arg).expect("listed preset exists"));
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(FormatError::UnknownMapping(arg.to_string()));
    }
    read_json(path)
}

pub fn load_params(path: Option<&Path>) -> Result<LayoutParams, FormatError> {
    path.map_or_else(|| Ok(LayoutParams::default()), read_json)
}

pub fn load_style(path: Option<&Path>) -> Result<StyleSheet, FormatError> {
    path.map_or_else(|| Ok(StyleSheet::default()), read_json)
}

/// `stress`, `small` or the path of a profile JSON file.
pub fn load_profile(arg: &str) -> Result<SynthProfile, FormatError> {
    match arg {
        "stress" => Ok(SynthProfile::stress()),
        "small" => Ok(SynthProfile::small()),
        path => read_json(Path::new(path)),
    }
}
