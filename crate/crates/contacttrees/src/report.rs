//! Machine-readable summaries printed by the CLI.

use contacttrees_core::scene::{ExcludedTie, SceneGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub parse_ms: f64,
    pub layout_ms: f64,
    pub render_ms: f64,
}

impl Timing {
    pub fn total_ms(&self) -> f64 {
        self.parse_ms + self.layout_ms + self.render_ms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub ego: String,
    /// Ties drawn as curves.
    pub included: usize,
    /// Ties of the ego left out, with the reason.
    pub excluded: Vec<ExcludedTie>,
    pub timing_ms: Timing,
    pub outputs: Vec<String>,
}

impl RunReport {
    pub fn for_scene(scene: &SceneGraph, timing: Timing, outputs: Vec<String>) -> Self {
        Self {
            ego: scene.meta.ego.to_string(),
            included: scene.curves.len(),
            excluded: scene.meta.excluded.clone(),
            timing_ms: timing,
            outputs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub panels: Vec<Panel>,
    pub shared_norm: bool,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    pub caption: String,
    pub report: RunReport,
}
