use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version of the JSON layout below; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command's output. Every field except `wall_time_ms` and `cache_hit`
/// is a function of the command line alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// The spec as given; two-group commands join both with `"; "`.
    pub spec: String,
    /// SHA-256 of the Cayley table (of both tables for two-group commands).
    pub group_fingerprint: String,
    pub method: Option<String>,
    pub result: Value,
    pub wall_time_ms: u64,
    pub cache_hit: bool,
    pub tool_version: String,
}

impl Report {
    /// The same report with the timing zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            wall_time_ms: 0,
            ..self.clone()
        }
    }
}
