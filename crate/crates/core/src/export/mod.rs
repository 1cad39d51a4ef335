//! Interchange (JSON) and rendering (DOT) exporters.

mod dot;
mod json;

pub use dot::{to_dot, DotOptions, RankDir};
pub use json::{from_json, to_json, JsonError, JSON_VERSION};
