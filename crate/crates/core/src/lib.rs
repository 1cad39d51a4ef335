//! Toolchain for textual data architecture models: an in-memory model with
//! constructor-checked invariants, a DSL front end with diagnostics, a
//! rule-catalog validator, graph analyses (reachability, path enumeration,
//! Lambda/Kappa/Pipeline classification) and JSON/DOT exporters.

pub mod analysis;
pub mod dsl;
pub mod export;
pub mod gen;
pub mod model;
pub mod templates;
pub mod validator;

pub use analysis::{
    classify, flow_summary, reachable, source_sink_paths, AnalysisError, FlowSummary, PatternClass,
    PatternKind, DEFAULT_PATH_CAP,
};
pub use dsl::{format_source, parse, parse_named, print, ParseResult, SourceSpan, SpanMap};
pub use export::{from_json, to_dot, to_json, DotOptions, JsonError};
pub use model::{
    Connection, DataNode, DataPort, DataRepresentation, Direction, Endpoint, Identifier, Level,
    LookupError, Model, ModelError, NodeBehavior, NodeGraph, NodeName,
};
pub use templates::Template;
pub use validator::{explain, validate, Diagnostic, Rule, Severity};
