//! In-memory data architecture model.
//!
//! Leaf types (names, taxonomies, store task sets, links, connections)
//! reject illegal values in their constructors. Cross-references between
//! entities (name uniqueness, endpoint resolution, port directions, link
//! graphs) are whole-model properties: [`Model::new`] checks all of them
//! and only returns well-formed models, while [`Model::new_unchecked`]
//! lets a front end keep an ill-formed model around so the validator can
//! point at each problem.

mod behavior;
mod graph;
mod name;
mod taxonomy;

use std::fmt;

use thiserror::Error;

pub use behavior::{
    ActionKind, BehaviorElement, BehaviorError, ConsumeMode, ElementKind, EventKind, Link,
    NodeBehavior, StoreTask, StoreTasks,
};
pub use graph::NodeGraph;
pub use name::{is_identifier, Identifier, Label, NameError, NodeName};
pub use taxonomy::{
    DataFormat, FileSystemKind, FormatCategory, Level, Location, NewSqlKind, NoSqlKind,
    ProcessingType, SemiStructuredKind, StorageFamily, StorageTech, StructuredKind, TaxonomyError,
    UnstructuredKind, FORMAT_KIND_LITERALS, STORAGE_KIND_LITERALS,
};

use crate::validator::{self, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataPort {
    pub name: Identifier,
    pub direction: Direction,
}

impl DataPort {
    pub fn new(name: Identifier, direction: Direction) -> Self {
        DataPort { name, direction }
    }

    pub fn input(name: Identifier) -> Self {
        DataPort::new(name, Direction::In)
    }

    pub fn output(name: Identifier) -> Self {
        DataPort::new(name, Direction::Out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("format `{0}` listed twice")]
pub struct DuplicateFormat(pub DataFormat);

/// Duplicate-free, declaration-ordered set of data formats.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormatSet(Vec<DataFormat>);

impl FormatSet {
    pub fn new(formats: Vec<DataFormat>) -> Result<Self, DuplicateFormat> {
        for (i, f) in formats.iter().enumerate() {
            if formats[..i].contains(f) {
                return Err(DuplicateFormat(f.clone()));
            }
        }
        Ok(FormatSet(formats))
    }

    pub fn as_slice(&self) -> &[DataFormat] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: &DataFormat) -> bool {
        self.0.contains(f)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DataFormat> {
        self.0.iter()
    }

    pub fn intersects(&self, other: &FormatSet) -> bool {
        self.0.iter().any(|f| other.contains(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DataRepresentation {
    pub formats: FormatSet,
    pub processing: Option<ProcessingType>,
    pub storage: Option<StorageTech>,
    pub location: Option<Location>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataNode {
    pub name: NodeName,
    pub ports: Vec<DataPort>,
    pub representation: Option<DataRepresentation>,
    pub behavior: Option<NodeBehavior>,
}

impl DataNode {
    pub fn new(name: NodeName) -> Self {
        DataNode {
            name,
            ports: Vec::new(),
            representation: None,
            behavior: None,
        }
    }

    pub fn port(&self, name: &str) -> Option<&DataPort> {
        self.ports.iter().find(|p| p.name == *name)
    }

    pub fn processing(&self) -> Option<ProcessingType> {
        self.representation.as_ref().and_then(|r| r.processing)
    }

    pub fn formats(&self) -> Option<&FormatSet> {
        self.representation.as_ref().map(|r| &r.formats)
    }

    pub fn actions(&self) -> impl Iterator<Item = &ActionKind> {
        self.behavior.iter().flat_map(|b| b.actions())
    }
}

/// One side of a connection: a port on a named node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endpoint {
    pub node: NodeName,
    pub port: Identifier,
}

impl Endpoint {
    pub fn new(node: NodeName, port: Identifier) -> Self {
        Endpoint { node, port }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}.{}", self.node.as_str(), self.port)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("connection endpoints are both on node `{0}`")]
    SameNode(NodeName),
}

/// Unidirectional channel from an out-port to an in-port of another node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    name: Option<Identifier>,
    source: Endpoint,
    target: Endpoint,
}

impl Connection {
    pub fn new(
        name: Option<Identifier>,
        source: Endpoint,
        target: Endpoint,
    ) -> Result<Self, ConnectionError> {
        if source.node == target.node {
            return Err(ConnectionError::SameNode(source.node));
        }
        Ok(Connection {
            name,
            source,
            target,
        })
    }

    /// Skips the distinct-node check; the validator reports it as E005.
    pub fn new_unchecked(name: Option<Identifier>, source: Endpoint, target: Endpoint) -> Self {
        Connection {
            name,
            source,
            target,
        }
    }

    pub fn name(&self) -> Option<&Identifier> {
        self.name.as_ref()
    }

    pub fn source(&self) -> &Endpoint {
        &self.source
    }

    pub fn target(&self) -> &Endpoint {
        &self.target
    }
}

impl fmt::Display for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        write!(f, "{} -> {}", self.source, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model is not well-formed: {}", summarize(.0))]
    Invalid(Vec<Diagnostic>),
}

fn summarize(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("{} {}", d.rule, d.message))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{node}` has no port `{port}`")]
    UnknownPort { node: String, port: String },
}

/// Root of a data architecture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    name: Identifier,
    level: Level,
    nodes: Vec<DataNode>,
    connections: Vec<Connection>,
}

impl Model {
    /// Builds a model, rejecting it if any error-severity well-formedness
    /// rule fires.
    pub fn new(
        name: Identifier,
        level: Level,
        nodes: Vec<DataNode>,
        connections: Vec<Connection>,
    ) -> Result<Self, ModelError> {
        let model = Model::new_unchecked(name, level, nodes, connections);
        let errors = validator::structural_errors(&model);
        if errors.is_empty() {
            Ok(model)
        } else {
            Err(ModelError::Invalid(errors))
        }
    }

    pub fn new_unchecked(
        name: Identifier,
        level: Level,
        nodes: Vec<DataNode>,
        connections: Vec<Connection>,
    ) -> Self {
        Model {
            name,
            level,
            nodes,
            connections,
        }
    }

    pub fn empty(name: Identifier) -> Self {
        Model::new_unchecked(name, Level::default(), Vec::new(), Vec::new())
    }

    pub fn name(&self) -> &Identifier {
        &self.name
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn nodes(&self) -> &[DataNode] {
        &self.nodes
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    pub fn node(&self, name: &str) -> Option<&DataNode> {
        self.nodes.iter().find(|n| n.name == *name)
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == *name)
    }

    pub fn lookup_port(&self, node: &str, port: &str) -> Result<&DataPort, LookupError> {
        let n = self
            .node(node)
            .ok_or_else(|| LookupError::UnknownNode(node.to_string()))?;
        n.port(port).ok_or_else(|| LookupError::UnknownPort {
            node: node.to_string(),
            port: port.to_string(),
        })
    }

    pub fn node_graph(&self) -> NodeGraph {
        NodeGraph::from_model(self)
    }

    pub fn into_parts(self) -> (Identifier, Level, Vec<DataNode>, Vec<Connection>) {
        (self.name, self.level, self.nodes, self.connections)
    }
}
