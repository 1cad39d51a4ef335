//! Node behavior: events and actions ordered by links.

use std::fmt;

use thiserror::Error;

use super::name::{Identifier, Label};
use super::taxonomy::DataFormat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("store task set must not be empty")]
    EmptyStoreTasks,
    #[error("store task `{0}` listed twice")]
    DuplicateStoreTask(StoreTask),
    #[error("link `{0}` cannot point at itself")]
    SelfLink(Identifier),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeBehavior {
    pub elements: Vec<BehaviorElement>,
    pub links: Vec<Link>,
}

impl NodeBehavior {
    pub fn new(elements: Vec<BehaviorElement>, links: Vec<Link>) -> Self {
        NodeBehavior { elements, links }
    }

    pub fn element(&self, name: &str) -> Option<&BehaviorElement> {
        self.elements.iter().find(|e| e.name == *name)
    }

    pub fn events(&self) -> impl Iterator<Item = &BehaviorElement> {
        self.elements.iter().filter(|e| e.is_event())
    }

    pub fn actions(&self) -> impl Iterator<Item = &ActionKind> {
        self.elements.iter().filter_map(|e| match &e.kind {
            ElementKind::Action(a) => Some(a),
            ElementKind::Event(_) => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorElement {
    pub name: Identifier,
    pub kind: ElementKind,
}

impl BehaviorElement {
    pub fn event(name: Identifier, kind: EventKind) -> Self {
        BehaviorElement {
            name,
            kind: ElementKind::Event(kind),
        }
    }

    pub fn action(name: Identifier, kind: ActionKind) -> Self {
        BehaviorElement {
            name,
            kind: ElementKind::Action(kind),
        }
    }

    pub fn is_event(&self) -> bool {
        matches!(self.kind, ElementKind::Event(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementKind {
    Event(EventKind),
    Action(ActionKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// Data arriving on the named in-port.
    ReceiveData(Identifier),
    External(Label),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionKind {
    Generation {
        source: Label,
        format: DataFormat,
    },
    Ingestion {
        steps: Vec<Label>,
    },
    Process {
        subprocesses: Vec<Label>,
    },
    Store {
        tasks: StoreTasks,
    },
    Analyze {
        technique: Label,
    },
    Consume {
        mode: ConsumeMode,
    },
    /// Data leaving through the named out-port.
    SendData(Identifier),
}

impl ActionKind {
    /// DSL keyword of the action, also used in summaries.
    pub fn keyword(&self) -> &'static str {
        match self {
            ActionKind::Generation { .. } => "generate",
            ActionKind::Ingestion { .. } => "ingest",
            ActionKind::Process { .. } => "process",
            ActionKind::Store { .. } => "store",
            ActionKind::Analyze { .. } => "analyze",
            ActionKind::Consume { .. } => "consume",
            ActionKind::SendData(_) => "send",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StoreTask {
    Save,
    Retrieve,
    Archive,
    Govern,
}

impl StoreTask {
    pub const ALL: [StoreTask; 4] = [
        StoreTask::Save,
        StoreTask::Retrieve,
        StoreTask::Archive,
        StoreTask::Govern,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StoreTask::Save => "Save",
            StoreTask::Retrieve => "Retrieve",
            StoreTask::Archive => "Archive",
            StoreTask::Govern => "Govern",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for StoreTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Non-empty, duplicate-free, order-preserving set of store tasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoreTasks(Vec<StoreTask>);

impl StoreTasks {
    pub fn new(tasks: Vec<StoreTask>) -> Result<Self, BehaviorError> {
        if tasks.is_empty() {
            return Err(BehaviorError::EmptyStoreTasks);
        }
        for (i, t) in tasks.iter().enumerate() {
            if tasks[..i].contains(t) {
                return Err(BehaviorError::DuplicateStoreTask(*t));
            }
        }
        Ok(StoreTasks(tasks))
    }

    pub fn as_slice(&self) -> &[StoreTask] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConsumeMode {
    Visualize,
    Report,
    Api,
}

impl ConsumeMode {
    pub const ALL: [ConsumeMode; 3] = [
        ConsumeMode::Visualize,
        ConsumeMode::Report,
        ConsumeMode::Api,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConsumeMode::Visualize => "Visualize",
            ConsumeMode::Report => "Report",
            ConsumeMode::Api => "API",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

/// Ordering edge between two behavior elements of the same node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    from: Identifier,
    to: Identifier,
}

impl Link {
    pub fn new(from: Identifier, to: Identifier) -> Result<Self, BehaviorError> {
        if from == to {
            return Err(BehaviorError::SelfLink(from));
        }
        Ok(Link { from, to })
    }

    pub fn from(&self) -> &Identifier {
        &self.from
    }

    pub fn to(&self) -> &Identifier {
        &self.to
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}
