use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// 1-based line and column (columns count code points), plus byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub line: u32,
    pub column: u32,
    pub offset: usize,
}

impl Position {
    pub const START: Position = Position {
        line: 1,
        column: 1,
        offset: 0,
    };
}

/// Half-open source range `[start, end)` inside a labelled file.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start: Position,
    pub end: Position,
}

impl SourceSpan {
    pub fn new(file: Arc<str>, start: Position, end: Position) -> Self {
        debug_assert!(start <= end);
        SourceSpan { file, start, end }
    }

    pub fn to(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan::new(self.file.clone(), self.start, other.end.max(self.start))
    }

    pub fn byte_range(&self) -> std::ops::Range<usize> {
        self.start.offset..self.end.offset
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start.line, self.start.column)
    }
}

/// Addresses a model entity by position, so duplicates stay distinguishable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityId {
    Model,
    Node(usize),
    Port(usize, usize),
    Representation(usize),
    Behavior(usize),
    Element(usize, usize),
    Link(usize, usize),
    Connection(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpanMap(BTreeMap<EntityId, SourceSpan>);

impl SpanMap {
    pub fn new() -> Self {
        SpanMap::default()
    }

    pub fn insert(&mut self, id: EntityId, span: SourceSpan) {
        self.0.insert(id, span);
    }

    pub fn get(&self, id: EntityId) -> Option<&SourceSpan> {
        self.0.get(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EntityId, &SourceSpan)> {
        self.0.iter()
    }
}
