//! Recursive-descent parser. Syntax errors are reported as P001 and local
//! invariant violations as P002; the parser resynchronises at `node`,
//! `connection` and the architecture's closing brace so one run reports
//! every independent item error.

use std::sync::Arc;

use super::lexer::{tokenize, Keyword, Token, TokenKind};
use super::span::{EntityId, Position, SourceSpan, SpanMap};
use crate::model::{
    ActionKind, BehaviorElement, Connection, ConsumeMode, DataFormat, DataNode, DataPort,
    DataRepresentation, Direction, Endpoint, EventKind, FormatCategory, FormatSet, Identifier,
    Label, Level, Link, Location, Model, NodeBehavior, NodeName, ProcessingType, StorageFamily,
    StorageTech, StoreTask, StoreTasks,
};
use crate::validator::{has_errors, Diagnostic, Rule};

#[derive(Debug, Clone)]
pub struct ParseResult {
    /// Present iff `diagnostics` holds no error.
    pub model: Option<Model>,
    pub diagnostics: Vec<Diagnostic>,
    pub spans: SpanMap,
}

impl ParseResult {
    pub fn is_ok(&self) -> bool {
        self.model.is_some()
    }
}

/// Parses `text` with the file label `<input>`.
pub fn parse(text: &str) -> ParseResult {
    parse_named(text, "<input>")
}

pub fn parse_named(text: &str, file: &str) -> ParseResult {
    let lexed = tokenize(text, file);
    let file: Arc<str> = Arc::from(file);
    let end = end_position(text);
    let mut parser = Parser {
        tokens: lexed.tokens,
        pos: 0,
        depth: 0,
        diagnostics: lexed.diagnostics,
        spans: SpanMap::new(),
        eof: SourceSpan::new(file, end, end),
    };
    let model = parser.model();
    let mut diagnostics = parser.diagnostics;
    crate::validator::sort_diagnostics(&mut diagnostics);
    let model = if has_errors(&diagnostics) {
        None
    } else {
        model
    };
    ParseResult {
        model,
        diagnostics,
        spans: parser.spans,
    }
}

fn end_position(text: &str) -> Position {
    let mut pos = Position::START;
    for c in text.chars() {
        pos.offset += c.len_utf8();
        if c == '\n' {
            pos.line += 1;
            pos.column = 1;
        } else {
            pos.column += 1;
        }
    }
    pos
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    /// Open braces consumed so far; items live at depth 1.
    depth: usize,
    diagnostics: Vec<Diagnostic>,
    spans: SpanMap,
    eof: SourceSpan,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn at(&self, kind: TokenKind) -> bool {
        self.peek_kind() == Some(kind)
    }

    fn at_kw(&self, kw: Keyword) -> bool {
        self.at(TokenKind::Keyword(kw))
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        self.pos += 1;
        match tok.kind {
            TokenKind::LBrace => self.depth += 1,
            TokenKind::RBrace => self.depth = self.depth.saturating_sub(1),
            _ => {}
        }
        tok
    }

    fn current_span(&self) -> SourceSpan {
        self.peek()
            .map_or_else(|| self.eof.clone(), |t| t.span.clone())
    }

    fn prev_span(&self) -> SourceSpan {
        match self.pos.checked_sub(1) {
            Some(i) => self.tokens[i].span.clone(),
            None => self.current_span(),
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(t) => match t.kind {
                TokenKind::Ident => format!("identifier `{}`", t.lexeme),
                TokenKind::Str => format!("string {}", t.lexeme),
                k => k.describe(),
            },
        };
        let after = match self.pos.checked_sub(1) {
            Some(i) => format!(" after `{}`", self.tokens[i].lexeme),
            None => String::new(),
        };
        Diagnostic::new(Rule::P001, format!("expected {what}{after}, found {found}"))
            .with_span(Some(self.current_span()))
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<Token> {
        if self.at(kind) {
            Ok(self.advance())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    fn expect_kw(&mut self, kw: Keyword) -> PResult<Token> {
        self.expect(TokenKind::Keyword(kw))
    }

    fn ident(&mut self) -> PResult<(Identifier, SourceSpan)> {
        let tok = self.expect(TokenKind::Ident)?;
        let id = Identifier::new(tok.lexeme.clone()).map_err(|e| {
            Diagnostic::new(Rule::P002, e.to_string()).with_span(Some(tok.span.clone()))
        })?;
        Ok((id, tok.span))
    }

    fn string(&mut self) -> PResult<(String, SourceSpan)> {
        let tok = self.expect(TokenKind::Str)?;
        Ok((tok.string_value(), tok.span))
    }

    fn label(&mut self) -> PResult<Label> {
        let (s, span) = self.string()?;
        Label::new(s).map_err(|e| Diagnostic::new(Rule::P002, e.to_string()).with_span(Some(span)))
    }

    /// Consumes an identifier that must be one of `choices`.
    fn literal<T>(&mut self, what: &str, lookup: impl Fn(&str) -> Option<T>) -> PResult<T> {
        if let Some(tok) = self.peek() {
            if tok.kind == TokenKind::Ident {
                if let Some(v) = lookup(&tok.lexeme) {
                    self.advance();
                    return Ok(v);
                }
            }
        }
        Err(self.unexpected(what))
    }

    fn local_violation(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::new(Rule::P002, message).with_span(Some(span)));
    }

    /// Skips to the next item boundary.
    fn recover(&mut self) {
        while let Some(kind) = self.peek_kind() {
            match kind {
                TokenKind::Keyword(Keyword::Node) | TokenKind::Keyword(Keyword::Connection) => {
                    self.depth = 1;
                    return;
                }
                TokenKind::RBrace if self.depth <= 1 => return,
                _ => {
                    self.advance();
                }
            }
        }
    }

    fn model(&mut self) -> Option<Model> {
        let start = self.current_span();
        let header = self.header();
        if let Err(d) = &header {
            self.diagnostics.push(d.clone());
            self.recover();
        }
        let mut nodes = Vec::new();
        let mut connections = Vec::new();
        loop {
            match self.peek_kind() {
                None | Some(TokenKind::RBrace) => break,
                Some(TokenKind::Keyword(Keyword::Node)) => match self.node(nodes.len()) {
                    Ok(n) => nodes.push(n),
                    Err(d) => {
                        self.diagnostics.push(d);
                        self.recover();
                    }
                },
                Some(TokenKind::Keyword(Keyword::Connection)) => {
                    match self.connection(connections.len()) {
                        Ok(c) => connections.push(c),
                        Err(d) => {
                            self.diagnostics.push(d);
                            self.recover();
                        }
                    }
                }
                Some(_) => {
                    let d = self.unexpected("`node`, `connection` or `}`");
                    self.diagnostics.push(d);
                    self.advance();
                    self.recover();
                }
            }
        }
        if let Err(d) = self.expect(TokenKind::RBrace) {
            // An item error at end of input already says the text stops short.
            let at = |d: &Diagnostic| d.span.as_ref().map(|s| s.start.offset);
            if self.diagnostics.last().map(at) != Some(at(&d)) {
                self.diagnostics.push(d);
            }
        } else if self.peek().is_some() {
            let d = Diagnostic::new(Rule::P001, "expected end of input after the architecture")
                .with_span(Some(self.current_span()));
            self.diagnostics.push(d);
        }
        self.spans
            .insert(EntityId::Model, start.to(&self.prev_span()));
        let (name, level) = header.ok()?;
        Some(Model::new_unchecked(name, level, nodes, connections))
    }

    fn header(&mut self) -> PResult<(Identifier, Level)> {
        self.expect_kw(Keyword::Architecture)?;
        let (name, _) = self.ident()?;
        let mut level = Level::default();
        if self.at_kw(Keyword::Level) {
            self.advance();
            level = self.literal("`HLA` or `LLA`", Level::from_literal)?;
        }
        self.expect(TokenKind::LBrace)?;
        Ok((name, level))
    }

    fn node(&mut self, index: usize) -> PResult<DataNode> {
        let start = self.expect_kw(Keyword::Node)?.span;
        let (raw_name, name_span) = self.string()?;
        let name = match NodeName::new(raw_name) {
            Ok(n) => Some(n),
            Err(e) => {
                self.local_violation(name_span, e.to_string());
                None
            }
        };
        self.expect(TokenKind::LBrace)?;
        let mut ports = Vec::new();
        let mut representation = None;
        let mut behavior = None;
        loop {
            let part_start = self.current_span();
            match self.peek_kind() {
                Some(TokenKind::Keyword(kw @ (Keyword::In | Keyword::Out))) => {
                    self.advance();
                    self.expect_kw(Keyword::Port)?;
                    let (port, _) = self.ident()?;
                    let direction = if kw == Keyword::In {
                        Direction::In
                    } else {
                        Direction::Out
                    };
                    self.spans.insert(
                        EntityId::Port(index, ports.len()),
                        part_start.to(&self.prev_span()),
                    );
                    ports.push(DataPort::new(port, direction));
                }
                Some(TokenKind::Keyword(Keyword::Representation)) => {
                    let repr = self.representation()?;
                    let span = part_start.to(&self.prev_span());
                    if representation.is_some() {
                        self.local_violation(span, "node declares more than one representation");
                    } else {
                        self.spans.insert(EntityId::Representation(index), span);
                        representation = Some(repr);
                    }
                }
                Some(TokenKind::Keyword(Keyword::Behavior)) => {
                    let b = self.behavior(index)?;
                    let span = part_start.to(&self.prev_span());
                    if behavior.is_some() {
                        self.local_violation(span, "node declares more than one behavior");
                    } else {
                        self.spans.insert(EntityId::Behavior(index), span);
                        behavior = Some(b);
                    }
                }
                Some(TokenKind::RBrace) => {
                    self.advance();
                    break;
                }
                _ => {
                    return Err(self.unexpected("`in`, `out`, `representation`, `behavior` or `}`"))
                }
            }
        }
        self.spans
            .insert(EntityId::Node(index), start.to(&self.prev_span()));
        let name = match name {
            Some(n) => n,
            // placeholder; the local violation already suppresses the model
            None => NodeName::new("?").expect("placeholder is a valid name"),
        };
        Ok(DataNode {
            name,
            ports,
            representation,
            behavior,
        })
    }

    fn representation(&mut self) -> PResult<DataRepresentation> {
        self.expect_kw(Keyword::Representation)?;
        self.expect(TokenKind::LBrace)?;
        let mut repr = DataRepresentation::default();
        let mut seen: Vec<Keyword> = Vec::new();
        loop {
            let field_start = self.current_span();
            let kw = match self.peek_kind() {
                Some(TokenKind::RBrace) => {
                    self.advance();
                    return Ok(repr);
                }
                Some(TokenKind::Keyword(
                    kw @ (Keyword::Formats
                    | Keyword::Processing
                    | Keyword::Storage
                    | Keyword::Location),
                )) => kw,
                _ => {
                    return Err(
                        self.unexpected("`formats`, `processing`, `storage`, `location` or `}`")
                    )
                }
            };
            self.advance();
            self.expect(TokenKind::Colon)?;
            match kw {
                Keyword::Formats => {
                    self.expect(TokenKind::LBracket)?;
                    let mut formats = vec![self.format()?];
                    while self.at(TokenKind::Comma) {
                        self.advance();
                        formats.push(self.format()?);
                    }
                    self.expect(TokenKind::RBracket)?;
                    match FormatSet::new(formats) {
                        Ok(set) => repr.formats = set,
                        Err(e) => {
                            self.local_violation(field_start.to(&self.prev_span()), e.to_string())
                        }
                    }
                }
                Keyword::Processing => {
                    repr.processing =
                        Some(self.literal("`Batch` or `RealTime`", ProcessingType::from_literal)?);
                }
                Keyword::Storage => repr.storage = Some(self.storage()?),
                _ => {
                    repr.location =
                        Some(self.literal("`Cloud` or `Local`", Location::from_literal)?);
                }
            }
            self.expect(TokenKind::Semi)?;
            if seen.contains(&kw) {
                self.local_violation(
                    field_start.to(&self.prev_span()),
                    format!("representation field `{kw}` given more than once"),
                );
            }
            seen.push(kw);
        }
    }

    fn format(&mut self) -> PResult<DataFormat> {
        let is_other = self
            .peek()
            .is_some_and(|t| t.kind == TokenKind::Ident && t.lexeme == "Other");
        if !is_other {
            return self.literal("a data format", DataFormat::from_literal);
        }
        self.advance();
        self.expect(TokenKind::LParen)?;
        let label = self.label()?;
        let mut category = FormatCategory::SemiStructured;
        if self.at(TokenKind::Comma) {
            self.advance();
            category = self.literal("`SemiStructured` or `Unstructured`", |s| {
                FormatCategory::from_literal(s).filter(|c| *c != FormatCategory::Structured)
            })?;
        }
        self.expect(TokenKind::RParen)?;
        Ok(DataFormat::from_parts(category, "Other", Some(label))
            .expect("Other is legal for both open categories"))
    }

    fn storage(&mut self) -> PResult<StorageTech> {
        let family = self.literal(
            "`NoSQL`, `NewSQL` or `FileSystem`",
            StorageFamily::from_literal,
        )?;
        self.expect(TokenKind::Dot)?;
        let kind_tok = self.expect(TokenKind::Ident)?;
        let label = if kind_tok.lexeme == "Other" {
            self.expect(TokenKind::LParen)?;
            let l = self.label()?;
            self.expect(TokenKind::RParen)?;
            Some(l)
        } else {
            None
        };
        StorageTech::from_parts(family, &kind_tok.lexeme, label).map_err(|_| {
            Diagnostic::new(
                Rule::P001,
                format!(
                    "expected a {} storage kind after `{}.`, found identifier `{}`",
                    family.as_str(),
                    family.as_str(),
                    kind_tok.lexeme
                ),
            )
            .with_span(Some(kind_tok.span.clone()))
        })
    }

    fn behavior(&mut self, node: usize) -> PResult<NodeBehavior> {
        self.expect_kw(Keyword::Behavior)?;
        self.expect(TokenKind::LBrace)?;
        let mut behavior = NodeBehavior::new(Vec::new(), Vec::new());
        loop {
            let start = self.current_span();
            match self.peek_kind() {
                Some(TokenKind::RBrace) => {
                    self.advance();
                    return Ok(behavior);
                }
                Some(TokenKind::Keyword(Keyword::Event)) => {
                    let el = self.event()?;
                    self.spans.insert(
                        EntityId::Element(node, behavior.elements.len()),
                        start.to(&self.prev_span()),
                    );
                    behavior.elements.push(el);
                }
                Some(TokenKind::Keyword(Keyword::Action)) => {
                    let el = self.action()?;
                    self.spans.insert(
                        EntityId::Element(node, behavior.elements.len()),
                        start.to(&self.prev_span()),
                    );
                    behavior.elements.push(el);
                }
                Some(TokenKind::Keyword(Keyword::Link)) => {
                    self.advance();
                    let (from, _) = self.ident()?;
                    self.expect(TokenKind::Arrow)?;
                    let (to, _) = self.ident()?;
                    let span = start.to(&self.prev_span());
                    match Link::new(from, to) {
                        Ok(link) => {
                            self.spans
                                .insert(EntityId::Link(node, behavior.links.len()), span);
                            behavior.links.push(link);
                        }
                        Err(e) => self.local_violation(span, e.to_string()),
                    }
                }
                _ => return Err(self.unexpected("`event`, `action`, `link` or `}`")),
            }
        }
    }

    fn event(&mut self) -> PResult<BehaviorElement> {
        self.expect_kw(Keyword::Event)?;
        match self.peek_kind() {
            Some(TokenKind::Keyword(Keyword::Receive)) => {
                self.advance();
                let (name, _) = self.ident()?;
                self.expect_kw(Keyword::Via)?;
                let (port, _) = self.ident()?;
                Ok(BehaviorElement::event(name, EventKind::ReceiveData(port)))
            }
            Some(TokenKind::Keyword(Keyword::External)) => {
                self.advance();
                let (name, _) = self.ident()?;
                let label = self.label()?;
                Ok(BehaviorElement::event(name, EventKind::External(label)))
            }
            _ => Err(self.unexpected("`receive` or `external`")),
        }
    }

    fn field_start(&mut self, kw: Keyword) -> PResult<()> {
        self.expect_kw(kw)?;
        self.expect(TokenKind::Colon)?;
        Ok(())
    }

    fn string_list(&mut self) -> PResult<Vec<Label>> {
        self.expect(TokenKind::LBracket)?;
        let mut items = vec![self.label()?];
        while self.at(TokenKind::Comma) {
            self.advance();
            items.push(self.label()?);
        }
        self.expect(TokenKind::RBracket)?;
        Ok(items)
    }

    fn action(&mut self) -> PResult<BehaviorElement> {
        self.expect_kw(Keyword::Action)?;
        let kw = match self.peek_kind() {
            Some(TokenKind::Keyword(
                kw @ (Keyword::Generate
                | Keyword::Ingest
                | Keyword::Process
                | Keyword::Store
                | Keyword::Analyze
                | Keyword::Consume
                | Keyword::Send),
            )) => kw,
            _ => {
                return Err(self.unexpected(
                    "`generate`, `ingest`, `process`, `store`, `analyze`, `consume` or `send`",
                ))
            }
        };
        self.advance();
        let (name, _) = self.ident()?;
        if kw == Keyword::Send {
            self.expect_kw(Keyword::Via)?;
            let (port, _) = self.ident()?;
            return Ok(BehaviorElement::action(name, ActionKind::SendData(port)));
        }
        self.expect(TokenKind::LBrace)?;
        let kind = match kw {
            Keyword::Generate => {
                self.field_start(Keyword::Source)?;
                let source = self.label()?;
                self.expect(TokenKind::Semi)?;
                self.field_start(Keyword::Format)?;
                let format = self.format()?;
                ActionKind::Generation { source, format }
            }
            Keyword::Ingest => {
                self.field_start(Keyword::Steps)?;
                ActionKind::Ingestion {
                    steps: self.string_list()?,
                }
            }
            Keyword::Process => {
                self.field_start(Keyword::Subprocesses)?;
                ActionKind::Process {
                    subprocesses: self.string_list()?,
                }
            }
            Keyword::Store => {
                self.field_start(Keyword::Tasks)?;
                let start = self.current_span();
                self.expect(TokenKind::LBracket)?;
                let mut tasks = vec![self.literal("a store task", StoreTask::from_literal)?];
                while self.at(TokenKind::Comma) {
                    self.advance();
                    tasks.push(self.literal("a store task", StoreTask::from_literal)?);
                }
                self.expect(TokenKind::RBracket)?;
                match StoreTasks::new(tasks.clone()) {
                    Ok(tasks) => ActionKind::Store { tasks },
                    Err(e) => {
                        self.local_violation(start.to(&self.prev_span()), e.to_string());
                        tasks.dedup();
                        ActionKind::Store {
                            tasks: StoreTasks::new(vec![tasks[0]]).expect("one task"),
                        }
                    }
                }
            }
            Keyword::Analyze => {
                self.field_start(Keyword::Technique)?;
                ActionKind::Analyze {
                    technique: self.label()?,
                }
            }
            _ => {
                self.field_start(Keyword::Mode)?;
                ActionKind::Consume {
                    mode: self
                        .literal("`Visualize`, `Report` or `API`", ConsumeMode::from_literal)?,
                }
            }
        };
        self.expect(TokenKind::Semi)?;
        self.expect(TokenKind::RBrace)?;
        Ok(BehaviorElement::action(name, kind))
    }

    fn endpoint(&mut self) -> PResult<(String, Identifier, SourceSpan)> {
        let (node, span) = self.string()?;
        self.expect(TokenKind::Dot)?;
        let (port, _) = self.ident()?;
        Ok((node, port, span))
    }

    fn connection(&mut self, index: usize) -> PResult<Connection> {
        let start = self.expect_kw(Keyword::Connection)?.span;
        let mut name = None;
        if self.at(TokenKind::Ident) {
            name = Some(self.ident()?.0);
            self.expect(TokenKind::Colon)?;
        }
        let (src_node, src_port, src_span) = self.endpoint()?;
        self.expect(TokenKind::Arrow)?;
        let (dst_node, dst_port, dst_span) = self.endpoint()?;
        let mut node_name = |raw: String, span: SourceSpan| match NodeName::new(raw) {
            Ok(n) => n,
            Err(e) => {
                self.local_violation(span, e.to_string());
                NodeName::new("?").expect("placeholder is a valid name")
            }
        };
        let source = Endpoint::new(node_name(src_node, src_span), src_port);
        let target = Endpoint::new(node_name(dst_node, dst_span), dst_port);
        self.spans
            .insert(EntityId::Connection(index), start.to(&self.prev_span()));
        Ok(Connection::new_unchecked(name, source, target))
    }
}
