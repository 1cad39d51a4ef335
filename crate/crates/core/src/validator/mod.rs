//! Whole-model well-formedness checking against the rule catalog.

mod catalog;
mod rules;

use std::fmt;

use serde::Serialize;

pub use catalog::{catalog, explain, Rule, RuleInfo, UnknownRule};

use crate::dsl::{SourceSpan, SpanMap};
use crate::model::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: Rule,
    pub message: String,
    pub span: Option<SourceSpan>,
    /// Entity path: node name, then port/element/link names as relevant.
    pub path: Vec<String>,
}

impl Diagnostic {
    pub fn new(rule: Rule, message: impl Into<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        Diagnostic {
            severity: rule.severity(),
            rule,
            message,
            span: None,
            path: Vec::new(),
        }
    }

    pub fn with_span(mut self, span: Option<SourceSpan>) -> Self {
        self.span = span;
        self
    }

    pub fn with_path<I, S>(mut self, path: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.path = path.into_iter().map(Into::into).collect();
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub fn path_display(&self) -> String {
        if self.path.is_empty() {
            "-".to_string()
        } else {
            self.path.join("/")
        }
    }

    /// `SEVERITY RULEID file:line:col path`, then U+2014 and the message.
    /// The location is just `file` when the diagnostic carries no span.
    pub fn render(&self, file: &str) -> String {
        let location = match &self.span {
            Some(span) => format!("{file}:{}:{}", span.start.line, span.start.column),
            None => file.to_string(),
        };
        format!(
            "{} {} {} {} \u{2014} {}",
            self.severity,
            self.rule,
            location,
            self.path_display(),
            self.message
        )
    }

    /// One-line JSON object for machine consumers.
    pub fn to_json_line(&self, file: &str) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            severity: &'a str,
            rule: &'a str,
            file: &'a str,
            line: Option<u32>,
            col: Option<u32>,
            path: &'a [String],
            message: &'a str,
        }
        let line = Line {
            severity: self.severity.as_str(),
            rule: self.rule.id(),
            file,
            line: self.span.as_ref().map(|s| s.start.line),
            col: self.span.as_ref().map(|s| s.start.column),
            path: &self.path,
            message: &self.message,
        };
        serde_json::to_string(&line).expect("diagnostic serializes")
    }
}

/// Runs every catalog rule over `model`.
///
/// The result is ordered by source position (diagnostics without a span
/// last), then rule id, then discovery order.
pub fn validate(model: &Model, spans: &SpanMap) -> Vec<Diagnostic> {
    let mut diags = rules::errors(model, spans);
    diags.extend(rules::warnings(model, spans));
    sort_diagnostics(&mut diags);
    diags
}

/// Error-severity rules only, without spans. Used by [`Model::new`].
pub(crate) fn structural_errors(model: &Model) -> Vec<Diagnostic> {
    let mut diags = rules::errors(model, &SpanMap::new());
    sort_diagnostics(&mut diags);
    diags
}

pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by_key(|d| {
        let pos = d
            .span
            .as_ref()
            .map(|s| (s.start.line, s.start.column))
            .unwrap_or((u32::MAX, u32::MAX));
        (pos, d.rule)
    });
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
