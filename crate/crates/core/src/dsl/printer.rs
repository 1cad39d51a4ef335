//! Canonical formatter: two-space indentation, one item per line,
//! declaration order preserved. Ports print before the representation,
//! which prints before the behavior; inside a behavior, elements print
//! before links.

use std::fmt::Write;

use crate::model::{
    ActionKind, BehaviorElement, DataFormat, DataNode, DataRepresentation, ElementKind, EventKind,
    FormatCategory, Label, Model, NodeBehavior, StorageTech,
};

pub fn print(model: &Model) -> String {
    let mut p = Printer::default();
    p.line(
        0,
        format_args!(
            "architecture {} level {} {{",
            model.name(),
            model.level().as_str()
        ),
    );
    for node in model.nodes() {
        p.node(node);
    }
    for c in model.connections() {
        let name = c.name().map(|n| format!("{n}: ")).unwrap_or_default();
        p.line(
            1,
            format_args!(
                "connection {name}{}.{} -> {}.{}",
                quote(c.source().node.as_str()),
                c.source().port,
                quote(c.target().node.as_str()),
                c.target().port
            ),
        );
    }
    p.line(0, format_args!("}}"));
    p.out
}

/// Leading `//` comment lines and blank lines before the first token, with
/// trailing whitespace stripped. The formatter keeps this header; comments
/// anywhere else are not part of the model and are dropped.
pub fn header_comments(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        let t = line.trim();
        if !(t.is_empty() || t.starts_with("//")) {
            break;
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Canonical text for a parsed source: its header comments, then the
/// printed model.
pub fn format_source(text: &str, model: &Model) -> String {
    header_comments(text) + &print(model)
}

/// Double-quoted string with `\"` and `\\` escapes.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn format_literal(f: &DataFormat) -> String {
    match f.label() {
        None => f.kind_str().to_string(),
        Some(l) if f.category() == FormatCategory::Unstructured => {
            format!("Other({}, Unstructured)", quote(l.as_str()))
        }
        Some(l) => format!("Other({})", quote(l.as_str())),
    }
}

fn storage_literal(s: &StorageTech) -> String {
    match s.label() {
        None => format!("{}.{}", s.family().as_str(), s.kind_str()),
        Some(l) => format!("{}.Other({})", s.family().as_str(), quote(l.as_str())),
    }
}

fn string_list(items: &[Label]) -> String {
    let quoted: Vec<String> = items.iter().map(|l| quote(l.as_str())).collect();
    format!("[{}]", quoted.join(", "))
}

#[derive(Default)]
struct Printer {
    out: String,
}

impl Printer {
    fn line(&mut self, indent: usize, args: std::fmt::Arguments<'_>) {
        for _ in 0..indent {
            self.out.push_str("  ");
        }
        self.out.write_fmt(args).expect("writing to a String");
        self.out.push('\n');
    }

    fn node(&mut self, node: &DataNode) {
        self.line(1, format_args!("node {} {{", quote(node.name.as_str())));
        for port in &node.ports {
            self.line(
                2,
                format_args!("{} port {}", port.direction.as_str(), port.name),
            );
        }
        if let Some(repr) = &node.representation {
            self.representation(repr);
        }
        if let Some(b) = &node.behavior {
            self.behavior(b);
        }
        self.line(1, format_args!("}}"));
    }

    fn representation(&mut self, repr: &DataRepresentation) {
        self.line(2, format_args!("representation {{"));
        if !repr.formats.is_empty() {
            let formats: Vec<String> = repr.formats.iter().map(format_literal).collect();
            self.line(3, format_args!("formats: [{}];", formats.join(", ")));
        }
        if let Some(p) = repr.processing {
            self.line(3, format_args!("processing: {};", p.as_str()));
        }
        if let Some(s) = &repr.storage {
            self.line(3, format_args!("storage: {};", storage_literal(s)));
        }
        if let Some(l) = repr.location {
            self.line(3, format_args!("location: {};", l.as_str()));
        }
        self.line(2, format_args!("}}"));
    }

    fn behavior(&mut self, b: &NodeBehavior) {
        self.line(2, format_args!("behavior {{"));
        for el in &b.elements {
            self.element(el);
        }
        for link in &b.links {
            self.line(3, format_args!("link {} -> {}", link.from(), link.to()));
        }
        self.line(2, format_args!("}}"));
    }

    fn element(&mut self, el: &BehaviorElement) {
        let name = &el.name;
        let action = match &el.kind {
            ElementKind::Event(EventKind::ReceiveData(port)) => {
                return self.line(3, format_args!("event receive {name} via {port}"));
            }
            ElementKind::Event(EventKind::External(label)) => {
                return self.line(
                    3,
                    format_args!("event external {name} {}", quote(label.as_str())),
                );
            }
            ElementKind::Action(ActionKind::SendData(port)) => {
                return self.line(3, format_args!("action send {name} via {port}"));
            }
            ElementKind::Action(a) => a,
        };
        self.line(3, format_args!("action {} {name} {{", action.keyword()));
        match action {
            ActionKind::Generation { source, format } => {
                self.line(4, format_args!("source: {};", quote(source.as_str())));
                self.line(4, format_args!("format: {};", format_literal(format)));
            }
            ActionKind::Ingestion { steps } => {
                self.line(4, format_args!("steps: {};", string_list(steps)));
            }
            ActionKind::Process { subprocesses } => {
                self.line(
                    4,
                    format_args!("subprocesses: {};", string_list(subprocesses)),
                );
            }
            ActionKind::Store { tasks } => {
                let tasks: Vec<&str> = tasks.as_slice().iter().map(|t| t.as_str()).collect();
                self.line(4, format_args!("tasks: [{}];", tasks.join(", ")));
            }
            ActionKind::Analyze { technique } => {
                self.line(4, format_args!("technique: {};", quote(technique.as_str())));
            }
            ActionKind::Consume { mode } => {
                self.line(4, format_args!("mode: {};", mode.as_str()));
            }
            ActionKind::SendData(_) => unreachable!("handled above"),
        }
        self.line(3, format_args!("}}"));
    }
}
