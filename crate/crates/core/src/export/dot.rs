//! Graphviz rendering of the node graph. Behaviors are reduced to the list
//! of action kinds in each node label.

use std::fmt::Write;

use crate::model::{DataNode, Location, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankDir {
    #[default]
    LeftRight,
    TopBottom,
}

impl RankDir {
    pub fn as_str(self) -> &'static str {
        match self {
            RankDir::LeftRight => "LR",
            RankDir::TopBottom => "TB",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DotOptions {
    pub rankdir: RankDir,
    /// Label each edge with the formats declared by its source node.
    pub show_formats: bool,
    /// Put Cloud and Local nodes into separate clusters.
    pub cluster_by_location: bool,
}

fn dot_string(s: &str) -> String {
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

fn node_label(node: &DataNode) -> String {
    let mut lines = vec![node.name.to_string()];
    if let Some(repr) = &node.representation {
        if let Some(p) = repr.processing {
            lines.push(format!("processing: {}", p.as_str()));
        }
        if let Some(s) = &repr.storage {
            lines.push(format!("storage: {s}"));
        }
        if let Some(l) = repr.location {
            lines.push(format!("location: {}", l.as_str()));
        }
    }
    let mut kinds: Vec<&str> = Vec::new();
    for action in node.actions() {
        if !kinds.contains(&action.keyword()) {
            kinds.push(action.keyword());
        }
    }
    if !kinds.is_empty() {
        lines.push(format!("actions: {}", kinds.join(", ")));
    }
    let escaped: Vec<String> = lines
        .iter()
        .map(|l| {
            let quoted = dot_string(l);
            quoted[1..quoted.len() - 1].to_string()
        })
        .collect();
    format!("\"{}\"", escaped.join("\\n"))
}

pub fn to_dot(model: &Model, opts: &DotOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", dot_string(model.name().as_str()));
    let _ = writeln!(out, "  rankdir={};", opts.rankdir.as_str());
    let statement = |node: &DataNode| {
        format!(
            "{} [shape=box, label={}];",
            dot_string(node.name.as_str()),
            node_label(node)
        )
    };
    let location = |n: &DataNode| n.representation.as_ref().and_then(|r| r.location);
    if opts.cluster_by_location {
        for node in model.nodes().iter().filter(|n| location(n).is_none()) {
            let _ = writeln!(out, "  {}", statement(node));
        }
        for loc in Location::ALL {
            let members: Vec<&DataNode> = model
                .nodes()
                .iter()
                .filter(|n| location(n) == Some(loc))
                .collect();
            if members.is_empty() {
                continue;
            }
            let cluster = format!("cluster_{}", loc.as_str().to_lowercase());
            let _ = writeln!(out, "  subgraph {} {{", dot_string(&cluster));
            let _ = writeln!(out, "    label={};", dot_string(loc.as_str()));
            for node in members {
                let _ = writeln!(out, "    {}", statement(node));
            }
            let _ = writeln!(out, "  }}");
        }
    } else {
        for node in model.nodes() {
            let _ = writeln!(out, "  {}", statement(node));
        }
    }
    for c in model.connections() {
        let _ = write!(
            out,
            "  {} -> {}",
            dot_string(c.source().node.as_str()),
            dot_string(c.target().node.as_str())
        );
        let formats = model
            .node(c.source().node.as_str())
            .and_then(DataNode::formats)
            .filter(|f| !f.is_empty());
        match formats {
            Some(f) if opts.show_formats => {
                let names: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                let _ = write!(out, " [label={}]", dot_string(&names.join(", ")));
            }
            _ => {}
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
