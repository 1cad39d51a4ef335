use crate::dsl::{EntityId, SpanMap};
use crate::model::{
    ActionKind, Connection, DataNode, Direction, ElementKind, Endpoint, EventKind, Model, NodeGraph,
};

use super::{Diagnostic, Rule};

struct Sink<'a> {
    spans: &'a SpanMap,
    out: Vec<Diagnostic>,
}

impl Sink<'_> {
    fn push<I, S>(&mut self, rule: Rule, at: EntityId, path: I, message: String)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.out.push(
            Diagnostic::new(rule, message)
                .with_span(self.spans.get(at).cloned())
                .with_path(path),
        );
    }
}

fn connection_path(c: &Connection) -> String {
    match c.name() {
        Some(name) => name.to_string(),
        None => format!("{} -> {}", c.source(), c.target()),
    }
}

pub(super) fn errors(model: &Model, spans: &SpanMap) -> Vec<Diagnostic> {
    let mut sink = Sink {
        spans,
        out: Vec::new(),
    };
    for (i, node) in model.nodes().iter().enumerate() {
        if model.nodes()[..i].iter().any(|n| n.name == node.name) {
            sink.push(
                Rule::E001,
                EntityId::Node(i),
                [node.name.as_str()],
                format!("node {:?} is declared more than once", node.name.as_str()),
            );
        }
        node_errors(&mut sink, i, node);
    }
    for (c, conn) in model.connections().iter().enumerate() {
        connection_errors(&mut sink, model, c, conn);
    }
    sink.out
}

fn node_errors(sink: &mut Sink<'_>, i: usize, node: &DataNode) {
    let node_name = node.name.as_str();
    for (j, port) in node.ports.iter().enumerate() {
        if node.ports[..j].iter().any(|p| p.name == port.name) {
            sink.push(
                Rule::E002,
                EntityId::Port(i, j),
                [node_name, port.name.as_str()],
                format!("port `{}` is declared more than once", port.name),
            );
        }
    }
    let Some(behavior) = &node.behavior else {
        return;
    };
    for (e, element) in behavior.elements.iter().enumerate() {
        if behavior.elements[..e]
            .iter()
            .any(|x| x.name == element.name)
        {
            sink.push(
                Rule::E010,
                EntityId::Element(i, e),
                [node_name, element.name.as_str()],
                format!(
                    "behavior element `{}` is declared more than once",
                    element.name
                ),
            );
        }
        let binding = match &element.kind {
            ElementKind::Event(EventKind::ReceiveData(port)) => Some((port, Direction::In)),
            ElementKind::Action(ActionKind::SendData(port)) => Some((port, Direction::Out)),
            _ => None,
        };
        if let Some((port, wanted)) = binding {
            let problem = match node.port(port.as_str()) {
                None => Some(format!("node has no port `{port}`")),
                Some(p) if p.direction != wanted => Some(format!(
                    "port `{port}` is an {} port, expected an {} port",
                    p.direction.as_str(),
                    wanted.as_str()
                )),
                Some(_) => None,
            };
            if let Some(problem) = problem {
                let verb = if wanted == Direction::In {
                    "receive"
                } else {
                    "send"
                };
                sink.push(
                    Rule::E006,
                    EntityId::Element(i, e),
                    [node_name, element.name.as_str()],
                    format!(
                        "{verb} `{}` is bound to a bad port: {problem}",
                        element.name
                    ),
                );
            }
        }
    }

    // Element index of the first declaration with a given name.
    let index_of = |name: &str| behavior.elements.iter().position(|x| x.name == *name);
    let mut edges = Vec::new();
    let mut edge_links = Vec::new();
    for (l, link) in behavior.links.iter().enumerate() {
        let from = index_of(link.from().as_str());
        let to = index_of(link.to().as_str());
        let missing: Vec<&str> = [(link.from(), from), (link.to(), to)]
            .into_iter()
            .filter(|(_, idx)| idx.is_none())
            .map(|(name, _)| name.as_str())
            .collect();
        if !missing.is_empty() {
            sink.push(
                Rule::E007,
                EntityId::Link(i, l),
                [node_name.to_string(), link.to_string()],
                format!(
                    "link `{link}` names unknown element(s): {}",
                    missing.join(", ")
                ),
            );
        }
        if let Some(t) = to {
            if behavior.elements[t].is_event() {
                sink.push(
                    Rule::E009,
                    EntityId::Link(i, l),
                    [node_name.to_string(), link.to_string()],
                    format!("link `{link}` targets event `{}`", link.to()),
                );
            }
        }
        if let (Some(f), Some(t)) = (from, to) {
            edges.push((f, t));
            edge_links.push(l);
        }
    }
    let names: Vec<String> = behavior
        .elements
        .iter()
        .map(|e| e.name.to_string())
        .collect();
    let graph = NodeGraph::from_edges(names, edges.clone());
    for component in graph.cyclic_components() {
        let first_link = edges
            .iter()
            .zip(&edge_links)
            .find(|((f, t), _)| component.contains(f) && component.contains(t))
            .map(|(_, &l)| l)
            .expect("a cyclic component contains at least one link");
        let members: Vec<&str> = component.iter().map(|&v| graph.name(v)).collect();
        sink.push(
            Rule::E008,
            EntityId::Link(i, first_link),
            [node_name, members[0]],
            format!("links form a cycle through {}", members.join(", ")),
        );
    }
}

fn connection_errors(sink: &mut Sink<'_>, model: &Model, c: usize, conn: &Connection) {
    let path = connection_path(conn);
    let resolve = |ep: &Endpoint| -> Result<Direction, String> {
        let node = model
            .node(ep.node.as_str())
            .ok_or_else(|| format!("no node named {:?}", ep.node.as_str()))?;
        node.port(ep.port.as_str())
            .map(|p| p.direction)
            .ok_or_else(|| format!("node {:?} has no port `{}`", ep.node.as_str(), ep.port))
    };
    let source = resolve(conn.source());
    let target = resolve(conn.target());
    for (side, result) in [("source", &source), ("target", &target)] {
        if let Err(why) = result {
            sink.push(
                Rule::E003,
                EntityId::Connection(c),
                [path.clone()],
                format!("{side} endpoint does not resolve: {why}"),
            );
        }
    }
    if let (Ok(s), Ok(t)) = (&source, &target) {
        if (*s, *t) != (Direction::Out, Direction::In) {
            sink.push(
                Rule::E004,
                EntityId::Connection(c),
                [path.clone()],
                format!(
                    "connection goes from an {} port to an {} port, expected out to in",
                    s.as_str(),
                    t.as_str()
                ),
            );
        }
    }
    if conn.source().node == conn.target().node {
        sink.push(
            Rule::E005,
            EntityId::Connection(c),
            [path],
            format!(
                "both endpoints are on node {:?}",
                conn.source().node.as_str()
            ),
        );
    }
}

pub(super) fn warnings(model: &Model, spans: &SpanMap) -> Vec<Diagnostic> {
    let mut sink = Sink {
        spans,
        out: Vec::new(),
    };
    for (i, node) in model.nodes().iter().enumerate() {
        let name = node.name.as_str();
        if let Some(behavior) = &node.behavior {
            if behavior.events().next().is_some() {
                for (e, element) in behavior.elements.iter().enumerate() {
                    if element.is_event() {
                        continue;
                    }
                    if !behavior.links.iter().any(|l| *l.to() == element.name) {
                        sink.push(
                            Rule::W101,
                            EntityId::Element(i, e),
                            [name, element.name.as_str()],
                            format!(
                                "action `{}` has no incoming link and cannot be reached from an event",
                                element.name
                            ),
                        );
                    }
                }
            }
        }
        for (j, port) in node.ports.iter().enumerate() {
            let used = model.connections().iter().any(|c| {
                [c.source(), c.target()]
                    .into_iter()
                    .any(|ep| ep.node == node.name && ep.port == port.name)
            });
            if !used {
                sink.push(
                    Rule::W102,
                    EntityId::Port(i, j),
                    [name, port.name.as_str()],
                    format!(
                        "{} port `{}` is not used by any connection",
                        port.direction.as_str(),
                        port.name
                    ),
                );
            }
        }
        let stores = node
            .actions()
            .any(|a| matches!(a, ActionKind::Store { .. }));
        let has_storage = node
            .representation
            .as_ref()
            .is_some_and(|r| r.storage.is_some());
        if stores && !has_storage {
            sink.push(
                Rule::W103,
                EntityId::Node(i),
                [name],
                "node has a store action but declares no storage technology".to_string(),
            );
        }
    }
    for (c, conn) in model.connections().iter().enumerate() {
        let formats = |ep: &Endpoint| {
            model
                .node(ep.node.as_str())
                .and_then(DataNode::formats)
                .filter(|f| !f.is_empty())
        };
        if let (Some(a), Some(b)) = (formats(conn.source()), formats(conn.target())) {
            if !a.intersects(b) {
                sink.push(
                    Rule::W104,
                    EntityId::Connection(c),
                    [connection_path(conn)],
                    format!(
                        "{:?} and {:?} declare no common format",
                        conn.source().node.as_str(),
                        conn.target().node.as_str()
                    ),
                );
            }
        }
    }
    let graph = model.node_graph();
    for component in graph.cyclic_components() {
        let members: Vec<&str> = component.iter().map(|&v| graph.name(v)).collect();
        sink.push(
            Rule::W105,
            EntityId::Node(component[0]),
            members.iter().copied(),
            format!(
                "nodes form a cycle: {}",
                members
                    .iter()
                    .map(|m| format!("{m:?}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        );
    }
    sink.out
}
