//! Graph analyses over the node graph.

mod classify;
mod summary;

use thiserror::Error;

pub use classify::{classify, classify_graph, LambdaEvidence, PatternClass, PatternKind};
pub use summary::{flow_summary, FlowSummary, NodeFlow};

use crate::model::{Model, NodeGraph};

/// Default bound on enumerated paths.
pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node graph has a cycle")]
    CyclicGraph,
    #[error("path cap must be positive")]
    ZeroCap,
}

/// Nodes reachable from `from` (itself included), in declaration order.
pub fn reachable(model: &Model, from: &str) -> Result<Vec<String>, AnalysisError> {
    let graph = model.node_graph();
    let start = graph
        .index_of(from)
        .ok_or_else(|| AnalysisError::UnknownNode(from.to_string()))?;
    Ok(reachable_in(&graph, start)
        .into_iter()
        .map(|v| graph.name(v).to_string())
        .collect())
}

/// Vertex-level reachability, sorted by vertex index.
pub fn reachable_in(graph: &NodeGraph, start: usize) -> Vec<usize> {
    graph
        .reach_mask(start)
        .into_iter()
        .enumerate()
        .filter_map(|(v, seen)| seen.then_some(v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet {
    pub paths: Vec<Vec<String>>,
    /// More paths exist beyond `paths`.
    pub truncated: bool,
}

/// Every simple path from a source (in-degree 0) to a sink (out-degree 0),
/// in lexicographic order of node-name sequences, with at most `cap` paths.
pub fn source_sink_paths(model: &Model, cap: usize) -> Result<PathSet, AnalysisError> {
    let graph = model.node_graph();
    let (paths, truncated) = source_sink_paths_in(&graph, cap)?;
    Ok(PathSet {
        paths: paths
            .into_iter()
            .map(|p| p.into_iter().map(|v| graph.name(v).to_string()).collect())
            .collect(),
        truncated,
    })
}

/// Vertex-level form of [`source_sink_paths`]; the flag reports truncation.
pub fn source_sink_paths_in(
    graph: &NodeGraph,
    cap: usize,
) -> Result<(Vec<Vec<usize>>, bool), AnalysisError> {
    if cap == 0 {
        return Err(AnalysisError::ZeroCap);
    }
    if !graph.is_acyclic() {
        return Err(AnalysisError::CyclicGraph);
    }
    let mut sources = graph.sources();
    sort_by_name(graph, &mut sources);
    let mut walker = PathWalker::new(graph, cap);
    for s in sources {
        if walker.walk(s, &|v| graph.out_degree(v) == 0) {
            break;
        }
    }
    Ok((walker.found, walker.truncated))
}

/// All paths `from ⇒ to` in a DAG, lexicographic by names, at most `cap`.
pub(crate) fn paths_between(
    graph: &NodeGraph,
    from: usize,
    to: usize,
    cap: usize,
) -> Vec<Vec<usize>> {
    let mut walker = PathWalker::new(graph, cap);
    walker.walk(from, &|v| v == to);
    walker.found
}

fn sort_by_name(graph: &NodeGraph, vs: &mut [usize]) {
    vs.sort_by(|&a, &b| graph.name(a).cmp(graph.name(b)).then(a.cmp(&b)));
}

/// Depth-first enumeration visiting successors in name order, which yields
/// paths in lexicographic order as long as no accepted path is a prefix of
/// another (true for sinks, and for a fixed target in a DAG).
struct PathWalker<'g> {
    graph: &'g NodeGraph,
    cap: usize,
    stack: Vec<usize>,
    found: Vec<Vec<usize>>,
    truncated: bool,
}

impl<'g> PathWalker<'g> {
    fn new(graph: &'g NodeGraph, cap: usize) -> Self {
        PathWalker {
            graph,
            cap,
            stack: Vec::new(),
            found: Vec::new(),
            truncated: false,
        }
    }

    /// Returns true once the cap has been exceeded.
    fn walk(&mut self, v: usize, accept: &dyn Fn(usize) -> bool) -> bool {
        if self.stack.contains(&v) {
            return false;
        }
        self.stack.push(v);
        let stop = if accept(v) {
            if self.found.len() == self.cap {
                self.truncated = true;
                true
            } else {
                self.found.push(self.stack.clone());
                false
            }
        } else {
            let mut next = self.graph.successors(v).to_vec();
            sort_by_name(self.graph, &mut next);
            next.into_iter().any(|w| self.walk(w, accept))
        };
        self.stack.pop();
        stop
    }
}
