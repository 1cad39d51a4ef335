//! Architecture pattern classification.
//!
//! Decision procedure, first match wins, on an acyclic node graph:
//!
//! 1. **Lambda**: some fork `f` and join `s` are linked by two edge-disjoint
//!    paths `f ⇒ s`, one with a `Batch` node strictly between `f` and `s`,
//!    the other with a `RealTime` node strictly between them.
//! 2. **Kappa**: no node declares `Batch`, at least one declares `RealTime`,
//!    and every source reaches a sink.
//! 3. **Pipeline**: the node graph is one simple path covering every node.
//! 4. **Unknown** otherwise, and for every cyclic graph.
//!
//! Processing types come from node representations only. Candidate forks
//! and joins are tried in node-name order, witness paths in lexicographic
//! order, so the evidence does not depend on declaration order.

use std::collections::HashSet;
use std::fmt;

use super::{paths_between, sort_by_name, source_sink_paths_in, DEFAULT_PATH_CAP};
use crate::model::{Model, NodeGraph, ProcessingType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Pipeline,
    Lambda,
    Kappa,
    Unknown,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Pipeline => "Pipeline",
            PatternKind::Lambda => "Lambda",
            PatternKind::Kappa => "Kappa",
            PatternKind::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaEvidence {
    pub fork: String,
    pub join: String,
    pub batch_path: Vec<String>,
    pub realtime_path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternClass {
    Pipeline { path: Vec<String> },
    Lambda(LambdaEvidence),
    Kappa { paths: Vec<Vec<String>> },
    Unknown,
}

impl PatternClass {
    pub fn kind(&self) -> PatternKind {
        match self {
            PatternClass::Pipeline { .. } => PatternKind::Pipeline,
            PatternClass::Lambda(_) => PatternKind::Lambda,
            PatternClass::Kappa { .. } => PatternKind::Kappa,
            PatternClass::Unknown => PatternKind::Unknown,
        }
    }
}

pub fn classify(model: &Model) -> PatternClass {
    let graph = model.node_graph();
    let processing: Vec<Option<ProcessingType>> =
        model.nodes().iter().map(|n| n.processing()).collect();
    classify_graph(&graph, &processing)
}

/// Graph-level classifier; `processing[v]` is vertex `v`'s processing type.
pub fn classify_graph(graph: &NodeGraph, processing: &[Option<ProcessingType>]) -> PatternClass {
    assert_eq!(graph.vertex_count(), processing.len());
    if graph.vertex_count() == 0 || !graph.is_acyclic() {
        return PatternClass::Unknown;
    }
    let names =
        |p: &[usize]| -> Vec<String> { p.iter().map(|&v| graph.name(v).to_string()).collect() };

    if let Some(ev) = lambda_witness(graph, processing) {
        return PatternClass::Lambda(ev);
    }

    let has = |t| processing.contains(&Some(t));
    if !has(ProcessingType::Batch) && has(ProcessingType::RealTime) {
        let all_sources_drain = graph.sources().into_iter().all(|s| {
            graph
                .reach_mask(s)
                .iter()
                .enumerate()
                .any(|(v, &r)| r && graph.out_degree(v) == 0)
        });
        if all_sources_drain {
            let (paths, _) = source_sink_paths_in(graph, DEFAULT_PATH_CAP)
                .expect("acyclic graph with a positive cap");
            return PatternClass::Kappa {
                paths: paths.iter().map(|p| names(p)).collect(),
            };
        }
    }

    if let Some(path) = covering_path(graph) {
        return PatternClass::Pipeline { path: names(&path) };
    }
    PatternClass::Unknown
}

fn lambda_witness(
    graph: &NodeGraph,
    processing: &[Option<ProcessingType>],
) -> Option<LambdaEvidence> {
    let interior_has = |path: &[usize], t: ProcessingType| {
        path[1..path.len() - 1]
            .iter()
            .any(|&v| processing[v] == Some(t))
    };
    let edges = |path: &[usize]| -> HashSet<(usize, usize)> {
        path.windows(2).map(|w| (w[0], w[1])).collect()
    };
    let mut order: Vec<usize> = (0..graph.vertex_count()).collect();
    sort_by_name(graph, &mut order);
    for &fork in &order {
        if graph.out_degree(fork) < 2 {
            continue;
        }
        for &join in &order {
            if join == fork || graph.in_degree(join) < 2 {
                continue;
            }
            let paths = paths_between(graph, fork, join, DEFAULT_PATH_CAP);
            let batch: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| interior_has(p, ProcessingType::Batch))
                .collect();
            let realtime: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| interior_has(p, ProcessingType::RealTime))
                .collect();
            for b in &batch {
                let b_edges = edges(b);
                for r in &realtime {
                    if edges(r).is_disjoint(&b_edges) {
                        let names =
                            |p: &[usize]| p.iter().map(|&v| graph.name(v).to_string()).collect();
                        return Some(LambdaEvidence {
                            fork: graph.name(fork).to_string(),
                            join: graph.name(join).to_string(),
                            batch_path: names(b),
                            realtime_path: names(r),
                        });
                    }
                }
            }
        }
    }
    None
}

/// The single Hamiltonian path when the graph is exactly a chain.
fn covering_path(graph: &NodeGraph) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    if graph.edge_count() + 1 != n {
        return None;
    }
    let sources = graph.sources();
    let [start] = sources.as_slice() else {
        return None;
    };
    let mut path = vec![*start];
    let mut v = *start;
    while let [next] = graph.successors(v) {
        v = *next;
        path.push(v);
        if path.len() > n {
            return None;
        }
    }
    (path.len() == n && graph.out_degree(v) == 0).then_some(path)
}
