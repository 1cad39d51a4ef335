use std::collections::VecDeque;

use super::Model;

/// Simple digraph over node names, derived from a model's connections.
///
/// Vertices keep declaration order. Edges appear in the order of the first
/// connection that produces them; parallel connections collapse into one
/// edge. Connections with an unresolved endpoint or both endpoints on the
/// same node contribute no edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeGraph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl NodeGraph {
    pub fn from_model(model: &Model) -> Self {
        let names: Vec<String> = model.nodes().iter().map(|n| n.name.to_string()).collect();
        let edges = model
            .connections()
            .iter()
            .filter_map(|c| {
                let a = model.node_index(c.source().node.as_str())?;
                let b = model.node_index(c.target().node.as_str())?;
                Some((a, b))
            })
            .collect();
        NodeGraph::from_edges(names, edges)
    }

    /// Builds a graph from raw edges, dropping self-loops and duplicates.
    ///
    /// Panics if an edge names a vertex index out of range.
    pub fn from_edges(names: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let n = names.len();
        let mut graph = NodeGraph {
            names,
            edges: Vec::new(),
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
        };
        for (a, b) in edges {
            assert!(
                a < n && b < n,
                "edge ({a}, {b}) out of range for {n} vertices"
            );
            if a == b || graph.succ[a].contains(&b) {
                continue;
            }
            graph.edges.push((a, b));
            graph.succ[a].push(b);
            graph.pred[b].push(a);
        }
        graph
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges as name pairs, in edge order.
    pub fn named_edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.pred[v].len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.succ[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(&b)
    }

    /// Vertices with no incoming edge, in declaration order.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.in_degree(v) == 0)
            .collect()
    }

    /// Vertices with no outgoing edge, in declaration order.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.out_degree(v) == 0)
            .collect()
    }

    /// Kahn's algorithm; `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree: Vec<usize> = (0..self.vertex_count())
            .map(|v| self.in_degree(v))
            .collect();
        let mut queue: VecDeque<usize> = (0..self.vertex_count())
            .filter(|&v| indegree[v] == 0)
            .collect();
        let mut order = Vec::with_capacity(self.vertex_count());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == self.vertex_count()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Strongly connected components with more than one vertex, each sorted
    /// by vertex index, listed by their smallest vertex.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let forward: Vec<Vec<bool>> = (0..n).map(|v| self.reach_mask(v)).collect();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let component: Vec<usize> =
                (0..n).filter(|&w| forward[v][w] && forward[w][v]).collect();
            for &w in &component {
                seen[w] = true;
            }
            if component.len() > 1 {
                out.push(component);
            }
        }
        out
    }

    /// Forward reachability from `start`, including `start` itself.
    pub fn reach_mask(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}
