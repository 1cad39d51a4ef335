use crate::model::{ActionKind, DataFormat, Model, ProcessingType, StorageTech};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeFlow {
    pub name: String,
    pub in_degree: usize,
    pub out_degree: usize,
    pub formats: Vec<DataFormat>,
    pub processing: Option<ProcessingType>,
    pub storage: Option<StorageTech>,
    /// Has a Generation action or no incoming edge.
    pub source: bool,
    /// No outgoing edge.
    pub sink: bool,
    /// Has a Store or Analyze action.
    pub serving: bool,
}

pub type FlowSummary = Vec<NodeFlow>;

/// One entry per node, in declaration order.
pub fn flow_summary(model: &Model) -> FlowSummary {
    let graph = model.node_graph();
    model
        .nodes()
        .iter()
        .enumerate()
        .map(|(v, node)| {
            let generates = node
                .actions()
                .any(|a| matches!(a, ActionKind::Generation { .. }));
            let serving = node
                .actions()
                .any(|a| matches!(a, ActionKind::Store { .. } | ActionKind::Analyze { .. }));
            let repr = node.representation.as_ref();
            NodeFlow {
                name: node.name.to_string(),
                in_degree: graph.in_degree(v),
                out_degree: graph.out_degree(v),
                formats: repr
                    .map(|r| r.formats.as_slice().to_vec())
                    .unwrap_or_default(),
                processing: repr.and_then(|r| r.processing),
                storage: repr.and_then(|r| r.storage.clone()),
                source: generates || graph.in_degree(v) == 0,
                sink: graph.out_degree(v) == 0,
                serving,
            }
        })
        .collect()
}
