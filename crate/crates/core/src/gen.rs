//! Random well-formed models, for round-trip testing, fuzzing and benches.
//!
//! Every generated model passes [`Model::new`]. Warnings (unused ports,
//! unreachable actions, format mismatches, node cycles) are allowed.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::model::{
    ActionKind, BehaviorElement, Connection, ConsumeMode, DataFormat, DataNode, DataPort,
    DataRepresentation, Direction, Endpoint, EventKind, FileSystemKind, FormatSet, Identifier,
    Label, Level, Link, Location, Model, NewSqlKind, NoSqlKind, NodeBehavior, NodeName,
    ProcessingType, SemiStructuredKind, StorageTech, StoreTask, StoreTasks, StructuredKind,
    UnstructuredKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub max_nodes: usize,
    pub max_connections: usize,
    pub max_elements: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_nodes: 8,
            max_connections: 12,
            max_elements: 6,
        }
    }
}

const LABELS: &[&str] = &[
    "",
    "IoT devices",
    "User's Mobile data",
    "quote \" inside",
    "back\\slash",
    "\\\"",
    "ünïcödé ✓",
    "tab\tlabel",
    "reduce noise",
];

const NODE_STEMS: &[&str] = &[
    "Data Sources",
    "Ingest",
    "Raw \"Data\"",
    "C:\\store",
    "Real-Time Processing",
    "Σ nodes",
    "x",
];

fn label<R: Rng + ?Sized>(rng: &mut R) -> Label {
    Label::new(*LABELS.choose(rng).expect("non-empty")).expect("labels are single-line")
}

fn labels<R: Rng + ?Sized>(rng: &mut R) -> Vec<Label> {
    let n = rng.random_range(1..=3);
    (0..n).map(|_| label(rng)).collect()
}

fn id(s: String) -> Identifier {
    Identifier::new(s).expect("generated identifiers are valid")
}

/// Every format kind, `Other` variants with a fixed label.
pub fn all_formats() -> Vec<DataFormat> {
    let other = || Label::new("other").unwrap();
    vec![
        DataFormat::Structured(StructuredKind::RelationalDb),
        DataFormat::SemiStructured(SemiStructuredKind::Email),
        DataFormat::SemiStructured(SemiStructuredKind::Sms),
        DataFormat::SemiStructured(SemiStructuredKind::Csv),
        DataFormat::SemiStructured(SemiStructuredKind::Json),
        DataFormat::SemiStructured(SemiStructuredKind::Xml),
        DataFormat::SemiStructured(SemiStructuredKind::Other(other())),
        DataFormat::Unstructured(UnstructuredKind::GpsData),
        DataFormat::Unstructured(UnstructuredKind::Multimedia),
        DataFormat::Unstructured(UnstructuredKind::OfficeFiles),
        DataFormat::Unstructured(UnstructuredKind::Other(other())),
    ]
}

/// Every storage kind, `Other` with a fixed label.
pub fn all_storage() -> Vec<StorageTech> {
    vec![
        StorageTech::NoSql(NoSqlKind::Document),
        StorageTech::NoSql(NoSqlKind::KeyValue),
        StorageTech::NoSql(NoSqlKind::Graph),
        StorageTech::NoSql(NoSqlKind::Column),
        StorageTech::NewSql(NewSqlKind::Historical),
        StorageTech::NewSql(NewSqlKind::RealTime),
        StorageTech::NewSql(NewSqlKind::Stream),
        StorageTech::NewSql(NewSqlKind::Timestamp),
        StorageTech::FileSystem(FileSystemKind::Hdf),
        StorageTech::FileSystem(FileSystemKind::Gfs),
        StorageTech::FileSystem(FileSystemKind::Afs),
        StorageTech::FileSystem(FileSystemKind::Gpfs),
        StorageTech::FileSystem(FileSystemKind::Blobseer),
        StorageTech::FileSystem(FileSystemKind::Other(Label::new("S3").unwrap())),
    ]
}

fn random_format<R: Rng + ?Sized>(rng: &mut R) -> DataFormat {
    let mut f = all_formats().choose(rng).expect("non-empty").clone();
    if f.label().is_some() {
        let l = label(rng);
        f = match f {
            DataFormat::SemiStructured(_) => {
                DataFormat::SemiStructured(SemiStructuredKind::Other(l))
            }
            _ => DataFormat::Unstructured(UnstructuredKind::Other(l)),
        };
    }
    f
}

fn representation<R: Rng + ?Sized>(rng: &mut R) -> DataRepresentation {
    let mut formats: Vec<DataFormat> = Vec::new();
    for _ in 0..rng.random_range(0..=3) {
        let f = random_format(rng);
        if !formats.contains(&f) {
            formats.push(f);
        }
    }
    let storage = rng.random_bool(0.5).then(|| {
        let s = all_storage().choose(rng).expect("non-empty").clone();
        match s {
            StorageTech::FileSystem(FileSystemKind::Other(_)) => {
                StorageTech::FileSystem(FileSystemKind::Other(label(rng)))
            }
            s => s,
        }
    });
    DataRepresentation {
        formats: FormatSet::new(formats).expect("deduplicated"),
        processing: rng
            .random_bool(0.6)
            .then(|| *ProcessingType::ALL.choose(rng).expect("non-empty")),
        storage,
        location: rng
            .random_bool(0.5)
            .then(|| *Location::ALL.choose(rng).expect("non-empty")),
    }
}

fn behavior<R: Rng + ?Sized>(rng: &mut R, node: &mut DataNode, cfg: &GenConfig) -> NodeBehavior {
    let count = rng.random_range(0..=cfg.max_elements);
    let mut elements = Vec::with_capacity(count);
    for e in 0..count {
        let name = id(format!("e{e}"));
        let el = match rng.random_range(0..9) {
            0 => {
                let port = id(format!("r{e}"));
                node.ports.push(DataPort::input(port.clone()));
                BehaviorElement::event(name, EventKind::ReceiveData(port))
            }
            1 => BehaviorElement::event(name, EventKind::External(label(rng))),
            2 => BehaviorElement::action(
                name,
                ActionKind::Generation {
                    source: label(rng),
                    format: random_format(rng),
                },
            ),
            3 => BehaviorElement::action(name, ActionKind::Ingestion { steps: labels(rng) }),
            4 => BehaviorElement::action(
                name,
                ActionKind::Process {
                    subprocesses: labels(rng),
                },
            ),
            5 => {
                let mut tasks: Vec<StoreTask> = StoreTask::ALL
                    .into_iter()
                    .filter(|_| rng.random_bool(0.5))
                    .collect();
                if tasks.is_empty() {
                    tasks.push(*StoreTask::ALL.choose(rng).expect("non-empty"));
                }
                BehaviorElement::action(
                    name,
                    ActionKind::Store {
                        tasks: StoreTasks::new(tasks).expect("non-empty and distinct"),
                    },
                )
            }
            6 => BehaviorElement::action(
                name,
                ActionKind::Analyze {
                    technique: label(rng),
                },
            ),
            7 => BehaviorElement::action(
                name,
                ActionKind::Consume {
                    mode: *ConsumeMode::ALL.choose(rng).expect("non-empty"),
                },
            ),
            _ => {
                let port = id(format!("s{e}"));
                node.ports.push(DataPort::output(port.clone()));
                BehaviorElement::action(name, ActionKind::SendData(port))
            }
        };
        elements.push(el);
    }
    // forward links only, never into an event: acyclic by construction
    let mut links = Vec::new();
    for to in 0..elements.len() {
        if elements[to].is_event() {
            continue;
        }
        for from in 0..to {
            if rng.random_bool(0.3) {
                links.push(
                    Link::new(elements[from].name.clone(), elements[to].name.clone())
                        .expect("distinct elements"),
                );
            }
        }
    }
    NodeBehavior::new(elements, links)
}

/// Generates one well-formed model.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Model {
    let n = rng.random_range(0..=cfg.max_nodes);
    let mut nodes: Vec<DataNode> = (0..n)
        .map(|i| {
            let stem = NODE_STEMS.choose(rng).expect("non-empty");
            DataNode::new(NodeName::new(format!("{stem} {i}")).expect("non-empty"))
        })
        .collect();
    for (i, node) in nodes.iter_mut().enumerate() {
        if rng.random_bool(0.7) {
            node.representation = Some(representation(rng));
        }
        if rng.random_bool(0.6) {
            node.behavior = Some(behavior(rng, node, cfg));
        }
        if rng.random_bool(0.2) {
            node.ports.push(DataPort::new(
                id(format!("spare{i}")),
                if rng.random_bool(0.5) {
                    Direction::In
                } else {
                    Direction::Out
                },
            ));
        }
    }
    let mut connections = Vec::new();
    if n >= 2 {
        for k in 0..rng.random_range(0..=cfg.max_connections) {
            let a = rng.random_range(0..n);
            let mut b = rng.random_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let out = id(format!("o{k}"));
            let inp = id(format!("i{k}"));
            nodes[a].ports.push(DataPort::output(out.clone()));
            nodes[b].ports.push(DataPort::input(inp.clone()));
            let name = rng.random_bool(0.4).then(|| id(format!("c{k}")));
            connections.push(
                Connection::new(
                    name,
                    Endpoint::new(nodes[a].name.clone(), out),
                    Endpoint::new(nodes[b].name.clone(), inp),
                )
                .expect("distinct nodes"),
            );
        }
    }
    let level = *Level::ALL.choose(rng).expect("non-empty");
    let name = id(format!("Gen{}", rng.random_range(0..1000)));
    Model::new(name, level, nodes, connections).expect("generator emits well-formed models")
}
