//! `daml-json/1` interchange documents.
//!
//! Key order is fixed by the DTO field order below; output is compact
//! (no whitespace). Absent optional values are written as `null`, except
//! `label`, which only appears on `Other` kinds. Behavior elements are
//! tagged by `kind`: `receive` and `external` are events, the rest actions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    ActionKind, BehaviorElement, Connection, ConsumeMode, DataFormat, DataNode, DataPort,
    DataRepresentation, Direction, ElementKind, Endpoint, EventKind, FormatCategory, FormatSet,
    Identifier, Label, Level, Link, Location, Model, ModelError, NodeBehavior, NodeName,
    ProcessingType, StorageFamily, StorageTech, StoreTask, StoreTasks,
};

pub const JSON_VERSION: &str = "daml-json/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("unsupported interchange version `{0}`, expected `{JSON_VERSION}`")]
    BadVersion(String),
    #[error("schema violation at `{path}`: {message}")]
    SchemaViolation { path: String, message: String },
}

fn violation(path: impl Into<String>, message: impl ToString) -> JsonError {
    JsonError::SchemaViolation {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentDto {
    version: String,
    name: String,
    level: LevelDto,
    nodes: Vec<NodeDto>,
    connections: Vec<ConnectionDto>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum LevelDto {
    #[serde(rename = "HLA")]
    Hla,
    #[serde(rename = "LLA")]
    Lla,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDto {
    name: String,
    ports: Vec<PortDto>,
    representation: Option<RepresentationDto>,
    behavior: Option<BehaviorDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PortDto {
    name: String,
    direction: DirectionDto,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum DirectionDto {
    In,
    Out,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationDto {
    formats: Vec<TaxonDto>,
    processing: Option<ProcessingDto>,
    storage: Option<StorageDto>,
    location: Option<LocationDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaxonDto {
    category: CategoryDto,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StorageDto {
    family: FamilyDto,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum CategoryDto {
    Structured,
    SemiStructured,
    Unstructured,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum FamilyDto {
    #[serde(rename = "NoSQL")]
    NoSql,
    #[serde(rename = "NewSQL")]
    NewSql,
    FileSystem,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum ProcessingDto {
    Batch,
    RealTime,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum LocationDto {
    Cloud,
    Local,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BehaviorDto {
    elements: Vec<ElementDto>,
    links: Vec<LinkDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ElementDto {
    Receive {
        name: String,
        port: String,
    },
    External {
        name: String,
        label: String,
    },
    Generate {
        name: String,
        source: String,
        format: TaxonDto,
    },
    Ingest {
        name: String,
        steps: Vec<String>,
    },
    Process {
        name: String,
        subprocesses: Vec<String>,
    },
    Store {
        name: String,
        tasks: Vec<TaskDto>,
    },
    Analyze {
        name: String,
        technique: String,
    },
    Consume {
        name: String,
        mode: ModeDto,
    },
    Send {
        name: String,
        port: String,
    },
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum TaskDto {
    Save,
    Retrieve,
    Archive,
    Govern,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum ModeDto {
    Visualize,
    Report,
    #[serde(rename = "API")]
    Api,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkDto {
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectionDto {
    name: Option<String>,
    source: EndpointDto,
    target: EndpointDto,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EndpointDto {
    node: String,
    port: String,
}

pub fn to_json(model: &Model) -> String {
    let doc = DocumentDto {
        version: JSON_VERSION.to_string(),
        name: model.name().to_string(),
        level: match model.level() {
            Level::Hla => LevelDto::Hla,
            Level::Lla => LevelDto::Lla,
        },
        nodes: model.nodes().iter().map(node_to_dto).collect(),
        connections: model.connections().iter().map(connection_to_dto).collect(),
    };
    serde_json::to_string(&doc).expect("interchange document serializes")
}

fn node_to_dto(node: &DataNode) -> NodeDto {
    NodeDto {
        name: node.name.to_string(),
        ports: node
            .ports
            .iter()
            .map(|p| PortDto {
                name: p.name.to_string(),
                direction: match p.direction {
                    Direction::In => DirectionDto::In,
                    Direction::Out => DirectionDto::Out,
                },
            })
            .collect(),
        representation: node.representation.as_ref().map(|r| RepresentationDto {
            formats: r.formats.iter().map(format_to_dto).collect(),
            processing: r.processing.map(|p| match p {
                ProcessingType::Batch => ProcessingDto::Batch,
                ProcessingType::RealTime => ProcessingDto::RealTime,
            }),
            storage: r.storage.as_ref().map(|s| StorageDto {
                family: match s.family() {
                    StorageFamily::NoSql => FamilyDto::NoSql,
                    StorageFamily::NewSql => FamilyDto::NewSql,
                    StorageFamily::FileSystem => FamilyDto::FileSystem,
                },
                kind: s.kind_str().to_string(),
                label: s.label().map(|l| l.to_string()),
            }),
            location: r.location.map(|l| match l {
                Location::Cloud => LocationDto::Cloud,
                Location::Local => LocationDto::Local,
            }),
        }),
        behavior: node.behavior.as_ref().map(|b| BehaviorDto {
            elements: b.elements.iter().map(element_to_dto).collect(),
            links: b
                .links
                .iter()
                .map(|l| LinkDto {
                    from: l.from().to_string(),
                    to: l.to().to_string(),
                })
                .collect(),
        }),
    }
}

fn format_to_dto(f: &DataFormat) -> TaxonDto {
    TaxonDto {
        category: match f.category() {
            FormatCategory::Structured => CategoryDto::Structured,
            FormatCategory::SemiStructured => CategoryDto::SemiStructured,
            FormatCategory::Unstructured => CategoryDto::Unstructured,
        },
        kind: f.kind_str().to_string(),
        label: f.label().map(|l| l.to_string()),
    }
}

fn labels(items: &[Label]) -> Vec<String> {
    items.iter().map(|l| l.to_string()).collect()
}

fn element_to_dto(el: &BehaviorElement) -> ElementDto {
    let name = el.name.to_string();
    match &el.kind {
        ElementKind::Event(EventKind::ReceiveData(port)) => ElementDto::Receive {
            name,
            port: port.to_string(),
        },
        ElementKind::Event(EventKind::External(label)) => ElementDto::External {
            name,
            label: label.to_string(),
        },
        ElementKind::Action(a) => match a {
            ActionKind::Generation { source, format } => ElementDto::Generate {
                name,
                source: source.to_string(),
                format: format_to_dto(format),
            },
            ActionKind::Ingestion { steps } => ElementDto::Ingest {
                name,
                steps: labels(steps),
            },
            ActionKind::Process { subprocesses } => ElementDto::Process {
                name,
                subprocesses: labels(subprocesses),
            },
            ActionKind::Store { tasks } => ElementDto::Store {
                name,
                tasks: tasks
                    .as_slice()
                    .iter()
                    .map(|t| match t {
                        StoreTask::Save => TaskDto::Save,
                        StoreTask::Retrieve => TaskDto::Retrieve,
                        StoreTask::Archive => TaskDto::Archive,
                        StoreTask::Govern => TaskDto::Govern,
                    })
                    .collect(),
            },
            ActionKind::Analyze { technique } => ElementDto::Analyze {
                name,
                technique: technique.to_string(),
            },
            ActionKind::Consume { mode } => ElementDto::Consume {
                name,
                mode: match mode {
                    ConsumeMode::Visualize => ModeDto::Visualize,
                    ConsumeMode::Report => ModeDto::Report,
                    ConsumeMode::Api => ModeDto::Api,
                },
            },
            ActionKind::SendData(port) => ElementDto::Send {
                name,
                port: port.to_string(),
            },
        },
    }
}

fn connection_to_dto(c: &Connection) -> ConnectionDto {
    let ep = |e: &Endpoint| EndpointDto {
        node: e.node.to_string(),
        port: e.port.to_string(),
    };
    ConnectionDto {
        name: c.name().map(|n| n.to_string()),
        source: ep(c.source()),
        target: ep(c.target()),
    }
}

/// Parses an interchange document back into a well-formed model.
pub fn from_json(text: &str) -> Result<Model, JsonError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| violation("", format!("invalid JSON: {e}")))?;
    if !value.is_object() {
        return Err(violation("", "expected a JSON object"));
    }
    match value.get("version") {
        Some(serde_json::Value::String(v)) if v == JSON_VERSION => {}
        Some(serde_json::Value::String(v)) => return Err(JsonError::BadVersion(v.clone())),
        Some(other) => return Err(JsonError::BadVersion(other.to_string())),
        None => return Err(JsonError::BadVersion("<missing>".to_string())),
    }
    let doc: DocumentDto = serde_path_to_error::deserialize(value)
        .map_err(|e| violation(e.path().to_string(), e.inner()))?;
    document_from_dto(doc)
}

fn id(path: &str, s: String) -> Result<Identifier, JsonError> {
    Identifier::new(s).map_err(|e| violation(path, e))
}

fn label(path: &str, s: String) -> Result<Label, JsonError> {
    Label::new(s).map_err(|e| violation(path, e))
}

fn labels_from(path: &str, items: Vec<String>) -> Result<Vec<Label>, JsonError> {
    items
        .into_iter()
        .enumerate()
        .map(|(i, s)| label(&format!("{path}[{i}]"), s))
        .collect()
}

fn node_name(path: &str, s: String) -> Result<NodeName, JsonError> {
    NodeName::new(s).map_err(|e| violation(path, e))
}

fn document_from_dto(doc: DocumentDto) -> Result<Model, JsonError> {
    let name = id("name", doc.name)?;
    let level = match doc.level {
        LevelDto::Hla => Level::Hla,
        LevelDto::Lla => Level::Lla,
    };
    let nodes = doc
        .nodes
        .into_iter()
        .enumerate()
        .map(|(i, n)| node_from_dto(&format!("nodes[{i}]"), n))
        .collect::<Result<Vec<_>, _>>()?;
    let connections = doc
        .connections
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let path = format!("connections[{i}]");
            let name = c.name.map(|n| id(&format!("{path}.name"), n)).transpose()?;
            let source = Endpoint::new(
                node_name(&format!("{path}.source.node"), c.source.node)?,
                id(&format!("{path}.source.port"), c.source.port)?,
            );
            let target = Endpoint::new(
                node_name(&format!("{path}.target.node"), c.target.node)?,
                id(&format!("{path}.target.port"), c.target.port)?,
            );
            Connection::new(name, source, target).map_err(|e| violation(path, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Model::new(name, level, nodes, connections).map_err(|ModelError::Invalid(diags)| {
        let first = &diags[0];
        violation(
            first.path.join("/"),
            format!("{} {}", first.rule, first.message),
        )
    })
}

fn format_from_dto(path: &str, f: TaxonDto) -> Result<DataFormat, JsonError> {
    let category = match f.category {
        CategoryDto::Structured => FormatCategory::Structured,
        CategoryDto::SemiStructured => FormatCategory::SemiStructured,
        CategoryDto::Unstructured => FormatCategory::Unstructured,
    };
    let l = f
        .label
        .map(|l| label(&format!("{path}.label"), l))
        .transpose()?;
    DataFormat::from_parts(category, &f.kind, l).map_err(|e| violation(path, e))
}

fn node_from_dto(path: &str, n: NodeDto) -> Result<DataNode, JsonError> {
    let name = node_name(&format!("{path}.name"), n.name)?;
    let ports = n
        .ports
        .into_iter()
        .enumerate()
        .map(|(j, p)| {
            let name = id(&format!("{path}.ports[{j}].name"), p.name)?;
            let direction = match p.direction {
                DirectionDto::In => Direction::In,
                DirectionDto::Out => Direction::Out,
            };
            Ok(DataPort::new(name, direction))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let representation = n
        .representation
        .map(|r| {
            let rpath = format!("{path}.representation");
            let formats = r
                .formats
                .into_iter()
                .enumerate()
                .map(|(k, f)| format_from_dto(&format!("{rpath}.formats[{k}]"), f))
                .collect::<Result<Vec<_>, _>>()?;
            let formats =
                FormatSet::new(formats).map_err(|e| violation(format!("{rpath}.formats"), e))?;
            let storage = r
                .storage
                .map(|s| {
                    let spath = format!("{rpath}.storage");
                    let family = match s.family {
                        FamilyDto::NoSql => StorageFamily::NoSql,
                        FamilyDto::NewSql => StorageFamily::NewSql,
                        FamilyDto::FileSystem => StorageFamily::FileSystem,
                    };
                    let l = s
                        .label
                        .map(|l| label(&format!("{spath}.label"), l))
                        .transpose()?;
                    StorageTech::from_parts(family, &s.kind, l).map_err(|e| violation(spath, e))
                })
                .transpose()?;
            Ok::<_, JsonError>(DataRepresentation {
                formats,
                processing: r.processing.map(|p| match p {
                    ProcessingDto::Batch => ProcessingType::Batch,
                    ProcessingDto::RealTime => ProcessingType::RealTime,
                }),
                storage,
                location: r.location.map(|l| match l {
                    LocationDto::Cloud => Location::Cloud,
                    LocationDto::Local => Location::Local,
                }),
            })
        })
        .transpose()?;
    let behavior = n
        .behavior
        .map(|b| {
            let bpath = format!("{path}.behavior");
            let elements = b
                .elements
                .into_iter()
                .enumerate()
                .map(|(e, el)| element_from_dto(&format!("{bpath}.elements[{e}]"), el))
                .collect::<Result<Vec<_>, _>>()?;
            let links = b
                .links
                .into_iter()
                .enumerate()
                .map(|(l, link)| {
                    let lpath = format!("{bpath}.links[{l}]");
                    let from = id(&format!("{lpath}.from"), link.from)?;
                    let to = id(&format!("{lpath}.to"), link.to)?;
                    Link::new(from, to).map_err(|e| violation(lpath, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok::<_, JsonError>(NodeBehavior::new(elements, links))
        })
        .transpose()?;
    Ok(DataNode {
        name,
        ports,
        representation,
        behavior,
    })
}

fn element_from_dto(path: &str, el: ElementDto) -> Result<BehaviorElement, JsonError> {
    let name_path = format!("{path}.name");
    let el = match el {
        ElementDto::Receive { name, port } => BehaviorElement::event(
            id(&name_path, name)?,
            EventKind::ReceiveData(id(&format!("{path}.port"), port)?),
        ),
        ElementDto::External { name, label: l } => BehaviorElement::event(
            id(&name_path, name)?,
            EventKind::External(label(&format!("{path}.label"), l)?),
        ),
        ElementDto::Generate {
            name,
            source,
            format,
        } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::Generation {
                source: label(&format!("{path}.source"), source)?,
                format: format_from_dto(&format!("{path}.format"), format)?,
            },
        ),
        ElementDto::Ingest { name, steps } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::Ingestion {
                steps: labels_from(&format!("{path}.steps"), steps)?,
            },
        ),
        ElementDto::Process { name, subprocesses } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::Process {
                subprocesses: labels_from(&format!("{path}.subprocesses"), subprocesses)?,
            },
        ),
        ElementDto::Store { name, tasks } => {
            let tasks = tasks
                .into_iter()
                .map(|t| match t {
                    TaskDto::Save => StoreTask::Save,
                    TaskDto::Retrieve => StoreTask::Retrieve,
                    TaskDto::Archive => StoreTask::Archive,
                    TaskDto::Govern => StoreTask::Govern,
                })
                .collect();
            BehaviorElement::action(
                id(&name_path, name)?,
                ActionKind::Store {
                    tasks: StoreTasks::new(tasks)
                        .map_err(|e| violation(format!("{path}.tasks"), e))?,
                },
            )
        }
        ElementDto::Analyze { name, technique } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::Analyze {
                technique: label(&format!("{path}.technique"), technique)?,
            },
        ),
        ElementDto::Consume { name, mode } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::Consume {
                mode: match mode {
                    ModeDto::Visualize => ConsumeMode::Visualize,
                    ModeDto::Report => ConsumeMode::Report,
                    ModeDto::Api => ConsumeMode::Api,
                },
            },
        ),
        ElementDto::Send { name, port } => BehaviorElement::action(
            id(&name_path, name)?,
            ActionKind::SendData(id(&format!("{path}.port"), port)?),
        ),
    };
    Ok(el)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_model_document() {
        let m = Model::empty(Identifier::new("A").unwrap());
        assert_eq!(
            to_json(&m),
            r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[],"connections":[]}"#
        );
        assert_eq!(from_json(&to_json(&m)).unwrap(), m);
    }

    #[test]
    fn version_checked_first() {
        let text =
            r#"{"version":"daml-json/2","name":"A","level":"HLA","nodes":[],"connections":[]}"#;
        assert_eq!(
            from_json(text),
            Err(JsonError::BadVersion("daml-json/2".into()))
        );
        assert!(matches!(
            from_json(r#"{"name":"A"}"#),
            Err(JsonError::BadVersion(_))
        ));
    }

    #[test]
    fn unknown_fields_rejected_with_path() {
        let text = r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[{"name":"N","ports":[],"representation":null,"behavior":null,"colour":"red"}],"connections":[]}"#;
        let Err(JsonError::SchemaViolation { path, message }) = from_json(text) else {
            panic!("expected schema violation");
        };
        assert_eq!(path, "nodes[0].colour");
        assert!(message.contains("colour"), "{message}");
    }

    #[test]
    fn unknown_element_fields_rejected() {
        let text = r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[{"name":"N","ports":[{"name":"i","direction":"in"}],"representation":null,"behavior":{"elements":[{"kind":"receive","name":"r","port":"i","extra":1}],"links":[]}}],"connections":[]}"#;
        assert!(matches!(
            from_json(text),
            Err(JsonError::SchemaViolation { .. })
        ));
    }

    #[test]
    fn in_to_in_connection_is_schema_violation() {
        let text = r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[
            {"name":"A","ports":[{"name":"x","direction":"in"}],"representation":null,"behavior":null},
            {"name":"B","ports":[{"name":"y","direction":"in"}],"representation":null,"behavior":null}],
            "connections":[{"name":null,"source":{"node":"A","port":"x"},"target":{"node":"B","port":"y"}}]}"#;
        let Err(JsonError::SchemaViolation { message, .. }) = from_json(text) else {
            panic!("expected schema violation");
        };
        assert!(message.starts_with("E004"), "{message}");
    }

    #[test]
    fn illegal_taxonomy_pair_rejected() {
        let text = r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[{"name":"N","ports":[],"representation":{"formats":[{"category":"Structured","kind":"JSON"}],"processing":null,"storage":null,"location":null},"behavior":null}],"connections":[]}"#;
        let Err(JsonError::SchemaViolation { path, .. }) = from_json(text) else {
            panic!("expected schema violation");
        };
        assert_eq!(path, "nodes[0].representation.formats[0]");
    }
}
