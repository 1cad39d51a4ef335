//! Small worked examples for each public operation.

mod common;

use daml_core::dsl::{tokenize, Keyword, TokenKind};
use daml_core::{
    classify, flow_summary, from_json, parse, print, reachable, source_sink_paths, to_dot, to_json,
    validate, AnalysisError, DotOptions, Identifier, JsonError, Level, LookupError, Model,
    PatternKind, Rule, DEFAULT_PATH_CAP,
};

fn kinds(text: &str) -> Vec<TokenKind> {
    tokenize(text, "t").tokens.iter().map(|t| t.kind).collect()
}

#[test]
fn token_classes() {
    assert_eq!(
        kinds("architecture A {}"),
        [
            TokenKind::Keyword(Keyword::Architecture),
            TokenKind::Ident,
            TokenKind::LBrace,
            TokenKind::RBrace
        ]
    );
    assert_eq!(
        kinds(r#""Data Sources".out1 -> "X".in1"#),
        [
            TokenKind::Str,
            TokenKind::Dot,
            TokenKind::Ident,
            TokenKind::Arrow,
            TokenKind::Str,
            TokenKind::Dot,
            TokenKind::Ident
        ]
    );
    let lexed = tokenize("\"unterminated", "t");
    assert_eq!(lexed.diagnostics[0].rule, Rule::L001);
    assert_eq!(lexed.diagnostics[0].span.as_ref().unwrap().start.line, 1);
}

#[test]
fn smallest_models() {
    let m = parse("architecture A {}").model.unwrap();
    assert_eq!(m.level(), Level::Hla);
    assert!(m.nodes().is_empty());
    assert_eq!(print(&m), "architecture A level HLA {\n}\n");

    let res = parse("architecture A { node }");
    assert!(res.model.is_none());
    assert_eq!(res.diagnostics[0].rule, Rule::P001);
    assert!(res.diagnostics[0]
        .message
        .starts_with("expected string after `node`"));
}

#[test]
fn empty_model_everywhere() {
    let m = Model::empty(Identifier::new("A").unwrap());
    let g = m.node_graph();
    assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
    assert_eq!(classify(&m).kind(), PatternKind::Unknown);
    assert!(flow_summary(&m).is_empty());
    assert!(validate(&m, &Default::default()).is_empty());
    assert_eq!(
        to_json(&m),
        r#"{"version":"daml-json/1","name":"A","level":"HLA","nodes":[],"connections":[]}"#
    );
    assert_eq!(
        to_dot(&m, &DotOptions::default()),
        "digraph \"A\" {\n  rankdir=LR;\n}\n"
    );
}

#[test]
fn parallel_connections_collapse() {
    let text = r#"architecture P {
  node "A" {
    out port p1
    out port p2
  }
  node "B" {
    in port q1
    in port q2
  }
  connection "A".p1 -> "B".q1
  connection "A".p2 -> "B".q2
}"#;
    let (m, diags) = common::check(text);
    assert!(diags.is_empty());
    assert_eq!(m.connections().len(), 2);
    assert_eq!(m.node_graph().named_edges(), [("A", "B")]);
}

#[test]
fn lookups_on_dosm() {
    let (m, _) = common::check(daml_core::templates::dosm_source());
    assert!(m.lookup_port("Data Sources", "toIngestion").is_ok());
    assert_eq!(
        m.lookup_port("Data Sources", "nope").unwrap_err(),
        LookupError::UnknownPort {
            node: "Data Sources".into(),
            port: "nope".into()
        }
    );
    assert_eq!(
        reachable(&m, "Visualize and Serve").unwrap(),
        ["Visualize and Serve"]
    );
    assert_eq!(
        reachable(&m, "Nope"),
        Err(AnalysisError::UnknownNode("Nope".into()))
    );
    let s = flow_summary(&m);
    assert!(s[0].source);
}

#[test]
fn single_node_and_kappa_chain() {
    let one = common::graph_model(&[("Solo", None)], &[]);
    let paths = source_sink_paths(&one, DEFAULT_PATH_CAP).unwrap();
    assert_eq!(paths.paths, [vec!["Solo"]]);

    let chain = common::graph_model(
        &[
            ("Source", None),
            ("Stream", Some("RealTime")),
            ("Store", None),
        ],
        &[("Source", "Stream"), ("Stream", "Store")],
    );
    assert_eq!(classify(&chain).kind(), PatternKind::Kappa);
}

#[test]
fn duplicate_node_names_the_node() {
    let (_, diags) =
        common::check("architecture D {\n  node \"X\" {\n  }\n  node \"X\" {\n  }\n}\n");
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].rule, Rule::E001);
    assert_eq!(diags[0].path, ["X"]);
}

#[test]
fn json_rejects_in_to_in() {
    let (m, _) = common::check(&common::read_fixture("rules/E004.daml"));
    match from_json(&to_json(&m)) {
        Err(JsonError::SchemaViolation { message, .. }) => assert!(message.starts_with("E004")),
        other => panic!("{other:?}"),
    }
}
