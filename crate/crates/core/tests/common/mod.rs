#![allow(dead_code)]

use std::path::PathBuf;

use daml_core::dsl::quote;
use daml_core::{parse, validate, Diagnostic, Model};
use rand::Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn read_fixture(rel: &str) -> String {
    let path = fixture_dir().join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Parses and validates; panics on parse errors.
pub fn check(text: &str) -> (Model, Vec<Diagnostic>) {
    let parsed = parse(text);
    let model = parsed
        .model
        .unwrap_or_else(|| panic!("parse failed: {:?}", parsed.diagnostics));
    let diags = validate(&model, &parsed.spans);
    (model, diags)
}

/// A model whose node graph is exactly `edges` over `nodes`, each node
/// optionally tagged with a processing type literal.
pub fn graph_model(nodes: &[(&str, Option<&str>)], edges: &[(&str, &str)]) -> Model {
    let mut text = String::from("architecture G level HLA {\n");
    for (name, processing) in nodes {
        text.push_str(&format!("  node {} {{\n", quote(name)));
        for (k, (a, b)) in edges.iter().enumerate() {
            if a == name {
                text.push_str(&format!("    out port o{k}\n"));
            }
            if b == name {
                text.push_str(&format!("    in port i{k}\n"));
            }
        }
        if let Some(p) = processing {
            text.push_str(&format!(
                "    representation {{\n      processing: {p};\n    }}\n"
            ));
        }
        text.push_str("  }\n");
    }
    for (k, (a, b)) in edges.iter().enumerate() {
        text.push_str(&format!(
            "  connection {}.o{k} -> {}.i{k}\n",
            quote(a),
            quote(b)
        ));
    }
    text.push_str("}\n");
    let (model, diags) = check(&text);
    assert!(
        diags.iter().all(|d| !d.is_error()),
        "graph model has errors: {diags:?}"
    );
    model
}

/// Random digraph on `n` vertices, self-loops excluded.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(density) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Random DAG: edges only go from a lower to a higher position of a
/// random permutation, so vertex indices are not a topological order.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    edges
}
