//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{code, damlc, fixture, golden, stdout, template};
use daml_core::analysis::classify_graph;
use daml_core::gen::{all_formats, all_storage, random_model, GenConfig};
use daml_core::model::ProcessingType;
use daml_core::{
    classify, from_json, parse, print, reachable, source_sink_paths, to_json, validate, Connection,
    DataNode, DataPort, Endpoint, Identifier, Level, Model, NodeGraph, NodeName, PatternClass,
    PatternKind, Rule, Severity, Template, DEFAULT_PATH_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

/// Name, arguments, expected exit code, extra check on the output.
type Case<'a> = (
    &'static str,
    Vec<std::ffi::OsString>,
    i32,
    Box<dyn Fn(&std::process::Output) -> bool + 'a>,
);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn run(n: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let verdict = match (verdict, limit) {
        (Ok(_), Some(limit)) if elapsed > limit => {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        }
        (v, _) => v,
    };
    match &verdict {
        Ok(detail) => println!(
            "PASS criterion {n}: {title} ({detail}; {} ms)",
            elapsed.as_millis()
        ),
        Err(why) => println!("FAIL criterion {n}: {title}: {why}"),
    }
    verdict.is_ok()
}

fn checked(text: &str) -> Result<(Model, Vec<daml_core::Diagnostic>), String> {
    let parsed = parse(text);
    let model = parsed
        .model
        .ok_or_else(|| format!("parse failed: {:?}", parsed.diagnostics))?;
    let diags = validate(&model, &parsed.spans);
    Ok((model, diags))
}

fn dosm_fidelity() -> Verdict {
    let names = [
        "Data Sources",
        "Data Ingestion",
        "Raw Data",
        "Real-Time Processing",
        "Batch Processing",
        "Storage and Analyze",
        "Visualize and Serve",
    ];
    let edges = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5), (5, 6)];
    let text = fs::read_to_string(template("dosm")).map_err(|e| e.to_string())?;
    let (m, diags) = checked(&text)?;
    ensure(diags.is_empty(), || format!("diagnostics: {diags:?}"))?;
    let got: Vec<&str> = m.nodes().iter().map(|n| n.name.as_str()).collect();
    ensure(got == names, || format!("nodes {got:?}"))?;
    let want: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (names[a], names[b])).collect();
    let got: Vec<(&str, &str)> = m
        .connections()
        .iter()
        .map(|c| (c.source().node.as_str(), c.target().node.as_str()))
        .collect();
    ensure(got == want, || format!("connections {got:?}"))?;
    let out = damlc([
        "analyze".as_ref(),
        template("dosm").as_os_str(),
        "--pattern".as_ref(),
    ]);
    let report = stdout(&out);
    ensure(code(&out) == 0, || format!("analyze exited {}", code(&out)))?;
    for line in [
        "pattern: Lambda",
        "fork: Data Ingestion",
        "join: Storage and Analyze",
    ] {
        ensure(report.lines().any(|l| l == line), || {
            format!("missing `{line}` in {report:?}")
        })?;
    }
    Ok("7 nodes, 7 connections, Lambda fork/join as expected".into())
}

fn round_trip_one(m: &Model, json_too: bool) -> Result<(), String> {
    let text = print(m);
    let back = parse(&text)
        .model
        .ok_or_else(|| format!("printed text does not parse:\n{text}"))?;
    ensure(&back == m, || format!("print/parse differs:\n{text}"))?;
    if json_too {
        let back = from_json(&to_json(m)).map_err(|e| e.to_string())?;
        ensure(&back == m, || "json round trip differs".into())?;
    }
    Ok(())
}

fn fixture_files() -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![common::core_dir().join("tests/fixtures")];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "daml") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

fn round_trip() -> Verdict {
    let mut fixtures = 0;
    for t in Template::ALL {
        round_trip_one(&checked(t.source())?.0, true)?;
        fixtures += 1;
    }
    for path in fixture_files() {
        let text = fs::read_to_string(&path).unwrap();
        let Ok((m, diags)) = checked(&text) else {
            continue; // deliberately unparsable fixture
        };
        let valid = !diags.iter().any(|d| d.severity == Severity::Error);
        round_trip_one(&m, valid).map_err(|e| format!("{}: {e}", path.display()))?;
        fixtures += 1;
    }
    let cfg = GenConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut formats, mut storage) = (BTreeSet::new(), BTreeSet::new());
    let (mut min_nodes, mut max_nodes, mut max_conns, mut max_elems) = (usize::MAX, 0, 0, 0);
    let generated = 250;
    for _ in 0..generated {
        let m = random_model(&mut rng, &cfg);
        round_trip_one(&m, true)?;
        min_nodes = min_nodes.min(m.nodes().len());
        max_nodes = max_nodes.max(m.nodes().len());
        max_conns = max_conns.max(m.connections().len());
        for n in m.nodes() {
            if let Some(r) = &n.representation {
                formats.extend(r.formats.iter().map(|f| (f.category(), f.kind_str())));
                storage.extend(r.storage.iter().map(|s| (s.family(), s.kind_str())));
            }
            max_elems = max_elems.max(n.behavior.as_ref().map_or(0, |b| b.elements.len()));
        }
    }
    ensure(formats.len() == all_formats().len(), || {
        format!("format kinds covered: {}", formats.len())
    })?;
    ensure(storage.len() == all_storage().len(), || {
        format!("storage kinds covered: {}", storage.len())
    })?;
    ensure(min_nodes == 0 && max_nodes == 8, || {
        format!("node counts {min_nodes}..{max_nodes}")
    })?;
    ensure(max_conns <= 12 && max_elems <= 6, || {
        "generator exceeded its bounds".into()
    })?;
    Ok(format!(
        "{fixtures} fixtures, {generated} generated models, 0 failures"
    ))
}

fn rule_isolation() -> Verdict {
    let mut passed = 0;
    let rules: Vec<Rule> = Rule::ALL
        .iter()
        .copied()
        .filter(|r| r.id().starts_with(['E', 'W']))
        .collect();
    for rule in &rules {
        let text = fs::read_to_string(fixture(&format!("rules/{rule}.daml")))
            .map_err(|e| e.to_string())?;
        let (_, diags) = checked(&text)?;
        let found: Vec<Rule> = diags.iter().map(|d| d.rule).collect();
        let stray: Vec<&Rule> = found
            .iter()
            .filter(|r| {
                *r != rule
                    && (rule.severity() == Severity::Warning || r.severity() == Severity::Error)
            })
            .collect();
        ensure(found.contains(rule) && stray.is_empty(), || {
            format!("{rule}: got {found:?}")
        })?;
        passed += 1;
    }
    Ok(format!("{passed}/{} fixtures", rules.len()))
}

fn model_of(names: &[String], edges: &[(usize, usize)]) -> Model {
    let mut nodes: Vec<DataNode> = names
        .iter()
        .map(|n| DataNode::new(NodeName::new(n.as_str()).unwrap()))
        .collect();
    let mut conns = Vec::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        let (o, i) = (
            Identifier::new(format!("o{k}")).unwrap(),
            Identifier::new(format!("i{k}")).unwrap(),
        );
        nodes[a].ports.push(DataPort::output(o.clone()));
        nodes[b].ports.push(DataPort::input(i.clone()));
        conns.push(
            Connection::new(
                None,
                Endpoint::new(nodes[a].name.clone(), o),
                Endpoint::new(nodes[b].name.clone(), i),
            )
            .unwrap(),
        );
    }
    Model::new(Identifier::new("G").unwrap(), Level::Hla, nodes, conns).unwrap()
}

fn shuffled_names<R: Rng>(rng: &mut R, n: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..n)
        .map(|i| format!("{}", (b'a' + i as u8) as char))
        .collect();
    for i in (1..n).rev() {
        names.swap(i, rng.random_range(0..=i));
    }
    names
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut discrepancies = 0;
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .filter(|_| rng.random_bool(0.2))
            .collect();
        let names = shuffled_names(&mut rng, n);
        let m = model_of(&names, &edges);
        for s in 0..n {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for &(a, b) in &edges {
                    if seen[a] && !seen[b] {
                        seen[b] = true;
                        changed = true;
                    }
                }
            }
            let want: Vec<String> = (0..n)
                .filter(|&v| seen[v])
                .map(|v| names[v].clone())
                .collect();
            if reachable(&m, &names[s]).unwrap() != want {
                discrepancies += 1;
            }
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(1..=8);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(0.35) {
                    edges.push((order[i], order[j]));
                }
            }
        }
        let names = shuffled_names(&mut rng, n);
        let m = model_of(&names, &edges);
        let adj = |a: usize, b: usize| edges.contains(&(a, b));
        let indeg = |v: usize| (0..n).filter(|&u| adj(u, v)).count();
        let mut want: Vec<Vec<String>> = Vec::new();
        let mut stack: Vec<Vec<usize>> =
            (0..n).filter(|&v| indeg(v) == 0).map(|v| vec![v]).collect();
        while let Some(p) = stack.pop() {
            let v = *p.last().unwrap();
            let next: Vec<usize> = (0..n).filter(|&u| adj(v, u)).collect();
            if next.is_empty() {
                want.push(p.iter().map(|&x| names[x].clone()).collect());
            }
            for u in next {
                let mut q = p.clone();
                q.push(u);
                stack.push(q);
            }
        }
        want.sort();
        let got = source_sink_paths(&m, DEFAULT_PATH_CAP).unwrap();
        if got.truncated || got.paths != want {
            discrepancies += 1;
        }
    }
    ensure(discrepancies == 0, || {
        format!("{discrepancies} discrepancies")
    })?;
    Ok("100 digraphs, 100 DAGs, 0 discrepancies".into())
}

/// `nodes` is space separated, `Name:B` / `Name:R` marks Batch / RealTime;
/// `edges` is space separated `A>B`.
const LABELLED: &[(&str, &str, PatternKind)] = &[
    (
        "F Bt:B Rt:R J S",
        "F>Bt F>Rt Bt>J Rt>J J>S",
        PatternKind::Lambda,
    ),
    ("F B1:B B2:B J", "F>B1 F>B2 B1>J B2>J", PatternKind::Unknown),
    ("A:B Bx:B C:B", "A>Bx Bx>C", PatternKind::Pipeline),
    ("In Proc:R Out", "In>Proc Proc>Out", PatternKind::Kappa),
    (
        "Src Proc:R S1 S2",
        "Src>Proc Proc>S1 Proc>S2",
        PatternKind::Kappa,
    ),
    ("Only", "", PatternKind::Pipeline),
    ("Only:R", "", PatternKind::Kappa),
    ("", "", PatternKind::Unknown),
    ("A:R Bx", "A>Bx Bx>A", PatternKind::Unknown),
    ("E T L Rep", "E>T T>L L>Rep", PatternKind::Pipeline),
    ("F:B M Rt:R J", "F>M F>Rt M>J Rt>J", PatternKind::Unknown),
    ("F Bt:B Rt:R J", "F>Bt Bt>Rt Rt>J F>J", PatternKind::Unknown),
    ("F R1:R R2:R J", "F>R1 F>R2 R1>J R2>J", PatternKind::Kappa),
    ("A:B Bx C:R D", "A>Bx C>D", PatternKind::Unknown),
    (
        "Src Ing Bt:B Rt:R Serve Dash Api",
        "Src>Ing Ing>Bt Ing>Rt Bt>Serve Rt>Serve Serve>Dash Serve>Api",
        PatternKind::Lambda,
    ),
    (
        "S1 S2 Bt:B Rt:R J",
        "S1>Bt S2>Rt Bt>J Rt>J",
        PatternKind::Unknown,
    ),
    ("A Bx C", "A>Bx A>C", PatternKind::Unknown),
    ("A:R Bx:B C", "A>Bx Bx>C", PatternKind::Pipeline),
    (
        "F B1:B B2:B Rt:R J",
        "F>B1 B1>B2 B2>J F>Rt Rt>J",
        PatternKind::Lambda,
    ),
    ("S1 S2 Rt:R K", "S1>Rt S2>Rt Rt>K", PatternKind::Kappa),
    ("A Bx C D", "A>Bx Bx>C Bx>D", PatternKind::Unknown),
];

fn labelled_class(nodes: &str, edges: &str) -> PatternClass {
    let mut names = Vec::new();
    let mut procs = Vec::new();
    for tok in nodes.split_whitespace() {
        let (name, p) = tok
            .split_once(':')
            .map_or((tok, None), |(n, p)| (n, Some(p)));
        names.push(name.to_string());
        procs.push(match p {
            Some("B") => Some(ProcessingType::Batch),
            Some("R") => Some(ProcessingType::RealTime),
            _ => None,
        });
    }
    let idx = |n: &str| names.iter().position(|x| x == n).unwrap();
    let edges: Vec<(usize, usize)> = edges
        .split_whitespace()
        .map(|e| {
            let (a, b) = e.split_once('>').unwrap();
            (idx(a), idx(b))
        })
        .collect();
    classify_graph(&NodeGraph::from_edges(names.clone(), edges), &procs)
}

fn classifier_ground_truth() -> Verdict {
    let want = [
        (Template::Dosm, PatternKind::Lambda),
        (Template::Lambda, PatternKind::Lambda),
        (Template::Kappa, PatternKind::Kappa),
        (Template::Pipeline, PatternKind::Pipeline),
    ];
    for (t, kind) in want {
        let got = classify(&checked(t.source())?.0).kind();
        ensure(got == kind, || format!("template {t}: {got}"))?;
    }
    let mut wrong = Vec::new();
    for (nodes, edges, kind) in LABELLED {
        let got = labelled_class(nodes, edges).kind();
        if got != *kind {
            wrong.push(format!("[{nodes}] want {kind}, got {got}"));
        }
    }
    ensure(wrong.is_empty(), || wrong.join("; "))?;
    let kinds: HashSet<PatternKind> = LABELLED.iter().map(|c| c.2).collect();
    ensure(kinds.len() == 4, || "labels should span all classes".into())?;
    Ok(format!(
        "4 templates, {}/{} labelled graphs",
        LABELLED.len(),
        LABELLED.len()
    ))
}

fn determinism() -> Verdict {
    for (format, name) in [("dot", "dosm.dot"), ("json", "dosm.json")] {
        let runs: Vec<Vec<u8>> = (0..2)
            .map(|_| {
                damlc([
                    "export".as_ref(),
                    template("dosm").as_os_str(),
                    "--format".as_ref(),
                    format.as_ref(),
                ])
                .stdout
            })
            .collect();
        ensure(runs[0] == runs[1], || format!("{format}: runs differ"))?;
        ensure(runs[0] == golden(name), || {
            format!("{format}: differs from golden {name}")
        })?;
    }
    Ok("dot and json byte-identical and equal to golden files".into())
}

fn cli_contract() -> Verdict {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let no_file = tmp.path().join("e001.dot");
    let init_dir = tmp.path().join("d");
    let first_init = damlc([
        "init".as_ref(),
        "--template".as_ref(),
        "kappa".as_ref(),
        init_dir.as_os_str(),
    ]);
    ensure(code(&first_init) == 0, || "initial init failed".into())?;
    let dosm = template("dosm");
    let cases: Vec<Case> = vec![
        (
            "check dosm",
            vec!["check".into(), dosm.clone().into()],
            0,
            Box::new(|o| o.stdout.is_empty()),
        ),
        (
            "check E004",
            vec!["check".into(), fixture("rules/E004.daml").into()],
            1,
            Box::new(|o| {
                let s = stdout(o);
                s.lines().count() == 1 && s.contains("E004")
            }),
        ),
        (
            "check missing",
            vec!["check".into(), tmp.path().join("missing.daml").into()],
            3,
            Box::new(|_| true),
        ),
        (
            "fmt --check canonical",
            vec!["fmt".into(), "--check".into(), dosm.clone().into()],
            0,
            Box::new(|_| true),
        ),
        (
            "fmt --check re-indented",
            vec![
                "fmt".into(),
                "--check".into(),
                fixture("cli/reindented.daml").into(),
            ],
            1,
            Box::new(|_| true),
        ),
        (
            "fmt broken",
            vec!["fmt".into(), fixture("cli/broken.daml").into()],
            2,
            Box::new(|_| true),
        ),
        (
            "export E001",
            vec![
                "export".into(),
                fixture("rules/E001.daml").into(),
                "--format".into(),
                "dot".into(),
                "--out".into(),
                no_file.clone().into(),
            ],
            1,
            Box::new(|_| !no_file.exists()),
        ),
        (
            "analyze --reachability Nope",
            vec![
                "analyze".into(),
                dosm.clone().into(),
                "--reachability".into(),
                "Nope".into(),
            ],
            3,
            Box::new(|_| true),
        ),
        (
            "init into existing file",
            vec![
                "init".into(),
                "--template".into(),
                "kappa".into(),
                init_dir.clone().into(),
            ],
            3,
            Box::new(|_| true),
        ),
    ];
    let total = cases.len();
    let mut failures = Vec::new();
    for (name, args, want, extra) in cases {
        let out = damlc(args);
        if code(&out) != want || !extra(&out) {
            failures.push(format!("{name}: exit {} (want {want})", code(&out)));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{total}/{total} exit-code cases"))
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "DOSM fidelity", Some(secs(1)), dosm_fidelity),
        run(2, "round-trip", Some(secs(10)), round_trip),
        run(3, "rule isolation", None, rule_isolation),
        run(4, "oracle equivalence", Some(secs(10)), oracle_equivalence),
        run(5, "classifier ground truth", None, classifier_ground_truth),
        run(6, "export determinism", None, determinism),
        run(7, "CLI exit-code contract", None, cli_contract),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
