use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use daml_core::analysis::LambdaEvidence;
use daml_core::dsl::tokenize;
use daml_core::validator::has_errors;
use daml_core::{
    classify, flow_summary, format_source, parse_named, reachable, to_dot, to_json, validate,
    AnalysisError, Diagnostic, DotOptions, Model, PatternClass, Severity, Template,
};

use crate::{
    style, AnalyzeArgs, CheckArgs, DiagnosticsFormat, ExportArgs, ExportFormat, FmtArgs, InitArgs,
    Status,
};

fn read(path: &Path) -> Result<String, Status> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("damlc: cannot read {}: {e}", path.display());
        Status::Usage
    })
}

fn render_all(diags: &[Diagnostic], file: &str, color: bool) -> String {
    let mut out = String::new();
    for d in diags {
        out.push_str(&style::diagnostic_line(d.render(file), d.severity, color));
        out.push('\n');
    }
    out
}

/// Reads and parses `path`; on failure reports to stderr and returns the
/// exit status.
fn load(path: &Path) -> Result<(String, Model, Vec<Diagnostic>), Status> {
    let text = read(path)?;
    let file = path.display().to_string();
    let parsed = parse_named(&text, &file);
    let Some(model) = parsed.model else {
        eprint!("{}", render_all(&parsed.diagnostics, &file, false));
        return Err(Status::Syntax);
    };
    let diags = validate(&model, &parsed.spans);
    Ok((text, model, diags))
}

/// [`load`] plus the validity gate shared by export and analyze: errors
/// stop the command, warnings are noted on stderr.
fn load_valid(path: &Path) -> Result<Model, Status> {
    let (_, model, diags) = load(path)?;
    eprint!("{}", render_all(&diags, &path.display().to_string(), false));
    if has_errors(&diags) {
        return Err(Status::Invalid);
    }
    Ok(model)
}

struct Report {
    stdout: String,
    stderr: String,
    status: Status,
}

fn check_file(path: &Path, args: &CheckArgs, color: bool) -> Report {
    let file = path.display().to_string();
    let mut report = Report {
        stdout: String::new(),
        stderr: String::new(),
        status: Status::Ok,
    };
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            report.stderr = format!("damlc: cannot read {file}: {e}\n");
            report.status = Status::Usage;
            return report;
        }
    };
    let parsed = parse_named(&text, &file);
    let diags = match &parsed.model {
        Some(model) => validate(model, &parsed.spans),
        None => parsed.diagnostics.clone(),
    };
    report.status = if parsed.model.is_none() {
        Status::Syntax
    } else if has_errors(&diags)
        || (args.deny_warnings && diags.iter().any(|d| d.severity == Severity::Warning))
    {
        Status::Invalid
    } else {
        Status::Ok
    };
    report.stdout = match args.diagnostics {
        DiagnosticsFormat::Text => render_all(&diags, &file, color),
        DiagnosticsFormat::Json => diags.iter().map(|d| d.to_json_line(&file) + "\n").collect(),
    };
    report
}

/// Checks every file on a small worker pool; output is buffered per file
/// and emitted in input order.
pub fn check(args: &CheckArgs) -> Status {
    let color = args.diagnostics == DiagnosticsFormat::Text && style::enabled();
    let slots: Vec<OnceLock<Report>> = args.files.iter().map(|_| OnceLock::new()).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(args.files.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = args.files.get(i) else { break };
                let _ = slots[i].set(check_file(path, args, color));
            });
        }
    });
    let mut status = Status::Ok;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for slot in slots {
        let report = slot.into_inner().expect("every file was checked");
        let _ = out.write_all(report.stdout.as_bytes());
        let _ = out.flush();
        eprint!("{}", report.stderr);
        status = status.worst(report.status);
    }
    status
}

/// True when a `//` comment appears after the first token; those are not
/// kept by the formatter.
fn has_inner_comments(text: &str) -> bool {
    let tokens = tokenize(text, "").tokens;
    tokens
        .windows(2)
        .any(|w| text[w[0].span.byte_range().end..w[1].span.byte_range().start].contains("//"))
        || tokens
            .last()
            .is_some_and(|t| text[t.span.byte_range().end..].contains("//"))
}

pub fn fmt(args: &FmtArgs) -> Status {
    let (text, model, _) = match load(&args.file) {
        Ok(loaded) => loaded,
        Err(status) => return status,
    };
    let canonical = format_source(&text, &model);
    let changed = canonical != text;
    if changed && (args.write || !args.check) && has_inner_comments(&text) {
        eprintln!("note: comments after the file header are not preserved");
    }
    if args.write && changed {
        if let Err(e) = fs::write(&args.file, &canonical) {
            eprintln!("damlc: cannot write {}: {e}", args.file.display());
            return Status::Usage;
        }
    }
    if args.check {
        if changed {
            eprintln!("{}: not in canonical form", args.file.display());
            return Status::Invalid;
        }
        return Status::Ok;
    }
    if !args.write {
        print!("{canonical}");
    }
    Status::Ok
}

pub fn export(args: &ExportArgs) -> Status {
    let model = match load_valid(&args.file) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let text = match args.format {
        ExportFormat::Dot => to_dot(&model, &DotOptions::default()),
        ExportFormat::Json => to_json(&model) + "\n",
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("damlc: cannot write {}: {e}", path.display());
                return Status::Usage;
            }
        }
        None => print!("{text}"),
    }
    Status::Ok
}

fn arrow_path(names: &[String]) -> String {
    names.join(" -> ")
}

fn pattern_report(model: &Model) -> String {
    let class = classify(model);
    let mut out = format!("pattern: {}\n", class.kind());
    match class {
        PatternClass::Lambda(LambdaEvidence {
            fork,
            join,
            batch_path,
            realtime_path,
        }) => {
            let _ = writeln!(out, "fork: {fork}");
            let _ = writeln!(out, "join: {join}");
            let _ = writeln!(out, "batch path: {}", arrow_path(&batch_path));
            let _ = writeln!(out, "realtime path: {}", arrow_path(&realtime_path));
        }
        PatternClass::Kappa { paths } => {
            for p in paths {
                let _ = writeln!(out, "path: {}", arrow_path(&p));
            }
        }
        PatternClass::Pipeline { path } => {
            let _ = writeln!(out, "path: {}", arrow_path(&path));
        }
        PatternClass::Unknown => {}
    }
    out
}

fn summary_report(model: &Model) -> String {
    let header = [
        "node",
        "in",
        "out",
        "role",
        "processing",
        "storage",
        "formats",
    ];
    let mut rows: Vec<[String; 7]> = vec![header.map(String::from)];
    for n in flow_summary(model) {
        let roles: Vec<&str> = [
            (n.source, "source"),
            (n.sink, "sink"),
            (n.serving, "serving"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        let or_dash = |s: String| if s.is_empty() { "-".to_string() } else { s };
        rows.push([
            n.name,
            n.in_degree.to_string(),
            n.out_degree.to_string(),
            or_dash(roles.join(",")),
            or_dash(
                n.processing
                    .map(|p| p.as_str().to_string())
                    .unwrap_or_default(),
            ),
            or_dash(n.storage.map(|s| s.to_string()).unwrap_or_default()),
            or_dash(
                n.formats
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
        ]);
    }
    let mut widths = [0usize; 7];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (i, (cell, w)) in row.iter().zip(widths).enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                let _ = write!(line, "{cell}{}  ", " ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn analyze(args: &AnalyzeArgs) -> Status {
    let model = match load_valid(&args.file) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let mut sections = Vec::new();
    let nothing_requested = !args.pattern && args.reachability.is_none() && !args.summary;
    if args.pattern || nothing_requested {
        sections.push(pattern_report(&model));
    }
    if let Some(node) = &args.reachability {
        match reachable(&model, node) {
            Ok(names) => sections.push(names.iter().map(|n| format!("{n}\n")).collect()),
            Err(AnalysisError::UnknownNode(n)) => {
                eprintln!("damlc: no node named {n:?} in {}", args.file.display());
                return Status::Usage;
            }
            Err(e) => {
                eprintln!("damlc: {e}");
                return Status::Usage;
            }
        }
    }
    if args.summary {
        sections.push(summary_report(&model));
    }
    print!("{}", sections.join("\n"));
    Status::Ok
}

pub fn init(args: &InitArgs) -> Status {
    let template = Template::from(args.template);
    if let Err(e) = fs::create_dir_all(&args.dir) {
        eprintln!("damlc: cannot create {}: {e}", args.dir.display());
        return Status::Usage;
    }
    let target = args.dir.join(template.file_name());
    let file = fs::OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(&target);
    let mut file = match file {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
            eprintln!(
                "damlc: {} already exists; not overwriting",
                target.display()
            );
            return Status::Usage;
        }
        Err(e) => {
            eprintln!("damlc: cannot create {}: {e}", target.display());
            return Status::Usage;
        }
    };
    if let Err(e) = file.write_all(template.source().as_bytes()) {
        eprintln!("damlc: cannot write {}: {e}", target.display());
        return Status::Usage;
    }
    eprintln!("created {}", target.display());
    Status::Ok
}
