//! ANSI styling for terminal output. Off unless stdout is a terminal, and
//! always off with `DAMLC_NO_COLOR=1`.

use std::io::IsTerminal;

use daml_core::Severity;

pub fn enabled() -> bool {
    std::env::var_os("DAMLC_NO_COLOR").is_none_or(|v| v != "1") && std::io::stdout().is_terminal()
}

/// Colours the leading severity word of a rendered diagnostic.
pub fn diagnostic_line(line: String, severity: Severity, color: bool) -> String {
    if !color {
        return line;
    }
    let code = match severity {
        Severity::Error => "31",
        Severity::Warning => "33",
    };
    let word = severity.as_str();
    match line.strip_prefix(word) {
        Some(rest) => format!("\x1b[1;{code}m{word}\x1b[0m{rest}"),
        None => line,
    }
}
