use std::fmt;
use std::sync::Arc;

use super::span::{Position, SourceSpan};
use crate::validator::{Diagnostic, Rule};

macro_rules! keywords {
    ($($variant:ident => $word:literal,)*) => {
        /// Reserved lowercase words. Taxonomy literals (`JSON`, `Batch`, ...)
        /// are ordinary identifiers matched by the parser.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Keyword {
            $($variant,)*
        }

        impl Keyword {
            pub const ALL: &'static [Keyword] = &[$(Keyword::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Keyword::$variant => $word,)*
                }
            }

            pub fn from_word(word: &str) -> Option<Keyword> {
                match word {
                    $($word => Some(Keyword::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

keywords! {
    Architecture => "architecture",
    Level => "level",
    Node => "node",
    In => "in",
    Out => "out",
    Port => "port",
    Representation => "representation",
    Formats => "formats",
    Processing => "processing",
    Storage => "storage",
    Location => "location",
    Behavior => "behavior",
    Event => "event",
    Receive => "receive",
    External => "external",
    Action => "action",
    Generate => "generate",
    Ingest => "ingest",
    Process => "process",
    Store => "store",
    Analyze => "analyze",
    Consume => "consume",
    Send => "send",
    Via => "via",
    Source => "source",
    Format => "format",
    Steps => "steps",
    Subprocesses => "subprocesses",
    Tasks => "tasks",
    Technique => "technique",
    Mode => "mode",
    Link => "link",
    Connection => "connection",
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident,
    Str,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Dot,
    Arrow,
}

impl TokenKind {
    pub fn describe(self) -> String {
        match self {
            TokenKind::Keyword(k) => format!("`{k}`"),
            TokenKind::Ident => "identifier".into(),
            TokenKind::Str => "string".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Arrow => "`->`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Exact source text, quotes and escapes included for strings.
    pub lexeme: String,
    pub span: SourceSpan,
}

impl Token {
    /// Decoded contents of a string token.
    pub fn string_value(&self) -> String {
        debug_assert_eq!(self.kind, TokenKind::Str);
        let inner = &self.lexeme[1..self.lexeme.len() - 1];
        let mut out = String::with_capacity(inner.len());
        let mut chars = inner.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                match chars.next() {
                    Some(n) => out.push(n),
                    None => out.push('\\'),
                }
            } else {
                out.push(c);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexed {
    pub tokens: Vec<Token>,
    pub diagnostics: Vec<Diagnostic>,
}

struct Cursor<'a> {
    text: &'a str,
    file: Arc<str>,
    pos: Position,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos.offset..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.text[self.pos.offset..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: Position) -> SourceSpan {
        SourceSpan::new(self.file.clone(), start, self.pos)
    }
}

/// Splits `text` into tokens. Never fails: bad input produces diagnostics
/// and lexing resumes after the offending character or line.
pub fn tokenize(text: &str, file: &str) -> Lexed {
    let mut cur = Cursor {
        text,
        file: Arc::from(file),
        pos: Position::START,
    };
    let mut out = Lexed::default();
    while let Some(c) = cur.peek() {
        let start = cur.pos;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '/' && cur.peek2() == Some('/') {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let kind = match c {
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ':' => Some(TokenKind::Colon),
            ';' => Some(TokenKind::Semi),
            ',' => Some(TokenKind::Comma),
            '.' => Some(TokenKind::Dot),
            _ => None,
        };
        if let Some(kind) = kind {
            cur.bump();
            push(&mut out, &cur, kind, start);
            continue;
        }
        if c == '-' && cur.peek2() == Some('>') {
            cur.bump();
            cur.bump();
            push(&mut out, &cur, TokenKind::Arrow, start);
            continue;
        }
        if c == '"' {
            lex_string(&mut cur, &mut out, start);
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while cur.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                cur.bump();
            }
            let word = &text[start.offset..cur.pos.offset];
            let kind = Keyword::from_word(word).map_or(TokenKind::Ident, TokenKind::Keyword);
            push(&mut out, &cur, kind, start);
            continue;
        }
        cur.bump();
        out.diagnostics.push(
            Diagnostic::new(Rule::L002, format!("illegal character {c:?}"))
                .with_span(Some(cur.span_from(start))),
        );
    }
    out
}

fn push(out: &mut Lexed, cur: &Cursor<'_>, kind: TokenKind, start: Position) {
    out.tokens.push(Token {
        kind,
        lexeme: cur.text[start.offset..cur.pos.offset].to_string(),
        span: cur.span_from(start),
    });
}

fn lex_string(cur: &mut Cursor<'_>, out: &mut Lexed, start: Position) {
    cur.bump();
    loop {
        match cur.peek() {
            None | Some('\n') | Some('\r') => {
                out.diagnostics.push(
                    Diagnostic::new(Rule::L001, "unterminated string literal")
                        .with_span(Some(cur.span_from(start))),
                );
                return;
            }
            Some('"') => {
                cur.bump();
                push(out, cur, TokenKind::Str, start);
                return;
            }
            Some('\\') => {
                let esc_start = cur.pos;
                cur.bump();
                match cur.peek() {
                    Some('"') | Some('\\') => {
                        cur.bump();
                    }
                    other => {
                        if other.is_some_and(|c| c != '\n' && c != '\r') {
                            cur.bump();
                        }
                        out.diagnostics.push(
                            Diagnostic::new(
                                Rule::L003,
                                "invalid escape sequence; only \\\" and \\\\ are allowed",
                            )
                            .with_span(Some(cur.span_from(esc_start))),
                        );
                    }
                }
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}
