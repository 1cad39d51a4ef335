//! Textual syntax: lexer, parser and canonical printer.

mod lexer;
mod parser;
mod printer;
mod span;

pub use lexer::{tokenize, Keyword, Lexed, Token, TokenKind};
pub use parser::{parse, parse_named, ParseResult};
pub use printer::{format_literal, format_source, header_comments, print, quote};
pub use span::{EntityId, Position, SourceSpan, SpanMap};
