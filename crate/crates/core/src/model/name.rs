//! Name newtypes shared by every model entity.

use std::borrow::Borrow;
use std::fmt;

use thiserror::Error;

use crate::dsl::Keyword;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("`{0}` is a reserved keyword")]
    ReservedKeyword(String),
    #[error("node names must not be empty")]
    EmptyNodeName,
    #[error("names and labels must not contain line breaks")]
    LineBreak,
}

fn ensure_single_line(s: &str) -> Result<(), NameError> {
    if s.contains(['\n', '\r']) {
        Err(NameError::LineBreak)
    } else {
        Ok(())
    }
}

/// Bare identifier: `(letter | "_") { letter | digit | "_" }`, never a keyword.
///
/// Used for the architecture name, ports, behavior elements and connection
/// names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
        let s = s.into();
        if !is_identifier(&s) {
            return Err(NameError::InvalidIdentifier(s));
        }
        if Keyword::from_word(&s).is_some() {
            return Err(NameError::ReservedKeyword(s));
        }
        Ok(Identifier(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Lexical identifier shape, ignoring the keyword table.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Display name of a data node. Any non-empty single-line text, so labels
/// like `Data Sources` work unchanged.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeName(String);

impl NodeName {
    pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
        let s = s.into();
        if s.is_empty() {
            return Err(NameError::EmptyNodeName);
        }
        ensure_single_line(&s)?;
        Ok(NodeName(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Free-form single-line text: sources, steps, techniques, `Other(..)` kinds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
        let s = s.into();
        ensure_single_line(&s)?;
        Ok(Label(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

macro_rules! string_newtype_impls {
    ($($ty:ident),*) => {$(
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl AsRef<str> for $ty {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl Borrow<str> for $ty {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl PartialEq<str> for $ty {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $ty {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }
    )*};
}

string_newtype_impls!(Identifier, NodeName, Label);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(Identifier::new("toIngestion").is_ok());
        assert!(Identifier::new("_x9").is_ok());
        assert!(Identifier::new("JSON").is_ok());
        assert_eq!(
            Identifier::new("9x"),
            Err(NameError::InvalidIdentifier("9x".into()))
        );
        assert!(Identifier::new("").is_err());
        assert!(Identifier::new("a-b").is_err());
        assert_eq!(
            Identifier::new("node"),
            Err(NameError::ReservedKeyword("node".into()))
        );
    }

    #[test]
    fn node_names() {
        assert!(NodeName::new("Data Sources").is_ok());
        assert!(NodeName::new("quote \" and \\").is_ok());
        assert_eq!(NodeName::new(""), Err(NameError::EmptyNodeName));
        assert_eq!(NodeName::new("a\nb"), Err(NameError::LineBreak));
    }

    #[test]
    fn labels_may_be_empty() {
        assert!(Label::new("").is_ok());
        assert!(Label::new("x\r").is_err());
    }
}
