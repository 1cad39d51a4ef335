//! Published rule catalog. Ids are stable; descriptions back the `explain`
//! lookup.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Severity;

macro_rules! rules {
    ($($id:ident => $sev:ident, $desc:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Rule {
            $($id,)*
        }

        impl Rule {
            pub const ALL: &'static [Rule] = &[$(Rule::$id,)*];

            pub fn id(self) -> &'static str {
                match self {
                    $(Rule::$id => stringify!($id),)*
                }
            }

            pub fn severity(self) -> Severity {
                match self {
                    $(Rule::$id => Severity::$sev,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(Rule::$id => $desc,)*
                }
            }
        }
    };
}

rules! {
    E001 => Error, "Duplicate node name: node names must be unique within an architecture.";
    E002 => Error, "Duplicate port name: port names must be unique within a node.";
    E003 => Error, "Connection endpoint unresolved: the named node or port does not exist.";
    E004 => Error, "Connection direction: a connection must go from an out port to an in port.";
    E005 => Error, "Connection endpoints must belong to two different components; a connection is a unidirectional channel between ports of two different components.";
    E006 => Error, "Port binding: a receive event must name an in port of its node and a send action must name an out port of its node.";
    E007 => Error, "Link endpoint unresolved: a link must name elements of the same behavior.";
    E008 => Error, "Behavior link cycle: links order the actions of a node and must form an acyclic graph.";
    E009 => Error, "Link targets an event: events are entry points and cannot follow another element.";
    E010 => Error, "Duplicate behavior element name within a node.";
    L001 => Error, "String literal is not terminated before the end of the line.";
    L002 => Error, "Character is not part of the language.";
    L003 => Error, "Invalid escape sequence in string literal; only \\\" and \\\\ are allowed.";
    P001 => Error, "Syntax error: the parser expected a different token here.";
    P002 => Error, "A construct violates a local model invariant (empty node name, duplicate format or store task, self link, repeated representation or behavior block).";
    W101 => Warning, "Unreachable action: the node has events but this action has no incoming link.";
    W102 => Warning, "Unused port: no connection uses this port.";
    W103 => Warning, "Store action without storage: the node has a Store action but its representation declares no storage technology.";
    W104 => Warning, "Format mismatch: both ends of the connection declare formats and they share none.";
    W105 => Warning, "Node-level cycle: data flows in a loop between nodes.";
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .iter()
            .copied()
            .find(|r| r.id() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// One catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleInfo {
    pub rule: Rule,
    pub severity: Severity,
    pub description: &'static str,
}

/// The full catalog in id order.
pub fn catalog() -> Vec<RuleInfo> {
    Rule::ALL
        .iter()
        .map(|&rule| RuleInfo {
            rule,
            severity: rule.severity(),
            description: rule.description(),
        })
        .collect()
}

/// Catalog description for a rule id.
pub fn explain(rule: &str) -> Result<&'static str, UnknownRule> {
    rule.parse::<Rule>().map(Rule::description)
}
