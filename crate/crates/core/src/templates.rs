//! Bundled template models, written out by `damlc init`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    Dosm,
    Lambda,
    Kappa,
    Pipeline,
}

impl Template {
    pub const ALL: [Template; 4] = [
        Template::Dosm,
        Template::Lambda,
        Template::Kappa,
        Template::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Template::Dosm => "dosm",
            Template::Lambda => "lambda",
            Template::Kappa => "kappa",
            Template::Pipeline => "pipeline",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.daml", self.name())
    }

    pub fn source(self) -> &'static str {
        match self {
            Template::Dosm => include_str!("../templates/dosm.daml"),
            Template::Lambda => include_str!("../templates/lambda.daml"),
            Template::Kappa => include_str!("../templates/kappa.daml"),
            Template::Pipeline => include_str!("../templates/pipeline.daml"),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Template {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Template::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown template `{s}`"))
    }
}

/// Text of the bundled DOSM reference model.
pub fn dosm_source() -> &'static str {
    Template::Dosm.source()
}
