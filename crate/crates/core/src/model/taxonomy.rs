//! Closed and open taxonomies attached to a data representation.
//!
//! Category/kind legality is enforced by the nested enums: a `RelationalDB`
//! format can only be built under `Structured`, a `Column` store only under
//! `NoSQL`. `from_parts` is the string-level entry point used by importers
//! and rejects every illegal pair.

use std::fmt;

use thiserror::Error;

use super::name::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("unknown {what} `{value}`")]
    Unknown { what: &'static str, value: String },
    #[error("kind `{kind}` is not legal under `{parent}`")]
    IllegalKind { parent: String, kind: String },
    #[error("kind `{0}` requires a label")]
    MissingLabel(String),
    #[error("kind `{0}` does not take a label")]
    UnexpectedLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Level {
    #[default]
    Hla,
    Lla,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::Hla, Level::Lla];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Hla => "HLA",
            Level::Lla => "LLA",
        }
    }

    pub fn from_literal(s: &str) -> Option<Level> {
        Level::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcessingType {
    Batch,
    RealTime,
}

impl ProcessingType {
    pub const ALL: [ProcessingType; 2] = [ProcessingType::Batch, ProcessingType::RealTime];

    pub fn as_str(self) -> &'static str {
        match self {
            ProcessingType::Batch => "Batch",
            ProcessingType::RealTime => "RealTime",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Cloud,
    Local,
}

impl Location {
    pub const ALL: [Location; 2] = [Location::Cloud, Location::Local];

    pub fn as_str(self) -> &'static str {
        match self {
            Location::Cloud => "Cloud",
            Location::Local => "Local",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormatCategory {
    Structured,
    SemiStructured,
    Unstructured,
}

impl FormatCategory {
    pub const ALL: [FormatCategory; 3] = [
        FormatCategory::Structured,
        FormatCategory::SemiStructured,
        FormatCategory::Unstructured,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormatCategory::Structured => "Structured",
            FormatCategory::SemiStructured => "SemiStructured",
            FormatCategory::Unstructured => "Unstructured",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructuredKind {
    RelationalDb,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemiStructuredKind {
    Email,
    Sms,
    Csv,
    Json,
    Xml,
    Other(Label),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnstructuredKind {
    GpsData,
    Multimedia,
    OfficeFiles,
    Other(Label),
}

/// A data format, always paired with a kind legal for its category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataFormat {
    Structured(StructuredKind),
    SemiStructured(SemiStructuredKind),
    Unstructured(UnstructuredKind),
}

/// Every kind literal for formats, across all categories.
pub const FORMAT_KIND_LITERALS: [&str; 11] = [
    "RelationalDB",
    "Email",
    "SMS",
    "CSV",
    "JSON",
    "XML",
    "GPSData",
    "Multimedia",
    "OfficeFiles",
    "Other",
    // not legal anywhere; keeps the cross product honest
    "Parquet",
];

impl DataFormat {
    pub const RELATIONAL_DB: DataFormat = DataFormat::Structured(StructuredKind::RelationalDb);
    pub const JSON: DataFormat = DataFormat::SemiStructured(SemiStructuredKind::Json);

    pub fn category(&self) -> FormatCategory {
        match self {
            DataFormat::Structured(_) => FormatCategory::Structured,
            DataFormat::SemiStructured(_) => FormatCategory::SemiStructured,
            DataFormat::Unstructured(_) => FormatCategory::Unstructured,
        }
    }

    /// Kind literal as written in the DSL and the interchange format.
    pub fn kind_str(&self) -> &'static str {
        use SemiStructuredKind as S;
        use UnstructuredKind as U;
        match self {
            DataFormat::Structured(StructuredKind::RelationalDb) => "RelationalDB",
            DataFormat::SemiStructured(k) => match k {
                S::Email => "Email",
                S::Sms => "SMS",
                S::Csv => "CSV",
                S::Json => "JSON",
                S::Xml => "XML",
                S::Other(_) => "Other",
            },
            DataFormat::Unstructured(k) => match k {
                U::GpsData => "GPSData",
                U::Multimedia => "Multimedia",
                U::OfficeFiles => "OfficeFiles",
                U::Other(_) => "Other",
            },
        }
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            DataFormat::SemiStructured(SemiStructuredKind::Other(l))
            | DataFormat::Unstructured(UnstructuredKind::Other(l)) => Some(l),
            _ => None,
        }
    }

    /// Builds a format from its category and kind literal.
    pub fn from_parts(
        category: FormatCategory,
        kind: &str,
        label: Option<Label>,
    ) -> Result<DataFormat, TaxonomyError> {
        use SemiStructuredKind as S;
        use UnstructuredKind as U;
        let illegal = || TaxonomyError::IllegalKind {
            parent: category.as_str().to_string(),
            kind: kind.to_string(),
        };
        if kind != "Other" && label.is_some() {
            if !FORMAT_KIND_LITERALS.contains(&kind) {
                return Err(TaxonomyError::Unknown {
                    what: "format kind",
                    value: kind.to_string(),
                });
            }
            return Err(TaxonomyError::UnexpectedLabel(kind.to_string()));
        }
        let format = match (category, kind) {
            (FormatCategory::Structured, "RelationalDB") => {
                DataFormat::Structured(StructuredKind::RelationalDb)
            }
            (FormatCategory::SemiStructured, "Email") => DataFormat::SemiStructured(S::Email),
            (FormatCategory::SemiStructured, "SMS") => DataFormat::SemiStructured(S::Sms),
            (FormatCategory::SemiStructured, "CSV") => DataFormat::SemiStructured(S::Csv),
            (FormatCategory::SemiStructured, "JSON") => DataFormat::SemiStructured(S::Json),
            (FormatCategory::SemiStructured, "XML") => DataFormat::SemiStructured(S::Xml),
            (FormatCategory::SemiStructured, "Other") => DataFormat::SemiStructured(S::Other(
                label.ok_or_else(|| TaxonomyError::MissingLabel(kind.to_string()))?,
            )),
            (FormatCategory::Unstructured, "GPSData") => DataFormat::Unstructured(U::GpsData),
            (FormatCategory::Unstructured, "Multimedia") => DataFormat::Unstructured(U::Multimedia),
            (FormatCategory::Unstructured, "OfficeFiles") => {
                DataFormat::Unstructured(U::OfficeFiles)
            }
            (FormatCategory::Unstructured, "Other") => DataFormat::Unstructured(U::Other(
                label.ok_or_else(|| TaxonomyError::MissingLabel(kind.to_string()))?,
            )),
            (_, k) if FORMAT_KIND_LITERALS[..10].contains(&k) => return Err(illegal()),
            _ => {
                return Err(TaxonomyError::Unknown {
                    what: "format kind",
                    value: kind.to_string(),
                })
            }
        };
        Ok(format)
    }

    /// Category implied by a label-free kind literal, for the DSL where the
    /// category is not written.
    pub fn from_literal(kind: &str) -> Option<DataFormat> {
        FormatCategory::ALL
            .into_iter()
            .find_map(|c| DataFormat::from_parts(c, kind, None).ok())
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(l) => write!(f, "Other({l})"),
            None => f.write_str(self.kind_str()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StorageFamily {
    NoSql,
    NewSql,
    FileSystem,
}

impl StorageFamily {
    pub const ALL: [StorageFamily; 3] = [
        StorageFamily::NoSql,
        StorageFamily::NewSql,
        StorageFamily::FileSystem,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StorageFamily::NoSql => "NoSQL",
            StorageFamily::NewSql => "NewSQL",
            StorageFamily::FileSystem => "FileSystem",
        }
    }

    pub fn from_literal(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NoSqlKind {
    Document,
    KeyValue,
    Graph,
    Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NewSqlKind {
    Historical,
    RealTime,
    Stream,
    Timestamp,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FileSystemKind {
    Hdf,
    Gfs,
    Afs,
    Gpfs,
    Blobseer,
    Other(Label),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StorageTech {
    NoSql(NoSqlKind),
    NewSql(NewSqlKind),
    FileSystem(FileSystemKind),
}

pub const STORAGE_KIND_LITERALS: [&str; 15] = [
    "Document",
    "KeyValue",
    "Graph",
    "Column",
    "Historical",
    "RealTime",
    "Stream",
    "Timestamp",
    "HDF",
    "GFS",
    "AFS",
    "GPFS",
    "Blobseer",
    "Other",
    "Parquet",
];

impl StorageTech {
    pub fn family(&self) -> StorageFamily {
        match self {
            StorageTech::NoSql(_) => StorageFamily::NoSql,
            StorageTech::NewSql(_) => StorageFamily::NewSql,
            StorageTech::FileSystem(_) => StorageFamily::FileSystem,
        }
    }

    pub fn kind_str(&self) -> &'static str {
        match self {
            StorageTech::NoSql(k) => match k {
                NoSqlKind::Document => "Document",
                NoSqlKind::KeyValue => "KeyValue",
                NoSqlKind::Graph => "Graph",
                NoSqlKind::Column => "Column",
            },
            StorageTech::NewSql(k) => match k {
                NewSqlKind::Historical => "Historical",
                NewSqlKind::RealTime => "RealTime",
                NewSqlKind::Stream => "Stream",
                NewSqlKind::Timestamp => "Timestamp",
            },
            StorageTech::FileSystem(k) => match k {
                FileSystemKind::Hdf => "HDF",
                FileSystemKind::Gfs => "GFS",
                FileSystemKind::Afs => "AFS",
                FileSystemKind::Gpfs => "GPFS",
                FileSystemKind::Blobseer => "Blobseer",
                FileSystemKind::Other(_) => "Other",
            },
        }
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            StorageTech::FileSystem(FileSystemKind::Other(l)) => Some(l),
            _ => None,
        }
    }

    pub fn from_parts(
        family: StorageFamily,
        kind: &str,
        label: Option<Label>,
    ) -> Result<StorageTech, TaxonomyError> {
        if !STORAGE_KIND_LITERALS[..14].contains(&kind) {
            return Err(TaxonomyError::Unknown {
                what: "storage kind",
                value: kind.to_string(),
            });
        }
        if kind != "Other" && label.is_some() {
            return Err(TaxonomyError::UnexpectedLabel(kind.to_string()));
        }
        let tech = match (family, kind) {
            (StorageFamily::NoSql, "Document") => StorageTech::NoSql(NoSqlKind::Document),
            (StorageFamily::NoSql, "KeyValue") => StorageTech::NoSql(NoSqlKind::KeyValue),
            (StorageFamily::NoSql, "Graph") => StorageTech::NoSql(NoSqlKind::Graph),
            (StorageFamily::NoSql, "Column") => StorageTech::NoSql(NoSqlKind::Column),
            (StorageFamily::NewSql, "Historical") => StorageTech::NewSql(NewSqlKind::Historical),
            (StorageFamily::NewSql, "RealTime") => StorageTech::NewSql(NewSqlKind::RealTime),
            (StorageFamily::NewSql, "Stream") => StorageTech::NewSql(NewSqlKind::Stream),
            (StorageFamily::NewSql, "Timestamp") => StorageTech::NewSql(NewSqlKind::Timestamp),
            (StorageFamily::FileSystem, "HDF") => StorageTech::FileSystem(FileSystemKind::Hdf),
            (StorageFamily::FileSystem, "GFS") => StorageTech::FileSystem(FileSystemKind::Gfs),
            (StorageFamily::FileSystem, "AFS") => StorageTech::FileSystem(FileSystemKind::Afs),
            (StorageFamily::FileSystem, "GPFS") => StorageTech::FileSystem(FileSystemKind::Gpfs),
            (StorageFamily::FileSystem, "Blobseer") => {
                StorageTech::FileSystem(FileSystemKind::Blobseer)
            }
            (StorageFamily::FileSystem, "Other") => StorageTech::FileSystem(FileSystemKind::Other(
                label.ok_or_else(|| TaxonomyError::MissingLabel(kind.to_string()))?,
            )),
            _ => {
                return Err(TaxonomyError::IllegalKind {
                    parent: family.as_str().to_string(),
                    kind: kind.to_string(),
                })
            }
        };
        Ok(tech)
    }
}

impl fmt::Display for StorageTech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.family().as_str(), self.kind_str())?;
        if let Some(l) = self.label() {
            write!(f, "({l})")?;
        }
        Ok(())
    }
}
