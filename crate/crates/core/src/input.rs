//! Group files and the built-in catalog.
//!
//! A group file is JSON of the form
//!
//! ```json
//! { "name": "S3", "degree": 3,
//!   "generators": ["(1 2)", "(1 2 3)"],
//!   "subgroups": { "a": ["(1 2)"] } }
//! ```
//!
//! with 1-indexed cycle notation. A catalog entry wraps such a group with
//! the labels of a subgroup pair, a default generating set, and the flags
//! the pair is expected to produce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, InputError};
use crate::group::{conjugacy_classes, subgroup_from_generators, ClassPartition, GroupTable, Subgroup};
use crate::perm::{parse_cycles, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFlags {
    pub gassmann: bool,
    pub conjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub group: GroupSpec,
    pub h1: String,
    pub h2: String,
    pub default_gens: Vec<String>,
    pub expected: ExpectedFlags,
}

/// Contents of a group file: either a bare group or a full catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFile {
    Group(GroupSpec),
    Entry(CatalogEntry),
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<GroupFile, InputError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("group").is_some() {
            Ok(GroupFile::Entry(serde_json::from_value(value)?))
        } else {
            Ok(GroupFile::Group(serde_json::from_value(value)?))
        }
    }

    pub fn group(&self) -> &GroupSpec {
        match self {
            GroupFile::Group(g) => g,
            GroupFile::Entry(e) => &e.group,
        }
    }

    pub fn entry(&self) -> Option<&CatalogEntry> {
        match self {
            GroupFile::Group(_) => None,
            GroupFile::Entry(e) => Some(e),
        }
    }
}

const CATALOG_SOURCES: [&str; 4] = [
    include_str!("../catalog/gl32.json"),
    include_str!("../catalog/affine8.json"),
    include_str!("../catalog/s4.json"),
    include_str!("../catalog/s3.json"),
];

/// The built-in catalog, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_SOURCES
        .iter()
        .map(|src| serde_json::from_str(src).expect("built-in catalog entries are valid JSON"))
        .collect()
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry, InputError> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| InputError::UnknownCatalogEntry(name.to_string()))
}

/// Splits `"(1 2)(3 4),(1 3)"` at commas outside parentheses.
pub fn split_cycle_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current).trim().to_string());
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() || !out.is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

/// A group file resolved into tables.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub spec: GroupSpec,
    pub table: GroupTable,
    pub classes: ClassPartition,
}

fn parse_all(texts: &[String], degree: usize, context: &str) -> Result<Vec<Permutation>, InputError> {
    texts
        .iter()
        .map(|t| {
            parse_cycles(t, degree).map_err(|source| InputError::Perm {
                context: format!("{context} {t:?}"),
                source,
            })
        })
        .collect()
}

impl GroupSpec {
    pub fn load(&self, cap: usize) -> Result<LoadedGroup, Error> {
        let gens = parse_all(&self.generators, self.degree, "generator")?;
        let table = GroupTable::closure(&gens, cap)?;
        let classes = conjugacy_classes(&table);
        Ok(LoadedGroup {
            spec: self.clone(),
            table,
            classes,
        })
    }
}

impl LoadedGroup {
    /// Resolves cycle strings to element indices.
    pub fn elements(&self, texts: &[String]) -> Result<Vec<usize>, Error> {
        let perms = parse_all(texts, self.table.degree(), "element")?;
        perms
            .iter()
            .zip(texts)
            .map(|(p, t)| {
                self.table
                    .index_of(p)
                    .ok_or_else(|| InputError::NotInGroup(t.clone()).into())
            })
            .collect()
    }

    pub fn subgroup(&self, label: &str) -> Result<Subgroup, Error> {
        let gens = self
            .spec
            .subgroups
            .get(label)
            .ok_or_else(|| InputError::UnknownLabel(label.to_string()))?;
        let idx = self.elements(gens)?;
        Ok(subgroup_from_generators(&self.table, &idx)?)
    }

    pub fn cycle_string(&self, index: usize) -> String {
        self.table.element(index).to_cycle_string()
    }
}
