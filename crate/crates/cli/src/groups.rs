//! Group files: `name`, `kind = "cayley"` with a row-major `table`, or
//! `kind = "perm"` with a `degree` and `generators` given as image arrays.

use std::path::Path;

use galshadow::group::{build_from_permutations, DEFAULT_ORDER_CAP};
use galshadow::{FiniteGroup, GroupRef};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cayley,
    Perm,
}

impl GroupFile {
    pub fn build(&self, path: &str) -> Result<GroupRef, CliError> {
        let at = |field: &str, msg: String| CliError::Input(format!("{path}.{field}: {msg}"));
        match self.kind {
            GroupKind::Cayley => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| at("table", "required for kind \"cayley\"".into()))?;
                FiniteGroup::from_table(table, self.name.as_deref()).map_err(|e| at("table", e.to_string()))
            }
            GroupKind::Perm => {
                let degree = self
                    .degree
                    .ok_or_else(|| at("degree", "required for kind \"perm\"".into()))?;
                let gens = self
                    .generators
                    .as_ref()
                    .ok_or_else(|| at("generators", "required for kind \"perm\"".into()))?;
                let (g, _) = build_from_permutations(degree, gens, DEFAULT_ORDER_CAP)
                    .map_err(|e| at("generators", e.to_string()))?;
                Ok(match &self.name {
                    Some(n) => g.with_label(n.clone()),
                    None => g,
                })
            }
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.label().map(str::to_owned),
            kind: GroupKind::Cayley,
            table: Some(g.rows()),
            degree: None,
            generators: None,
        }
    }
}

pub fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_group_file(path: &Path) -> Result<GroupRef, CliError> {
    let file: GroupFile = read_toml(path)?;
    file.build(&path.display().to_string())
}

pub fn write_group_file(path: &Path, g: &FiniteGroup) -> Result<(), CliError> {
    let text = toml::to_string(&GroupFile::from_group(g)).expect("group files serialize");
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
