//! Scenario files.
//!
//! A scenario is a TOML document with a `kind`, the kind's own fields, an
//! optional `[groups]` table naming the groups it refers to, and optional
//! `[limits]`. Each named group is either inline (the group-file fields), a
//! `file = "path"` relative to the scenario, or `catalog = "label"` picking an
//! entry of the catalog in force.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use galshadow::search::Catalog;
use galshadow::GroupRef;
use serde::Deserialize;

use crate::groups::{load_group_file, GroupFile};
use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub budget: Option<u64>,
    pub catalog_max: Option<usize>,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedInput {
    pub group: String,
    pub marks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionInput {
    pub n: usize,
    pub e: usize,
    pub f: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    HomEnum {
        source: String,
        target: String,
        #[serde(default)]
        epi: bool,
    },
    EpSolve {
        source: MarkedInput,
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        phi: Vec<usize>,
        psi: Vec<usize>,
        #[serde(rename = "marksB")]
        marks_b: Vec<Vec<usize>>,
    },
    Certify {
        marked: Option<MarkedInput>,
        level_of: Option<Vec<String>>,
    },
    FpQuotients {
        factors: Vec<String>,
    },
    FpSeparate {
        factors: Vec<String>,
        w1: Vec<(usize, usize)>,
        w2: Vec<(usize, usize)>,
    },
    FpLevel {
        factors: Vec<String>,
    },
    FpRetraction {
        factors: Vec<String>,
        target: String,
        etas: Vec<Vec<usize>>,
        p: usize,
    },
    Ram {
        gamma: String,
        delta: String,
        rho: Vec<usize>,
        p: usize,
        extension: Option<ExtensionInput>,
    },
    Split {
        gamma: String,
        delta: String,
        rho: Vec<usize>,
        p: usize,
    },
    Realize {
        p: u32,
        qdeg: usize,
        #[serde(rename = "M")]
        big_m: usize,
        poly: Vec<u32>,
        #[serde(rename = "B")]
        b: String,
        psi: Vec<usize>,
        #[serde(rename = "B0")]
        b0: Vec<usize>,
        basis: Option<Vec<Vec<u32>>>,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::HomEnum { .. } => "hom-enum",
            Task::EpSolve { .. } => "ep-solve",
            Task::Certify { .. } => "certify",
            Task::FpQuotients { .. } => "fp-quotients",
            Task::FpSeparate { .. } => "fp-separate",
            Task::FpLevel { .. } => "fp-level",
            Task::FpRetraction { .. } => "fp-retraction",
            Task::Ram { .. } => "ram",
            Task::Split { .. } => "split",
            Task::Realize { .. } => "realize",
        }
    }
}

pub struct Scenario {
    pub task: Task,
    pub limits: Limits,
    pub echo: toml::Table,
    groups: BTreeMap<String, toml::Value>,
    dir: PathBuf,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let echo: toml::Table =
            toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut rest = echo.clone();
        let groups = match rest.remove("groups") {
            None => BTreeMap::new(),
            Some(toml::Value::Table(t)) => t.into_iter().collect(),
            Some(_) => return Err(CliError::Input("groups: expected a table of named groups".into())),
        };
        let limits = match rest.remove("limits") {
            None => Limits::default(),
            Some(v) => v.try_into().map_err(|e| CliError::Input(format!("limits: {e}")))?,
        };
        let task: Task = toml::Value::Table(rest)
            .try_into()
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(Scenario {
            task,
            limits,
            echo,
            groups,
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        })
    }

    /// Resolves a group name from `[groups]`.
    pub fn group(&self, name: &str, field: &str, cat: &Catalog) -> Result<GroupRef, CliError> {
        let def = self
            .groups
            .get(name)
            .ok_or_else(|| CliError::Input(format!("{field}: no group named {name:?} in [groups]")))?;
        let path = format!("groups.{name}");
        let table = def
            .as_table()
            .ok_or_else(|| CliError::Input(format!("{path}: expected a table")))?;
        if let Some(file) = table.get("file") {
            let file = file
                .as_str()
                .ok_or_else(|| CliError::Input(format!("{path}.file: expected a string")))?;
            return load_group_file(&self.dir.join(file));
        }
        if let Some(label) = table.get("catalog") {
            let label = label
                .as_str()
                .ok_or_else(|| CliError::Input(format!("{path}.catalog: expected a string")))?;
            return cat
                .iter()
                .find(|g| g.label() == Some(label))
                .cloned()
                .ok_or_else(|| CliError::Input(format!("{path}.catalog: no catalog entry labeled {label:?}")));
        }
        let file: GroupFile = def
            .clone()
            .try_into()
            .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        let g = file.build(&path)?;
        Ok(if g.label().is_none() { g.with_label(name) } else { g })
    }
}
