//! Catalog manifests: `bound` and a list of group files relative to the
//! manifest.

use std::path::Path;

use galshadow::search::{build_catalog, Catalog, MAX_GENERATED_ORDER};
use serde::{Deserialize, Serialize};

use crate::groups::{load_group_file, read_toml, write_group_file};
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub bound: usize,
    pub groups: Vec<String>,
}

pub fn load_catalog(manifest: &Path) -> Result<Catalog, CliError> {
    let m: Manifest = read_toml(manifest)?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let groups = m
        .groups
        .iter()
        .map(|f| load_group_file(&dir.join(f)))
        .collect::<Result<Vec<_>, _>>()?;
    Catalog::from_groups(m.bound, groups).map_err(|e| CliError::Input(format!("{}: {e}", manifest.display())))
}

/// The catalog in force: a manifest if given, else the generated one, cut
/// down to `bound`.
pub fn resolve_catalog(manifest: Option<&Path>, bound: usize) -> Result<Catalog, CliError> {
    match manifest {
        Some(path) => {
            let cat = load_catalog(path)?;
            if bound > cat.bound() {
                return Err(CliError::Input(format!(
                    "catalog bound {bound} exceeds the manifest bound {}",
                    cat.bound()
                )));
            }
            Ok(cat.restricted(bound))
        }
        None => build_catalog(bound).map_err(|e| CliError::Input(format!("--catalog-max: {e}"))),
    }
}

/// Writes one Cayley-table file per group plus `manifest.toml` into `dir`.
pub fn write_catalog(dir: &Path, max: usize) -> Result<Catalog, CliError> {
    if max > MAX_GENERATED_ORDER {
        return Err(CliError::Input(format!(
            "--max: at most {MAX_GENERATED_ORDER} can be generated"
        )));
    }
    let cat = build_catalog(max).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for g in cat.iter() {
        let name = format!("{}.toml", g.label().expect("generated groups are labeled"));
        write_group_file(&dir.join(&name), g)?;
        names.push(name);
    }
    let manifest = Manifest {
        bound: max,
        groups: names,
    };
    let path = dir.join("manifest.toml");
    std::fs::write(&path, toml::to_string(&manifest).expect("manifest serializes"))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(cat)
}
