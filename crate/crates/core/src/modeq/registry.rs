//! Directories of equation files, plus the equations shipped with the crate.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{parse_equation, ModeqError, ModularEquation};

pub const EXTENSION: &str = "modeq";

/// File name and contents of the shipped registry.
pub const BUILTIN_SOURCES: [(&str, &str); 4] = [
    ("berndt-2-7.modeq", include_str!("../../../../registry/berndt-2-7.modeq")),
    ("berndt-3-11.modeq", include_str!("../../../../registry/berndt-3-11.modeq")),
    ("berndt-3-5.modeq", include_str!("../../../../registry/berndt-3-5.modeq")),
    ("chan-liaw-3-23.modeq", include_str!("../../../../registry/chan-liaw-3-23.modeq")),
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ModeqError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: duplicate equation name {name:?}", path.display())]
    Duplicate { path: PathBuf, name: String },
}

/// The shipped equations, sorted by name.
pub fn builtin() -> Vec<ModularEquation> {
    let mut out: Vec<_> = BUILTIN_SOURCES
        .iter()
        .map(|(file, src)| parse_equation(src).unwrap_or_else(|e| panic!("shipped equation {file} is invalid: {e}")))
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Every `*.modeq` file in `dir`, parsed independently. Equations come back
/// sorted by name; failures are collected per file instead of aborting.
pub fn registry_scan(dir: &Path) -> Result<(Vec<ModularEquation>, Vec<RegistryError>), RegistryError> {
    let entries = fs::read_dir(dir).map_err(|source| RegistryError::Io { path: dir.to_path_buf(), source })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| RegistryError::Io { path: dir.to_path_buf(), source })?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) == Some(EXTENSION) {
            paths.push(path);
        }
    }
    paths.sort();
    let mut eqs: Vec<(ModularEquation, PathBuf)> = Vec::new();
    let mut errors = Vec::new();
    for path in paths {
        let src = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(source) => {
                errors.push(RegistryError::Io { path, source });
                continue;
            }
        };
        match parse_equation(&src) {
            Ok(eq) if eqs.iter().any(|(e, _)| e.name == eq.name) => errors.push(RegistryError::Duplicate { path, name: eq.name }),
            Ok(eq) => eqs.push((eq, path)),
            Err(source) => errors.push(RegistryError::Parse { path, source }),
        }
    }
    eqs.sort_by(|a, b| a.0.name.cmp(&b.0.name));
    Ok((eqs.into_iter().map(|(e, _)| e).collect(), errors))
}

/// Like `registry_scan` but fails on the first bad file.
pub fn registry_load(dir: &Path) -> Result<Vec<ModularEquation>, RegistryError> {
    let (eqs, mut errors) = registry_scan(dir)?;
    if errors.is_empty() {
        Ok(eqs)
    } else {
        Err(errors.remove(0))
    }
}
