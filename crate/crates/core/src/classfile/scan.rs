use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::reader::parse_classfile;
use super::types::ClassInfo;
use crate::diagnostics::{Diagnostic, Severity};

#[derive(Debug, Clone, Default)]
pub struct ScanOutcome {
    /// Successfully parsed classes, in file-path order.
    pub classes: Vec<ClassInfo>,
    /// One entry per file that could not be read or parsed.
    pub diagnostics: Vec<Diagnostic>,
}

/// Recursively lists files under `root` whose name ends with `extension`,
/// sorted by path.
pub fn find_files(root: &Path, extension: &str) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in WalkDir::new(root).follow_links(false) {
        let entry = entry.map_err(io::Error::other)?;
        if entry.file_type().is_file()
            && entry
                .file_name()
                .to_str()
                .is_some_and(|n| n.ends_with(extension) && n.len() > extension.len())
        {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

/// `path` relative to `root` with `/` separators.
pub fn relative_name(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Parses the given class files. Output order follows `paths`.
pub fn parse_classfiles(root: &Path, paths: &[PathBuf]) -> ScanOutcome {
    let results: Vec<Result<ClassInfo, Diagnostic>> = paths
        .par_iter()
        .map(|path| {
            let name = relative_name(root, path);
            let bytes = fs::read(path)
                .map_err(|e| Diagnostic::new(Severity::Error, Some(name.clone()), e.to_string()))?;
            let mut info = parse_classfile(&bytes)
                .map_err(|e| Diagnostic::new(Severity::Error, Some(name.clone()), e.to_string()))?;
            info.source_file_name = Some(name);
            Ok(info)
        })
        .collect();

    let mut outcome = ScanOutcome::default();
    for r in results {
        match r {
            Ok(info) => outcome.classes.push(info),
            Err(d) => outcome.diagnostics.push(d),
        }
    }
    outcome
}

/// Collects and parses every class file under `directory`.
///
/// Only a failure to walk the directory is an error; a file that does not
/// parse becomes a diagnostic.
pub fn scan_classfiles(directory: &Path, extension: &str) -> io::Result<ScanOutcome> {
    let paths = find_files(directory, extension)?;
    Ok(parse_classfiles(directory, &paths))
}
