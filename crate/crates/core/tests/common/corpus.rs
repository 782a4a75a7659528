use std::fs;
use std::path::{Path, PathBuf};

use aslt_analyser::analysis::{declared_class_infos, TypeResolver};
use aslt_analyser::aslt::parse_source;
use aslt_analyser::classfile::emit_classfile;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn projects() -> Vec<PathBuf> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(fixtures_dir().join("projects"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    dirs
}

pub fn project(name: &str) -> PathBuf {
    fixtures_dir().join("projects").join(name)
}

fn java_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map(|rd| rd.map(|e| e.unwrap().path()).collect())
        .unwrap_or_default();
    files.retain(|p| p.extension().is_some_and(|e| e == "java"));
    files.sort();
    files
}

/// Every source file of the fixture corpus, components included.
pub fn all_sources() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for p in projects() {
        out.extend(java_files(&p));
        out.extend(java_files(&p.join("components")));
    }
    out
}

/// Lays a fixture project out as the analyser expects it: caller sources,
/// class files for callers and components, and a `constants.properties`.
/// Component sources are compiled but not copied.
pub fn materialize(project: &Path, dest: &Path) {
    let callers = java_files(project);
    let components = java_files(&project.join("components"));
    let mut units = Vec::new();
    for path in callers.iter().chain(&components) {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        units.push(parse_source(&fs::read_to_string(path).unwrap(), &name).unwrap());
    }
    let resolver = TypeResolver::from_project(&units, &[]);
    for unit in &units {
        for info in declared_class_infos(unit, &resolver) {
            let file = format!("{}.class", info.qualified_name.replace('.', "/"));
            let path = dest.join(file);
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(path, emit_classfile(&info).unwrap()).unwrap();
        }
    }
    for path in &callers {
        fs::copy(path, dest.join(path.file_name().unwrap())).unwrap();
    }
    fs::write(
        dest.join("constants.properties"),
        "PathToApplication=.\nDebugLevel=0\n",
    )
    .unwrap();
}
