use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::analysis::{
    get_all_constructor_calls, get_all_method_calls, get_all_variables_types, method_called,
    CallSite, ClassIndex, MismatchReport, ResolutionContext, TypeResolver,
};
use crate::aslt::{parse_source, read_aslt_with_aliases, validate, write_aslt, AsltNode, NodeKind};
use crate::classfile::{
    find_files, parse_classfiles, relative_name, scan_classfiles, ClassInfo, ScanOutcome,
};
use crate::config::ProjectConfig;
use crate::diagnostics::{Diagnostic, Severity};

pub const SOURCE_FILE_EXTENSION: &str = ".java";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCHES: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Accept primitive widening conversions for arguments.
    pub widening: bool,
    /// Check `new T(...)` against `T`'s constructors when its class file is
    /// present.
    pub check_constructors: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            widening: false,
            check_constructors: true,
        }
    }
}

/// The input files of one run, as absolute or root-joined paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProjectFiles {
    pub class_files: Vec<PathBuf>,
    pub aslt_files: Vec<PathBuf>,
    pub source_files: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedTree {
    /// Project-relative path of the `.aslt` or source file.
    pub file: String,
    pub tree: AsltNode,
}

#[derive(Debug, Clone)]
pub struct AnalysisRun {
    pub config: ProjectConfig,
    pub class_infos: Vec<ClassInfo>,
    pub aslt_trees: Vec<ParsedTree>,
    pub call_sites: Vec<CallSite>,
    pub reports: Vec<MismatchReport>,
    pub diagnostics: Vec<Diagnostic>,
    pub exit_code: i32,
}

impl AnalysisRun {
    fn failed(config: ProjectConfig, diagnostic: Diagnostic) -> Self {
        Self {
            config,
            class_infos: Vec::new(),
            aslt_trees: Vec::new(),
            call_sites: Vec::new(),
            reports: Vec::new(),
            diagnostics: vec![diagnostic],
            exit_code: EXIT_CONFIG,
        }
    }
}

/// The class files of the project, parsed in path order.
pub fn get_class_infos(config: &ProjectConfig) -> std::io::Result<ScanOutcome> {
    scan_classfiles(&config.path_to_application, &config.class_file_extension)
}

/// Finds the class, `.aslt` and source files below the project path.
pub fn discover(config: &ProjectConfig) -> std::io::Result<ProjectFiles> {
    let root = &config.path_to_application;
    Ok(ProjectFiles {
        class_files: find_files(root, &config.class_file_extension)?,
        aslt_files: find_files(root, &config.aslt_file_extension)?,
        source_files: find_files(root, SOURCE_FILE_EXTENSION)?,
    })
}

fn sibling(path: &Path, from_ext: &str, to_ext: &str) -> PathBuf {
    let s = path.to_string_lossy();
    let stem = s.strip_suffix(from_ext).unwrap_or(&s);
    PathBuf::from(format!("{stem}{to_ext}"))
}

enum TreeInput {
    Aslt(PathBuf),
    Source(PathBuf),
}

fn load_tree(
    root: &Path,
    input: &TreeInput,
    aliases: &[(String, NodeKind)],
) -> Result<ParsedTree, Diagnostic> {
    let path = match input {
        TreeInput::Aslt(p) | TreeInput::Source(p) => p,
    };
    let file = relative_name(root, path);
    let fail = |msg: String| Diagnostic::new(Severity::Error, Some(file.clone()), msg);
    let text = fs::read_to_string(path).map_err(|e| fail(format!("cannot read: {e}")))?;
    let tree = match input {
        TreeInput::Aslt(_) => {
            let tree = read_aslt_with_aliases(&text, aliases).map_err(|e| fail(e.to_string()))?;
            if tree.kind != NodeKind::CompilationUnit {
                return Err(fail(format!(
                    "root node is {}, expected CompilationUnit",
                    tree.kind
                )));
            }
            validate(&tree).map_err(|e| fail(e.to_string()))?;
            tree
        }
        TreeInput::Source(_) => {
            let parsed = parse_source(&text, &file).map_err(|e| fail(e.to_string()))?;
            read_aslt_with_aliases(&write_aslt(&parsed), aliases)
                .map_err(|e| fail(e.to_string()))?
        }
    };
    Ok(ParsedTree { file, tree })
}

/// Runs the pipeline over an explicit file set. The result does not depend
/// on the order of the supplied paths.
pub fn analyse(config: &ProjectConfig, files: &ProjectFiles, options: RunOptions) -> AnalysisRun {
    let root = config.path_to_application.as_path();
    let mut files = files.clone();
    files.class_files.sort();
    files.class_files.dedup();
    files.aslt_files.sort();
    files.aslt_files.dedup();
    files.source_files.sort();
    files.source_files.dedup();

    let ScanOutcome {
        classes,
        mut diagnostics,
    } = parse_classfiles(root, &files.class_files);

    let aslt_set: HashSet<&PathBuf> = files.aslt_files.iter().collect();
    let mut inputs: Vec<(String, TreeInput)> = files
        .aslt_files
        .iter()
        .map(|p| (relative_name(root, p), TreeInput::Aslt(p.clone())))
        .collect();
    for src in &files.source_files {
        if !aslt_set.contains(&sibling(
            src,
            SOURCE_FILE_EXTENSION,
            &config.aslt_file_extension,
        )) {
            inputs.push((relative_name(root, src), TreeInput::Source(src.clone())));
        }
    }
    inputs.sort_by(|a, b| a.0.cmp(&b.0));

    let aliases = config.node_kind_names.aliases();
    let loaded: Vec<Result<ParsedTree, Diagnostic>> = inputs
        .par_iter()
        .map(|(_, input)| load_tree(root, input, &aliases))
        .collect();
    let attempted = loaded.len();
    let mut trees = Vec::new();
    for result in loaded {
        match result {
            Ok(t) => trees.push(t),
            Err(d) => diagnostics.push(d),
        }
    }

    let units: Vec<AsltNode> = trees.iter().map(|t| t.tree.clone()).collect();
    let resolver = TypeResolver::from_project(&units, &classes);
    let index = ClassIndex::new(&classes);
    let extracted: Vec<(Vec<CallSite>, Vec<Diagnostic>)> = trees
        .par_iter()
        .map(|t| {
            let table = get_all_variables_types(&t.tree, &resolver);
            let ctx = ResolutionContext {
                table: &table,
                classes: &index,
                resolver: &resolver,
            };
            let mut calls = get_all_method_calls(&t.tree, &ctx);
            if options.check_constructors {
                calls.extend(get_all_constructor_calls(&t.tree, &ctx));
                calls.sort_by(|a, b| a.location.cmp(&b.location));
            }
            (calls, table.diagnostics)
        })
        .collect();
    let mut call_sites = Vec::new();
    for (calls, diags) in extracted {
        call_sites.extend(calls);
        diagnostics.extend(diags);
    }

    let reports = method_called(&call_sites, &classes, options.widening);
    let exit_code = if attempted > 0 && trees.is_empty() {
        EXIT_PARSE
    } else if !reports.is_empty() {
        EXIT_MISMATCHES
    } else {
        EXIT_OK
    };
    AnalysisRun {
        config: config.clone(),
        class_infos: classes,
        aslt_trees: trees,
        call_sites,
        reports,
        diagnostics,
        exit_code,
    }
}

/// Discovers the project files and analyses them.
pub fn run_analysis(config: &ProjectConfig, options: RunOptions) -> AnalysisRun {
    let root = &config.path_to_application;
    if !root.is_dir() {
        let msg = format!(
            "project path {} is not a readable directory",
            root.display()
        );
        return AnalysisRun::failed(config.clone(), Diagnostic::new(Severity::Fatal, None, msg));
    }
    match discover(config) {
        Ok(files) => analyse(config, &files, options),
        Err(e) => {
            let msg = format!("cannot scan {}: {e}", root.display());
            AnalysisRun::failed(config.clone(), Diagnostic::new(Severity::Fatal, None, msg))
        }
    }
}
