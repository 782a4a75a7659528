//! The `constants.properties` project file.
//!
//! One `key=value` pair per line. `PathToApplication` is required; every
//! other key has a default. The seven node-kind keys name the ASLT kinds the
//! analysis searches for, and by default each key maps to itself.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use thiserror::Error;

use crate::aslt::NodeKind;

pub const PATH_TO_APPLICATION: &str = "PathToApplication";
pub const ASLT_FILE_EXTENSION: &str = "ASLTFileExtension";
pub const CLASS_FILE_EXTENSION: &str = "ClassFileExtension";
pub const DEBUG_LEVEL: &str = "DebugLevel";

pub const DEFAULT_ASLT_EXTENSION: &str = ".aslt";
pub const DEFAULT_CLASS_EXTENSION: &str = ".class";

/// The configurable node kinds, in the order they appear in a rendered file.
pub const NODE_KIND_KEYS: [NodeKind; 7] = [
    NodeKind::ExpressionStatement,
    NodeKind::IdentifierExpression,
    NodeKind::LiteralTag,
    NodeKind::MethodInvokeExpression,
    NodeKind::SimpleAssignmentOperatorExpression,
    NodeKind::VariableDeclarator,
    NodeKind::VariableDeclaration,
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected `key=value`, found {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("missing required key `{0}`")]
    MissingRequiredKey(&'static str),
    #[error("invalid DebugLevel {0:?}: expected 0, 1 or 2")]
    InvalidDebugLevel(String),
    #[error("invalid {key} {value:?}: must be non-empty and start with `.`")]
    InvalidExtension { key: &'static str, value: String },
    #[error("node kind key `{0}` maps to an empty name")]
    EmptyNodeKindName(&'static str),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
}

/// Output verbosity. Level 0 prints results only, level 1 adds the essential
/// per-class surface, level 2 dumps every tree and class file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DebugLevel {
    #[default]
    Off = 0,
    Essential = 1,
    Full = 2,
}

impl DebugLevel {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            0 => Some(DebugLevel::Off),
            1 => Some(DebugLevel::Essential),
            2 => Some(DebugLevel::Full),
            _ => None,
        }
    }

    pub fn as_number(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for DebugLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_number())
    }
}

/// Names configured for the seven searchable node kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeKindNames {
    names: [String; 7],
}

impl Default for NodeKindNames {
    fn default() -> Self {
        Self {
            names: NODE_KIND_KEYS.map(|k| k.as_str().to_string()),
        }
    }
}

impl NodeKindNames {
    /// The configured name for `kind`, or `None` if `kind` is not configurable.
    pub fn name_for(&self, kind: NodeKind) -> Option<&str> {
        NODE_KIND_KEYS
            .iter()
            .position(|k| *k == kind)
            .map(|i| self.names[i].as_str())
    }

    /// `(key, configured name)` pairs in file order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &str)> + '_ {
        NODE_KIND_KEYS
            .iter()
            .zip(self.names.iter())
            .map(|(k, n)| (k.as_str(), n.as_str()))
    }

    /// Configured names that differ from the canonical kind name, as aliases
    /// the `.aslt` reader should accept.
    pub fn aliases(&self) -> Vec<(String, NodeKind)> {
        NODE_KIND_KEYS
            .iter()
            .zip(self.names.iter())
            .filter(|(k, n)| k.as_str() != n.as_str())
            .map(|(k, n)| (n.clone(), *k))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectConfig {
    pub path_to_application: PathBuf,
    pub aslt_file_extension: String,
    pub class_file_extension: String,
    pub node_kind_names: NodeKindNames,
    pub debug_level: DebugLevel,
}

impl ProjectConfig {
    /// A config with every optional setting at its default.
    pub fn new(path_to_application: impl Into<PathBuf>) -> Self {
        Self {
            path_to_application: path_to_application.into(),
            aslt_file_extension: DEFAULT_ASLT_EXTENSION.to_string(),
            class_file_extension: DEFAULT_CLASS_EXTENSION.to_string(),
            node_kind_names: NodeKindNames::default(),
            debug_level: DebugLevel::Off,
        }
    }

    /// Renders the config as a properties file that loads back to `self`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        };
        line(
            PATH_TO_APPLICATION,
            &self.path_to_application.to_string_lossy(),
        );
        line(ASLT_FILE_EXTENSION, &self.aslt_file_extension);
        line(CLASS_FILE_EXTENSION, &self.class_file_extension);
        for (key, name) in self.node_kind_names.iter() {
            line(key, name);
        }
        line(DEBUG_LEVEL, &self.debug_level.to_string());
        out
    }
}

/// Splits properties text into an ordered key/value map.
///
/// Blank lines and lines whose first non-blank character is `#` are skipped.
/// A repeated key keeps its first position but takes the last value.
pub fn parse_properties(text: &str) -> Result<IndexMap<String, String>, ConfigError> {
    let mut map = IndexMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = raw.split_once('=') else {
            return Err(ConfigError::MalformedLine {
                line: idx + 1,
                content: raw.to_string(),
            });
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Validates a parsed key/value map into a [`ProjectConfig`].
///
/// Paths are taken verbatim; [`load_config_file`] resolves relative ones.
pub fn load_config(kv: &IndexMap<String, String>) -> Result<ProjectConfig, ConfigError> {
    let path = kv
        .get(PATH_TO_APPLICATION)
        .ok_or(ConfigError::MissingRequiredKey(PATH_TO_APPLICATION))?;

    let extension = |key: &'static str, default: &str| -> Result<String, ConfigError> {
        match kv.get(key) {
            None => Ok(default.to_string()),
            Some(v) if v.len() > 1 && v.starts_with('.') => Ok(v.clone()),
            Some(v) => Err(ConfigError::InvalidExtension {
                key,
                value: v.clone(),
            }),
        }
    };
    let aslt_file_extension = extension(ASLT_FILE_EXTENSION, DEFAULT_ASLT_EXTENSION)?;
    let class_file_extension = extension(CLASS_FILE_EXTENSION, DEFAULT_CLASS_EXTENSION)?;

    let debug_level = match kv.get(DEBUG_LEVEL) {
        None => DebugLevel::Off,
        Some(v) => v
            .parse::<u8>()
            .ok()
            .and_then(DebugLevel::from_number)
            .ok_or_else(|| ConfigError::InvalidDebugLevel(v.clone()))?,
    };

    let mut node_kind_names = NodeKindNames::default();
    for (slot, kind) in node_kind_names.names.iter_mut().zip(NODE_KIND_KEYS) {
        if let Some(name) = kv.get(kind.as_str()) {
            if name.is_empty() {
                return Err(ConfigError::EmptyNodeKindName(kind.as_str()));
            }
            *slot = name.clone();
        }
    }

    Ok(ProjectConfig {
        path_to_application: PathBuf::from(path),
        aslt_file_extension,
        class_file_extension,
        node_kind_names,
        debug_level,
    })
}

/// Keys present in `kv` that the analyser does not recognize.
pub fn unknown_keys(kv: &IndexMap<String, String>) -> Vec<&str> {
    kv.keys()
        .map(String::as_str)
        .filter(|k| {
            ![
                PATH_TO_APPLICATION,
                ASLT_FILE_EXTENSION,
                CLASS_FILE_EXTENSION,
                DEBUG_LEVEL,
            ]
            .contains(k)
                && !NODE_KIND_KEYS.iter().any(|n| n.as_str() == *k)
        })
        .collect()
}

/// A config loaded from disk together with the keys it ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedConfig {
    pub config: ProjectConfig,
    pub unknown_keys: Vec<String>,
}

/// Reads, parses and validates a properties file. A relative
/// `PathToApplication` is resolved against the file's directory.
pub fn load_config_file(path: &Path) -> Result<LoadedConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let kv = parse_properties(&text)?;
    let mut config = load_config(&kv)?;
    if config.path_to_application.is_relative() {
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        config.path_to_application = base.join(&config.path_to_application);
    }
    Ok(LoadedConfig {
        unknown_keys: unknown_keys(&kv).into_iter().map(str::to_string).collect(),
        config,
    })
}
