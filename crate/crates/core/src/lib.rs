//! Static interface compatibility analysis for black-box software components.
//!
//! The caller side of a composition is read from source code, converted into
//! an Abstract Syntax Language Tree (ASLT) and mined for call sites and
//! variable types. The callee side is read from compiled class files without
//! loading or executing them. Every call is then compared against the
//! signatures the callee actually exposes and each disagreement becomes a
//! [`analysis::MismatchReport`].
//!
//! Module map:
//!
//! * [`config`] reads the `constants.properties` project file.
//! * [`classfile`] decodes (and, for fixtures, encodes) class files.
//! * [`aslt`] lexes, parses, prints and serializes the ASLT.
//! * [`analysis`] builds variable tables, extracts call sites and compares.
//! * [`cli`] drives the whole pipeline and renders results.

pub mod analysis;
pub mod aslt;
pub mod classfile;
pub mod cli;
pub mod config;
pub mod diagnostics;

pub use analysis::{CallSite, MismatchKind, MismatchReport, ResolvedType, VariableBinding};
pub use aslt::{AsltNode, NodeKind};
pub use classfile::{ClassInfo, MethodSignature, TypeName};
pub use cli::{AnalysisRun, RunOptions};
pub use config::{DebugLevel, ProjectConfig};
pub use diagnostics::{Diagnostic, Severity};
