//! The callee side: what a compiled component exposes.
//!
//! Class files are decoded directly rather than loaded, so a component can be
//! inspected without running any of its code.

mod descriptor;
mod mutf8;
mod reader;
mod scan;
mod types;
mod writer;

pub use descriptor::{
    encode_descriptor, parse_descriptor, parse_field_descriptor, DescriptorError, MethodDescriptor,
};
pub use reader::{parse_classfile, ClassFileError, MAGIC, MIN_MAJOR_VERSION};
pub use scan::{find_files, parse_classfiles, relative_name, scan_classfiles, ScanOutcome};
pub use types::*;
pub use writer::{emit_classfile, EmitError, EMIT_MAJOR_VERSION};
