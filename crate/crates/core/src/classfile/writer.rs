//! Minimal class-file writer for fixtures.
//!
//! Output carries no attributes and no code. Constant-pool entries are
//! interned in first-use order: this class, superclass, interfaces, then each
//! field's and method's name and descriptor.

use std::collections::HashMap;

use thiserror::Error;

use super::mutf8;
use super::reader::MAGIC;
use super::types::ClassInfo;

pub const EMIT_MAJOR_VERSION: u16 = 52;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("invalid class info: {0}")]
    InvalidClassInfo(String),
}

#[derive(Default)]
struct PoolBuilder {
    bytes: Vec<u8>,
    next: u16,
    utf8: HashMap<String, u16>,
    classes: HashMap<String, u16>,
}

impl PoolBuilder {
    fn new() -> Self {
        Self {
            next: 1,
            ..Self::default()
        }
    }

    fn slot(&mut self) -> Result<u16, EmitError> {
        if self.next == u16::MAX {
            return Err(EmitError::InvalidClassInfo("constant pool overflow".into()));
        }
        self.next += 1;
        Ok(self.next - 1)
    }

    fn utf8(&mut self, text: &str) -> Result<u16, EmitError> {
        if let Some(&i) = self.utf8.get(text) {
            return Ok(i);
        }
        let encoded = mutf8::encode(text);
        let len = u16::try_from(encoded.len())
            .map_err(|_| EmitError::InvalidClassInfo(format!("string too long: {text:?}")))?;
        let index = self.slot()?;
        self.bytes.push(1);
        self.bytes.extend_from_slice(&len.to_be_bytes());
        self.bytes.extend_from_slice(&encoded);
        self.utf8.insert(text.to_string(), index);
        Ok(index)
    }

    fn class(&mut self, dotted: &str) -> Result<u16, EmitError> {
        if let Some(&i) = self.classes.get(dotted) {
            return Ok(i);
        }
        let name = self.utf8(&dotted.replace('.', "/"))?;
        let index = self.slot()?;
        self.bytes.push(7);
        self.bytes.extend_from_slice(&name.to_be_bytes());
        self.classes.insert(dotted.to_string(), index);
        Ok(index)
    }
}

fn count(n: usize, what: &str) -> Result<[u8; 2], EmitError> {
    u16::try_from(n)
        .map(u16::to_be_bytes)
        .map_err(|_| EmitError::InvalidClassInfo(format!("too many {what}")))
}

/// Encodes `info` as a class file that [`super::parse_classfile`] reads back
/// to an equal [`ClassInfo`] (with `source_file_name` unset).
pub fn emit_classfile(info: &ClassInfo) -> Result<Vec<u8>, EmitError> {
    info.validate().map_err(EmitError::InvalidClassInfo)?;

    let mut pool = PoolBuilder::new();
    let this_class = pool.class(&info.qualified_name)?;
    let super_class = match &info.superclass_name {
        Some(name) => pool.class(name)?,
        None => 0,
    };
    let interfaces = info
        .interface_names
        .iter()
        .map(|name| pool.class(name))
        .collect::<Result<Vec<_>, _>>()?;

    let mut body = Vec::new();
    body.extend_from_slice(&info.access_flags.to_be_bytes());
    body.extend_from_slice(&this_class.to_be_bytes());
    body.extend_from_slice(&super_class.to_be_bytes());
    body.extend_from_slice(&count(interfaces.len(), "interfaces")?);
    for i in interfaces {
        body.extend_from_slice(&i.to_be_bytes());
    }

    body.extend_from_slice(&count(info.fields.len(), "fields")?);
    for field in &info.fields {
        let name = pool.utf8(&field.name)?;
        let descriptor = pool.utf8(&field.type_name.descriptor())?;
        body.extend_from_slice(&field.access_flags.to_be_bytes());
        body.extend_from_slice(&name.to_be_bytes());
        body.extend_from_slice(&descriptor.to_be_bytes());
        body.extend_from_slice(&[0, 0]);
    }

    body.extend_from_slice(&count(info.methods.len(), "methods")?);
    for method in &info.methods {
        let name = pool.utf8(&method.signature.name)?;
        let descriptor = pool.utf8(&method.signature.descriptor())?;
        body.extend_from_slice(&method.access_flags.to_be_bytes());
        body.extend_from_slice(&name.to_be_bytes());
        body.extend_from_slice(&descriptor.to_be_bytes());
        body.extend_from_slice(&[0, 0]);
    }
    body.extend_from_slice(&[0, 0]);

    let mut out = Vec::with_capacity(10 + pool.bytes.len() + body.len());
    out.extend_from_slice(&MAGIC.to_be_bytes());
    out.extend_from_slice(&0u16.to_be_bytes());
    out.extend_from_slice(&EMIT_MAJOR_VERSION.to_be_bytes());
    out.extend_from_slice(&pool.next.to_be_bytes());
    out.extend_from_slice(&pool.bytes);
    out.extend_from_slice(&body);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classfile::{parse_classfile, MethodInfo, MethodSignature, Primitive, TypeName};

    #[test]
    fn empty_class_round_trips() {
        let info = ClassInfo::new("Empty");
        let bytes = emit_classfile(&info).unwrap();
        assert_eq!(parse_classfile(&bytes).unwrap(), info);
    }

    #[test]
    fn emission_is_deterministic_and_interned() {
        let mut info = ClassInfo::new("p.A");
        for name in ["f", "g", "f2"] {
            info.methods.push(MethodInfo::new(
                0,
                MethodSignature::new(
                    name,
                    vec![TypeName::Primitive(Primitive::Int)],
                    TypeName::Void,
                ),
            ));
        }
        let a = emit_classfile(&info).unwrap();
        assert_eq!(a, emit_classfile(&info).unwrap());
        // "(I)V" appears once in the pool
        let needle = b"(I)V";
        let hits = a.windows(needle.len()).filter(|w| w == needle).count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn invalid_info_rejected() {
        let mut info = ClassInfo::new("A");
        info.methods.push(MethodInfo::new(
            0,
            MethodSignature::new("f", vec![TypeName::Void], TypeName::Void),
        ));
        assert!(matches!(
            emit_classfile(&info),
            Err(EmitError::InvalidClassInfo(_))
        ));
        assert!(emit_classfile(&ClassInfo::new("")).is_err());
    }
}
