//! Class-file decoding.
//!
//! Only the surface a caller can bind against is extracted: names, supertypes,
//! fields and method signatures. Attributes are skipped by length and no
//! bytecode is looked at.

use thiserror::Error;

use super::descriptor::{parse_descriptor, parse_field_descriptor, DescriptorError};
use super::mutf8;
use super::types::{ClassInfo, FieldInfo, MethodInfo, MethodSignature};

pub const MAGIC: u32 = 0xCAFE_BABE;
pub const MIN_MAJOR_VERSION: u16 = 45;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassFileError {
    #[error("bad magic number {found:#010x}")]
    BadMagic { found: u32 },
    #[error("truncated class file: needed {expected} bytes, have {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("unsupported class-file major version {0}")]
    UnsupportedVersion(u16),
    #[error("constant pool entry {index}: unsupported tag {tag}")]
    UnsupportedTag { index: u16, tag: u8 },
    #[error("constant pool reference {index}: {reason}")]
    PoolReference { index: u16, reason: String },
    #[error("constant pool entry {index}: invalid modified UTF-8")]
    InvalidUtf8 { index: u16 },
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error("{0}")]
    InvalidName(String),
    #[error("{count} trailing bytes after class file")]
    TrailingBytes { count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum PoolEntry {
    /// Slot 0 and the second slot of a Long/Double.
    Unusable,
    Utf8(String),
    Integer(i32),
    Float(u32),
    Long(i64),
    Double(u64),
    Class {
        name_index: u16,
    },
    String {
        string_index: u16,
    },
    MemberRef {
        tag: u8,
        class_index: u16,
        name_and_type_index: u16,
    },
    NameAndType {
        name_index: u16,
        descriptor_index: u16,
    },
    /// MethodHandle, MethodType, Dynamic, InvokeDynamic, Module, Package:
    /// kept only so that indexes line up.
    Opaque(u8),
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ClassFileError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        match end {
            Some(end) => {
                let slice = &self.bytes[self.pos..end];
                self.pos = end;
                Ok(slice)
            }
            None => Err(ClassFileError::Truncated {
                expected: self.pos.saturating_add(n),
                actual: self.bytes.len(),
            }),
        }
    }

    fn u8(&mut self) -> Result<u8, ClassFileError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, ClassFileError> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32, ClassFileError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn u64(&mut self) -> Result<u64, ClassFileError> {
        let b = self.take(8)?;
        Ok(u64::from_be_bytes(b.try_into().expect("eight bytes")))
    }

    fn skip_attributes(&mut self) -> Result<(), ClassFileError> {
        let count = self.u16()?;
        for _ in 0..count {
            self.u16()?;
            let len = self.u32()? as usize;
            self.take(len)?;
        }
        Ok(())
    }
}

struct Pool(Vec<PoolEntry>);

impl Pool {
    fn get(&self, index: u16) -> Result<&PoolEntry, ClassFileError> {
        match self.0.get(index as usize) {
            None | Some(PoolEntry::Unusable) => Err(ClassFileError::PoolReference {
                index,
                reason: format!("out of range for pool of {} slots", self.0.len()),
            }),
            Some(entry) => Ok(entry),
        }
    }

    fn utf8(&self, index: u16) -> Result<&str, ClassFileError> {
        match self.get(index)? {
            PoolEntry::Utf8(s) => Ok(s),
            other => Err(wrong_tag(index, "Utf8", other)),
        }
    }

    /// A Class entry's name, converted to dotted form.
    fn class_name(&self, index: u16) -> Result<String, ClassFileError> {
        match self.get(index)? {
            PoolEntry::Class { name_index } => {
                let internal = self.utf8(*name_index)?;
                let dotted = internal.replace('/', ".");
                if internal.contains('.') || !super::types::is_valid_binary_name(&dotted) {
                    return Err(ClassFileError::InvalidName(format!(
                        "malformed class name {internal:?}"
                    )));
                }
                Ok(dotted)
            }
            other => Err(wrong_tag(index, "Class", other)),
        }
    }
}

/// Checks that an entry's own pool references point at entries of the
/// right kind.
fn check_references(pool: &Pool, entry: &PoolEntry) -> Result<(), ClassFileError> {
    match entry {
        PoolEntry::Class { name_index } => pool.utf8(*name_index).map(|_| ()),
        PoolEntry::String { string_index } => pool.utf8(*string_index).map(|_| ()),
        PoolEntry::MemberRef {
            class_index,
            name_and_type_index,
            ..
        } => {
            match pool.get(*class_index)? {
                PoolEntry::Class { .. } => {}
                other => return Err(wrong_tag(*class_index, "Class", other)),
            }
            match pool.get(*name_and_type_index)? {
                PoolEntry::NameAndType { .. } => Ok(()),
                other => Err(wrong_tag(*name_and_type_index, "NameAndType", other)),
            }
        }
        PoolEntry::NameAndType {
            name_index,
            descriptor_index,
        } => {
            pool.utf8(*name_index)?;
            pool.utf8(*descriptor_index).map(|_| ())
        }
        _ => Ok(()),
    }
}

fn wrong_tag(index: u16, wanted: &str, found: &PoolEntry) -> ClassFileError {
    ClassFileError::PoolReference {
        index,
        reason: format!("expected {wanted}, found {}", entry_name(found)),
    }
}

fn entry_name(entry: &PoolEntry) -> &'static str {
    match entry {
        PoolEntry::Unusable => "unusable slot",
        PoolEntry::Utf8(_) => "Utf8",
        PoolEntry::Integer(_) => "Integer",
        PoolEntry::Float(_) => "Float",
        PoolEntry::Long(_) => "Long",
        PoolEntry::Double(_) => "Double",
        PoolEntry::Class { .. } => "Class",
        PoolEntry::String { .. } => "String",
        PoolEntry::MemberRef { .. } => "member reference",
        PoolEntry::NameAndType { .. } => "NameAndType",
        PoolEntry::Opaque(_) => "opaque entry",
    }
}

fn read_pool(r: &mut Reader<'_>) -> Result<Pool, ClassFileError> {
    let count = r.u16()?;
    let mut entries = Vec::with_capacity(count as usize);
    entries.push(PoolEntry::Unusable);
    let mut index: u16 = 1;
    while index < count {
        let tag = r.u8()?;
        let entry = match tag {
            1 => {
                let len = r.u16()? as usize;
                let raw = r.take(len)?;
                PoolEntry::Utf8(mutf8::decode(raw).ok_or(ClassFileError::InvalidUtf8 { index })?)
            }
            3 => PoolEntry::Integer(r.u32()? as i32),
            4 => PoolEntry::Float(r.u32()?),
            5 => PoolEntry::Long(r.u64()? as i64),
            6 => PoolEntry::Double(r.u64()?),
            7 => PoolEntry::Class {
                name_index: r.u16()?,
            },
            8 => PoolEntry::String {
                string_index: r.u16()?,
            },
            9..=11 => PoolEntry::MemberRef {
                tag,
                class_index: r.u16()?,
                name_and_type_index: r.u16()?,
            },
            12 => PoolEntry::NameAndType {
                name_index: r.u16()?,
                descriptor_index: r.u16()?,
            },
            15 => {
                r.take(3)?;
                PoolEntry::Opaque(tag)
            }
            16 | 19 | 20 => {
                r.take(2)?;
                PoolEntry::Opaque(tag)
            }
            17 | 18 => {
                r.take(4)?;
                PoolEntry::Opaque(tag)
            }
            _ => return Err(ClassFileError::UnsupportedTag { index, tag }),
        };
        let wide = matches!(entry, PoolEntry::Long(_) | PoolEntry::Double(_));
        entries.push(entry);
        index += 1;
        if wide {
            if index >= count {
                return Err(ClassFileError::PoolReference {
                    index: index - 1,
                    reason: "eight-byte constant in the last pool slot".into(),
                });
            }
            entries.push(PoolEntry::Unusable);
            index += 1;
        }
    }
    let pool = Pool(entries);
    for entry in &pool.0 {
        check_references(&pool, entry)?;
    }
    Ok(pool)
}

/// Decodes a class file into its exposed surface.
///
/// Never panics: every malformed input yields a [`ClassFileError`].
pub fn parse_classfile(bytes: &[u8]) -> Result<ClassInfo, ClassFileError> {
    let mut r = Reader { bytes, pos: 0 };
    let magic = r.u32()?;
    if magic != MAGIC {
        return Err(ClassFileError::BadMagic { found: magic });
    }
    let _minor = r.u16()?;
    let major = r.u16()?;
    if major < MIN_MAJOR_VERSION {
        return Err(ClassFileError::UnsupportedVersion(major));
    }
    let pool = read_pool(&mut r)?;

    let access_flags = r.u16()?;
    let this_class = r.u16()?;
    let qualified_name = pool.class_name(this_class)?;
    let super_class = r.u16()?;
    let superclass_name = match super_class {
        0 => None,
        idx => Some(pool.class_name(idx)?),
    };
    let interface_count = r.u16()?;
    let interface_names = (0..interface_count)
        .map(|_| {
            let idx = r.u16()?;
            pool.class_name(idx)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let field_count = r.u16()?;
    let mut fields = Vec::with_capacity(field_count as usize);
    for _ in 0..field_count {
        let access_flags = r.u16()?;
        let name = pool.utf8(r.u16()?)?.to_string();
        let type_name = parse_field_descriptor(pool.utf8(r.u16()?)?)?;
        r.skip_attributes()?;
        fields.push(FieldInfo {
            access_flags,
            name,
            type_name,
        });
    }

    let method_count = r.u16()?;
    let mut methods = Vec::with_capacity(method_count as usize);
    for _ in 0..method_count {
        let access_flags = r.u16()?;
        let name = pool.utf8(r.u16()?)?.to_string();
        let descriptor = parse_descriptor(pool.utf8(r.u16()?)?)?;
        r.skip_attributes()?;
        methods.push(MethodInfo::new(
            access_flags,
            MethodSignature::new(name, descriptor.parameter_types, descriptor.return_type),
        ));
    }

    r.skip_attributes()?;
    if r.pos != bytes.len() {
        return Err(ClassFileError::TrailingBytes {
            count: bytes.len() - r.pos,
        });
    }

    Ok(ClassInfo {
        access_flags,
        qualified_name,
        superclass_name,
        interface_names,
        fields,
        methods,
        source_file_name: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_bytes_are_bad_magic() {
        assert_eq!(
            parse_classfile(&[0, 0, 0, 0]),
            Err(ClassFileError::BadMagic { found: 0 })
        );
    }

    #[test]
    fn short_input_is_truncated() {
        assert_eq!(
            parse_classfile(&[0xCA, 0xFE]),
            Err(ClassFileError::Truncated {
                expected: 4,
                actual: 2
            })
        );
    }

    #[test]
    fn old_versions_rejected() {
        let bytes = [0xCA, 0xFE, 0xBA, 0xBE, 0, 0, 0, 44];
        assert_eq!(
            parse_classfile(&bytes),
            Err(ClassFileError::UnsupportedVersion(44))
        );
    }

    fn header(pool: &[u8], pool_count: u16) -> Vec<u8> {
        let mut b = vec![0xCA, 0xFE, 0xBA, 0xBE, 0, 0, 0, 52];
        b.extend_from_slice(&pool_count.to_be_bytes());
        b.extend_from_slice(pool);
        b
    }

    #[test]
    fn this_class_pointing_at_utf8_is_a_pool_error() {
        // pool: #1 Utf8 "A"
        let mut b = header(&[1, 0, 1, b'A'], 2);
        b.extend_from_slice(&[0, 0x21, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(
            parse_classfile(&b),
            Err(ClassFileError::PoolReference { index: 1, .. })
        ));
    }

    #[test]
    fn long_takes_two_slots() {
        // #1 Long, #2 unusable, #3 Utf8 "A", #4 Class #3
        let mut pool = vec![5, 0, 0, 0, 0, 0, 0, 0, 7];
        pool.extend_from_slice(&[1, 0, 1, b'A', 7, 0, 3]);
        let mut b = header(&pool, 5);
        b.extend_from_slice(&[0, 0x21, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let info = parse_classfile(&b).unwrap();
        assert_eq!(info.qualified_name, "A");
        assert_eq!(info.superclass_name, None);

        // referencing the shadow slot is an error
        let mut b = header(&pool, 5);
        b.extend_from_slice(&[0, 0x21, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(
            parse_classfile(&b),
            Err(ClassFileError::PoolReference { index: 2, .. })
        ));
    }

    #[test]
    fn unknown_tag() {
        let b = header(&[2, 0, 0], 2);
        assert_eq!(
            parse_classfile(&b),
            Err(ClassFileError::UnsupportedTag { index: 1, tag: 2 })
        );
    }
}
