//! Field and method descriptor decoding.

use thiserror::Error;

use super::types::{is_valid_binary_name, Primitive, TypeName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("descriptor {descriptor:?} at byte {offset}: {reason}")]
pub struct DescriptorError {
    pub descriptor: String,
    pub offset: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDescriptor {
    pub parameter_types: Vec<TypeName>,
    pub return_type: TypeName,
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn fail<T>(&self, offset: usize, reason: &'static str) -> Result<T, DescriptorError> {
        Err(DescriptorError {
            descriptor: self.text.to_string(),
            offset,
            reason,
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn value_type(&mut self) -> Result<TypeName, DescriptorError> {
        let start = self.pos;
        let mut dims: usize = 0;
        while self.peek() == Some(b'[') {
            dims += 1;
            self.pos += 1;
        }
        if dims > 255 {
            return self.fail(start, "more than 255 array dimensions");
        }
        let element = match self.peek() {
            None => return self.fail(self.pos, "unexpected end of descriptor"),
            Some(b'V') => return self.fail(self.pos, "void is not a value type"),
            Some(b'L') => {
                let name_start = self.pos + 1;
                let Some(len) = self.bytes[name_start..].iter().position(|&b| b == b';') else {
                    return self.fail(self.pos, "reference type without terminating `;`");
                };
                let internal = &self.text[name_start..name_start + len];
                let dotted = internal.replace('/', ".");
                if internal.contains('.') || !is_valid_binary_name(&dotted) {
                    return self.fail(name_start, "malformed class name");
                }
                self.pos = name_start + len + 1;
                TypeName::Reference(dotted)
            }
            Some(code) => match Primitive::from_descriptor_code(code) {
                Some(p) => {
                    self.pos += 1;
                    TypeName::Primitive(p)
                }
                None => return self.fail(self.pos, "unknown type code"),
            },
        };
        Ok(TypeName::array_of(element, dims as u8))
    }
}

/// Decodes a method descriptor such as `(ILjava/lang/String;)V`.
pub fn parse_descriptor(text: &str) -> Result<MethodDescriptor, DescriptorError> {
    let mut cur = Cursor::new(text);
    if cur.peek() != Some(b'(') {
        return cur.fail(0, "method descriptor must start with `(`");
    }
    cur.pos = 1;
    let mut parameter_types = Vec::new();
    loop {
        match cur.peek() {
            Some(b')') => {
                cur.pos += 1;
                break;
            }
            None => return cur.fail(cur.pos, "unbalanced parentheses"),
            Some(_) => parameter_types.push(cur.value_type()?),
        }
    }
    let return_type = if cur.peek() == Some(b'V') {
        cur.pos += 1;
        TypeName::Void
    } else {
        cur.value_type()?
    };
    if cur.pos != text.len() {
        return cur.fail(cur.pos, "trailing characters after return type");
    }
    Ok(MethodDescriptor {
        parameter_types,
        return_type,
    })
}

/// Decodes a field descriptor such as `[Ljava/lang/Object;`.
pub fn parse_field_descriptor(text: &str) -> Result<TypeName, DescriptorError> {
    let mut cur = Cursor::new(text);
    let ty = cur.value_type()?;
    if cur.pos != text.len() {
        return cur.fail(cur.pos, "trailing characters after field type");
    }
    Ok(ty)
}

/// Encodes a method shape back to descriptor form.
pub fn encode_descriptor(parameter_types: &[TypeName], return_type: &TypeName) -> String {
    let mut out = String::from("(");
    for p in parameter_types {
        p.write_descriptor(&mut out);
    }
    out.push(')');
    return_type.write_descriptor(&mut out);
    out
}
