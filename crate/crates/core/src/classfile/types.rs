use std::fmt;

use serde::{Serialize, Serializer};

pub const ACC_PUBLIC: u16 = 0x0001;
pub const ACC_PRIVATE: u16 = 0x0002;
pub const ACC_PROTECTED: u16 = 0x0004;
pub const ACC_STATIC: u16 = 0x0008;
pub const ACC_FINAL: u16 = 0x0010;
pub const ACC_SUPER: u16 = 0x0020;
pub const ACC_ABSTRACT: u16 = 0x0400;

pub const CONSTRUCTOR_NAME: &str = "<init>";
pub const STATIC_INITIALIZER_NAME: &str = "<clinit>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    Byte,
    Char,
    Double,
    Float,
    Int,
    Long,
    Short,
    Boolean,
}

impl Primitive {
    pub const ALL: [Primitive; 8] = [
        Primitive::Byte,
        Primitive::Char,
        Primitive::Double,
        Primitive::Float,
        Primitive::Int,
        Primitive::Long,
        Primitive::Short,
        Primitive::Boolean,
    ];

    pub fn descriptor_code(self) -> char {
        match self {
            Primitive::Byte => 'B',
            Primitive::Char => 'C',
            Primitive::Double => 'D',
            Primitive::Float => 'F',
            Primitive::Int => 'I',
            Primitive::Long => 'J',
            Primitive::Short => 'S',
            Primitive::Boolean => 'Z',
        }
    }

    pub fn from_descriptor_code(code: u8) -> Option<Self> {
        Primitive::ALL
            .into_iter()
            .find(|p| p.descriptor_code() as u8 == code)
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Primitive::Byte => "byte",
            Primitive::Char => "char",
            Primitive::Double => "double",
            Primitive::Float => "float",
            Primitive::Int => "int",
            Primitive::Long => "long",
            Primitive::Short => "short",
            Primitive::Boolean => "boolean",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Primitive::ALL.into_iter().find(|p| p.keyword() == word)
    }

    /// Primitive widening conversion: byte→short→int→long→float→double and
    /// char→int. Reflexive pairs are not widenings.
    pub fn widens_to(self, target: Primitive) -> bool {
        use Primitive::*;
        let targets: &[Primitive] = match self {
            Byte => &[Short, Int, Long, Float, Double],
            Short => &[Int, Long, Float, Double],
            Char => &[Int, Long, Float, Double],
            Int => &[Long, Float, Double],
            Long => &[Float, Double],
            Float => &[Double],
            Double | Boolean => &[],
        };
        targets.contains(&target)
    }
}

/// A field, parameter, return or variable type.
///
/// Reference names are dotted (`java.lang.String`). An array's element is
/// never itself an array or `void`; dimensions are counted instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeName {
    Primitive(Primitive),
    Void,
    Reference(String),
    Array { element: Box<TypeName>, dims: u8 },
}

impl TypeName {
    pub fn reference(name: impl Into<String>) -> Self {
        TypeName::Reference(name.into())
    }

    /// Wraps `element` in `dims` array dimensions (`dims == 0` returns it
    /// unchanged). Nested arrays are flattened.
    pub fn array_of(element: TypeName, dims: u8) -> Self {
        if dims == 0 {
            return element;
        }
        match element {
            TypeName::Array { element, dims: d } => TypeName::Array {
                element,
                dims: d.saturating_add(dims),
            },
            other => TypeName::Array {
                element: Box::new(other),
                dims,
            },
        }
    }

    pub fn is_void(&self) -> bool {
        matches!(self, TypeName::Void)
    }

    /// Whether this type is well-formed for a value (not `void`, arrays have
    /// at least one dimension and a non-void, non-array element).
    pub fn is_valid_value_type(&self) -> bool {
        match self {
            TypeName::Void => false,
            TypeName::Primitive(_) => true,
            TypeName::Reference(name) => is_valid_binary_name(name),
            TypeName::Array { element, dims } => {
                *dims >= 1
                    && !matches!(**element, TypeName::Array { .. })
                    && element.is_valid_value_type()
            }
        }
    }

    /// Encodes as a field descriptor (`I`, `Ljava/lang/String;`, `[[D`).
    pub fn descriptor(&self) -> String {
        let mut out = String::new();
        self.write_descriptor(&mut out);
        out
    }

    pub(crate) fn write_descriptor(&self, out: &mut String) {
        match self {
            TypeName::Primitive(p) => out.push(p.descriptor_code()),
            TypeName::Void => out.push('V'),
            TypeName::Reference(name) => {
                out.push('L');
                out.extend(name.chars().map(|c| if c == '.' { '/' } else { c }));
                out.push(';');
            }
            TypeName::Array { element, dims } => {
                for _ in 0..*dims {
                    out.push('[');
                }
                element.write_descriptor(out);
            }
        }
    }

    /// `widening` aside, equality is the only assignability rule.
    pub fn accepts(&self, given: &TypeName, widening: bool) -> bool {
        if self == given {
            return true;
        }
        match (given, self) {
            (TypeName::Primitive(from), TypeName::Primitive(to)) => widening && from.widens_to(*to),
            _ => false,
        }
    }
}

/// Dotted binary names: non-empty segments without descriptor punctuation.
pub(crate) fn is_valid_binary_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .split('.')
            .all(|seg| !seg.is_empty() && !seg.contains(['/', ';', '[', '(', ')']))
}

impl fmt::Display for TypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeName::Primitive(p) => f.write_str(p.keyword()),
            TypeName::Void => f.write_str("void"),
            TypeName::Reference(name) => f.write_str(name),
            TypeName::Array { element, dims } => {
                write!(f, "{element}")?;
                for _ in 0..*dims {
                    f.write_str("[]")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for TypeName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MethodSignature {
    pub name: String,
    pub parameter_types: Vec<TypeName>,
    pub return_type: TypeName,
}

impl MethodSignature {
    pub fn new(
        name: impl Into<String>,
        parameter_types: Vec<TypeName>,
        return_type: TypeName,
    ) -> Self {
        Self {
            name: name.into(),
            parameter_types,
            return_type,
        }
    }

    pub fn descriptor(&self) -> String {
        let mut out = String::from("(");
        for p in &self.parameter_types {
            p.write_descriptor(&mut out);
        }
        out.push(')');
        self.return_type.write_descriptor(&mut out);
        out
    }

    pub fn is_constructor(&self) -> bool {
        self.name == CONSTRUCTOR_NAME
    }

    pub fn is_initializer(&self) -> bool {
        self.name == CONSTRUCTOR_NAME || self.name == STATIC_INITIALIZER_NAME
    }

    /// `(int, java.lang.String)`
    pub fn parameter_list(&self) -> String {
        format_type_list(&self.parameter_types)
    }
}

impl fmt::Display for MethodSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} -> {}",
            self.name,
            self.parameter_list(),
            self.return_type
        )
    }
}

pub fn format_type_list<T: fmt::Display>(types: &[T]) -> String {
    let inner: Vec<String> = types.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MethodInfo {
    pub access_flags: u16,
    pub signature: MethodSignature,
}

impl MethodInfo {
    pub fn new(access_flags: u16, signature: MethodSignature) -> Self {
        Self {
            access_flags,
            signature,
        }
    }

    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldInfo {
    pub access_flags: u16,
    pub name: String,
    pub type_name: TypeName,
}

impl FieldInfo {
    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }
}

/// The exposed surface of one compiled class: what a black-box component
/// promises to its callers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassInfo {
    pub access_flags: u16,
    pub qualified_name: String,
    pub superclass_name: Option<String>,
    pub interface_names: Vec<String>,
    pub fields: Vec<FieldInfo>,
    pub methods: Vec<MethodInfo>,
    /// Project-relative path of the file this was read from, if any.
    pub source_file_name: Option<String>,
}

impl ClassInfo {
    pub fn new(qualified_name: impl Into<String>) -> Self {
        Self {
            access_flags: ACC_PUBLIC | ACC_SUPER,
            qualified_name: qualified_name.into(),
            superclass_name: Some("java.lang.Object".to_string()),
            interface_names: Vec::new(),
            fields: Vec::new(),
            methods: Vec::new(),
            source_file_name: None,
        }
    }

    /// The last segment of the qualified name.
    pub fn simple_name(&self) -> &str {
        self.qualified_name
            .rsplit('.')
            .next()
            .unwrap_or(&self.qualified_name)
    }

    /// Methods called `name`, in declaration order.
    pub fn methods_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a MethodInfo> + 'a {
        self.methods
            .iter()
            .filter(move |m| m.signature.name == name)
    }

    /// Checks the structural invariants, returning the first violation.
    pub fn validate(&self) -> Result<(), String> {
        if !is_valid_binary_name(&self.qualified_name) {
            return Err(format!("invalid class name {:?}", self.qualified_name));
        }
        for name in self.superclass_name.iter().chain(&self.interface_names) {
            if !is_valid_binary_name(name) {
                return Err(format!("invalid supertype name {name:?}"));
            }
        }
        for field in &self.fields {
            if field.name.is_empty() {
                return Err("field with empty name".into());
            }
            if !field.type_name.is_valid_value_type() {
                return Err(format!(
                    "field {} has invalid type {}",
                    field.name, field.type_name
                ));
            }
        }
        for (i, method) in self.methods.iter().enumerate() {
            let sig = &method.signature;
            if sig.name.is_empty() {
                return Err("method with empty name".into());
            }
            if let Some(p) = sig
                .parameter_types
                .iter()
                .find(|p| !p.is_valid_value_type())
            {
                return Err(format!(
                    "method {} has invalid parameter type {p}",
                    sig.name
                ));
            }
            if !sig.return_type.is_void() && !sig.return_type.is_valid_value_type() {
                return Err(format!("method {} has invalid return type", sig.name));
            }
            if self.methods[..i].iter().any(|m| {
                m.signature.name == sig.name && m.signature.parameter_types == sig.parameter_types
            }) {
                return Err(format!(
                    "duplicate method {}{}",
                    sig.name,
                    sig.parameter_list()
                ));
            }
        }
        Ok(())
    }
}
