use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::aslt::{attr, AsltNode, NodeKind};
use crate::classfile::{ClassInfo, Primitive, TypeName};

/// Implicitly available names for the unqualified forms the subset allows.
pub const DEFAULT_IMPORTS: &[(&str, &str)] = &[
    ("String", "java.lang.String"),
    ("Object", "java.lang.Object"),
];

/// A statically determined type, or the admission that none could be found.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResolvedType {
    Known(TypeName),
    Unresolved,
}

impl ResolvedType {
    pub fn known(&self) -> Option<&TypeName> {
        match self {
            ResolvedType::Known(t) => Some(t),
            ResolvedType::Unresolved => None,
        }
    }

    pub fn is_unresolved(&self) -> bool {
        matches!(self, ResolvedType::Unresolved)
    }
}

impl From<TypeName> for ResolvedType {
    fn from(t: TypeName) -> Self {
        ResolvedType::Known(t)
    }
}

impl fmt::Display for ResolvedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolvedType::Known(t) => write!(f, "{t}"),
            ResolvedType::Unresolved => f.write_str("<unresolved>"),
        }
    }
}

impl Serialize for ResolvedType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn package_of(qualified: &str) -> Option<&str> {
    qualified.rsplit_once('.').map(|(p, _)| p)
}

/// The package named by a compilation unit, if it declares one.
pub fn unit_package(unit: &AsltNode) -> Option<&str> {
    unit.child_of_kind(NodeKind::PackageDeclaration)
        .and_then(|p| p.name())
}

pub fn qualify(package: Option<&str>, simple: &str) -> String {
    match package {
        Some(p) => format!("{p}.{simple}"),
        None => simple.to_string(),
    }
}

/// Canonicalizes source-level type names to qualified names.
///
/// A simple name resolves to a project class in the same package, then to
/// the only project class with that simple name, then through
/// [`DEFAULT_IMPORTS`]; anything else is taken verbatim.
#[derive(Debug, Clone, Default)]
pub struct TypeResolver {
    by_simple: BTreeMap<String, Vec<String>>,
}

impl TypeResolver {
    pub fn new<I, S>(qualified_names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut by_simple: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for name in qualified_names {
            let name = name.into();
            let simple = name.rsplit('.').next().unwrap_or(&name).to_string();
            let entry = by_simple.entry(simple).or_default();
            if !entry.contains(&name) {
                entry.push(name);
            }
        }
        for names in by_simple.values_mut() {
            names.sort();
        }
        Self { by_simple }
    }

    /// Every class declared in `trees` plus every class in `classes`.
    pub fn from_project(trees: &[AsltNode], classes: &[ClassInfo]) -> Self {
        let mut names: Vec<String> = classes.iter().map(|c| c.qualified_name.clone()).collect();
        for unit in trees {
            let package = unit_package(unit);
            for class in unit.children_of_kind(NodeKind::ClassDeclaration) {
                if let Some(n) = class.name() {
                    names.push(qualify(package, n));
                }
            }
        }
        Self::new(names)
    }

    /// Whether `qualified` is a class of the project.
    pub fn is_project_class(&self, qualified: &str) -> bool {
        let simple = qualified.rsplit('.').next().unwrap_or(qualified);
        self.by_simple
            .get(simple)
            .is_some_and(|names| names.iter().any(|n| n == qualified))
    }

    /// Resolves a possibly unqualified class name as seen from `package`.
    pub fn resolve_class_name(&self, name: &str, package: Option<&str>) -> String {
        if name.contains('.') {
            return name.to_string();
        }
        if let Some(candidates) = self.by_simple.get(name) {
            let local = qualify(package, name);
            if candidates.contains(&local) {
                return local;
            }
            if let [only] = candidates.as_slice() {
                return only.clone();
            }
        }
        DEFAULT_IMPORTS
            .iter()
            .find(|(short, _)| *short == name)
            .map(|(_, full)| full.to_string())
            .unwrap_or_else(|| name.to_string())
    }

    /// Like [`resolve_class_name`](Self::resolve_class_name) but also
    /// reports whether the result is a project class.
    pub fn lookup_class(&self, name: &str, package: Option<&str>) -> Option<String> {
        let resolved = self.resolve_class_name(name, package);
        self.is_project_class(&resolved).then_some(resolved)
    }

    /// The type written by a `TypeReference` node.
    pub fn resolve_type_ref(&self, node: &AsltNode, package: Option<&str>) -> TypeName {
        let name = node.name().unwrap_or_default();
        let dims = node
            .attr(attr::DIMS)
            .and_then(|d| d.parse::<u8>().ok())
            .unwrap_or(0);
        let base = if name == "void" {
            TypeName::Void
        } else if let Some(p) = Primitive::from_keyword(name) {
            TypeName::Primitive(p)
        } else {
            TypeName::Reference(self.resolve_class_name(name, package))
        };
        TypeName::array_of(base, dims)
    }
}

/// Lookup of callee classes by qualified name. The first class with a given
/// name wins.
#[derive(Debug, Clone)]
pub struct ClassIndex<'a> {
    classes: &'a [ClassInfo],
    by_name: HashMap<&'a str, &'a ClassInfo>,
}

impl<'a> ClassIndex<'a> {
    pub fn new(classes: &'a [ClassInfo]) -> Self {
        let mut by_name = HashMap::new();
        for c in classes {
            by_name.entry(c.qualified_name.as_str()).or_insert(c);
        }
        Self { classes, by_name }
    }

    pub fn get(&self, name: &str) -> Option<&'a ClassInfo> {
        self.by_name.get(name).copied()
    }

    pub fn classes(&self) -> &'a [ClassInfo] {
        self.classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_name_resolution_order() {
        let r = TypeResolver::new(["p.A", "q.A", "q.B", "String"]);
        assert_eq!(r.resolve_class_name("A", Some("p")), "p.A");
        assert_eq!(r.resolve_class_name("A", Some("q")), "q.A");
        assert_eq!(r.resolve_class_name("A", None), "A");
        assert_eq!(r.resolve_class_name("B", Some("p")), "q.B");
        assert_eq!(r.resolve_class_name("String", Some("p")), "String");
        assert_eq!(r.resolve_class_name("Object", None), "java.lang.Object");
        assert_eq!(r.resolve_class_name("Thing", None), "Thing");
        assert_eq!(r.resolve_class_name("x.Y", None), "x.Y");
        assert_eq!(r.lookup_class("B", None).as_deref(), Some("q.B"));
        assert_eq!(r.lookup_class("Thing", None), None);
    }

    #[test]
    fn default_imports_without_project() {
        let r = TypeResolver::default();
        assert_eq!(r.resolve_class_name("String", None), "java.lang.String");
    }

    #[test]
    fn type_references() {
        let r = TypeResolver::default();
        let arr = AsltNode::new(NodeKind::TypeReference)
            .with_attr(attr::NAME, "String")
            .with_attr(attr::DIMS, "2");
        assert_eq!(
            r.resolve_type_ref(&arr, None).to_string(),
            "java.lang.String[][]"
        );
        let prim = AsltNode::new(NodeKind::TypeReference).with_attr(attr::NAME, "long");
        assert_eq!(
            r.resolve_type_ref(&prim, None),
            TypeName::Primitive(Primitive::Long)
        );
    }

    #[test]
    fn index_keeps_first_duplicate() {
        let mut a = ClassInfo::new("A");
        a.source_file_name = Some("one".into());
        let mut b = ClassInfo::new("A");
        b.source_file_name = Some("two".into());
        let classes = [a, b];
        let index = ClassIndex::new(&classes);
        assert_eq!(
            index.get("A").unwrap().source_file_name.as_deref(),
            Some("one")
        );
        assert!(index.get("B").is_none());
    }
}
