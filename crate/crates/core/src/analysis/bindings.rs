use std::fmt;

use serde::Serialize;

use crate::aslt::{AsltNode, NodeKind};
use crate::classfile::TypeName;
use crate::diagnostics::{Diagnostic, Severity};

use super::resolve::{qualify, unit_package, TypeResolver};

/// Where a variable is visible: a whole class (fields) or one method body.
///
/// Methods are told apart by their position among the class's members so
/// that overloads get separate scopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Scope {
    pub class_name: String,
    pub method_name: Option<String>,
    pub method_ordinal: Option<usize>,
}

impl Scope {
    pub fn class(class_name: impl Into<String>) -> Self {
        Self {
            class_name: class_name.into(),
            method_name: None,
            method_ordinal: None,
        }
    }

    pub fn method(
        class_name: impl Into<String>,
        method_name: impl Into<String>,
        ordinal: usize,
    ) -> Self {
        Self {
            class_name: class_name.into(),
            method_name: Some(method_name.into()),
            method_ordinal: Some(ordinal),
        }
    }

    pub fn enclosing_class(&self) -> Scope {
        Scope::class(self.class_name.clone())
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.method_name {
            Some(m) => write!(f, "{}.{m}", self.class_name),
            None => f.write_str(&self.class_name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VariableBinding {
    pub variable_name: String,
    pub declared_type: TypeName,
    pub scope: Scope,
}

impl fmt::Display for VariableBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} in {}",
            self.declared_type, self.variable_name, self.scope
        )
    }
}

/// Every binding of one compilation unit, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VariableTable {
    pub bindings: Vec<VariableBinding>,
    pub diagnostics: Vec<Diagnostic>,
}

impl VariableTable {
    /// The binding `name` refers to inside `scope`: a method-local binding
    /// if there is one, else a field of the enclosing class.
    pub fn lookup(&self, scope: &Scope, name: &str) -> Option<&VariableBinding> {
        let find = |s: &Scope| {
            self.bindings
                .iter()
                .find(|b| &b.scope == s && b.variable_name == name)
        };
        find(scope).or_else(|| find(&scope.enclosing_class()))
    }

    fn add(&mut self, binding: VariableBinding, file: Option<&str>) {
        let duplicate = self
            .bindings
            .iter()
            .any(|b| b.scope == binding.scope && b.variable_name == binding.variable_name);
        if duplicate {
            self.diagnostics.push(Diagnostic::new(
                Severity::Warning,
                file.map(str::to_string),
                format!(
                    "duplicate variable `{}` in {}; keeping the first",
                    binding.variable_name, binding.scope
                ),
            ));
        } else {
            self.bindings.push(binding);
        }
    }
}

/// Collects fields, parameters and local variables of every class in a
/// compilation unit.
pub fn get_all_variables_types(unit: &AsltNode, resolver: &TypeResolver) -> VariableTable {
    let mut table = VariableTable::default();
    let package = unit_package(unit);
    let file = unit.attr(crate::aslt::attr::FILE);
    for class in unit.children_of_kind(NodeKind::ClassDeclaration) {
        let class_name = qualify(package, class.name().unwrap_or_default());
        for member in class.children_of_kind(NodeKind::FieldDeclaration) {
            let ty = resolver.resolve_type_ref(&member.children[0], package);
            let binding = VariableBinding {
                variable_name: member.name().unwrap_or_default().to_string(),
                declared_type: ty,
                scope: Scope::class(&class_name),
            };
            table.add(binding, file);
        }
        for (ordinal, method) in class.children.iter().enumerate() {
            if method.kind != NodeKind::MethodDeclaration {
                continue;
            }
            let scope = Scope::method(&class_name, method.name().unwrap_or_default(), ordinal);
            for param in method.children_of_kind(NodeKind::ParameterDeclaration) {
                let binding = VariableBinding {
                    variable_name: param.name().unwrap_or_default().to_string(),
                    declared_type: resolver.resolve_type_ref(&param.children[0], package),
                    scope: scope.clone(),
                };
                table.add(binding, file);
            }
            for decl in method
                .walk()
                .filter(|n| n.kind == NodeKind::VariableDeclaration)
            {
                let ty = resolver.resolve_type_ref(&decl.children[0], package);
                for declarator in decl.children_of_kind(NodeKind::VariableDeclarator) {
                    let binding = VariableBinding {
                        variable_name: declarator.name().unwrap_or_default().to_string(),
                        declared_type: ty.clone(),
                        scope: scope.clone(),
                    };
                    table.add(binding, file);
                }
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aslt::parse_source;
    use crate::classfile::Primitive;

    fn table(src: &str) -> VariableTable {
        let unit = parse_source(src, "T.java").unwrap();
        get_all_variables_types(
            &unit,
            &TypeResolver::from_project(std::slice::from_ref(&unit), &[]),
        )
    }

    #[test]
    fn string_local() {
        let t = table("class SampleClassA { void m() { String str = \"x\"; } }");
        assert_eq!(
            t.bindings,
            vec![VariableBinding {
                variable_name: "str".into(),
                declared_type: TypeName::reference("java.lang.String"),
                scope: Scope::method("SampleClassA", "m", 0),
            }]
        );
        assert_eq!(t.bindings[0].scope.to_string(), "SampleClassA.m");
    }

    #[test]
    fn nothing_declared() {
        assert!(table("class A { void m() { f(); } }").bindings.is_empty());
    }

    #[test]
    fn parameter_shadows_field() {
        let t = table("class A { long n; void m(int n) {} void k() {} }");
        assert_eq!(t.bindings.len(), 2);
        let in_m = Scope::method("A", "m", 1);
        let in_k = Scope::method("A", "k", 2);
        assert_eq!(
            t.lookup(&in_m, "n").unwrap().declared_type,
            TypeName::Primitive(Primitive::Int)
        );
        assert_eq!(
            t.lookup(&in_k, "n").unwrap().declared_type,
            TypeName::Primitive(Primitive::Long)
        );
        assert!(t.lookup(&in_k, "ghost").is_none());
    }

    #[test]
    fn duplicates_keep_first() {
        let t = table("class A { void m(int a) { String a; double b, c; } }");
        assert_eq!(t.bindings.len(), 3);
        assert_eq!(
            t.bindings[0].declared_type,
            TypeName::Primitive(Primitive::Int)
        );
        assert_eq!(t.diagnostics.len(), 1);
        assert!(t.diagnostics[0].message.contains("`a`"));
    }

    #[test]
    fn packages_and_project_types() {
        let t = table("package p; class A { B b; C[] cs; } class B {}");
        assert_eq!(t.bindings[0].declared_type, TypeName::reference("p.B"));
        assert_eq!(t.bindings[0].scope, Scope::class("p.A"));
        assert_eq!(t.bindings[1].declared_type.to_string(), "C[]");
    }
}
