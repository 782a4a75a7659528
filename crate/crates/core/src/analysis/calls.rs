use std::fmt;

use serde::Serialize;

use crate::aslt::{attr, AsltNode, LiteralCategory, NodeKind};
use crate::classfile::{Primitive, TypeName, CONSTRUCTOR_NAME};

use super::bindings::{Scope, VariableTable};
use super::resolve::{package_of, qualify, unit_package, ClassIndex, ResolvedType, TypeResolver};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Location {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// One invocation in caller source.
///
/// `expected_return` is `None` when the surrounding code places no demand on
/// the result. Object creations are call sites named `<init>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CallSite {
    pub caller_class: String,
    pub caller_method: String,
    pub receiver_class: ResolvedType,
    pub invoked_name: String,
    pub argument_types: Vec<ResolvedType>,
    pub expected_return: Option<TypeName>,
    pub location: Location,
}

impl CallSite {
    pub fn is_constructor_call(&self) -> bool {
        self.invoked_name == CONSTRUCTOR_NAME
    }
}

impl fmt::Display for CallSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{} {}",
            self.caller_class, self.caller_method, self.invoked_name
        )
    }
}

/// Everything needed to type expressions of one compilation unit.
#[derive(Debug, Clone, Copy)]
pub struct ResolutionContext<'a> {
    pub table: &'a VariableTable,
    pub classes: &'a ClassIndex<'a>,
    pub resolver: &'a TypeResolver,
}

fn literal_type(node: &AsltNode) -> ResolvedType {
    let value = node.attr(attr::VALUE).unwrap_or_default();
    let last = value.chars().last();
    let ty = match node
        .attr(attr::CATEGORY)
        .and_then(LiteralCategory::from_name)
    {
        Some(LiteralCategory::Integer) if matches!(last, Some('L' | 'l')) => {
            TypeName::Primitive(Primitive::Long)
        }
        Some(LiteralCategory::Integer) => TypeName::Primitive(Primitive::Int),
        Some(LiteralCategory::Floating) if matches!(last, Some('F' | 'f')) => {
            TypeName::Primitive(Primitive::Float)
        }
        Some(LiteralCategory::Floating) => TypeName::Primitive(Primitive::Double),
        Some(LiteralCategory::String) => TypeName::reference("java.lang.String"),
        Some(LiteralCategory::Char) => TypeName::Primitive(Primitive::Char),
        Some(LiteralCategory::Boolean) => TypeName::Primitive(Primitive::Boolean),
        None => return ResolvedType::Unresolved,
    };
    ResolvedType::Known(ty)
}

/// The static type of an argument expression.
///
/// A nested invocation takes the return type of its only same-arity
/// candidate, or of its only exactly matching overload.
pub fn resolve_argument_type(
    arg: &AsltNode,
    ctx: &ResolutionContext<'_>,
    scope: &Scope,
) -> ResolvedType {
    match arg.kind {
        NodeKind::IdentifierExpression => {
            let name = arg.name().unwrap_or_default();
            if name == "this" {
                return ResolvedType::Known(TypeName::reference(&scope.class_name));
            }
            match ctx.table.lookup(scope, name) {
                Some(b) => ResolvedType::Known(b.declared_type.clone()),
                None => ResolvedType::Unresolved,
            }
        }
        NodeKind::LiteralTag => literal_type(arg),
        NodeKind::NewObjectExpression => {
            let name = arg.attr(attr::TYPE).unwrap_or_default();
            let resolved = ctx
                .resolver
                .resolve_class_name(name, package_of(&scope.class_name));
            ResolvedType::Known(TypeName::Reference(resolved))
        }
        NodeKind::MethodInvokeExpression => invocation_return(arg, ctx, scope),
        _ => ResolvedType::Unresolved,
    }
}

fn invocation_return(
    invoke: &AsltNode,
    ctx: &ResolutionContext<'_>,
    scope: &Scope,
) -> ResolvedType {
    let Some(TypeName::Reference(class_name)) =
        resolve_receiver(invoke, ctx, scope).known().cloned()
    else {
        return ResolvedType::Unresolved;
    };
    let Some(class) = ctx.classes.get(&class_name) else {
        return ResolvedType::Unresolved;
    };
    let name = invoke.name().unwrap_or_default();
    let args = invoke.arguments();
    let same_arity: Vec<_> = class
        .methods_named(name)
        .filter(|m| {
            !m.signature.is_initializer() && m.signature.parameter_types.len() == args.len()
        })
        .collect();
    if let [only] = same_arity.as_slice() {
        return ResolvedType::Known(only.signature.return_type.clone());
    }
    let arg_types: Vec<ResolvedType> = args
        .iter()
        .map(|a| resolve_argument_type(a, ctx, scope))
        .collect();
    let mut exact = same_arity.iter().filter(|m| {
        m.signature
            .parameter_types
            .iter()
            .zip(&arg_types)
            .all(|(p, a)| a.known() == Some(p))
    });
    match (exact.next(), exact.next()) {
        (Some(m), None) => ResolvedType::Known(m.signature.return_type.clone()),
        _ => ResolvedType::Unresolved,
    }
}

/// The class a method invocation is dispatched on.
///
/// No receiver or `this` means the enclosing class; an identifier is a
/// variable if bound, otherwise a static call when it names a known class.
pub fn resolve_receiver(
    invoke: &AsltNode,
    ctx: &ResolutionContext<'_>,
    scope: &Scope,
) -> ResolvedType {
    let Some(receiver) = invoke.receiver() else {
        return ResolvedType::Known(TypeName::reference(&scope.class_name));
    };
    if receiver.kind != NodeKind::IdentifierExpression {
        return resolve_argument_type(receiver, ctx, scope);
    }
    let name = receiver.name().unwrap_or_default();
    if name == "this" {
        return ResolvedType::Known(TypeName::reference(&scope.class_name));
    }
    if let Some(b) = ctx.table.lookup(scope, name) {
        return ResolvedType::Known(b.declared_type.clone());
    }
    let package = package_of(&scope.class_name);
    if let Some(class) = ctx.resolver.lookup_class(name, package) {
        return ResolvedType::Known(TypeName::Reference(class));
    }
    let resolved = ctx.resolver.resolve_class_name(name, package);
    if ctx.classes.get(&resolved).is_some() {
        return ResolvedType::Known(TypeName::Reference(resolved));
    }
    ResolvedType::Unresolved
}

struct Collector<'c, 'a> {
    ctx: &'c ResolutionContext<'a>,
    file: String,
    out: Vec<CallSite>,
}

impl Collector<'_, '_> {
    /// Calls are located at the opening parenthesis of their argument list.
    fn location(&self, node: &AsltNode) -> Location {
        let span = node
            .child_of_kind(NodeKind::ArgumentList)
            .map_or(node.span, |a| a.span);
        Location {
            file: self.file.clone(),
            line: span.start.line,
            column: span.start.column,
        }
    }

    fn expression(
        &mut self,
        node: &AsltNode,
        scope: &Scope,
        caller: &str,
        expected: Option<TypeName>,
    ) {
        match node.kind {
            NodeKind::MethodInvokeExpression => {
                let site = CallSite {
                    caller_class: scope.class_name.clone(),
                    caller_method: caller.to_string(),
                    receiver_class: resolve_receiver(node, self.ctx, scope),
                    invoked_name: node.name().unwrap_or_default().to_string(),
                    argument_types: node
                        .arguments()
                        .iter()
                        .map(|a| resolve_argument_type(a, self.ctx, scope))
                        .collect(),
                    expected_return: expected,
                    location: self.location(node),
                };
                self.out.push(site);
                if let Some(r) = node.receiver() {
                    self.expression(r, scope, caller, None);
                }
            }
            NodeKind::NewObjectExpression => {
                let class = match resolve_argument_type(node, self.ctx, scope) {
                    ResolvedType::Known(TypeName::Reference(c)) => c,
                    _ => String::new(),
                };
                if self.ctx.classes.get(&class).is_some() {
                    let site = CallSite {
                        caller_class: scope.class_name.clone(),
                        caller_method: caller.to_string(),
                        receiver_class: ResolvedType::Known(TypeName::Reference(class)),
                        invoked_name: CONSTRUCTOR_NAME.to_string(),
                        argument_types: node
                            .arguments()
                            .iter()
                            .map(|a| resolve_argument_type(a, self.ctx, scope))
                            .collect(),
                        expected_return: None,
                        location: self.location(node),
                    };
                    self.out.push(site);
                }
            }
            _ => return,
        }
        for arg in node.arguments() {
            self.expression(arg, scope, caller, None);
        }
    }

    fn statement(&mut self, stmt: &AsltNode, scope: &Scope, caller: &str) {
        match stmt.kind {
            NodeKind::VariableDeclaration => {
                let package = package_of(&scope.class_name);
                let ty = self
                    .ctx
                    .resolver
                    .resolve_type_ref(&stmt.children[0], package);
                for decl in stmt.children_of_kind(NodeKind::VariableDeclarator) {
                    if let Some(init) = decl.children.first() {
                        self.expression(init, scope, caller, Some(ty.clone()));
                    }
                }
            }
            NodeKind::ExpressionStatement => {
                let inner = &stmt.children[0];
                if inner.kind == NodeKind::SimpleAssignmentOperatorExpression {
                    let target = inner.children[0].name().unwrap_or_default();
                    let expected = self
                        .ctx
                        .table
                        .lookup(scope, target)
                        .map(|b| b.declared_type.clone());
                    self.expression(&inner.children[1], scope, caller, expected);
                } else {
                    self.expression(inner, scope, caller, None);
                }
            }
            NodeKind::ReturnStatement => {
                if let Some(value) = stmt.children.first() {
                    self.expression(value, scope, caller, None);
                }
            }
            _ => {}
        }
    }
}

fn collect(unit: &AsltNode, ctx: &ResolutionContext<'_>) -> Vec<CallSite> {
    let package = unit_package(unit);
    let mut c = Collector {
        ctx,
        file: unit.attr(attr::FILE).unwrap_or_default().to_string(),
        out: Vec::new(),
    };
    for class in unit.children_of_kind(NodeKind::ClassDeclaration) {
        let class_name = qualify(package, class.name().unwrap_or_default());
        for (ordinal, member) in class.children.iter().enumerate() {
            match member.kind {
                NodeKind::FieldDeclaration => {
                    if let Some(init) = member.children.get(1) {
                        let scope = Scope::class(&class_name);
                        let ty = ctx.resolver.resolve_type_ref(&member.children[0], package);
                        c.expression(init, &scope, CONSTRUCTOR_NAME, Some(ty));
                    }
                }
                NodeKind::MethodDeclaration => {
                    let method_name = member.name().unwrap_or_default();
                    let scope = Scope::method(&class_name, method_name, ordinal);
                    if let Some(block) = member.children.last() {
                        for stmt in &block.children {
                            c.statement(stmt, &scope, method_name);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    c.out
}

/// One call site per method invocation, in source (pre-)order.
pub fn get_all_method_calls(unit: &AsltNode, ctx: &ResolutionContext<'_>) -> Vec<CallSite> {
    let mut calls = collect(unit, ctx);
    calls.retain(|c| !c.is_constructor_call());
    calls
}

/// One call site per object creation whose class is among the callee
/// classes; creations of unavailable classes are not checked.
pub fn get_all_constructor_calls(unit: &AsltNode, ctx: &ResolutionContext<'_>) -> Vec<CallSite> {
    let mut calls = collect(unit, ctx);
    calls.retain(CallSite::is_constructor_call);
    calls
}
