use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

macro_rules! node_kinds {
    ($($variant:ident => $name:literal,)*) => {
        /// The closed set of ASLT node kinds.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum NodeKind {
            $($variant,)*
        }

        impl NodeKind {
            pub const ALL: &'static [NodeKind] = &[$(NodeKind::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(NodeKind::$variant => $name,)*
                }
            }

            pub fn from_name(name: &str) -> Option<NodeKind> {
                match name {
                    $($name => Some(NodeKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

node_kinds! {
    CompilationUnit => "CompilationUnit",
    PackageDeclaration => "PackageDeclaration",
    ClassDeclaration => "ClassDeclaration",
    FieldDeclaration => "FieldDeclaration",
    MethodDeclaration => "MethodDeclaration",
    ParameterDeclaration => "ParameterDeclaration",
    Block => "Block",
    ExpressionStatement => "ASLTJavaExpressionStatement",
    IdentifierExpression => "ASLTJavaIdentifierExpression",
    LiteralTag => "ASLTJavaLiteralTag",
    MethodInvokeExpression => "ASLTJavaMethodInvokeExpression",
    SimpleAssignmentOperatorExpression => "ASLTJavaSimpleAssignmentOperatorExpression",
    VariableDeclarator => "ASLTJavaVariableDeclarator",
    VariableDeclaration => "ASLTJavaVariableDeclaration",
    NewObjectExpression => "NewObjectExpression",
    ReturnStatement => "ReturnStatement",
    ArgumentList => "ArgumentList",
    TypeReference => "TypeReference",
}

impl NodeKind {
    pub fn is_expression(self) -> bool {
        matches!(
            self,
            NodeKind::IdentifierExpression
                | NodeKind::LiteralTag
                | NodeKind::MethodInvokeExpression
                | NodeKind::NewObjectExpression
        )
    }

    pub fn is_statement(self) -> bool {
        matches!(
            self,
            NodeKind::ExpressionStatement
                | NodeKind::VariableDeclaration
                | NodeKind::ReturnStatement
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Attribute names used by the parser.
pub mod attr {
    pub const FILE: &str = "file";
    pub const NAME: &str = "name";
    pub const MODIFIERS: &str = "modifiers";
    pub const EXTENDS: &str = "extends";
    pub const IMPLEMENTS: &str = "implements";
    pub const DIMS: &str = "dims";
    pub const VALUE: &str = "value";
    pub const CATEGORY: &str = "category";
    pub const TYPE: &str = "type";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl Position {
    pub fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Source range of a node; the end is exclusive. The default span (all zero)
/// marks a node built by hand rather than parsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: Position,
    pub end: Position,
}

impl Span {
    pub fn new(start: Position, end: Position) -> Self {
        Self { start, end }
    }

    pub fn is_unknown(&self) -> bool {
        *self == Span::default()
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AsltNode {
    pub kind: NodeKind,
    pub attributes: BTreeMap<String, String>,
    pub children: Vec<AsltNode>,
    pub span: Span,
}

impl AsltNode {
    pub fn new(kind: NodeKind) -> Self {
        Self {
            kind,
            attributes: BTreeMap::new(),
            children: Vec::new(),
            span: Span::default(),
        }
    }

    pub fn with_attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attributes.insert(key.to_string(), value.into());
        self
    }

    pub fn with_child(mut self, child: AsltNode) -> Self {
        self.children.push(child);
        self
    }

    pub fn with_children(mut self, children: impl IntoIterator<Item = AsltNode>) -> Self {
        self.children.extend(children);
        self
    }

    pub fn with_span(mut self, span: Span) -> Self {
        self.span = span;
        self
    }

    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attributes.get(key).map(String::as_str)
    }

    pub fn name(&self) -> Option<&str> {
        self.attr(attr::NAME)
    }

    pub fn child_of_kind(&self, kind: NodeKind) -> Option<&AsltNode> {
        self.children.iter().find(|c| c.kind == kind)
    }

    pub fn children_of_kind(&self, kind: NodeKind) -> impl Iterator<Item = &AsltNode> {
        self.children.iter().filter(move |c| c.kind == kind)
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Walk<'_> {
        Walk { stack: vec![self] }
    }

    pub fn node_count(&self) -> usize {
        self.walk().count()
    }

    /// A copy with every span reset, for structural comparison.
    pub fn without_spans(&self) -> AsltNode {
        AsltNode {
            kind: self.kind,
            attributes: self.attributes.clone(),
            children: self.children.iter().map(AsltNode::without_spans).collect(),
            span: Span::default(),
        }
    }

    /// Structural equality ignoring spans.
    pub fn same_structure(&self, other: &AsltNode) -> bool {
        self.kind == other.kind
            && self.attributes == other.attributes
            && self.children.len() == other.children.len()
            && self
                .children
                .iter()
                .zip(&other.children)
                .all(|(a, b)| a.same_structure(b))
    }

    // helper accessors for invocation nodes

    /// The receiver expression of a method invocation, if it has one.
    pub fn receiver(&self) -> Option<&AsltNode> {
        if self.kind != NodeKind::MethodInvokeExpression || self.children.len() < 2 {
            return None;
        }
        self.children.first()
    }

    /// Argument expressions of an invocation or object creation.
    pub fn arguments(&self) -> &[AsltNode] {
        self.child_of_kind(NodeKind::ArgumentList)
            .map(|a| a.children.as_slice())
            .unwrap_or(&[])
    }
}

pub struct Walk<'a> {
    stack: Vec<&'a AsltNode>,
}

impl<'a> Iterator for Walk<'a> {
    type Item = &'a AsltNode;

    fn next(&mut self) -> Option<&'a AsltNode> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed {kind} node: {reason}")]
pub struct MalformedTree {
    pub kind: NodeKind,
    pub reason: String,
}

fn malformed<T>(node: &AsltNode, reason: impl Into<String>) -> Result<T, MalformedTree> {
    Err(MalformedTree {
        kind: node.kind,
        reason: reason.into(),
    })
}

fn require_attr<'a>(node: &'a AsltNode, key: &str) -> Result<&'a str, MalformedTree> {
    match node.attr(key) {
        Some(v) if !v.is_empty() => Ok(v),
        _ => malformed(node, format!("missing `{key}` attribute")),
    }
}

fn expect_kinds(
    node: &AsltNode,
    allowed: &dyn Fn(NodeKind) -> bool,
    what: &str,
) -> Result<(), MalformedTree> {
    match node.children.iter().find(|c| !allowed(c.kind)) {
        Some(bad) => malformed(
            node,
            format!("unexpected {} child, expected {what}", bad.kind),
        ),
        None => Ok(()),
    }
}

fn leaf(node: &AsltNode) -> Result<(), MalformedTree> {
    if node.children.is_empty() {
        Ok(())
    } else {
        malformed(node, "must not have children")
    }
}

fn expression(node: &AsltNode, parent: &AsltNode) -> Result<(), MalformedTree> {
    if !node.kind.is_expression() {
        return malformed(parent, format!("{} is not an expression", node.kind));
    }
    Ok(())
}

/// Checks the kind-specific shape rules of every node in `tree`.
pub fn validate(tree: &AsltNode) -> Result<(), MalformedTree> {
    use NodeKind::*;
    let n = tree;
    match n.kind {
        CompilationUnit => {
            require_attr(n, attr::FILE)?;
            let mut packages = 0;
            for (i, c) in n.children.iter().enumerate() {
                match c.kind {
                    PackageDeclaration if i == 0 => packages += 1,
                    ClassDeclaration => {}
                    other => return malformed(n, format!("unexpected {other} child")),
                }
            }
            if n.children.len() == packages {
                return malformed(n, "needs at least one class declaration");
            }
        }
        PackageDeclaration => {
            require_attr(n, attr::NAME)?;
            leaf(n)?;
        }
        ClassDeclaration => {
            require_attr(n, attr::NAME)?;
            expect_kinds(
                n,
                &|k| matches!(k, FieldDeclaration | MethodDeclaration),
                "a member",
            )?;
        }
        FieldDeclaration => {
            require_attr(n, attr::NAME)?;
            match n.children.as_slice() {
                [t] | [t, _] if t.kind == TypeReference && t.name() != Some("void") => {}
                _ => return malformed(n, "expects a non-void type and an optional initializer"),
            }
            if let Some(init) = n.children.get(1) {
                expression(init, n)?;
            }
        }
        MethodDeclaration => {
            require_attr(n, attr::NAME)?;
            let ok = n.children.len() >= 2
                && n.children[0].kind == TypeReference
                && n.children.last().is_some_and(|b| b.kind == Block)
                && n.children[1..n.children.len() - 1]
                    .iter()
                    .all(|p| p.kind == ParameterDeclaration);
            if !ok {
                return malformed(n, "expects return type, parameters, then a block");
            }
        }
        ParameterDeclaration => {
            require_attr(n, attr::NAME)?;
            match n.children.as_slice() {
                [t] if t.kind == TypeReference && t.name() != Some("void") => {}
                _ => return malformed(n, "expects exactly one non-void type"),
            }
        }
        Block => expect_kinds(n, &NodeKind::is_statement, "a statement")?,
        ExpressionStatement => match n.children.as_slice() {
            [e] if matches!(
                e.kind,
                MethodInvokeExpression | NewObjectExpression | SimpleAssignmentOperatorExpression
            ) => {}
            _ => return malformed(n, "expects one invocation, creation or assignment"),
        },
        IdentifierExpression => {
            require_attr(n, attr::NAME)?;
            leaf(n)?;
        }
        LiteralTag => {
            require_attr(n, attr::VALUE)?;
            let category = require_attr(n, attr::CATEGORY)?;
            if super::lexer::LiteralCategory::from_name(category).is_none() {
                return malformed(n, format!("unknown literal category {category:?}"));
            }
            leaf(n)?;
        }
        MethodInvokeExpression => {
            require_attr(n, attr::NAME)?;
            match n.children.as_slice() {
                [args] if args.kind == ArgumentList => {}
                [recv, args] if args.kind == ArgumentList => expression(recv, n)?,
                _ => return malformed(n, "expects an optional receiver and one argument list"),
            }
        }
        SimpleAssignmentOperatorExpression => match n.children.as_slice() {
            [target, value] if target.kind == IdentifierExpression => expression(value, n)?,
            _ => return malformed(n, "expects an identifier target and a value"),
        },
        VariableDeclarator => {
            require_attr(n, attr::NAME)?;
            match n.children.as_slice() {
                [] => {}
                [init] => expression(init, n)?,
                _ => return malformed(n, "at most one initializer"),
            }
        }
        VariableDeclaration => {
            let ok = n.children.len() >= 2
                && n.children[0].kind == TypeReference
                && n.children[0].name() != Some("void")
                && n.children[1..].iter().all(|d| d.kind == VariableDeclarator);
            if !ok {
                return malformed(n, "expects a non-void type and at least one declarator");
            }
        }
        NewObjectExpression => {
            require_attr(n, attr::TYPE)?;
            match n.children.as_slice() {
                [args] if args.kind == ArgumentList => {}
                _ => return malformed(n, "expects one argument list"),
            }
        }
        ReturnStatement => match n.children.as_slice() {
            [] => {}
            [e] => expression(e, n)?,
            _ => return malformed(n, "at most one value"),
        },
        ArgumentList => {
            for c in &n.children {
                expression(c, n)?;
            }
        }
        TypeReference => {
            require_attr(n, attr::NAME)?;
            if let Some(d) = n.attr(attr::DIMS) {
                if !d.parse::<u8>().is_ok_and(|d| d >= 1) || n.name() == Some("void") {
                    return malformed(n, format!("invalid dims {d:?}"));
                }
            }
            leaf(n)?;
        }
    }
    for child in &n.children {
        validate(child)?;
    }
    Ok(())
}
