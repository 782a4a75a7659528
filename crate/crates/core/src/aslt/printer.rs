//! Deterministic source printer: four-space indentation, one statement per
//! line, a blank line between members and between classes.

use super::lexer::{
    is_ident_continue, is_ident_start, is_keyword, tokenize, LiteralCategory, TokenCategory,
};
use super::node::{attr, validate, AsltNode, MalformedTree, NodeKind};

const INDENT: &str = "    ";

fn bad<T>(node: &AsltNode, reason: impl Into<String>) -> Result<T, MalformedTree> {
    Err(MalformedTree {
        kind: node.kind,
        reason: reason.into(),
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(is_ident_start) && chars.all(is_ident_continue) && !is_keyword(s)
}

fn is_qualified(s: &str) -> bool {
    s.split('.').all(is_identifier)
}

fn ident<'a>(node: &'a AsltNode, key: &str) -> Result<&'a str, MalformedTree> {
    let v = node.attr(key).unwrap_or_default();
    if is_identifier(v) {
        Ok(v)
    } else {
        bad(node, format!("`{key}` is not an identifier: {v:?}"))
    }
}

fn qualified<'a>(node: &'a AsltNode, key: &str) -> Result<&'a str, MalformedTree> {
    let v = node.attr(key).unwrap_or_default();
    if is_qualified(v) {
        Ok(v)
    } else {
        bad(node, format!("`{key}` is not a qualified name: {v:?}"))
    }
}

fn modifiers(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    if let Some(mods) = node.attr(attr::MODIFIERS) {
        for m in mods.split(' ') {
            if !super::parser::MODIFIERS.contains(&m) {
                return bad(node, format!("unknown modifier {m:?}"));
            }
            out.push_str(m);
            out.push(' ');
        }
    }
    Ok(())
}

fn type_ref(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    let name = node.name().unwrap_or_default();
    let ok =
        name == "void" || super::parser::PRIMITIVE_KEYWORDS.contains(&name) || is_qualified(name);
    if !ok {
        return bad(node, format!("invalid type name {name:?}"));
    }
    out.push_str(name);
    if let Some(d) = node.attr(attr::DIMS).and_then(|d| d.parse::<u8>().ok()) {
        for _ in 0..d {
            out.push_str("[]");
        }
    }
    Ok(())
}

fn literal(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    let value = node.attr(attr::VALUE).unwrap_or_default();
    let category = node
        .attr(attr::CATEGORY)
        .and_then(LiteralCategory::from_name)
        .expect("validated");
    let numeric = matches!(
        category,
        LiteralCategory::Integer | LiteralCategory::Floating
    );
    let body = match value.strip_prefix('-') {
        Some(rest) if numeric => rest,
        _ => value,
    };
    let lexes_back = tokenize(body).is_ok_and(|toks| {
        toks.len() == 2
            && toks[0].lexeme == body
            && toks[0].category.literal_category() == Some(category)
            && toks[0].category != TokenCategory::EndOfInput
    });
    if !lexes_back {
        return bad(
            node,
            format!("{value:?} is not a {} literal", category.as_str()),
        );
    }
    out.push_str(value);
    Ok(())
}

fn arguments(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    out.push('(');
    for (i, arg) in node.arguments().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        expression(arg, out)?;
    }
    out.push(')');
    Ok(())
}

fn expression(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    match node.kind {
        NodeKind::IdentifierExpression => {
            let name = node.name().unwrap_or_default();
            if name != "this" && !is_qualified(name) {
                return bad(node, format!("invalid identifier {name:?}"));
            }
            out.push_str(name);
        }
        NodeKind::LiteralTag => literal(node, out)?,
        NodeKind::NewObjectExpression => {
            out.push_str("new ");
            out.push_str(qualified(node, attr::TYPE)?);
            arguments(node, out)?;
        }
        NodeKind::MethodInvokeExpression => {
            if let Some(recv) = node.receiver() {
                expression(recv, out)?;
                out.push('.');
            }
            out.push_str(ident(node, attr::NAME)?);
            arguments(node, out)?;
        }
        _ => return bad(node, "not an expression"),
    }
    Ok(())
}

fn statement(node: &AsltNode, depth: usize, out: &mut String) -> Result<(), MalformedTree> {
    out.push_str(&INDENT.repeat(depth));
    match node.kind {
        NodeKind::ReturnStatement => {
            out.push_str("return");
            if let Some(value) = node.children.first() {
                out.push(' ');
                expression(value, out)?;
            }
        }
        NodeKind::VariableDeclaration => {
            type_ref(&node.children[0], out)?;
            out.push(' ');
            for (i, decl) in node.children[1..].iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(ident(decl, attr::NAME)?);
                if let Some(init) = decl.children.first() {
                    out.push_str(" = ");
                    expression(init, out)?;
                }
            }
        }
        NodeKind::ExpressionStatement => {
            let inner = &node.children[0];
            if inner.kind == NodeKind::SimpleAssignmentOperatorExpression {
                let target = &inner.children[0];
                out.push_str(ident(target, attr::NAME)?);
                out.push_str(" = ");
                expression(&inner.children[1], out)?;
            } else {
                expression(inner, out)?;
            }
        }
        _ => return bad(node, "not a statement"),
    }
    out.push_str(";\n");
    Ok(())
}

fn member(node: &AsltNode, depth: usize, out: &mut String) -> Result<(), MalformedTree> {
    let pad = INDENT.repeat(depth);
    out.push_str(&pad);
    modifiers(node, out)?;
    type_ref(&node.children[0], out)?;
    out.push(' ');
    out.push_str(ident(node, attr::NAME)?);
    match node.kind {
        NodeKind::FieldDeclaration => {
            if let Some(init) = node.children.get(1) {
                out.push_str(" = ");
                expression(init, out)?;
            }
            out.push_str(";\n");
        }
        NodeKind::MethodDeclaration => {
            let n = node.children.len();
            out.push('(');
            for (i, p) in node.children[1..n - 1].iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                type_ref(&p.children[0], out)?;
                out.push(' ');
                out.push_str(ident(p, attr::NAME)?);
            }
            out.push_str(") {");
            let block = &node.children[n - 1];
            if block.children.is_empty() {
                out.push_str("}\n");
            } else {
                out.push('\n');
                for stmt in &block.children {
                    statement(stmt, depth + 1, out)?;
                }
                out.push_str(&pad);
                out.push_str("}\n");
            }
        }
        _ => return bad(node, "not a member"),
    }
    Ok(())
}

fn class(node: &AsltNode, out: &mut String) -> Result<(), MalformedTree> {
    modifiers(node, out)?;
    out.push_str("class ");
    out.push_str(ident(node, attr::NAME)?);
    if node.attr(attr::EXTENDS).is_some() {
        out.push_str(" extends ");
        out.push_str(qualified(node, attr::EXTENDS)?);
    }
    if let Some(list) = node.attr(attr::IMPLEMENTS) {
        out.push_str(" implements ");
        for (i, name) in list.split(',').enumerate() {
            if !is_qualified(name) {
                return bad(node, format!("invalid interface name {name:?}"));
            }
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(name);
        }
    }
    if node.children.is_empty() {
        out.push_str(" {}\n");
        return Ok(());
    }
    out.push_str(" {\n");
    for (i, m) in node.children.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        member(m, 1, out)?;
    }
    out.push_str("}\n");
    Ok(())
}

/// Prints a `CompilationUnit` tree back to source.
///
/// `parse_source(&print_source(t)?, file)` yields a tree structurally equal
/// to `t`.
pub fn print_source(tree: &AsltNode) -> Result<String, MalformedTree> {
    if tree.kind != NodeKind::CompilationUnit {
        return bad(tree, "printing starts at a CompilationUnit");
    }
    validate(tree)?;
    let mut out = String::new();
    for (i, child) in tree.children.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match child.kind {
            NodeKind::PackageDeclaration => {
                out.push_str("package ");
                out.push_str(qualified(child, attr::NAME)?);
                out.push_str(";\n");
            }
            _ => class(child, &mut out)?,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aslt::parse_source;

    fn fixpoint(src: &str) {
        let tree = parse_source(src, "T.java").unwrap();
        let printed = print_source(&tree).unwrap();
        let again = parse_source(&printed, "T.java").unwrap();
        assert!(tree.same_structure(&again), "{printed}");
        assert_eq!(print_source(&again).unwrap(), printed);
    }

    #[test]
    fn minimal_class_fixpoint() {
        fixpoint("class A { void m ( ) { } }");
        let tree = parse_source("class A { void m ( ) { } }", "T.java").unwrap();
        assert_eq!(
            print_source(&tree).unwrap(),
            "class A {\n    void m() {}\n}\n"
        );
    }

    #[test]
    fn layout() {
        let src = "package p; public class A extends B implements I,J { int n = -3; static String f(int a, String[] b) { int x = 5, y; y = g(x); b.h(this, 'c', \"s\\\"q\"); return new A(); } } class C {}";
        let printed = print_source(&parse_source(src, "T.java").unwrap()).unwrap();
        assert_eq!(
            printed,
            "package p;\n\npublic class A extends B implements I, J {\n    int n = -3;\n\n    static String f(int a, String[] b) {\n        int x = 5, y;\n        y = g(x);\n        b.h(this, 'c', \"s\\\"q\");\n        return new A();\n    }\n}\n\nclass C {}\n"
        );
        fixpoint(src);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let bad_ident = AsltNode::new(NodeKind::CompilationUnit)
            .with_attr(attr::FILE, "x")
            .with_child(AsltNode::new(NodeKind::ClassDeclaration).with_attr(attr::NAME, "class"));
        assert!(print_source(&bad_ident).is_err());
        let not_unit = AsltNode::new(NodeKind::Block);
        assert!(print_source(&not_unit).is_err());
        let lit = AsltNode::new(NodeKind::LiteralTag)
            .with_attr(attr::VALUE, "12")
            .with_attr(attr::CATEGORY, "string");
        let mut out = String::new();
        assert!(expression(&lit, &mut out).is_err());
    }
}
