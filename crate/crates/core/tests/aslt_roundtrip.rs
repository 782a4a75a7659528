mod common;

use std::fs;

use proptest::prelude::*;

use aslt_analyser::aslt::{
    parse_source, print_source, read_aslt, validate, write_aslt, AsltNode, NodeKind,
};
use aslt_analyser::cli::SOURCES;
use aslt_analyser::config::NODE_KIND_KEYS;

fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = common::corpus::all_sources()
        .into_iter()
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.extend(
        SOURCES
            .iter()
            .map(|(n, s)| (format!("{n}.java"), s.to_string())),
    );
    out
}

fn spans_nest(node: &AsltNode) -> Result<(), String> {
    for child in &node.children {
        if !node.span.contains(&child.span) {
            return Err(format!(
                "{} {} escapes {} {}",
                child.kind, child.span, node.kind, node.span
            ));
        }
        spans_nest(child)?;
    }
    Ok(())
}

#[test]
fn corpus_print_parse_fixpoint() {
    for (name, src) in corpus() {
        let tree = parse_source(&src, &name).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_source(&tree).unwrap();
        let again = parse_source(&printed, &name).unwrap();
        assert!(tree.same_structure(&again), "{name}");
        assert_eq!(print_source(&again).unwrap(), printed, "{name}");
    }
}

#[test]
fn corpus_write_read_identity() {
    for (name, src) in corpus() {
        let tree = parse_source(&src, &name).unwrap();
        let text = write_aslt(&tree);
        assert_eq!(read_aslt(&text).unwrap(), tree, "{name}");
        assert_eq!(write_aslt(&read_aslt(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn corpus_spans_nest() {
    for (name, src) in corpus() {
        let tree = parse_source(&src, &name).unwrap();
        spans_nest(&tree).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(tree.walk().all(|n| !n.span.is_unknown()), "{name}");
    }
}

#[test]
fn configured_kinds_cover_parsed_expressions() {
    let configured: Vec<&str> = NODE_KIND_KEYS.iter().map(|k| k.as_str()).collect();
    let expected = [
        (NodeKind::ExpressionStatement, "ASLTJavaExpressionStatement"),
        (
            NodeKind::IdentifierExpression,
            "ASLTJavaIdentifierExpression",
        ),
        (NodeKind::LiteralTag, "ASLTJavaLiteralTag"),
        (
            NodeKind::MethodInvokeExpression,
            "ASLTJavaMethodInvokeExpression",
        ),
        (
            NodeKind::SimpleAssignmentOperatorExpression,
            "ASLTJavaSimpleAssignmentOperatorExpression",
        ),
        (NodeKind::VariableDeclarator, "ASLTJavaVariableDeclarator"),
        (NodeKind::VariableDeclaration, "ASLTJavaVariableDeclaration"),
    ];
    let mut seen = std::collections::BTreeSet::new();
    for (name, src) in corpus() {
        for node in parse_source(&src, &name).unwrap().walk() {
            seen.insert(node.kind);
        }
    }
    for (kind, label) in expected {
        assert!(seen.contains(&kind), "corpus lacks {label}");
        assert_eq!(kind.as_str(), label);
        assert!(configured.contains(&label));
    }
}

#[test]
fn sample_caller_aslt_line() {
    let src =
        "class SampleClassA { void m() { String str = \"s\"; sampleClassB.doSomething(str); } }";
    let text = write_aslt(&parse_source(src, "SampleClassA.java").unwrap());
    let line = text
        .lines()
        .find(|l| l.trim_start().starts_with("ASLTJavaMethodInvokeExpression"))
        .unwrap();
    assert!(
        line.starts_with("          ASLTJavaMethodInvokeExpression name=\"doSomething\""),
        "{line}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generated_programs_are_valid(tree in common::gen::program()) {
        prop_assert!(validate(&tree).is_ok());
    }

    #[test]
    fn print_then_parse_is_identity(tree in common::gen::program()) {
        let printed = print_source(&tree).unwrap();
        let parsed = parse_source(&printed, "Gen.java").map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert!(parsed.same_structure(&tree), "{}", printed);
        spans_nest(&parsed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn write_then_read_is_identity(tree in common::gen::program()) {
        prop_assert_eq!(read_aslt(&write_aslt(&tree)).unwrap(), tree);
    }

    #[test]
    fn reading_arbitrary_text_never_panics(text in "[ a-zA-Z\"=@:\\-0-9\\\\\n]{0,200}") {
        let _ = read_aslt(&text);
    }

    #[test]
    fn parsing_arbitrary_text_never_panics(text in "[ a-z{}();,.=\\-\"'0-9\n]{0,200}") {
        let _ = parse_source(&text, "X.java");
    }
}
