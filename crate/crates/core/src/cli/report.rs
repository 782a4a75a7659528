use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::MismatchReport;
use crate::aslt::render_tree;
use crate::classfile::{format_type_list, ClassInfo};
use crate::config::DebugLevel;
use crate::diagnostics::Diagnostic;

use super::run::AnalysisRun;

pub const FIELD_LABELS: [&str; 7] = [
    "ASLT class name",
    "called class file",
    "called method",
    "expected parameters",
    "given parameters",
    "expected return type",
    "given return type",
];

fn summary_line(count: usize) -> String {
    if count == 1 {
        "1 error".to_string()
    } else {
        format!("{count} errors")
    }
}

/// The labeled block for one report.
pub fn render_report(index: usize, report: &MismatchReport) -> String {
    let values = [
        report.aslt_class_name.clone(),
        report
            .called_class_file
            .clone()
            .unwrap_or_else(|| "n/a".into()),
        report.called_method.clone(),
        report.expected_parameters_text(),
        report.given_parameters_text(),
        report.expected_return_text(),
        report.given_return_text(),
    ];
    let mut out = format!(
        "error {}: {} at {}\n",
        index + 1,
        report.kind,
        report.location
    );
    for (label, value) in FIELD_LABELS.iter().zip(values) {
        let _ = writeln!(out, "  {:<22}{value}", format!("{label}:"));
    }
    out
}

fn essential_class_info(class: &ClassInfo, out: &mut String) {
    let file = class.source_file_name.as_deref().unwrap_or("n/a");
    let _ = writeln!(out, "class {} ({file})", class.qualified_name);
    let _ = writeln!(
        out,
        "  superclass: {}",
        class.superclass_name.as_deref().unwrap_or("none")
    );
    if !class.interface_names.is_empty() {
        let _ = writeln!(out, "  interfaces: {}", class.interface_names.join(", "));
    }
    for f in &class.fields {
        let _ = writeln!(out, "  field {}: {}", f.name, f.type_name);
    }
    for m in &class.methods {
        let sig = &m.signature;
        let _ = writeln!(
            out,
            "  method {}{} -> {}",
            sig.name,
            format_type_list(&sig.parameter_types),
            sig.return_type
        );
    }
}

fn full_class_info(class: &ClassInfo, out: &mut String) {
    let file = class.source_file_name.as_deref().unwrap_or("n/a");
    let _ = writeln!(out, "class file {file}");
    let _ = writeln!(
        out,
        "  this_class: {} flags=0x{:04x}",
        class.qualified_name, class.access_flags
    );
    let _ = writeln!(
        out,
        "  super_class: {}",
        class.superclass_name.as_deref().unwrap_or("none")
    );
    let _ = writeln!(out, "  interfaces: [{}]", class.interface_names.join(", "));
    for f in &class.fields {
        let _ = writeln!(
            out,
            "  field {} {} flags=0x{:04x}",
            f.name,
            f.type_name.descriptor(),
            f.access_flags
        );
    }
    for m in &class.methods {
        let _ = writeln!(
            out,
            "  method {}{} flags=0x{:04x}",
            m.signature.name,
            m.signature.descriptor(),
            m.access_flags
        );
    }
}

/// Text rendering of a run: report blocks and the summary, then the
/// debug-level sections.
pub fn show_all_errors(run: &AnalysisRun) -> String {
    let mut out = String::new();
    for (i, r) in run.reports.iter().enumerate() {
        out.push_str(&render_report(i, r));
        out.push('\n');
    }
    out.push_str(&summary_line(run.reports.len()));
    out.push('\n');

    let level = run.config.debug_level;
    if level >= DebugLevel::Essential {
        out.push_str("\nclass information\n");
        for class in &run.class_infos {
            essential_class_info(class, &mut out);
        }
    }
    if level >= DebugLevel::Full {
        out.push_str("\naslt trees\n");
        for t in &run.aslt_trees {
            let _ = writeln!(out, "tree {}", t.file);
            out.push_str(&render_tree(&t.tree, level));
        }
        out.push_str("\nclass files\n");
        for class in &run.class_infos {
            full_class_info(class, &mut out);
        }
        out.push_str("\ncall sites\n");
        for c in &run.call_sites {
            let _ = writeln!(out, "<ASLTJavaMethod>: {c} at {}", c.location);
        }
    }
    out
}

/// Diagnostics for standard error. Notices appear from debug level 1 on.
pub fn render_diagnostics(run: &AnalysisRun) -> String {
    let show_notices = run.config.debug_level >= DebugLevel::Essential;
    run.diagnostics
        .iter()
        .filter(|d| show_notices || d.severity != crate::diagnostics::Severity::Notice)
        .map(|d| format!("{d}\n"))
        .collect()
}

#[derive(Serialize)]
struct Summary {
    error_count: usize,
    classes_scanned: usize,
    calls_checked: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    errors: &'a [MismatchReport],
    diagnostics: &'a [Diagnostic],
    summary: Summary,
}

pub fn render_json(run: &AnalysisRun) -> String {
    let doc = JsonReport {
        errors: &run.reports,
        diagnostics: &run.diagnostics,
        summary: Summary {
            error_count: run.reports.len(),
            classes_scanned: run.class_infos.len(),
            calls_checked: run.call_sites.len(),
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serialization");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{Location, MismatchKind, ResolvedType};
    use crate::classfile::{Primitive, TypeName};

    fn report() -> MismatchReport {
        MismatchReport {
            aslt_class_name: "SampleClassA".into(),
            called_class_file: Some("SampleClassB.class".into()),
            called_method: "SampleClassB.doSomething".into(),
            expected_parameters: Some(vec![TypeName::Primitive(Primitive::Int)]),
            given_parameters: vec![ResolvedType::Known(TypeName::reference("java.lang.String"))],
            expected_return: None,
            given_return: Some(TypeName::Void),
            kind: MismatchKind::ParamTypeMismatch,
            location: Location {
                file: "SampleClassA.java".into(),
                line: 7,
                column: 9,
            },
        }
    }

    #[test]
    fn block_layout() {
        assert_eq!(
            render_report(0, &report()),
            "error 1: ParamTypeMismatch at SampleClassA.java:7:9\n  \
             ASLT class name:      SampleClassA\n  \
             called class file:    SampleClassB.class\n  \
             called method:        SampleClassB.doSomething\n  \
             expected parameters:  (int)\n  \
             given parameters:     (java.lang.String)\n  \
             expected return type: unconstrained\n  \
             given return type:    void\n"
        );
    }

    #[test]
    fn summary_counts() {
        assert_eq!(summary_line(0), "0 errors");
        assert_eq!(summary_line(1), "1 error");
        assert_eq!(summary_line(4), "4 errors");
    }

    #[test]
    fn json_field_names() {
        let value = serde_json::to_value(report()).unwrap();
        let keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        for key in [
            "aslt_class_name",
            "called_class_file",
            "called_method",
            "expected_parameters",
            "given_parameters",
            "expected_return",
            "given_return",
            "kind",
            "location",
        ] {
            assert!(keys.contains(&key), "{key}");
        }
        assert_eq!(value["expected_parameters"][0], "int");
        assert_eq!(value["kind"], "ParamTypeMismatch");
    }
}
