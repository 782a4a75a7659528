use std::fmt;

use serde::Serialize;

use crate::classfile::{format_type_list, ClassInfo, MethodSignature, TypeName};

use super::calls::{CallSite, Location};
use super::resolve::{ClassIndex, ResolvedType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MismatchKind {
    UnknownClass,
    UnknownMethod,
    ArityMismatch,
    ParamTypeMismatch,
    ReturnTypeMismatch,
    UnresolvedArgument,
}

impl MismatchKind {
    pub const ALL: [MismatchKind; 6] = [
        MismatchKind::UnknownClass,
        MismatchKind::UnknownMethod,
        MismatchKind::ArityMismatch,
        MismatchKind::ParamTypeMismatch,
        MismatchKind::ReturnTypeMismatch,
        MismatchKind::UnresolvedArgument,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MismatchKind::UnknownClass => "UnknownClass",
            MismatchKind::UnknownMethod => "UnknownMethod",
            MismatchKind::ArityMismatch => "ArityMismatch",
            MismatchKind::ParamTypeMismatch => "ParamTypeMismatch",
            MismatchKind::ReturnTypeMismatch => "ReturnTypeMismatch",
            MismatchKind::UnresolvedArgument => "UnresolvedArgument",
        }
    }
}

impl fmt::Display for MismatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One entry of the error collection.
///
/// `expected_parameters` and `given_return` describe the callee's declared
/// signature and are `None` when no candidate exists (unknown class or
/// method). `expected_return` is what the caller's context demands, `None`
/// meaning unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MismatchReport {
    pub aslt_class_name: String,
    pub called_class_file: Option<String>,
    pub called_method: String,
    pub expected_parameters: Option<Vec<TypeName>>,
    pub given_parameters: Vec<ResolvedType>,
    pub expected_return: Option<TypeName>,
    pub given_return: Option<TypeName>,
    pub kind: MismatchKind,
    pub location: Location,
}

impl MismatchReport {
    pub fn expected_parameters_text(&self) -> String {
        match &self.expected_parameters {
            Some(p) => format_type_list(p),
            None => "n/a".into(),
        }
    }

    pub fn given_parameters_text(&self) -> String {
        format_type_list(&self.given_parameters)
    }

    pub fn expected_return_text(&self) -> String {
        match &self.expected_return {
            Some(t) => t.to_string(),
            None => "unconstrained".into(),
        }
    }

    pub fn given_return_text(&self) -> String {
        match &self.given_return {
            Some(t) => t.to_string(),
            None => "n/a".into(),
        }
    }
}

/// Whether `call` can be dispatched to `sig`.
pub fn signature_matches(sig: &MethodSignature, call: &CallSite, widening: bool) -> bool {
    sig.parameter_types.len() == call.argument_types.len()
        && sig
            .parameter_types
            .iter()
            .zip(&call.argument_types)
            .all(|(p, a)| a.known().is_some_and(|a| p.accepts(a, widening)))
        && call
            .expected_return
            .as_ref()
            .is_none_or(|r| *r == sig.return_type)
}

fn classify(sig: &MethodSignature, call: &CallSite, widening: bool) -> MismatchKind {
    if call.argument_types.iter().any(ResolvedType::is_unresolved) {
        return MismatchKind::UnresolvedArgument;
    }
    if sig.parameter_types.len() != call.argument_types.len() {
        return MismatchKind::ArityMismatch;
    }
    let params_ok = sig
        .parameter_types
        .iter()
        .zip(&call.argument_types)
        .all(|(p, a)| a.known().is_some_and(|a| p.accepts(a, widening)));
    if !params_ok {
        MismatchKind::ParamTypeMismatch
    } else {
        MismatchKind::ReturnTypeMismatch
    }
}

fn receiver_name(call: &CallSite) -> Option<&str> {
    match &call.receiver_class {
        ResolvedType::Known(TypeName::Reference(name)) => Some(name),
        _ => None,
    }
}

/// Checks one call; `None` means it conforms.
pub fn check_call(
    call: &CallSite,
    classes: &ClassIndex<'_>,
    widening: bool,
) -> Option<MismatchReport> {
    let receiver = match &call.receiver_class {
        ResolvedType::Known(t) => t.to_string(),
        ResolvedType::Unresolved => "?".to_string(),
    };
    let mut report = MismatchReport {
        aslt_class_name: call.caller_class.clone(),
        called_class_file: None,
        called_method: format!("{receiver}.{}", call.invoked_name),
        expected_parameters: None,
        given_parameters: call.argument_types.clone(),
        expected_return: call.expected_return.clone(),
        given_return: None,
        kind: MismatchKind::UnknownClass,
        location: call.location.clone(),
    };
    let Some(class) = receiver_name(call).and_then(|n| classes.get(n)) else {
        return Some(report);
    };
    report.called_class_file = class.source_file_name.clone();
    let candidates = candidates(class, call);
    if candidates.is_empty() {
        report.kind = MismatchKind::UnknownMethod;
        return Some(report);
    }
    if candidates
        .iter()
        .any(|sig| signature_matches(sig, call, widening))
    {
        return None;
    }
    let nearest = candidates
        .iter()
        .find(|sig| sig.parameter_types.len() == call.argument_types.len())
        .unwrap_or(&candidates[0]);
    report.expected_parameters = Some(nearest.parameter_types.clone());
    report.given_return = Some(nearest.return_type.clone());
    report.kind = classify(nearest, call, widening);
    Some(report)
}

/// Same-name signatures in declaration order. Named calls never see
/// constructors or static initializers.
fn candidates<'a>(class: &'a ClassInfo, call: &'a CallSite) -> Vec<&'a MethodSignature> {
    class
        .methods_named(&call.invoked_name)
        .map(|m| &m.signature)
        .filter(|s| call.is_constructor_call() || !s.is_initializer())
        .collect()
}

/// Compares every call against the callee classes.
///
/// Reports are ordered by location; calls at the same location keep their
/// input order.
pub fn method_called(
    calls: &[CallSite],
    classes: &[ClassInfo],
    widening: bool,
) -> Vec<MismatchReport> {
    let index = ClassIndex::new(classes);
    let mut reports: Vec<MismatchReport> = calls
        .iter()
        .filter_map(|c| check_call(c, &index, widening))
        .collect();
    reports.sort_by(|a, b| a.location.cmp(&b.location));
    reports
}
