//! Brute-force reference for the comparison step.

use aslt_analyser::analysis::{CallSite, Location, MismatchKind, ResolvedType};
use aslt_analyser::classfile::{ClassInfo, MethodSignature, Primitive, TypeName};

use Primitive::*;

/// Primitive widening conversions, written out pair by pair.
pub const WIDENING: &[(Primitive, Primitive)] = &[
    (Byte, Short),
    (Byte, Int),
    (Byte, Long),
    (Byte, Float),
    (Byte, Double),
    (Short, Int),
    (Short, Long),
    (Short, Float),
    (Short, Double),
    (Char, Int),
    (Char, Long),
    (Char, Float),
    (Char, Double),
    (Int, Long),
    (Int, Float),
    (Int, Double),
    (Long, Float),
    (Long, Double),
    (Float, Double),
];

fn assignable(param: &TypeName, arg: &TypeName, widening: bool) -> bool {
    if param == arg {
        return true;
    }
    match (arg, param) {
        (TypeName::Primitive(a), TypeName::Primitive(p)) => {
            widening && WIDENING.contains(&(*a, *p))
        }
        _ => false,
    }
}

fn pair_matches(sig: &MethodSignature, call: &CallSite, widening: bool) -> bool {
    if sig.parameter_types.len() != call.argument_types.len() {
        return false;
    }
    for i in 0..sig.parameter_types.len() {
        match &call.argument_types[i] {
            ResolvedType::Known(a) if assignable(&sig.parameter_types[i], a, widening) => {}
            _ => return false,
        }
    }
    match &call.expected_return {
        None => true,
        Some(r) => *r == sig.return_type,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    pub location: Location,
    pub called_method: String,
    pub kind: MismatchKind,
    pub expected_parameters: Option<Vec<TypeName>>,
}

/// Enumerates every (call, same-name signature) pair.
pub fn oracle(calls: &[CallSite], classes: &[ClassInfo], widening: bool) -> Vec<Finding> {
    let mut out = Vec::new();
    for call in calls {
        let receiver = match &call.receiver_class {
            ResolvedType::Known(t) => t.to_string(),
            ResolvedType::Unresolved => "?".to_string(),
        };
        let mut finding = Finding {
            location: call.location.clone(),
            called_method: format!("{receiver}.{}", call.invoked_name),
            kind: MismatchKind::UnknownClass,
            expected_parameters: None,
        };
        let class = match &call.receiver_class {
            ResolvedType::Known(TypeName::Reference(n)) => {
                classes.iter().find(|c| &c.qualified_name == n)
            }
            _ => None,
        };
        let Some(class) = class else {
            out.push(finding);
            continue;
        };
        let mut pairs = Vec::new();
        for m in &class.methods {
            let s = &m.signature;
            let hidden =
                (s.name == "<init>" || s.name == "<clinit>") && call.invoked_name != "<init>";
            if s.name == call.invoked_name && !hidden {
                pairs.push(s);
            }
        }
        if pairs.is_empty() {
            finding.kind = MismatchKind::UnknownMethod;
            out.push(finding);
            continue;
        }
        if pairs.iter().any(|s| pair_matches(s, call, widening)) {
            continue;
        }
        let n = call.argument_types.len();
        let nearest = pairs
            .iter()
            .find(|s| s.parameter_types.len() == n)
            .unwrap_or(&pairs[0]);
        finding.expected_parameters = Some(nearest.parameter_types.clone());
        finding.kind = if call.argument_types.contains(&ResolvedType::Unresolved) {
            MismatchKind::UnresolvedArgument
        } else if nearest.parameter_types.len() != n {
            MismatchKind::ArityMismatch
        } else if (0..n).any(|i| {
            !assignable(
                &nearest.parameter_types[i],
                call.argument_types[i].known().unwrap(),
                widening,
            )
        }) {
            MismatchKind::ParamTypeMismatch
        } else {
            MismatchKind::ReturnTypeMismatch
        };
        out.push(finding);
    }
    out.sort();
    out
}

pub fn findings_of(reports: &[aslt_analyser::MismatchReport]) -> Vec<Finding> {
    let mut out: Vec<Finding> = reports
        .iter()
        .map(|r| Finding {
            location: r.location.clone(),
            called_method: r.called_method.clone(),
            kind: r.kind,
            expected_parameters: r.expected_parameters.clone(),
        })
        .collect();
    out.sort();
    out
}
