//! Variable tables, call-site extraction and the comparison against callee
//! signatures.

mod bindings;
mod calls;
mod compare;
mod declared;
mod resolve;

pub use bindings::{get_all_variables_types, Scope, VariableBinding, VariableTable};
pub use calls::{
    get_all_constructor_calls, get_all_method_calls, resolve_argument_type, resolve_receiver,
    CallSite, Location, ResolutionContext,
};
pub use compare::{check_call, method_called, signature_matches, MismatchKind, MismatchReport};
pub use declared::declared_class_infos;
pub use resolve::{
    package_of, qualify, unit_package, ClassIndex, ResolvedType, TypeResolver, DEFAULT_IMPORTS,
};
