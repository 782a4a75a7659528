use crate::aslt::{attr, AsltNode, NodeKind};
use crate::classfile::{
    ClassInfo, FieldInfo, MethodInfo, MethodSignature, TypeName, ACC_ABSTRACT, ACC_FINAL,
    ACC_PRIVATE, ACC_PROTECTED, ACC_PUBLIC, ACC_STATIC, ACC_SUPER, CONSTRUCTOR_NAME,
};

use super::resolve::{qualify, unit_package, TypeResolver};

fn flags(node: &AsltNode) -> u16 {
    node.attr(attr::MODIFIERS)
        .unwrap_or_default()
        .split(' ')
        .map(|m| match m {
            "public" => ACC_PUBLIC,
            "private" => ACC_PRIVATE,
            "protected" => ACC_PROTECTED,
            "static" => ACC_STATIC,
            "final" => ACC_FINAL,
            "abstract" => ACC_ABSTRACT,
            _ => 0,
        })
        .fold(0, |a, b| a | b)
}

/// The surface a compiler would expose for each class declared in `unit`:
/// its fields and methods plus the implicit public no-argument constructor.
pub fn declared_class_infos(unit: &AsltNode, resolver: &TypeResolver) -> Vec<ClassInfo> {
    let package = unit_package(unit);
    let mut out = Vec::new();
    for class in unit.children_of_kind(NodeKind::ClassDeclaration) {
        let mut info = ClassInfo::new(qualify(package, class.name().unwrap_or_default()));
        info.access_flags = (flags(class) & (ACC_PUBLIC | ACC_FINAL | ACC_ABSTRACT)) | ACC_SUPER;
        info.superclass_name = Some(
            class
                .attr(attr::EXTENDS)
                .map(|s| resolver.resolve_class_name(s, package))
                .unwrap_or_else(|| "java.lang.Object".to_string()),
        );
        if let Some(list) = class.attr(attr::IMPLEMENTS) {
            info.interface_names = list
                .split(',')
                .map(|n| resolver.resolve_class_name(n, package))
                .collect();
        }
        for member in &class.children {
            let name = member.name().unwrap_or_default().to_string();
            let declared = resolver.resolve_type_ref(&member.children[0], package);
            match member.kind {
                NodeKind::FieldDeclaration => info.fields.push(FieldInfo {
                    access_flags: flags(member),
                    name,
                    type_name: declared,
                }),
                NodeKind::MethodDeclaration => {
                    let params = member
                        .children_of_kind(NodeKind::ParameterDeclaration)
                        .map(|p| resolver.resolve_type_ref(&p.children[0], package))
                        .collect();
                    info.methods.push(MethodInfo::new(
                        flags(member),
                        MethodSignature::new(name, params, declared),
                    ));
                }
                _ => {}
            }
        }
        info.methods.push(MethodInfo::new(
            ACC_PUBLIC,
            MethodSignature::new(CONSTRUCTOR_NAME, Vec::new(), TypeName::Void),
        ));
        out.push(info);
    }
    out
}
