//! Random inputs: class-file surfaces, grammar-directed ASLT programs and
//! small caller/callee projects.

use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;
use proptest::sample::select;

use aslt_analyser::aslt::{attr, AsltNode, NodeKind};
use aslt_analyser::classfile::{
    ClassInfo, FieldInfo, MethodInfo, MethodSignature, Primitive, TypeName,
};

// ---- class files ----

const NAME_SEGMENTS: &[&str] = &[
    "Alpha",
    "beta",
    "Γάμμα",
    "日本",
    "a$b",
    "_x",
    "Zed1",
    "nul\u{0}",
    "emoji😀",
];
const MEMBER_NAMES: &[&str] = &[
    "run", "get", "size", "<init>", "<clinit>", "ä", "x", "value$1",
];

pub fn binary_name() -> impl Strategy<Value = String> {
    vec(select(NAME_SEGMENTS), 1..=3).prop_map(|s| s.join("."))
}

pub fn primitive() -> impl Strategy<Value = Primitive> {
    select(Primitive::ALL.to_vec())
}

pub fn value_type() -> impl Strategy<Value = TypeName> {
    let element = prop_oneof![
        primitive().prop_map(TypeName::Primitive),
        binary_name().prop_map(TypeName::Reference),
    ];
    prop_oneof![
        3 => element.clone(),
        1 => (element, 1u8..=255).prop_map(|(e, d)| TypeName::array_of(e, d)),
    ]
}

pub fn return_type() -> impl Strategy<Value = TypeName> {
    prop_oneof![1 => Just(TypeName::Void), 3 => value_type()]
}

fn method() -> impl Strategy<Value = MethodInfo> {
    (
        any::<u16>(),
        select(MEMBER_NAMES),
        vec(value_type(), 0..5),
        return_type(),
    )
        .prop_map(|(flags, name, params, ret)| {
            MethodInfo::new(flags, MethodSignature::new(name, params, ret))
        })
}

fn field() -> impl Strategy<Value = FieldInfo> {
    (any::<u16>(), select(MEMBER_NAMES), value_type()).prop_map(
        |(access_flags, name, type_name)| FieldInfo {
            access_flags,
            name: name.to_string(),
            type_name,
        },
    )
}

/// Valid class surfaces; same-name methods always differ in parameters.
pub fn class_info() -> impl Strategy<Value = ClassInfo> {
    (
        any::<u16>(),
        binary_name(),
        option::of(binary_name()),
        vec(binary_name(), 0..4),
        vec(field(), 0..6),
        vec(method(), 0..10),
    )
        .prop_map(|(flags, name, sup, interfaces, fields, methods)| {
            let mut info = ClassInfo::new(name);
            info.access_flags = flags;
            info.superclass_name = sup;
            info.interface_names = interfaces;
            info.fields = fields;
            for m in methods {
                let clash = info.methods.iter().any(|k| {
                    k.signature.name == m.signature.name
                        && k.signature.parameter_types == m.signature.parameter_types
                });
                if !clash {
                    info.methods.push(m);
                }
            }
            info
        })
}

// ---- ASLT programs ----

const IDENTS: &[&str] = &[
    "a", "b", "foo", "bar", "value", "count", "x1", "y_2", "Thing", "Sample", "run", "item",
];
const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
];
const PRIMITIVES: &[&str] = &[
    "int", "long", "short", "byte", "char", "boolean", "float", "double",
];

fn ident() -> impl Strategy<Value = String> {
    select(IDENTS).prop_map(str::to_string)
}

fn qname() -> impl Strategy<Value = String> {
    vec(select(IDENTS), 1..=3).prop_map(|p| p.join("."))
}

fn modifiers() -> impl Strategy<Value = Option<String>> {
    vec(any::<bool>(), MODIFIERS.len()).prop_map(|picks| {
        let chosen: Vec<&str> = MODIFIERS
            .iter()
            .zip(picks)
            .filter(|(_, p)| *p)
            .map(|(m, _)| *m)
            .collect();
        (!chosen.is_empty()).then(|| chosen.join(" "))
    })
}

fn with_opt(node: AsltNode, key: &str, value: Option<String>) -> AsltNode {
    match value {
        Some(v) => node.with_attr(key, v),
        None => node,
    }
}

fn type_ref(allow_void: bool) -> BoxedStrategy<AsltNode> {
    let base = prop_oneof![select(PRIMITIVES).prop_map(str::to_string), qname()];
    let value = (base, 0u8..=2).prop_map(|(name, dims)| {
        let node = AsltNode::new(NodeKind::TypeReference).with_attr(attr::NAME, name);
        if dims > 0 {
            node.with_attr(attr::DIMS, dims.to_string())
        } else {
            node
        }
    });
    if allow_void {
        prop_oneof![
            1 => Just(AsltNode::new(NodeKind::TypeReference).with_attr(attr::NAME, "void")),
            3 => value,
        ]
        .boxed()
    } else {
        value.boxed()
    }
}

fn literal(value: &str, category: &str) -> AsltNode {
    AsltNode::new(NodeKind::LiteralTag)
        .with_attr(attr::VALUE, value)
        .with_attr(attr::CATEGORY, category)
}

const INTEGERS: &[&str] = &["0", "5", "42", "-3", "0x1F", "7L", "-12L", "2147483647"];
const FLOATS: &[&str] = &["1.5", "2.0f", "1e3", "-0.25", "3.5e-2", "0.0"];
const STRINGS: &[&str] = &[
    "\"\"",
    "\"hi\"",
    "\"a b\"",
    "\"q\\\"x\"",
    "\"back\\\\slash\"",
    "\"line\\n\"",
];
const CHARS: &[&str] = &["'a'", "'z'", "'0'", "' '"];

fn literal_node() -> impl Strategy<Value = AsltNode> {
    prop_oneof![
        select(INTEGERS).prop_map(|v| literal(v, "integer")),
        select(FLOATS).prop_map(|v| literal(v, "floating")),
        select(STRINGS).prop_map(|v| literal(v, "string")),
        select(CHARS).prop_map(|v| literal(v, "char")),
        select(&["true", "false"][..]).prop_map(|v| literal(v, "boolean")),
    ]
}

fn identifier() -> impl Strategy<Value = AsltNode> {
    prop_oneof![
        4 => qname(),
        1 => Just("this".to_string()),
    ]
    .prop_map(|n| AsltNode::new(NodeKind::IdentifierExpression).with_attr(attr::NAME, n))
}

fn arguments(args: Vec<AsltNode>) -> AsltNode {
    AsltNode::new(NodeKind::ArgumentList).with_children(args)
}

fn numeric(node: &AsltNode) -> bool {
    node.kind == NodeKind::LiteralTag
        && matches!(node.attr(attr::CATEGORY), Some("integer" | "floating"))
}

pub fn expression() -> BoxedStrategy<AsltNode> {
    let leaf = prop_oneof![identifier(), literal_node()];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (qname(), vec(inner.clone(), 0..3)).prop_map(|(t, args)| {
                AsltNode::new(NodeKind::NewObjectExpression)
                    .with_attr(attr::TYPE, t)
                    .with_child(arguments(args))
            }),
            (ident(), option::of(inner.clone()), vec(inner, 0..3)).prop_map(
                |(name, recv, args)| {
                    let mut node =
                        AsltNode::new(NodeKind::MethodInvokeExpression).with_attr(attr::NAME, name);
                    if let Some(r) = recv.filter(|r| !numeric(r)) {
                        node.children.push(r);
                    }
                    node.with_child(arguments(args))
                }
            ),
        ]
    })
    .boxed()
}

fn statement_expression() -> BoxedStrategy<AsltNode> {
    expression()
        .prop_filter("creation or invocation", |e| {
            matches!(
                e.kind,
                NodeKind::MethodInvokeExpression | NodeKind::NewObjectExpression
            )
        })
        .boxed()
}

fn statement() -> impl Strategy<Value = AsltNode> {
    let declarator = (ident(), option::of(expression())).prop_map(|(name, init)| {
        let node = AsltNode::new(NodeKind::VariableDeclarator).with_attr(attr::NAME, name);
        match init {
            Some(e) => node.with_child(e),
            None => node,
        }
    });
    prop_oneof![
        option::of(expression()).prop_map(|e| {
            let node = AsltNode::new(NodeKind::ReturnStatement);
            match e {
                Some(e) => node.with_child(e),
                None => node,
            }
        }),
        (type_ref(false), vec(declarator, 1..3)).prop_map(|(t, ds)| AsltNode::new(
            NodeKind::VariableDeclaration
        )
        .with_child(t)
        .with_children(ds)),
        statement_expression()
            .prop_map(|e| AsltNode::new(NodeKind::ExpressionStatement).with_child(e)),
        (ident(), expression()).prop_map(|(target, value)| {
            let assign = AsltNode::new(NodeKind::SimpleAssignmentOperatorExpression)
                .with_child(
                    AsltNode::new(NodeKind::IdentifierExpression).with_attr(attr::NAME, target),
                )
                .with_child(value);
            AsltNode::new(NodeKind::ExpressionStatement).with_child(assign)
        }),
    ]
}

fn member() -> impl Strategy<Value = AsltNode> {
    let field = (
        modifiers(),
        type_ref(false),
        ident(),
        option::of(expression()),
    )
        .prop_map(|(m, t, n, init)| {
            let node = with_opt(
                AsltNode::new(NodeKind::FieldDeclaration).with_attr(attr::NAME, n),
                attr::MODIFIERS,
                m,
            )
            .with_child(t);
            match init {
                Some(e) => node.with_child(e),
                None => node,
            }
        });
    let param = (type_ref(false), ident()).prop_map(|(t, n)| {
        AsltNode::new(NodeKind::ParameterDeclaration)
            .with_attr(attr::NAME, n)
            .with_child(t)
    });
    let method = (
        modifiers(),
        type_ref(true),
        ident(),
        vec(param, 0..3),
        vec(statement(), 0..4),
    )
        .prop_map(|(m, t, n, params, body)| {
            with_opt(
                AsltNode::new(NodeKind::MethodDeclaration).with_attr(attr::NAME, n),
                attr::MODIFIERS,
                m,
            )
            .with_child(t)
            .with_children(params)
            .with_child(AsltNode::new(NodeKind::Block).with_children(body))
        });
    prop_oneof![field, method]
}

fn class() -> impl Strategy<Value = AsltNode> {
    (
        modifiers(),
        ident(),
        option::of(qname()),
        option::of(vec(qname(), 1..3)),
        vec(member(), 0..4),
    )
        .prop_map(|(m, name, ext, imp, members)| {
            let node = AsltNode::new(NodeKind::ClassDeclaration).with_attr(attr::NAME, name);
            let node = with_opt(node, attr::MODIFIERS, m);
            let node = with_opt(node, attr::EXTENDS, ext);
            with_opt(node, attr::IMPLEMENTS, imp.map(|v| v.join(","))).with_children(members)
        })
}

/// Valid `CompilationUnit` trees without spans.
pub fn program() -> impl Strategy<Value = AsltNode> {
    (option::of(qname()), vec(class(), 1..3)).prop_map(|(package, classes)| {
        let mut unit = AsltNode::new(NodeKind::CompilationUnit).with_attr(attr::FILE, "Gen.java");
        if let Some(p) = package {
            unit.children
                .push(AsltNode::new(NodeKind::PackageDeclaration).with_attr(attr::NAME, p));
        }
        unit.with_children(classes)
    })
}

// ---- projects ----

pub const CALLEE_NAMES: &[&str] = &["Alpha", "Beta", "Gamma"];
const CALLEE_METHODS: &[&str] = &["f", "g", "h"];

/// Parameters of the caller method: one variable per type of the universe.
pub const CALLER_VARIABLES: &[(&str, &str)] = &[
    ("int", "vi"),
    ("long", "vl"),
    ("short", "vs"),
    ("byte", "vb"),
    ("char", "vc"),
    ("boolean", "vz"),
    ("float", "vf"),
    ("double", "vd"),
    ("String", "vstr"),
    ("Alpha", "va"),
    ("Beta", "vbeta"),
    ("int[]", "varr"),
];

fn universe_type() -> impl Strategy<Value = TypeName> {
    let names: &'static [&str] = &["java.lang.String", "Alpha", "Beta"];
    prop_oneof![
        3 => primitive().prop_map(TypeName::Primitive),
        2 => select(names).prop_map(TypeName::reference),
        1 => Just(TypeName::array_of(TypeName::Primitive(Primitive::Int), 1)),
    ]
}

fn universe_return() -> impl Strategy<Value = TypeName> {
    prop_oneof![1 => Just(TypeName::Void), 3 => universe_type()]
}

pub fn callee(name: &'static str) -> impl Strategy<Value = ClassInfo> {
    vec(
        (
            select(CALLEE_METHODS),
            vec(universe_type(), 0..3),
            universe_return(),
        ),
        0..6,
    )
    .prop_map(move |ms| {
        let mut info = ClassInfo::new(name);
        info.source_file_name = Some(format!("{name}.class"));
        for (n, params, ret) in ms {
            if !info
                .methods_named(n)
                .any(|m| m.signature.parameter_types == params)
            {
                info.methods
                    .push(MethodInfo::new(1, MethodSignature::new(n, params, ret)));
            }
        }
        info.methods.push(MethodInfo::new(
            1,
            MethodSignature::new("<init>", vec![], TypeName::Void),
        ));
        info
    })
}

const ARGUMENTS: &[&str] = &[
    "vi",
    "vl",
    "vs",
    "vb",
    "vc",
    "vz",
    "vf",
    "vd",
    "vstr",
    "va",
    "vbeta",
    "varr",
    "1",
    "2L",
    "1.5",
    "2f",
    "'c'",
    "true",
    "\"s\"",
    "ghost",
    "-4",
    "new Alpha()",
    "new Beta()",
    "this",
];
const RECEIVERS: &[&str] = &[
    "a.",
    "b.",
    "c.",
    "va.",
    "vbeta.",
    "ghost.",
    "Alpha.",
    "this.",
    "",
    "new Beta().",
];

fn call_text() -> BoxedStrategy<String> {
    let simple = (
        select(RECEIVERS),
        select(&["f", "g", "h", "zz"][..]),
        vec(select(ARGUMENTS), 0..4),
    )
        .prop_map(|(r, m, args)| format!("{r}{m}({})", args.join(", ")));
    simple
        .prop_recursive(2, 8, 3, |inner| {
            (
                select(RECEIVERS),
                select(&["f", "g", "h"][..]),
                vec(
                    prop_oneof![inner, select(ARGUMENTS).prop_map(str::to_string)],
                    0..3,
                ),
            )
                .prop_map(|(r, m, args)| format!("{r}{m}({})", args.join(", ")))
        })
        .boxed()
}

fn call_statement() -> impl Strategy<Value = String> {
    let decl_types: &'static [&str] = &["int", "long", "String", "Alpha", "double", "boolean"];
    prop_oneof![
        call_text().prop_map(|c| format!("{c};")),
        (select(decl_types), call_text()).prop_map(|(t, c)| format!("{t} r = {c};")),
        (select(CALLER_VARIABLES), call_text()).prop_map(|((_, v), c)| format!("{v} = {c};")),
    ]
}

/// A caller source (one class plus a nested-scope method) and up to three
/// callee class surfaces.
pub fn project() -> impl Strategy<Value = (String, Vec<ClassInfo>)> {
    (
        callee(CALLEE_NAMES[0]),
        callee(CALLEE_NAMES[1]),
        callee(CALLEE_NAMES[2]),
        vec(call_statement(), 1..8),
        vec(call_statement(), 0..3),
    )
        .prop_map(|(a, b, c, body, other)| {
            let params: Vec<String> = CALLER_VARIABLES
                .iter()
                .map(|(t, n)| format!("{t} {n}"))
                .collect();
            let mut src =
                String::from("class Caller {\n    Alpha a;\n    Beta b;\n    Gamma c;\n\n");
            src.push_str(&format!("    void m({}) {{\n", params.join(", ")));
            for (i, s) in body.iter().enumerate() {
                src.push_str(&format!(
                    "        {}\n",
                    s.replace(" r = ", &format!(" r{i} = "))
                ));
            }
            src.push_str("    }\n\n    int f(int q) {\n");
            for s in &other {
                src.push_str(&format!("        {s}\n"));
            }
            src.push_str("        return q;\n    }\n}\n");
            (src, vec![a, b, c])
        })
}
