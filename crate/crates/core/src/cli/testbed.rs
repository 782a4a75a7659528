use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::analysis::{declared_class_infos, TypeResolver};
use crate::aslt::parse_source;
use crate::classfile::{emit_classfile, parse_classfile, Primitive, TypeName};

pub const TEST_BED: &str = "\
public class TestBed {
    public static void main(String[] args) {
        SampleClassA sampleClassA = new SampleClassA();
        sampleClassA.run();
        int total = sampleClassA.total(2, 3);
        sampleClassA.report(\"finished\");
    }
}
";

pub const SAMPLE_CLASS_A: &str = "\
public class SampleClassA {
    private SampleClassB sampleClassB = new SampleClassB();

    private String lastMessage;

    public void run() {
        String str = \"hello\";
        sampleClassB.doSomething(str);
        int number = 5;
        int sum = sampleClassB.compute(number, 7);
        String text = sampleClassB.describe(sum);
        report(text);
        sampleClassB.callback(this);
    }

    public int total(int x, int y) {
        return sampleClassB.compute(x, y);
    }

    public void report(String message) {
        lastMessage = message;
    }
}
";

pub const SAMPLE_CLASS_B: &str = "\
public class SampleClassB {
    private int calls = 0;

    public void doSomething(String value) {
        calls = compute(calls, 1);
    }

    public int compute(int a, int b) {
        return a;
    }

    public String describe(int n) {
        return \"value\";
    }

    public void callback(SampleClassA owner) {
        owner.report(describe(calls));
    }
}
";

pub const CONSTANTS_PROPERTIES: &str = "\
PathToApplication=.
ASLTFileExtension=.aslt
ClassFileExtension=.class
ASLTJavaExpressionStatement=ASLTJavaExpressionStatement
ASLTJavaIdentifierExpression=ASLTJavaIdentifierExpression
ASLTJavaLiteralTag=ASLTJavaLiteralTag
ASLTJavaMethodInvokeExpression=ASLTJavaMethodInvokeExpression
ASLTJavaSimpleAssignmentOperatorExpression=ASLTJavaSimpleAssignmentOperatorExpression
ASLTJavaVariableDeclarator=ASLTJavaVariableDeclarator
ASLTJavaVariableDeclaration=ASLTJavaVariableDeclaration
DebugLevel=1
";

pub const SOURCES: [(&str, &str); 3] = [
    ("TestBed", TEST_BED),
    ("SampleClassA", SAMPLE_CLASS_A),
    ("SampleClassB", SAMPLE_CLASS_B),
];

fn invalid(e: impl std::fmt::Display) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, e.to_string())
}

/// Writes the three-class test environment: sources, class files derived
/// from their declarations, and a `constants.properties`.
pub fn gen_testbed(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut units = Vec::new();
    for (name, src) in SOURCES {
        units.push(parse_source(src, &format!("{name}.java")).map_err(invalid)?);
    }
    let resolver = TypeResolver::from_project(&units, &[]);
    let mut written = Vec::new();
    for ((name, src), unit) in SOURCES.iter().zip(&units) {
        let source_path = dir.join(format!("{name}.java"));
        fs::write(&source_path, src)?;
        written.push(source_path);
        for info in declared_class_infos(unit, &resolver) {
            let class_path = dir.join(format!("{}.class", info.qualified_name));
            fs::write(&class_path, emit_classfile(&info).map_err(invalid)?)?;
            written.push(class_path);
        }
    }
    let props = dir.join("constants.properties");
    fs::write(&props, CONSTANTS_PROPERTIES)?;
    written.push(props);
    Ok(written)
}

/// Rewrites `SampleClassB.class` in a generated testbed so that
/// `doSomething` takes an `int` while the caller still passes a string.
pub fn inject_parameter_fault(dir: &Path) -> io::Result<()> {
    let path = dir.join("SampleClassB.class");
    let mut info = parse_classfile(&fs::read(&path)?).map_err(invalid)?;
    let method = info
        .methods
        .iter_mut()
        .find(|m| m.signature.name == "doSomething")
        .ok_or_else(|| invalid("SampleClassB has no doSomething"))?;
    method.signature.parameter_types = vec![TypeName::Primitive(Primitive::Int)];
    fs::write(&path, emit_classfile(&info).map_err(invalid)?)
}
