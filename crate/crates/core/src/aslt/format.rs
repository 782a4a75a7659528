//! The `.aslt` text format.
//!
//! One node per line, indented two spaces per depth level:
//!
//! ```text
//! CompilationUnit file="A.java" @1:1-4:1
//!   ClassDeclaration name="A" @1:1-3:2
//!     MethodDeclaration name="m" @2:5-2:16
//! ```
//!
//! Attributes follow the kind as `key="value"` pairs in key order; `"`, `\`,
//! newline and carriage return are backslash-escaped. A node with a known
//! source span ends with `@line:col-line:col`.

use std::collections::HashMap;

use thiserror::Error;

use super::node::{AsltNode, NodeKind, Position, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct AsltFormatError {
    pub line: usize,
    pub message: String,
}

fn escape_into(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
}

fn write_node(node: &AsltNode, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(node.kind.as_str());
    for (key, value) in &node.attributes {
        out.push(' ');
        out.push_str(key);
        out.push_str("=\"");
        escape_into(value, out);
        out.push('"');
    }
    if !node.span.is_unknown() {
        out.push_str(&format!(" @{}", node.span));
    }
    out.push('\n');
    for child in &node.children {
        write_node(child, depth + 1, out);
    }
}

/// Serializes a tree. The output is a pure function of the tree.
pub fn write_aslt(tree: &AsltNode) -> String {
    let mut out = String::new();
    write_node(tree, 0, &mut out);
    out
}

fn is_key_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

struct LineParser<'a> {
    line_no: usize,
    rest: &'a str,
}

impl<'a> LineParser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, AsltFormatError> {
        Err(AsltFormatError {
            line: self.line_no,
            message: message.into(),
        })
    }

    fn position(&self, text: &str) -> Result<Position, AsltFormatError> {
        let parsed = text
            .split_once(':')
            .and_then(|(l, c)| Some(Position::new(l.parse().ok()?, c.parse().ok()?)));
        match parsed {
            Some(p) => Ok(p),
            None => self.err(format!("malformed span position {text:?}")),
        }
    }

    fn span(&mut self) -> Result<Span, AsltFormatError> {
        let text = &self.rest[1..];
        let end = text.find(' ').unwrap_or(text.len());
        let (range, rest) = text.split_at(end);
        self.rest = rest;
        let Some((a, b)) = range.split_once('-') else {
            return self.err(format!("malformed span {range:?}"));
        };
        Ok(Span::new(self.position(a)?, self.position(b)?))
    }

    fn attribute(&mut self) -> Result<(String, String), AsltFormatError> {
        let key_len = self
            .rest
            .find(|c: char| !is_key_char(c))
            .unwrap_or(self.rest.len());
        if key_len == 0 {
            return self.err(format!("expected attribute name at {:?}", self.rest));
        }
        let key = self.rest[..key_len].to_string();
        let Some(after) = self.rest[key_len..].strip_prefix("=\"") else {
            return self.err(format!("attribute `{key}` must be written as {key}=\"…\""));
        };
        let mut value = String::new();
        let mut chars = after.char_indices();
        loop {
            match chars.next() {
                None => return self.err(format!("unterminated value for attribute `{key}`")),
                Some((i, '"')) => {
                    self.rest = &after[i + 1..];
                    return Ok((key, value));
                }
                Some((_, '\\')) => match chars.next() {
                    Some((_, '"')) => value.push('"'),
                    Some((_, '\\')) => value.push('\\'),
                    Some((_, 'n')) => value.push('\n'),
                    Some((_, 'r')) => value.push('\r'),
                    other => {
                        return self.err(format!(
                            "invalid escape {:?} in attribute `{key}`",
                            other.map(|(_, c)| c)
                        ))
                    }
                },
                Some((_, c)) => value.push(c),
            }
        }
    }
}

/// Parses `.aslt` text using the canonical kind names only.
pub fn read_aslt(text: &str) -> Result<AsltNode, AsltFormatError> {
    read_aslt_with_aliases(text, &[])
}

/// Parses `.aslt` text, additionally accepting each alias as a spelling of
/// its kind.
pub fn read_aslt_with_aliases(
    text: &str,
    aliases: &[(String, NodeKind)],
) -> Result<AsltNode, AsltFormatError> {
    let alias_map: HashMap<&str, NodeKind> =
        aliases.iter().map(|(n, k)| (n.as_str(), *k)).collect();
    let mut stack: Vec<AsltNode> = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() {
            continue;
        }
        let mut lp = LineParser { line_no, rest: raw };
        let spaces = raw.len() - raw.trim_start_matches(' ').len();
        lp.rest = &raw[spaces..];
        if lp.rest.starts_with(char::is_whitespace) {
            return lp.err("indentation must use spaces only");
        }
        if spaces % 2 != 0 {
            return lp.err(format!(
                "indentation of {spaces} spaces is not a multiple of two"
            ));
        }
        let depth = spaces / 2;
        if depth > stack.len() {
            return lp.err(format!(
                "indentation jumps from depth {} to {depth}",
                stack.len().saturating_sub(1)
            ));
        }
        if depth == 0 && !stack.is_empty() {
            return lp.err("more than one root node");
        }

        let kind_len = lp.rest.find(' ').unwrap_or(lp.rest.len());
        let kind_name = &lp.rest[..kind_len];
        let Some(kind) =
            NodeKind::from_name(kind_name).or_else(|| alias_map.get(kind_name).copied())
        else {
            return lp.err(format!("unknown node kind {kind_name:?}"));
        };
        lp.rest = &lp.rest[kind_len..];
        let mut node = AsltNode::new(kind);
        let mut have_span = false;
        while !lp.rest.is_empty() {
            let Some(rest) = lp.rest.strip_prefix(' ') else {
                return lp.err(format!("unexpected text {:?}", lp.rest));
            };
            lp.rest = rest;
            if have_span {
                return lp.err("span must be the last item on a line");
            }
            if lp.rest.starts_with('@') {
                node.span = lp.span()?;
                have_span = true;
            } else {
                let (key, value) = lp.attribute()?;
                if node.attributes.insert(key.clone(), value).is_some() {
                    return lp.err(format!("duplicate attribute `{key}`"));
                }
            }
        }

        while stack.len() > depth {
            let child = stack.pop().expect("non-empty");
            stack.last_mut().expect("parent").children.push(child);
        }
        stack.push(node);
    }

    while stack.len() > 1 {
        let child = stack.pop().expect("non-empty");
        stack.last_mut().expect("parent").children.push(child);
    }
    stack.pop().ok_or(AsltFormatError {
        line: 1,
        message: "no nodes".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aslt::node::attr;

    #[test]
    fn single_node() {
        let tree = AsltNode::new(NodeKind::CompilationUnit).with_attr(attr::FILE, "X");
        assert_eq!(write_aslt(&tree), "CompilationUnit file=\"X\"\n");
        assert_eq!(read_aslt("CompilationUnit file=\"X\"").unwrap(), tree);
    }

    #[test]
    fn escapes_and_spans_round_trip() {
        let tree = AsltNode::new(NodeKind::LiteralTag)
            .with_attr(attr::VALUE, "\"a\\b\nc\r\"")
            .with_attr(attr::CATEGORY, "string")
            .with_span(Span::new(Position::new(3, 4), Position::new(3, 9)));
        let text = write_aslt(&tree);
        assert_eq!(
            text,
            "ASLTJavaLiteralTag category=\"string\" value=\"\\\"a\\\\b\\nc\\r\\\"\" @3:4-3:9\n"
        );
        assert_eq!(read_aslt(&text).unwrap(), tree);
    }

    #[test]
    fn nesting() {
        let text = "Block\n  ReturnStatement\n    ASLTJavaIdentifierExpression name=\"x\"\n  ReturnStatement\n";
        let tree = read_aslt(text).unwrap();
        assert_eq!(tree.children.len(), 2);
        assert_eq!(tree.children[0].children[0].name(), Some("x"));
        assert_eq!(write_aslt(&tree), text);
    }

    #[test]
    fn format_errors_carry_line_numbers() {
        let cases = [
            ("Block\n   ReturnStatement", 2),
            ("Block\n    ReturnStatement", 2),
            ("Block\nBlock", 2),
            ("Block\n  Bogus", 2),
            ("Block name=x", 1),
            ("Block name=\"x", 1),
            ("Block name=\"x\"junk", 1),
            ("Block name=\"\\q\"", 1),
            ("Block\n\tReturnStatement", 2),
            ("Block @1:1-2", 1),
            ("Block @1:1-2:2 name=\"x\"", 1),
            ("Block a=\"1\" a=\"2\"", 1),
            ("", 1),
        ];
        for (text, line) in cases {
            let err = read_aslt(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
        }
    }

    #[test]
    fn aliases_are_accepted() {
        let aliases = vec![("Invoke".to_string(), NodeKind::MethodInvokeExpression)];
        let tree = read_aslt_with_aliases("Invoke name=\"f\"\n  ArgumentList\n", &aliases).unwrap();
        assert_eq!(tree.kind, NodeKind::MethodInvokeExpression);
        assert!(read_aslt("Invoke name=\"f\"").is_err());
    }
}
