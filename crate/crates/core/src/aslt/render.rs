use crate::config::DebugLevel;

use super::node::AsltNode;

/// Human-readable outline of a tree, one line per node. Empty below
/// [`DebugLevel::Full`].
pub fn render_tree(tree: &AsltNode, level: DebugLevel) -> String {
    let mut out = String::new();
    if level >= DebugLevel::Full {
        outline(tree, 0, &mut out);
    }
    out
}

fn outline(node: &AsltNode, depth: usize, out: &mut String) {
    out.push_str(&"| ".repeat(depth));
    out.push_str(node.kind.as_str());
    for (k, v) in &node.attributes {
        out.push_str(&format!(" {k}={v:?}"));
    }
    if !node.span.is_unknown() {
        out.push_str(&format!(" [{}]", node.span));
    }
    out.push('\n');
    for child in &node.children {
        outline(child, depth + 1, out);
    }
}
