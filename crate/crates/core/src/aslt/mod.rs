//! The Abstract Syntax Language Tree: the caller-side view of a component.
//!
//! Source text is tokenized and parsed into [`AsltNode`] trees whose
//! expression-level node kinds carry the `ASLTJava…` names the project
//! configuration refers to. Trees can be printed back to source, stored as
//! `.aslt` files and read again without losing structure.

mod format;
pub mod lexer;
mod node;
mod parser;
mod printer;
mod render;

pub use format::{read_aslt, read_aslt_with_aliases, write_aslt, AsltFormatError};
pub use lexer::{tokenize, LexError, LiteralCategory, Token, TokenCategory};
pub use node::{attr, validate, AsltNode, MalformedTree, NodeKind, Position, Span, Walk};
pub use parser::{parse_source, ParseError, SyntaxError, MODIFIERS, PRIMITIVE_KEYWORDS};
pub use printer::print_source;
pub use render::render_tree;
