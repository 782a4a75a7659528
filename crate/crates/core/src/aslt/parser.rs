//! Recursive-descent parser for the supported source subset.
//!
//! ```text
//! unit       := ("package" qname ";")? class+
//! class      := modifier* "class" ident ("extends" qname)?
//!               ("implements" qname ("," qname)*)? "{" member* "}"
//! member     := modifier* (type | "void") ident
//!               ( "(" params? ")" block | ("=" expr)? ";" )
//! statement  := "return" expr? ";"
//!             | type declarator ("," declarator)* ";"
//!             | ident "=" expr ";"
//!             | expr ";"                      (invocation or creation only)
//! expr       := primary ("." ident "(" args? ")")*
//! primary    := literal | "-" number | "this" | "new" qname "(" args? ")"
//!             | ident "(" args? ")" | qname
//! ```

use std::fmt;

use thiserror::Error;

use super::lexer::{tokenize, LexError, Token, TokenCategory};
use super::node::{attr, AsltNode, NodeKind, Position, Span};

pub const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
];
pub const PRIMITIVE_KEYWORDS: &[&str] = &[
    "int", "long", "short", "byte", "char", "boolean", "float", "double",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SyntaxError {
    pub position: Position,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.position,
            self.expected.join(" or "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("lexical error at {0}")]
    Lex(#[from] LexError),
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Lex(e) => e.position,
            ParseError::Syntax(e) => e.position,
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    last_end: Position,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.category != TokenCategory::EndOfInput {
            self.pos += 1;
        }
        self.last_end = tok.end;
        tok
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let tok = self.peek();
        let found = if tok.category == TokenCategory::EndOfInput {
            "end of input".to_string()
        } else {
            format!("{} `{}`", tok.category, tok.lexeme)
        };
        Err(SyntaxError {
            position: tok.position,
            found,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
        .into())
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.peek().is_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Token> {
        if self.peek().is_punct(p) {
            Ok(self.advance())
        } else {
            self.fail(&[&format!("`{p}`")])
        }
    }

    fn expect_ident(&mut self) -> PResult<Token> {
        if self.peek().category == TokenCategory::Identifier {
            Ok(self.advance())
        } else {
            self.fail(&["identifier"])
        }
    }

    fn span_from(&self, start: Position) -> Span {
        Span::new(start, self.last_end)
    }

    fn qualified_name(&mut self) -> PResult<String> {
        let mut name = self.expect_ident()?.lexeme;
        while self.peek().is_punct(".") && self.peek_at(1).category == TokenCategory::Identifier {
            self.advance();
            name.push('.');
            name.push_str(&self.advance().lexeme);
        }
        Ok(name)
    }

    fn modifiers(&mut self) -> Vec<String> {
        let mut mods = Vec::new();
        while self.peek().category == TokenCategory::Keyword
            && MODIFIERS.contains(&self.peek().lexeme.as_str())
        {
            mods.push(self.advance().lexeme);
        }
        mods
    }

    fn compilation_unit(&mut self, file_name: &str) -> PResult<AsltNode> {
        let mut unit = AsltNode::new(NodeKind::CompilationUnit).with_attr(attr::FILE, file_name);
        if self.peek().is_keyword("package") {
            let start = self.advance().position;
            let name = self.qualified_name()?;
            self.expect_punct(";")?;
            unit.children.push(
                AsltNode::new(NodeKind::PackageDeclaration)
                    .with_attr(attr::NAME, name)
                    .with_span(self.span_from(start)),
            );
        }
        loop {
            if self.peek().category == TokenCategory::EndOfInput
                && unit
                    .children
                    .iter()
                    .any(|c| c.kind == NodeKind::ClassDeclaration)
            {
                break;
            }
            unit.children.push(self.class_declaration()?);
        }
        let end = self.peek().position;
        unit.span = Span::new(Position::new(1, 1), end);
        Ok(unit)
    }

    fn class_declaration(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        let mods = self.modifiers();
        if !self.peek().is_keyword("class") {
            let mut expected: Vec<&str> = vec!["`class`"];
            if mods.is_empty() {
                expected.push("modifier");
            }
            return self.fail(&expected);
        }
        self.advance();
        let name = self.expect_ident()?.lexeme;
        let mut node = AsltNode::new(NodeKind::ClassDeclaration).with_attr(attr::NAME, name);
        set_modifiers(&mut node, &mods);
        if self.peek().is_keyword("extends") {
            self.advance();
            let sup = self.qualified_name()?;
            node = node.with_attr(attr::EXTENDS, sup);
        }
        if self.peek().is_keyword("implements") {
            self.advance();
            let mut names = vec![self.qualified_name()?];
            while self.eat_punct(",") {
                names.push(self.qualified_name()?);
            }
            node = node.with_attr(attr::IMPLEMENTS, names.join(","));
        }
        self.expect_punct("{")?;
        while !self.peek().is_punct("}") {
            if self.peek().category == TokenCategory::EndOfInput {
                return self.fail(&["member declaration", "`}`"]);
            }
            node.children.push(self.member()?);
        }
        self.advance();
        Ok(node.with_span(self.span_from(start)))
    }

    fn is_type_start(&self) -> bool {
        let t = self.peek();
        t.category == TokenCategory::Identifier
            || t.category == TokenCategory::Keyword
                && PRIMITIVE_KEYWORDS.contains(&t.lexeme.as_str())
    }

    fn type_reference(&mut self, allow_void: bool) -> PResult<AsltNode> {
        let start = self.peek().position;
        let t = self.peek();
        let name = if t.category == TokenCategory::Keyword
            && PRIMITIVE_KEYWORDS.contains(&t.lexeme.as_str())
        {
            self.advance().lexeme
        } else if allow_void && t.is_keyword("void") {
            let name = self.advance().lexeme;
            return Ok(AsltNode::new(NodeKind::TypeReference)
                .with_attr(attr::NAME, name)
                .with_span(self.span_from(start)));
        } else if t.category == TokenCategory::Identifier {
            self.qualified_name()?
        } else if allow_void {
            return self.fail(&["type", "`void`"]);
        } else {
            return self.fail(&["type"]);
        };
        let mut dims = 0u32;
        while self.peek().is_punct("[") {
            self.advance();
            self.expect_punct("]")?;
            dims += 1;
        }
        let mut node = AsltNode::new(NodeKind::TypeReference).with_attr(attr::NAME, name);
        if dims > 0 {
            if dims > 255 {
                return self.fail(&["at most 255 array dimensions"]);
            }
            node = node.with_attr(attr::DIMS, dims.to_string());
        }
        Ok(node.with_span(self.span_from(start)))
    }

    fn member(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        let mods = self.modifiers();
        if !self.is_type_start() && !self.peek().is_keyword("void") {
            return self.fail(&["type", "`void`", "modifier", "`}`"]);
        }
        let ty = self.type_reference(true)?;
        let name = self.expect_ident()?.lexeme;
        if self.peek().is_punct("(") {
            self.advance();
            let mut node = AsltNode::new(NodeKind::MethodDeclaration).with_attr(attr::NAME, name);
            set_modifiers(&mut node, &mods);
            node.children.push(ty);
            if !self.peek().is_punct(")") {
                loop {
                    node.children.push(self.parameter()?);
                    if !self.eat_punct(",") {
                        break;
                    }
                }
            }
            self.expect_punct(")")?;
            node.children.push(self.block()?);
            return Ok(node.with_span(self.span_from(start)));
        }
        if ty.name() == Some("void") {
            return self.fail(&["`(`"]);
        }
        let mut node = AsltNode::new(NodeKind::FieldDeclaration).with_attr(attr::NAME, name);
        set_modifiers(&mut node, &mods);
        node.children.push(ty);
        if self.peek().is(TokenCategory::Operator, "=") {
            self.advance();
            node.children.push(self.expression()?);
        } else if !self.peek().is_punct(";") {
            return self.fail(&["`(`", "`=`", "`;`"]);
        }
        self.expect_punct(";")?;
        Ok(node.with_span(self.span_from(start)))
    }

    fn parameter(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        let ty = self.type_reference(false)?;
        let name = self.expect_ident()?.lexeme;
        Ok(AsltNode::new(NodeKind::ParameterDeclaration)
            .with_attr(attr::NAME, name)
            .with_child(ty)
            .with_span(self.span_from(start)))
    }

    fn block(&mut self) -> PResult<AsltNode> {
        let start = self.expect_punct("{")?.position;
        let mut node = AsltNode::new(NodeKind::Block);
        while !self.peek().is_punct("}") {
            if self.peek().category == TokenCategory::EndOfInput {
                return self.fail(&["statement", "`}`"]);
            }
            node.children.push(self.statement()?);
        }
        self.advance();
        Ok(node.with_span(self.span_from(start)))
    }

    /// Looks ahead for `qname ([ ])* ident`.
    fn looks_like_declaration(&self) -> bool {
        let t = self.peek();
        if t.category == TokenCategory::Keyword {
            return PRIMITIVE_KEYWORDS.contains(&t.lexeme.as_str());
        }
        if t.category != TokenCategory::Identifier {
            return false;
        }
        let mut i = 1;
        while self.peek_at(i).is_punct(".")
            && self.peek_at(i + 1).category == TokenCategory::Identifier
        {
            i += 2;
        }
        while self.peek_at(i).is_punct("[") && self.peek_at(i + 1).is_punct("]") {
            i += 2;
        }
        self.peek_at(i).category == TokenCategory::Identifier
    }

    fn statement(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        if self.peek().is_keyword("return") {
            self.advance();
            let mut node = AsltNode::new(NodeKind::ReturnStatement);
            if !self.peek().is_punct(";") {
                node.children.push(self.expression()?);
            }
            self.expect_punct(";")?;
            return Ok(node.with_span(self.span_from(start)));
        }
        if self.looks_like_declaration() {
            let ty = self.type_reference(false)?;
            let mut node = AsltNode::new(NodeKind::VariableDeclaration).with_child(ty);
            loop {
                let dstart = self.peek().position;
                let name = self.expect_ident()?.lexeme;
                let mut decl =
                    AsltNode::new(NodeKind::VariableDeclarator).with_attr(attr::NAME, name);
                if self.peek().is(TokenCategory::Operator, "=") {
                    self.advance();
                    decl.children.push(self.expression()?);
                }
                node.children.push(decl.with_span(self.span_from(dstart)));
                if !self.eat_punct(",") {
                    break;
                }
            }
            if !self.peek().is_punct(";") {
                return self.fail(&["`=`", "`,`", "`;`"]);
            }
            self.advance();
            return Ok(node.with_span(self.span_from(start)));
        }
        let inner = if self.peek().category == TokenCategory::Identifier
            && self.peek_at(1).is(TokenCategory::Operator, "=")
        {
            let target = self.advance();
            let target_node = AsltNode::new(NodeKind::IdentifierExpression)
                .with_attr(attr::NAME, target.lexeme)
                .with_span(Span::new(target.position, target.end));
            self.advance();
            let value = self.expression()?;
            AsltNode::new(NodeKind::SimpleAssignmentOperatorExpression)
                .with_child(target_node)
                .with_child(value)
                .with_span(self.span_from(start))
        } else {
            let expr_start = self.peek().clone();
            let expr = self.expression()?;
            if !matches!(
                expr.kind,
                NodeKind::MethodInvokeExpression | NodeKind::NewObjectExpression
            ) {
                return Err(SyntaxError {
                    position: expr_start.position,
                    found: format!("{} expression", expr.kind),
                    expected: vec![
                        "method invocation".into(),
                        "object creation".into(),
                        "assignment".into(),
                    ],
                }
                .into());
            }
            expr
        };
        if !self.peek().is_punct(";") {
            return self.fail(&["`.`", "`;`"]);
        }
        self.advance();
        Ok(AsltNode::new(NodeKind::ExpressionStatement)
            .with_child(inner)
            .with_span(self.span_from(start)))
    }

    fn arguments(&mut self) -> PResult<AsltNode> {
        let start = self.expect_punct("(")?.position;
        let mut node = AsltNode::new(NodeKind::ArgumentList);
        if !self.peek().is_punct(")") {
            loop {
                node.children.push(self.expression()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        if !self.peek().is_punct(")") {
            return self.fail(&["`,`", "`)`"]);
        }
        self.advance();
        Ok(node.with_span(self.span_from(start)))
    }

    fn expression(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        let mut expr = self.primary()?;
        while self.peek().is_punct(".") {
            self.advance();
            let name = self.expect_ident()?.lexeme;
            if !self.peek().is_punct("(") {
                return self.fail(&["`(`"]);
            }
            let args = self.arguments()?;
            expr = AsltNode::new(NodeKind::MethodInvokeExpression)
                .with_attr(attr::NAME, name)
                .with_child(expr)
                .with_child(args)
                .with_span(self.span_from(start));
        }
        Ok(expr)
    }

    fn literal(&mut self, negative: Option<Position>) -> PResult<AsltNode> {
        let tok = self.advance();
        let category = tok.category.literal_category().expect("literal token");
        let value = match negative {
            Some(_) => format!("-{}", tok.lexeme),
            None => tok.lexeme,
        };
        let start = negative.unwrap_or(tok.position);
        Ok(AsltNode::new(NodeKind::LiteralTag)
            .with_attr(attr::VALUE, value)
            .with_attr(attr::CATEGORY, category.as_str())
            .with_span(Span::new(start, tok.end)))
    }

    fn primary(&mut self) -> PResult<AsltNode> {
        let start = self.peek().position;
        let tok = self.peek().clone();
        if tok.category.literal_category().is_some() {
            return self.literal(None);
        }
        if tok.is(TokenCategory::Operator, "-") {
            let next = self.peek_at(1).category;
            if matches!(
                next,
                TokenCategory::IntegerLiteral | TokenCategory::FloatingLiteral
            ) {
                self.advance();
                return self.literal(Some(start));
            }
            self.advance();
            return self.fail(&["numeric literal"]);
        }
        if tok.is_keyword("this") {
            self.advance();
            return Ok(AsltNode::new(NodeKind::IdentifierExpression)
                .with_attr(attr::NAME, "this")
                .with_span(self.span_from(start)));
        }
        if tok.is_keyword("new") {
            self.advance();
            let ty = self.qualified_name()?;
            if !self.peek().is_punct("(") {
                return self.fail(&["`(`"]);
            }
            let args = self.arguments()?;
            return Ok(AsltNode::new(NodeKind::NewObjectExpression)
                .with_attr(attr::TYPE, ty)
                .with_child(args)
                .with_span(self.span_from(start)));
        }
        if tok.category != TokenCategory::Identifier {
            return self.fail(&["expression"]);
        }
        let first = self.advance().lexeme;
        if self.peek().is_punct("(") {
            let args = self.arguments()?;
            return Ok(AsltNode::new(NodeKind::MethodInvokeExpression)
                .with_attr(attr::NAME, first)
                .with_child(args)
                .with_span(self.span_from(start)));
        }
        let mut name = first;
        while self.peek().is_punct(".")
            && self.peek_at(1).category == TokenCategory::Identifier
            && !self.peek_at(2).is_punct("(")
        {
            self.advance();
            name.push('.');
            name.push_str(&self.advance().lexeme);
        }
        Ok(AsltNode::new(NodeKind::IdentifierExpression)
            .with_attr(attr::NAME, name)
            .with_span(self.span_from(start)))
    }
}

fn set_modifiers(node: &mut AsltNode, mods: &[String]) {
    if !mods.is_empty() {
        node.attributes
            .insert(attr::MODIFIERS.to_string(), mods.join(" "));
    }
}

/// Parses source text into a `CompilationUnit` tree.
pub fn parse_source(source: &str, file_name: &str) -> Result<AsltNode, ParseError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        last_end: Position::new(1, 1),
    };
    parser.compilation_unit(file_name)
}
