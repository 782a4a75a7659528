use std::fmt;

use thiserror::Error;

use super::node::Position;

pub const KEYWORDS: &[&str] = &[
    "abstract",
    "boolean",
    "byte",
    "char",
    "class",
    "double",
    "extends",
    "final",
    "float",
    "implements",
    "int",
    "long",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "this",
    "void",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenCategory {
    Keyword,
    Identifier,
    IntegerLiteral,
    FloatingLiteral,
    StringLiteral,
    CharLiteral,
    BooleanLiteral,
    Punctuation,
    Operator,
    EndOfInput,
}

impl TokenCategory {
    pub fn literal_category(self) -> Option<LiteralCategory> {
        match self {
            TokenCategory::IntegerLiteral => Some(LiteralCategory::Integer),
            TokenCategory::FloatingLiteral => Some(LiteralCategory::Floating),
            TokenCategory::StringLiteral => Some(LiteralCategory::String),
            TokenCategory::CharLiteral => Some(LiteralCategory::Char),
            TokenCategory::BooleanLiteral => Some(LiteralCategory::Boolean),
            _ => None,
        }
    }
}

impl fmt::Display for TokenCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenCategory::Keyword => "keyword",
            TokenCategory::Identifier => "identifier",
            TokenCategory::IntegerLiteral => "integer literal",
            TokenCategory::FloatingLiteral => "floating literal",
            TokenCategory::StringLiteral => "string literal",
            TokenCategory::CharLiteral => "char literal",
            TokenCategory::BooleanLiteral => "boolean literal",
            TokenCategory::Punctuation => "punctuation",
            TokenCategory::Operator => "operator",
            TokenCategory::EndOfInput => "end of input",
        })
    }
}

/// The `category` attribute of a literal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteralCategory {
    Integer,
    Floating,
    String,
    Char,
    Boolean,
}

impl LiteralCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            LiteralCategory::Integer => "integer",
            LiteralCategory::Floating => "floating",
            LiteralCategory::String => "string",
            LiteralCategory::Char => "char",
            LiteralCategory::Boolean => "boolean",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            LiteralCategory::Integer,
            LiteralCategory::Floating,
            LiteralCategory::String,
            LiteralCategory::Char,
            LiteralCategory::Boolean,
        ]
        .into_iter()
        .find(|c| c.as_str() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub category: TokenCategory,
    pub lexeme: String,
    pub position: Position,
    /// Position just past the last character.
    pub end: Position,
}

impl Token {
    pub fn is(&self, category: TokenCategory, lexeme: &str) -> bool {
        self.category == category && self.lexeme == lexeme
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.is(TokenCategory::Punctuation, p)
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.is(TokenCategory::Keyword, k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {message}")]
pub struct LexError {
    pub position: Position,
    pub message: String,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Lexer<'_> {
    fn pos(&self) -> Position {
        Position::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error<T>(&self, position: Position, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            position,
            message: message.into(),
        })
    }

    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            match (self.peek(), self.peek2()) {
                (Some(c), _) if c.is_whitespace() => {
                    self.bump();
                }
                (Some('/'), Some('/')) => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                (Some('/'), Some('*')) => {
                    let start = self.pos();
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            None => return self.error(start, "unterminated block comment"),
                            Some('*') if self.peek() == Some('/') => {
                                self.bump();
                                break;
                            }
                            Some(_) => {}
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn take_while(&mut self, out: &mut String, pred: impl Fn(char) -> bool) {
        while let Some(c) = self.peek().filter(|c| pred(*c)) {
            out.push(c);
            self.bump();
        }
    }

    fn number(&mut self, start: Position) -> Result<(TokenCategory, String), LexError> {
        let mut text = String::new();
        let mut category = TokenCategory::IntegerLiteral;
        if self.peek() == Some('0') && matches!(self.peek2(), Some('x' | 'X')) {
            text.push(self.bump().unwrap());
            text.push(self.bump().unwrap());
            self.take_while(&mut text, |c| c.is_ascii_hexdigit());
            if text.len() == 2 {
                return self.error(start, "hexadecimal literal without digits");
            }
            if let Some(c) = self.peek().filter(|c| matches!(c, 'l' | 'L')) {
                text.push(c);
                self.bump();
            }
        } else {
            self.take_while(&mut text, |c| c.is_ascii_digit());
            if self.peek() == Some('.') && self.peek2().is_some_and(|c| c.is_ascii_digit()) {
                category = TokenCategory::FloatingLiteral;
                text.push('.');
                self.bump();
                self.take_while(&mut text, |c| c.is_ascii_digit());
            }
            if let Some(e) = self.peek().filter(|c| matches!(c, 'e' | 'E')) {
                category = TokenCategory::FloatingLiteral;
                text.push(e);
                self.bump();
                if let Some(sign) = self.peek().filter(|c| matches!(c, '+' | '-')) {
                    text.push(sign);
                    self.bump();
                }
                let before = text.len();
                self.take_while(&mut text, |c| c.is_ascii_digit());
                if text.len() == before {
                    return self.error(start, "exponent without digits");
                }
            }
            match self.peek() {
                Some(c @ ('l' | 'L')) if category == TokenCategory::IntegerLiteral => {
                    text.push(c);
                    self.bump();
                }
                Some(c @ ('f' | 'F' | 'd' | 'D')) => {
                    category = TokenCategory::FloatingLiteral;
                    text.push(c);
                    self.bump();
                }
                _ => {}
            }
        }
        if self.peek().is_some_and(is_ident_continue) {
            return self.error(start, "malformed numeric literal");
        }
        Ok((category, text))
    }

    fn quoted(&mut self, start: Position, quote: char) -> Result<String, LexError> {
        let what = if quote == '"' { "string" } else { "char" };
        let mut text = String::new();
        text.push(self.bump().unwrap());
        let mut content = 0;
        loop {
            match self.bump() {
                None | Some('\n') => {
                    return self.error(start, format!("unterminated {what} literal"))
                }
                Some('\\') => {
                    text.push('\\');
                    match self.bump() {
                        None | Some('\n') => {
                            return self.error(start, format!("unterminated {what} literal"))
                        }
                        Some(c) => text.push(c),
                    }
                    content += 1;
                }
                Some(c) if c == quote => {
                    text.push(c);
                    break;
                }
                Some(c) => {
                    text.push(c);
                    content += 1;
                }
            }
        }
        if quote == '\'' && content != 1 {
            return self.error(start, "char literal must contain exactly one character");
        }
        Ok(text)
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c == '_' || c == '$' || c.is_alphabetic()
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    is_ident_start(c) || c.is_ascii_digit()
}

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word) || word == "true" || word == "false"
}

/// Splits source text into tokens, dropping whitespace and comments. The
/// result always ends with an end-of-input token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    loop {
        lx.skip_trivia()?;
        let start = lx.pos();
        let Some(c) = lx.peek() else {
            tokens.push(Token {
                category: TokenCategory::EndOfInput,
                lexeme: String::new(),
                position: start,
                end: start,
            });
            return Ok(tokens);
        };
        let (category, lexeme) = if is_ident_start(c) {
            let mut word = String::new();
            lx.take_while(&mut word, is_ident_continue);
            let category = if word == "true" || word == "false" {
                TokenCategory::BooleanLiteral
            } else if KEYWORDS.contains(&word.as_str()) {
                TokenCategory::Keyword
            } else {
                TokenCategory::Identifier
            };
            (category, word)
        } else if c.is_ascii_digit() {
            lx.number(start)?
        } else if c == '"' {
            (TokenCategory::StringLiteral, lx.quoted(start, '"')?)
        } else if c == '\'' {
            (TokenCategory::CharLiteral, lx.quoted(start, '\'')?)
        } else if "{}();,.[]".contains(c) {
            lx.bump();
            (TokenCategory::Punctuation, c.to_string())
        } else if c == '=' || c == '-' {
            lx.bump();
            (TokenCategory::Operator, c.to_string())
        } else {
            return lx.error(start, format!("illegal character {c:?}"));
        };
        tokens.push(Token {
            category,
            lexeme,
            position: start,
            end: lx.pos(),
        });
    }
}
