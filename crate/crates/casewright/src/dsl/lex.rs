//! Tokenizer for the argument DSL.
//!
//! Tokens are identifiers, double-quoted strings, and the punctuation the
//! grammar needs. `#` starts a comment running to end of line. String escapes:
//! `\"`, `\\`, `\n`, `\t`, `\r`.

use super::{ParseDiagnostic, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Arrow,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(_) => "string".to_string(),
            Tok::LBrace => "`{`".to_string(),
            Tok::RBrace => "`}`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Arrow => "`->`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Lexer<'a> {
    file: &'a str,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn span(&self, line: usize, col: usize, len: usize) -> Span {
        Span {
            file: self.file.to_string(),
            line,
            col,
            len,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, len: usize, message: String) -> ParseDiagnostic {
        ParseDiagnostic {
            code: "P002".to_string(),
            message,
            span: self.span(line, col, len),
        }
    }
}

pub(crate) fn lex(file: &str, text: &str) -> Result<Vec<Token>, ParseDiagnostic> {
    let mut lx = Lexer {
        file,
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = lx.peek() {
        let (line, col) = (lx.line, lx.col);
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                lx.bump();
            }
            '#' => {
                while let Some(c) = lx.peek() {
                    if c == '\n' {
                        break;
                    }
                    lx.bump();
                }
            }
            '{' | '}' | '[' | ']' | ',' => {
                lx.bump();
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    _ => Tok::Comma,
                };
                tokens.push(Token {
                    tok,
                    span: lx.span(line, col, 1),
                });
            }
            '-' => {
                lx.bump();
                if lx.peek() == Some('>') {
                    lx.bump();
                    tokens.push(Token {
                        tok: Tok::Arrow,
                        span: lx.span(line, col, 2),
                    });
                } else {
                    return Err(lx.error(line, col, 1, "expected `->`".to_string()));
                }
            }
            '"' => {
                lx.bump();
                let mut value = String::new();
                loop {
                    match lx.bump() {
                        None => {
                            return Err(lx.error(line, col, 1, "unterminated string".to_string()));
                        }
                        Some('"') => break,
                        Some('\\') => match lx.bump() {
                            Some('"') => value.push('"'),
                            Some('\\') => value.push('\\'),
                            Some('n') => value.push('\n'),
                            Some('t') => value.push('\t'),
                            Some('r') => value.push('\r'),
                            Some(other) => {
                                return Err(lx.error(
                                    lx.line,
                                    lx.col.saturating_sub(1),
                                    1,
                                    format!("unknown escape `\\{other}`"),
                                ));
                            }
                            None => {
                                return Err(lx.error(
                                    line,
                                    col,
                                    1,
                                    "unterminated string".to_string(),
                                ));
                            }
                        },
                        Some(other) => value.push(other),
                    }
                }
                let len = value.chars().count() + 2;
                tokens.push(Token {
                    tok: Tok::Str(value),
                    span: lx.span(line, col, len),
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(c) = lx.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        lx.bump();
                    } else {
                        break;
                    }
                }
                let len = ident.chars().count();
                tokens.push(Token {
                    tok: Tok::Ident(ident),
                    span: lx.span(line, col, len),
                });
            }
            other => {
                return Err(lx.error(line, col, 1, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}
