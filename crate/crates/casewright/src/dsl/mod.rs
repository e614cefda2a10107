//! The textual argument language: parsing, canonical serialization, formatting.
//!
//! Files use `#` line comments, double-quoted strings with the usual escapes,
//! and ASCII identifiers. A file holds one `model "name"` header followed by
//! any number of `module <id> <kind> { ... }` blocks; the header may be left
//! out, in which case the model is called `untitled`.
//!
//! Diagnostics carry stable P-codes:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | P001 | file does not start with a model or module header  |
//! | P002 | lexical error (bad character, unterminated string) |
//! | P003 | unexpected token                                   |
//! | P004 | unknown keyword or kind value                      |
//! | P005 | duplicate identifier                               |
//! | P006 | reference to an unknown identifier                 |
//! | P007 | an item breaks a structural rule                   |
//! | P008 | a reference cycle                                  |

use std::fmt;

use crate::model::{ArgumentModel, Challenge};

mod emit;
mod lex;
mod parse;

/// A location in DSL source text. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub file: String,
    pub line: usize,
    pub col: usize,
    pub len: usize,
}

/// A parse-time problem, located in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub code: String,
    pub message: String,
    pub span: Span,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}: error[{}]: {}",
            self.span.file, self.span.line, self.span.col, self.code, self.message
        )
    }
}

/// Parse DSL text into a model. Syntax errors stop at the first problem;
/// semantic problems (unknown references, rule violations) are collected.
pub fn parse(text: &str) -> Result<ArgumentModel, Vec<ParseDiagnostic>> {
    parse_named("<input>", text)
}

/// [`parse`], with a file name to carry in diagnostics.
pub fn parse_named(file: &str, text: &str) -> Result<ArgumentModel, Vec<ParseDiagnostic>> {
    let src = parse::parse_source(file, text)?;
    parse::build_model(&src)
}

/// Canonical text for a model. Parsing the result reproduces the model, and
/// serializing a freshly parsed model reproduces the text.
pub fn serialize(model: &ArgumentModel) -> String {
    emit::serialize_model(model)
}

/// Reformat DSL text canonically (parse + serialize).
pub fn format(text: &str) -> Result<String, Vec<ParseDiagnostic>> {
    parse(text).map(|m| serialize(&m))
}

/// Parse one `challenge ...` declaration, resolving its target against an
/// existing model. Used to take in review findings.
pub fn parse_challenge_item(
    text: &str,
    model: &ArgumentModel,
) -> Result<Challenge, Vec<ParseDiagnostic>> {
    let src = parse::parse_challenge_source("<finding>", text)?;
    parse::build_challenge_item(model, &src)
}

// =====================================================================
// Tests
// =====================================================================
