//! Lexing, parsing and printing of pattern text.
//!
//! The accepted grammar, with sizes written as plain digits after a letter:
//!
//! ```text
//! pattern  := group* hw? chain END ;
//! group    := "(" group* hw? gchain ")" ;
//! hw       := "n" NUMBER? ;
//! chain    := section+ ;
//! gchain   := gsection* ;          (at least one section per group)
//! section  := LETTER(i|p|s) NUMBER? "."? ;
//! gsection := LETTER(i|p|s) NUMBER? "."? ;
//! END      := "e" NUMBER? ;
//! NUMBER   := "_"? DIGIT+ ;
//! ```
//!
//! Letters are case-insensitive and whitespace is rejected.

mod ast;
mod lexer;
mod parser;
mod printer;

pub use ast::{Group, PatternAst, Section};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, MAX_DEPTH};
pub use printer::print;

use alloc::format;
use alloc::vec::Vec;

use crate::diagnostic::{Diagnostic, RuleId};

/// Warnings for a successfully parsed pattern.
pub fn lint(ast: &PatternAst) -> Vec<Diagnostic> {
    let mut found = Vec::new();
    if let Some(end) = ast.end_user() {
        if let Some(size) = end.size {
            found.push(Diagnostic::warning(
                RuleId::SizeOnEndUser,
                end.span,
                format!(
                    "size {size} on the end-user section is read as the end-user population; \
                     the end-user section is otherwise a single character"
                ),
            ));
        }
    }
    found
}
